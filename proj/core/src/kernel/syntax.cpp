#include "selk/kernel/syntax.hpp"

namespace selk::kernel {

struct FormulaNode {
  FormulaKind kind = FormulaKind::Eq;
  Var var = 0;
  Term lhs;
  Term rhs;
  Formula left;
  Formula right;
};

namespace {

const std::shared_ptr<const TermNode>& zero_node() {
  static const auto node = std::make_shared<const TermNode>();
  return node;
}

}  // namespace

Term make_term(TermNode node) { return Term(std::make_shared<const TermNode>(std::move(node))); }

Term::Term() : n_(zero_node()) {}
TermKind Term::kind() const { return n_->kind; }
const Term& Term::child() const { return n_->args.front(); }
Var Term::var() const { return n_->var; }
const Natural& Term::value() const { return n_->num; }
const std::string& Term::name() const { return n_->name; }
const std::vector<Term>& Term::args() const { return n_->args; }

bool operator==(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return true;
  const TermNode& x = *a.n_;
  const TermNode& y = *b.n_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case TermKind::Zero: return true;
    case TermKind::Var: return x.var == y.var;
    case TermKind::Num: return x.num == y.num;
    case TermKind::B0:
    case TermKind::B1: return x.args[0] == y.args[0];
    case TermKind::Ap: return x.name == y.name && x.args == y.args;
  }
  return false;
}

Term zero() { return Term(); }

Term b0(const Term& t) {
  if (t.kind() == TermKind::Num) {
    Natural v = t.value();
    v.push_low(false);
    return numeral(v);
  }
  TermNode n;
  n.kind = TermKind::B0;
  n.args.push_back(t);
  return make_term(std::move(n));
}

Term b1(const Term& t) {
  if (t.kind() == TermKind::Num || t.kind() == TermKind::Zero) {
    Natural v = t.value();
    v.push_low(true);
    return numeral(v);
  }
  TermNode n;
  n.kind = TermKind::B1;
  n.args.push_back(t);
  return make_term(std::move(n));
}

Term var(Var v) {
  TermNode n;
  n.kind = TermKind::Var;
  n.var = v;
  return make_term(std::move(n));
}

Term numeral(const Natural& value) {
  if (value.is_zero()) return zero();
  TermNode n;
  n.kind = TermKind::Num;
  n.num = value;
  return make_term(std::move(n));
}

Term ap(std::string name, std::vector<Term> args) {
  TermNode n;
  n.kind = TermKind::Ap;
  n.name = std::move(name);
  n.args = std::move(args);
  return make_term(std::move(n));
}

bool split_bit(const Term& t, bool& bit, Term& rest) {
  switch (t.kind()) {
    case TermKind::B0:
    case TermKind::B1:
      bit = t.kind() == TermKind::B1;
      rest = t.child();
      return true;
    case TermKind::Num: {
      bit = t.value().low_bit();
      Natural v = t.value();
      v.pop_low();
      rest = numeral(v);
      return true;
    }
    default:
      return false;
  }
}

// ---------------------------------------------------------------- formulas

Formula make_formula(FormulaNode node) { return Formula(std::make_shared<const FormulaNode>(std::move(node))); }

// A null node reads as 0 = 0.
Formula::Formula() : n_(nullptr) {}

FormulaKind Formula::kind() const { return n_ ? n_->kind : FormulaKind::Eq; }
const Term& Formula::lhs() const {
  static const Term z;
  return n_ ? n_->lhs : z;
}
const Term& Formula::rhs() const {
  static const Term z;
  return n_ ? n_->rhs : z;
}
const Formula& Formula::left() const { return n_->left; }
const Formula& Formula::right() const { return n_->right; }
Var Formula::var() const { return n_ ? n_->var : 0; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Eq: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case FormulaKind::Not: return a.left() == b.left();
    case FormulaKind::Imp:
    case FormulaKind::And: return a.left() == b.left() && a.right() == b.right();
    case FormulaKind::All:
    case FormulaKind::Ex: return a.var() == b.var() && a.left() == b.left();
  }
  return false;
}

Formula eq(const Term& a, const Term& b) {
  FormulaNode n;
  n.kind = FormulaKind::Eq;
  n.lhs = a;
  n.rhs = b;
  return make_formula(std::move(n));
}

Formula neg(const Formula& f) {
  FormulaNode n;
  n.kind = FormulaKind::Not;
  n.left = f;
  return make_formula(std::move(n));
}

Formula imp(const Formula& a, const Formula& b) {
  FormulaNode n;
  n.kind = FormulaKind::Imp;
  n.left = a;
  n.right = b;
  return make_formula(std::move(n));
}

Formula conj(const Formula& a, const Formula& b) {
  FormulaNode n;
  n.kind = FormulaKind::And;
  n.left = a;
  n.right = b;
  return make_formula(std::move(n));
}

Formula all(Var v, const Formula& f) {
  FormulaNode n;
  n.kind = FormulaKind::All;
  n.var = v;
  n.left = f;
  return make_formula(std::move(n));
}

Formula ex(Var v, const Formula& f) {
  FormulaNode n;
  n.kind = FormulaKind::Ex;
  n.var = v;
  n.left = f;
  return make_formula(std::move(n));
}

Formula disj(const Formula& a, const Formula& b) { return imp(neg(a), b); }
Formula iff(const Formula& a, const Formula& b) { return conj(imp(a, b), imp(b, a)); }

// ------------------------------------------------------------ variables

void free_vars(const Term& t, std::set<Var>& out) {
  switch (t.kind()) {
    case TermKind::Var: out.insert(t.var()); break;
    case TermKind::B0:
    case TermKind::B1:
    case TermKind::Ap:
      for (const Term& a : t.args()) free_vars(a, out);
      break;
    default: break;
  }
}

std::set<Var> free_vars(const Term& t) {
  std::set<Var> out;
  free_vars(t, out);
  return out;
}

namespace {

void free_vars_f(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f.kind()) {
    case FormulaKind::Eq: {
      std::set<Var> vs;
      free_vars(f.lhs(), vs);
      free_vars(f.rhs(), vs);
      for (Var v : vs) {
        if (bound.count(v) == 0) out.insert(v);
      }
      break;
    }
    case FormulaKind::Not: free_vars_f(f.left(), bound, out); break;
    case FormulaKind::Imp:
    case FormulaKind::And:
      free_vars_f(f.left(), bound, out);
      free_vars_f(f.right(), bound, out);
      break;
    case FormulaKind::All:
    case FormulaKind::Ex: {
      const bool fresh = bound.insert(f.var()).second;
      free_vars_f(f.left(), bound, out);
      if (fresh) bound.erase(f.var());
      break;
    }
  }
}

bool term_has_var(const Term& t, Var v) {
  switch (t.kind()) {
    case TermKind::Var: return t.var() == v;
    case TermKind::B0:
    case TermKind::B1:
    case TermKind::Ap:
      for (const Term& a : t.args()) {
        if (term_has_var(a, v)) return true;
      }
      return false;
    default: return false;
  }
}

}  // namespace

std::set<Var> free_vars(const Formula& f) {
  std::set<Var> bound;
  std::set<Var> out;
  free_vars_f(f, bound, out);
  return out;
}

bool occurs_free(Var v, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq: return term_has_var(f.lhs(), v) || term_has_var(f.rhs(), v);
    case FormulaKind::Not: return occurs_free(v, f.left());
    case FormulaKind::Imp:
    case FormulaKind::And: return occurs_free(v, f.left()) || occurs_free(v, f.right());
    case FormulaKind::All:
    case FormulaKind::Ex: return f.var() != v && occurs_free(v, f.left());
  }
  return false;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

void all_vars(const Formula& f, std::set<Var>& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      free_vars(f.lhs(), out);
      free_vars(f.rhs(), out);
      break;
    case FormulaKind::Not: all_vars(f.left(), out); break;
    case FormulaKind::Imp:
    case FormulaKind::And:
      all_vars(f.left(), out);
      all_vars(f.right(), out);
      break;
    case FormulaKind::All:
    case FormulaKind::Ex:
      out.insert(f.var());
      all_vars(f.left(), out);
      break;
  }
}

// --------------------------------------------------------- substitution

Term replace(const Term& t, Var v, const Term& s) {
  switch (t.kind()) {
    case TermKind::Var: return t.var() == v ? s : t;
    case TermKind::B0: return b0(replace(t.child(), v, s));
    case TermKind::B1: return b1(replace(t.child(), v, s));
    case TermKind::Ap: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(replace(a, v, s));
      return ap(t.name(), std::move(args));
    }
    default: return t;
  }
}

namespace {

Formula replace_f(const Formula& f, Var v, const Term& s, const std::set<Var>& svars, bool& captured) {
  switch (f.kind()) {
    case FormulaKind::Eq: return eq(replace(f.lhs(), v, s), replace(f.rhs(), v, s));
    case FormulaKind::Not: return neg(replace_f(f.left(), v, s, svars, captured));
    case FormulaKind::Imp:
      return imp(replace_f(f.left(), v, s, svars, captured), replace_f(f.right(), v, s, svars, captured));
    case FormulaKind::And:
      return conj(replace_f(f.left(), v, s, svars, captured), replace_f(f.right(), v, s, svars, captured));
    case FormulaKind::All:
    case FormulaKind::Ex: {
      if (f.var() == v || !occurs_free(v, f.left())) return f;
      if (svars.count(f.var()) != 0) captured = true;
      Formula body = replace_f(f.left(), v, s, svars, captured);
      return f.kind() == FormulaKind::All ? all(f.var(), body) : ex(f.var(), body);
    }
  }
  return f;
}

}  // namespace

Formula replace(const Formula& f, Var v, const Term& s, bool& captured) {
  return replace_f(f, v, s, free_vars(s), captured);
}

Formula substitute(const Formula& f, Var v, const Term& t) {
  switch (f.kind()) {
    case FormulaKind::Eq: return eq(replace(f.lhs(), v, t), replace(f.rhs(), v, t));
    case FormulaKind::Not: return neg(substitute(f.left(), v, t));
    case FormulaKind::Imp: return imp(substitute(f.left(), v, t), substitute(f.right(), v, t));
    case FormulaKind::And: return conj(substitute(f.left(), v, t), substitute(f.right(), v, t));
    case FormulaKind::All:
    case FormulaKind::Ex: {
      if (f.var() == v || !occurs_free(v, f.left())) return f;
      Var bv = f.var();
      Formula body = f.left();
      const std::set<Var> tv = free_vars(t);
      if (tv.count(bv) != 0) {
        std::set<Var> used = tv;
        all_vars(f, used);
        used.insert(v);
        Var fresh = 0;
        while (used.count(fresh) != 0) ++fresh;
        body = substitute(body, bv, var(fresh));
        bv = fresh;
      }
      body = substitute(body, v, t);
      return f.kind() == FormulaKind::All ? all(bv, body) : ex(bv, body);
    }
  }
  return f;
}

std::size_t size(const Term& t) {
  std::size_t n = 1;
  if (t.kind() == TermKind::B0 || t.kind() == TermKind::B1 || t.kind() == TermKind::Ap) {
    for (const Term& a : t.args()) n += size(a);
  }
  return n;
}

std::size_t size(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq: return 1 + size(f.lhs()) + size(f.rhs());
    case FormulaKind::Not:
    case FormulaKind::All:
    case FormulaKind::Ex: return 1 + size(f.left());
    case FormulaKind::Imp:
    case FormulaKind::And: return 1 + size(f.left()) + size(f.right());
  }
  return 1;
}

}  // namespace selk::kernel
