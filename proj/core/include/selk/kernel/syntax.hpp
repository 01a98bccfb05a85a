#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "selk/natural.hpp"

namespace selk::kernel {

using Var = std::uint16_t;

enum class TermKind : std::uint8_t { Zero, B0, B1, Var, Num, Ap };

struct TermNode;

/// Immutable object-language term. Numerals are kept in canonical form:
/// any chain of b0/b1 over zero whose innermost constructor is b1 is folded
/// into a single Num node, so `b1(b0(b1(zero())))` and `numeral(5)` are the
/// same tree. Non-canonical chains such as `b0(zero())` stay as written.
class Term {
 public:
  Term();  // zero

  TermKind kind() const;
  /// Child of B0/B1.
  const Term& child() const;
  Var var() const;
  /// Value of a Num node (always >= 1); 0 for Zero.
  const Natural& value() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;

  bool is_numeral() const { return kind() == TermKind::Zero || kind() == TermKind::Num; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : n_(std::move(n)) {}
  friend Term make_term(TermNode node);
  std::shared_ptr<const TermNode> n_;
};

struct TermNode {
  TermKind kind = TermKind::Zero;
  Var var = 0;
  Natural num;
  std::string name;
  std::vector<Term> args;
};

Term zero();
Term b0(const Term& t);
Term b1(const Term& t);
Term var(Var v);
Term numeral(const Natural& n);
Term ap(std::string name, std::vector<Term> args);

/// Views a numeral n >= 1 as b_{n mod 2}(numeral(n / 2)); also works on
/// literal B0/B1 nodes. Returns false for anything else.
bool split_bit(const Term& t, bool& bit, Term& rest);

enum class FormulaKind : std::uint8_t { Eq, Not, Imp, And, All, Ex };

struct FormulaNode;

class Formula {
 public:
  Formula();  // 0 = 0

  FormulaKind kind() const;
  const Term& lhs() const;
  const Term& rhs() const;
  /// Operand of Not, left of Imp/And, body of All/Ex.
  const Formula& left() const;
  const Formula& right() const;
  Var var() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : n_(std::move(n)) {}
  friend Formula make_formula(FormulaNode node);
  std::shared_ptr<const FormulaNode> n_;
};

Formula eq(const Term& a, const Term& b);
Formula neg(const Formula& f);
Formula imp(const Formula& a, const Formula& b);
Formula conj(const Formula& a, const Formula& b);
Formula all(Var v, const Formula& f);
Formula ex(Var v, const Formula& f);
/// Abbreviations: a or b := not a -> b; a <-> b := (a -> b) and (b -> a).
Formula disj(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

void free_vars(const Term& t, std::set<Var>& out);
std::set<Var> free_vars(const Term& t);
std::set<Var> free_vars(const Formula& f);
bool occurs_free(Var v, const Formula& f);
bool is_closed(const Formula& f);
/// Every variable id that appears anywhere, bound or free.
void all_vars(const Formula& f, std::set<Var>& out);

Term replace(const Term& t, Var v, const Term& s);
/// Replaces free occurrences of v by s without renaming. Sets `captured`
/// when a free variable of s would end up bound.
Formula replace(const Formula& f, Var v, const Term& s, bool& captured);

/// Capture-avoiding substitution F[t/v]. A binder that would capture a free
/// variable of t is renamed to the smallest id unused in F and t.
Formula substitute(const Formula& f, Var v, const Term& t);

/// Number of nodes in the tree, counting a Num as one node.
std::size_t size(const Term& t);
std::size_t size(const Formula& f);

}  // namespace selk::kernel
