#include "selk/kernel/text.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace selk::kernel {

namespace {

struct Tok {
  std::string text;
  std::size_t offset = 0;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), i});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' && s[j] != ')') ++j;
      out.push_back({std::string(s.substr(i, j - i)), i});
      i = j;
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const TextContext& ctx) : toks_(lex(src)), ctx_(ctx), len_(src.size()) {}

  void done() const {
    if (pos_ != toks_.size()) throw ParseError("unexpected trailing input '" + toks_[pos_].text + "'", toks_[pos_].offset);
  }

  Term term() {
    const Tok& t = next();
    if (t.text == "(") {
      const Tok& head = next();
      Term out;
      if (head.text == "b0" || head.text == "b1") {
        Term c = term();
        out = head.text == "b0" ? b0(c) : b1(c);
      } else if (head.text == "ap") {
        const Tok& name = next();
        if (name.text == "(" || name.text == ")") throw ParseError("expected program name", name.offset);
        std::vector<Term> args;
        while (peek_is(")") == false) args.push_back(term());
        if (ctx_.theory != nullptr) {
          const WhitelistEntry* w = ctx_.theory->find(name.text);
          if (w == nullptr) throw ParseError("unknown program symbol '" + name.text + "'", name.offset);
          if (w->program.arity != args.size()) throw ParseError("wrong arity for '" + name.text + "'", name.offset);
        }
        if (name.text.empty() || name.text.size() > 255 || args.size() > 255) {
          throw ParseError("bad application", name.offset);
        }
        out = ap(name.text, std::move(args));
      } else {
        throw ParseError("unknown term constructor '" + head.text + "'", head.offset);
      }
      expect(")");
      return out;
    }
    if (t.text == ")") throw ParseError("unexpected ')'", t.offset);
    if (t.text == "z") return zero();
    if (t.text[0] == '#') {
      auto n = Natural::parse(std::string_view(t.text).substr(1));
      if (!n) throw ParseError("malformed numeral '" + t.text + "'", t.offset);
      return numeral(*n);
    }
    if (t.text[0] == '?') return var(parse_var(t));
    auto it = ctx_.constants.find(t.text);
    if (it != ctx_.constants.end()) return it->second;
    throw ParseError("unknown symbol '" + t.text + "'", t.offset);
  }

  Formula formula() {
    expect("(");
    const Tok& head = next();
    Formula out;
    const std::string& h = head.text;
    if (h == "=") {
      Term a = term();
      out = eq(a, term());
    } else if (h == "not") {
      out = neg(formula());
    } else if (h == "->" || h == "and" || h == "or" || h == "<->") {
      Formula a = formula();
      Formula b = formula();
      out = h == "->" ? imp(a, b) : h == "and" ? conj(a, b) : h == "or" ? disj(a, b) : iff(a, b);
    } else if (h == "all" || h == "ex") {
      const Tok& v = next();
      if (v.text.empty() || v.text[0] != '?') throw ParseError("expected variable", v.offset);
      const Var x = parse_var(v);
      Formula body = formula();
      out = h == "all" ? all(x, body) : ex(x, body);
    } else {
      throw ParseError("unknown connective '" + h + "'", head.offset);
    }
    expect(")");
    return out;
  }

 private:
  const Tok& next() {
    if (pos_ >= toks_.size()) {
      throw ParseError("unexpected end of input", len_);
    }
    return toks_[pos_++];
  }

  bool peek_is(std::string_view s) const {
    if (pos_ >= toks_.size()) throw ParseError("unexpected end of input", len_);
    return toks_[pos_].text == s;
  }

  void expect(std::string_view s) {
    const Tok& t = next();
    if (t.text != s) throw ParseError("expected '" + std::string(s) + "' but found '" + t.text + "'", t.offset);
  }

  static Var parse_var(const Tok& t) {
    const std::string_view body = std::string_view(t.text).substr(1);
    if (body.size() == 1 && body[0] >= 'a' && body[0] <= 'z') return static_cast<Var>(body[0] - 'a');
    if (body.size() > 1 && body[0] == 'v') {
      unsigned v = 0;
      auto [p, ec] = std::from_chars(body.data() + 1, body.data() + body.size(), v);
      if (ec == std::errc() && p == body.data() + body.size() && v <= 0xFFFF) return static_cast<Var>(v);
    }
    throw ParseError("malformed variable '" + t.text + "'", t.offset);
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  const TextContext& ctx_;
  std::size_t len_;
};

void print(const Term& t, const TextContext& ctx, std::string& out) {
  switch (t.kind()) {
    case TermKind::Zero: out += "z"; return;
    case TermKind::Var: out += var_name(t.var()); return;
    case TermKind::Num: {
      for (const auto& [name, c] : ctx.constants) {
        if (c == t) {
          out += name;
          return;
        }
      }
      auto small = t.value().to_u64();
      out += "#" + (small ? std::to_string(*small) : t.value().to_hex());
      return;
    }
    case TermKind::B0:
    case TermKind::B1:
      out += t.kind() == TermKind::B0 ? "(b0 " : "(b1 ";
      print(t.child(), ctx, out);
      out += ")";
      return;
    case TermKind::Ap:
      out += "(ap " + t.name();
      for (const Term& a : t.args()) {
        out += " ";
        print(a, ctx, out);
      }
      out += ")";
      return;
  }
}

void print(const Formula& f, const TextContext& ctx, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      out += "(= ";
      print(f.lhs(), ctx, out);
      out += " ";
      print(f.rhs(), ctx, out);
      out += ")";
      return;
    case FormulaKind::Not:
      out += "(not ";
      print(f.left(), ctx, out);
      out += ")";
      return;
    case FormulaKind::Imp:
    case FormulaKind::And:
      out += f.kind() == FormulaKind::Imp ? "(-> " : "(and ";
      print(f.left(), ctx, out);
      out += " ";
      print(f.right(), ctx, out);
      out += ")";
      return;
    case FormulaKind::All:
    case FormulaKind::Ex:
      out += (f.kind() == FormulaKind::All ? "(all " : "(ex ") + var_name(f.var()) + " ";
      print(f.left(), ctx, out);
      out += ")";
      return;
  }
}

}  // namespace

std::string var_name(Var v) {
  if (v < 26) return std::string("?") + static_cast<char>('a' + v);
  return "?v" + std::to_string(v);
}

Term parse_term(std::string_view text, const TextContext& ctx) {
  Parser p(text, ctx);
  Term t = p.term();
  p.done();
  return t;
}

Formula parse_formula(std::string_view text, const TextContext& ctx) {
  Parser p(text, ctx);
  Formula f = p.formula();
  p.done();
  return f;
}

std::string to_text(const Term& t, const TextContext& ctx) {
  std::string out;
  print(t, ctx, out);
  return out;
}

std::string to_text(const Formula& f, const TextContext& ctx) {
  std::string out;
  print(f, ctx, out);
  return out;
}

}  // namespace selk::kernel
