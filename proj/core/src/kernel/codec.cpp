#include "selk/kernel/codec.hpp"

#include <set>
#include <string>

#include "selk/loop/codec.hpp"

namespace selk::kernel {

namespace {

void put16(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put32(Bytes& out, std::uint32_t v) {
  put16(out, v >> 16);
  put16(out, v & 0xFFFF);
}

void put_name(Bytes& out, const std::string& name) {
  out.push_back(static_cast<std::uint8_t>(name.size()));
  out.insert(out.end(), name.begin(), name.end());
}

class Reader {
 public:
  Reader(std::span<const std::uint8_t> in, std::size_t& pos) : in_(in), pos_(pos) {}

  std::uint8_t byte() {
    if (pos_ >= in_.size()) throw DecodeError("truncated encoding");
    return in_[pos_++];
  }
  std::uint32_t u16() {
    const std::uint32_t hi = byte();
    return (hi << 8) | byte();
  }
  std::uint32_t u32() {
    const std::uint32_t hi = u16();
    return (hi << 16) | u16();
  }
  std::string name() {
    const std::uint8_t len = byte();
    if (len == 0) throw DecodeError("empty program name");
    if (in_.size() - pos_ < len) throw DecodeError("truncated encoding");
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), len);
    pos_ += len;
    return s;
  }

  Term term(int depth) {
    if (depth > kMaxSyntaxDepth) throw DecodeError("term nesting too deep");
    const std::uint8_t t = byte();
    switch (t) {
      case tag::kZero: return zero();
      case tag::kB0:
      case tag::kB1: {
        const std::size_t at = pos_;
        Term c = term(depth + 1);
        if (c.kind() == TermKind::Num || (t == tag::kB1 && c.kind() == TermKind::Zero)) {
          throw DecodeError("non-canonical numeral at byte " + std::to_string(at));
        }
        return t == tag::kB0 ? b0(c) : b1(c);
      }
      case tag::kVar: return var(static_cast<Var>(u16()));
      case tag::kNum: {
        const std::uint32_t len = u32();
        if (len == 0 || in_.size() - pos_ < len) throw DecodeError("bad numeral length");
        if (in_[pos_] == 0) throw DecodeError("numeral with leading zero byte");
        Natural v = Natural::from_bytes_be(in_.subspan(pos_, len));
        pos_ += len;
        return numeral(v);
      }
      case tag::kAp: {
        std::string name = this->name();
        const std::uint8_t argc = byte();
        std::vector<Term> args;
        args.reserve(argc);
        for (int k = 0; k < argc; ++k) args.push_back(term(depth + 1));
        return ap(std::move(name), std::move(args));
      }
      default: throw DecodeError("unknown term tag " + std::to_string(t));
    }
  }

  Formula formula(int depth) {
    if (depth > kMaxSyntaxDepth) throw DecodeError("formula nesting too deep");
    const std::uint8_t t = byte();
    switch (t) {
      case tag::kEq: {
        Term a = term(depth + 1);
        return eq(a, term(depth + 1));
      }
      case tag::kNot: return neg(formula(depth + 1));
      case tag::kImp: {
        Formula a = formula(depth + 1);
        return imp(a, formula(depth + 1));
      }
      case tag::kAnd: {
        Formula a = formula(depth + 1);
        return conj(a, formula(depth + 1));
      }
      case tag::kAll:
      case tag::kEx: {
        const Var v = static_cast<Var>(u16());
        Formula body = formula(depth + 1);
        return t == tag::kAll ? all(v, body) : ex(v, body);
      }
      default: throw DecodeError("unknown formula tag " + std::to_string(t));
    }
  }

  Justification justification() {
    Justification j;
    const std::uint8_t t = byte();
    switch (t) {
      case tag::kLogic:
        j.rule = Rule::Logic;
        j.schema = byte();
        if (j.schema == schema::kQ1 || j.schema == schema::kQ2) {
          j.term = term(0);
        } else if (!(j.schema >= 1 && j.schema <= 10) && j.schema != schema::kQ3 && j.schema != schema::kQ4) {
          throw DecodeError("unknown logical schema");
        }
        break;
      case tag::kEqAx:
        j.rule = Rule::Equality;
        j.schema = byte();
        if (j.schema == 2 || j.schema == 3) {
          j.var = static_cast<Var>(u16());
          j.phi = formula(0);
        } else if (j.schema != 1) {
          throw DecodeError("unknown equality schema");
        }
        break;
      case tag::kNumAx:
        j.rule = Rule::Numeral;
        j.schema = byte();
        if (j.schema < 1 || j.schema > 5) throw DecodeError("unknown numeral axiom");
        break;
      case tag::kExtra:
        j.rule = Rule::Extra;
        j.i = u32();
        break;
      case tag::kMP:
        j.rule = Rule::MP;
        j.i = u32();
        j.j = u32();
        break;
      case tag::kGen:
        j.rule = Rule::Gen;
        j.i = u32();
        break;
      case tag::kCompute: j.rule = Rule::Compute; break;
      default: throw DecodeError("unknown justification tag " + std::to_string(t));
    }
    return j;
  }

  Derivation derivation() {
    if (byte() != tag::kDerivation) throw DecodeError("not a derivation");
    const std::uint32_t n = u32();
    if (n == 0) throw DecodeError("empty derivation");
    Derivation d;
    for (std::uint32_t k = 0; k < n; ++k) {
      Line line;
      line.formula = formula(0);
      line.just = justification();
      d.lines.push_back(std::move(line));
    }
    return d;
  }

  TheorySpec theory() {
    if (byte() != tag::kTheory) throw DecodeError("not a theory");
    TheorySpec t;
    const std::uint32_t n = u16();
    for (std::uint32_t k = 0; k < n; ++k) t.extras.push_back(formula(0));
    const std::uint8_t w = byte();
    std::set<std::string> names;
    for (int k = 0; k < w; ++k) {
      WhitelistEntry e;
      e.coeff = static_cast<std::uint16_t>(u16());
      e.exponent = byte();
      if (e.exponent > kMaxBudgetExponent) throw DecodeError("budget exponent too large");
      try {
        e.program = loop::decode_at(in_, pos_);
      } catch (const loop::CodeError& err) {
        throw DecodeError(std::string("bad whitelisted program: ") + err.what());
      }
      if (!names.insert(e.program.name).second) throw DecodeError("duplicate whitelisted program");
      t.whitelist.push_back(std::move(e));
    }
    return t;
  }

  void finish() const {
    if (pos_ != in_.size()) throw DecodeError("trailing bytes");
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t& pos_;
};

}  // namespace

void encode(const Term& t, Bytes& out) {
  switch (t.kind()) {
    case TermKind::Zero: out.push_back(tag::kZero); break;
    case TermKind::B0:
    case TermKind::B1:
      out.push_back(t.kind() == TermKind::B0 ? tag::kB0 : tag::kB1);
      encode(t.child(), out);
      break;
    case TermKind::Var:
      out.push_back(tag::kVar);
      put16(out, t.var());
      break;
    case TermKind::Num: {
      const Bytes v = t.value().to_bytes_be();
      out.push_back(tag::kNum);
      put32(out, static_cast<std::uint32_t>(v.size()));
      out.insert(out.end(), v.begin(), v.end());
      break;
    }
    case TermKind::Ap:
      out.push_back(tag::kAp);
      put_name(out, t.name());
      out.push_back(static_cast<std::uint8_t>(t.args().size()));
      for (const Term& a : t.args()) encode(a, out);
      break;
  }
}

void encode(const Formula& f, Bytes& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      out.push_back(tag::kEq);
      encode(f.lhs(), out);
      encode(f.rhs(), out);
      break;
    case FormulaKind::Not:
      out.push_back(tag::kNot);
      encode(f.left(), out);
      break;
    case FormulaKind::Imp:
    case FormulaKind::And:
      out.push_back(f.kind() == FormulaKind::Imp ? tag::kImp : tag::kAnd);
      encode(f.left(), out);
      encode(f.right(), out);
      break;
    case FormulaKind::All:
    case FormulaKind::Ex:
      out.push_back(f.kind() == FormulaKind::All ? tag::kAll : tag::kEx);
      put16(out, f.var());
      encode(f.left(), out);
      break;
  }
}

void encode(const Justification& j, Bytes& out) {
  switch (j.rule) {
    case Rule::Logic:
      out.insert(out.end(), {tag::kLogic, j.schema});
      if (j.schema == schema::kQ1 || j.schema == schema::kQ2) encode(j.term, out);
      break;
    case Rule::Equality:
      out.insert(out.end(), {tag::kEqAx, j.schema});
      if (j.schema == 2 || j.schema == 3) {
        put16(out, j.var);
        encode(j.phi, out);
      }
      break;
    case Rule::Numeral: out.insert(out.end(), {tag::kNumAx, j.schema}); break;
    case Rule::Extra:
      out.push_back(tag::kExtra);
      put32(out, j.i);
      break;
    case Rule::MP:
      out.push_back(tag::kMP);
      put32(out, j.i);
      put32(out, j.j);
      break;
    case Rule::Gen:
      out.push_back(tag::kGen);
      put32(out, j.i);
      break;
    case Rule::Compute: out.push_back(tag::kCompute); break;
  }
}

void encode(const Derivation& d, Bytes& out) {
  out.push_back(tag::kDerivation);
  put32(out, static_cast<std::uint32_t>(d.lines.size()));
  for (const Line& l : d.lines) {
    encode(l.formula, out);
    encode(l.just, out);
  }
}

void encode(const TheorySpec& t, Bytes& out) {
  out.push_back(tag::kTheory);
  put16(out, static_cast<std::uint32_t>(t.extras.size()));
  for (const Formula& f : t.extras) encode(f, out);
  out.push_back(static_cast<std::uint8_t>(t.whitelist.size()));
  for (const WhitelistEntry& w : t.whitelist) {
    put16(out, w.coeff);
    out.push_back(w.exponent);
    loop::encode_into(w.program, out);
  }
}

Term decode_term(std::span<const std::uint8_t> in, std::size_t& pos) { return Reader(in, pos).term(0); }
Formula decode_formula(std::span<const std::uint8_t> in, std::size_t& pos) { return Reader(in, pos).formula(0); }
Derivation decode_derivation(std::span<const std::uint8_t> in, std::size_t& pos) {
  return Reader(in, pos).derivation();
}
TheorySpec decode_theory(std::span<const std::uint8_t> in, std::size_t& pos) { return Reader(in, pos).theory(); }

Term term_from_bytes(std::span<const std::uint8_t> in) {
  std::size_t pos = 0;
  Reader r(in, pos);
  Term t = r.term(0);
  r.finish();
  return t;
}

Formula formula_from_bytes(std::span<const std::uint8_t> in) {
  std::size_t pos = 0;
  Reader r(in, pos);
  Formula f = r.formula(0);
  r.finish();
  return f;
}

Derivation derivation_from_bytes(std::span<const std::uint8_t> in) {
  std::size_t pos = 0;
  Reader r(in, pos);
  Derivation d = r.derivation();
  r.finish();
  return d;
}

TheorySpec theory_from_bytes(std::span<const std::uint8_t> in) {
  std::size_t pos = 0;
  Reader r(in, pos);
  TheorySpec t = r.theory();
  r.finish();
  return t;
}

}  // namespace selk::kernel
