#include "selk/loop/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "selk/natural.hpp"

namespace selk::loop {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int col = 0;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Number;
    } else {
      static constexpr std::string_view kTwo[] = {"=>", "..", "->"};
      t.kind = Tok::Punct;
      j = i + 1;
      for (auto two : kTwo) {
        if (src.substr(i, 2) == two) j = i + 2;
      }
      if (j == i + 1 && std::string_view("{}()[];,=").find(c) == std::string_view::npos) {
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

std::optional<Natural> parse_number(const std::string& text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
    Natural n;
    for (char c : text.substr(2)) {
      if (c != '0' && c != '1') return std::nullopt;
      n.push_low(c == '1');
    }
    return n;
  }
  return Natural::parse(text);
}

// ---------------------------------------------------------- surface AST

struct Index {
  bool literal = true;
  std::uint64_t value = 0;
  std::string var;
};

struct RegRef {
  std::string name;
  std::optional<Index> index;
  int line = 0;
  int col = 0;
};

enum class Kind { Zero, Copy, Const, Push0, Push1, Pop, If, Loop, For, Break, Halt, Call, Block, Switch };

struct SNode;

struct Case {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::string var;
  std::vector<SNode> body;
};

struct SNode {
  Kind kind = Kind::Halt;
  RegRef dst;
  RegRef src;
  Natural konst;
  bool odd = true;
  std::vector<SNode> body;
  std::vector<SNode> alt;
  std::string callee;
  std::vector<RegRef> args;
  std::vector<Case> cases;
  bool has_default = false;
  std::vector<SNode> dflt;
  int line = 0;
  int col = 0;
};

struct Decl {
  std::string name;
  std::size_t size = 1;
  bool array = false;
  bool far = false;
  int line = 0;
  int col = 0;
};

struct ProgDef {
  std::string name;
  std::vector<std::string> inputs;
  std::string output;
  std::vector<Decl> decls;
  std::vector<SNode> body;
  int line = 0;
  int col = 0;
};

}  // namespace

struct ProcDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<Decl> locals;
  std::vector<SNode> body;
};

namespace {

// --------------------------------------------------------------- parser

const std::set<std::string, std::less<>> kUnbounded = {"while", "until", "do", "repeat", "goto", "forever"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw SyntaxError(msg, at.line, at.col);
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool is(std::string_view text) const {
    return peek().kind != Tok::End && peek().kind != Tok::Number && peek().text == text;
  }

  bool accept(std::string_view text) {
    if (!is(text)) return false;
    next();
    return true;
  }

  void expect(std::string_view text) {
    if (!accept(text)) {
      fail("expected '" + std::string(text) + "' but found " + describe(peek()), peek());
    }
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }

  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected identifier but found " + describe(t), t);
    if (kUnbounded.count(t.text) != 0) unbounded(t);
    return next().text;
  }

  [[noreturn]] void unbounded(const Token& t) const {
    fail("unbounded construct '" + t.text + "' is not part of the language", t);
  }

  std::uint64_t small_number() {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected number but found " + describe(t), t);
    auto n = parse_number(t.text);
    if (!n) fail("malformed number '" + t.text + "'", t);
    auto v = n->to_u64();
    if (!v) fail("number too large", t);
    next();
    return *v;
  }

  RegRef regref() {
    RegRef r;
    r.line = peek().line;
    r.col = peek().col;
    r.name = ident();
    if (accept("[")) {
      Index ix;
      if (peek().kind == Tok::Number) {
        ix.value = small_number();
      } else {
        ix.literal = false;
        ix.var = ident();
      }
      expect("]");
      r.index = ix;
    }
    return r;
  }

  void decl_list(std::vector<Decl>& out, bool far) {
    do {
      Decl d;
      d.line = peek().line;
      d.col = peek().col;
      d.far = far;
      d.name = ident();
      if (accept("[")) {
        d.array = true;
        d.size = small_number();
        if (d.size == 0 || d.size > kMaxRegisters) fail("bad array size", peek());
        expect("]");
      }
      out.push_back(d);
    } while (accept(","));
    expect(";");
  }

  std::vector<SNode> block(std::vector<Decl>* decls, bool allow_far) {
    expect("{");
    std::vector<SNode> out;
    while (!is("}")) {
      if (at_end()) fail("unterminated block", peek());
      const Token& t = peek();
      if (t.kind == Tok::Ident && (t.text == "var" || t.text == "far" || t.text == "local")) {
        // Programs declare var/far registers, procedures declare locals.
        const bool ok = decls != nullptr && (t.text == "local") != allow_far;
        if (!ok) fail("declaration '" + t.text + "' not allowed here", t);
        next();
        decl_list(*decls, t.text == "far");
        continue;
      }
      out.push_back(statement());
    }
    expect("}");
    return out;
  }

  SNode statement() {
    const Token& t = peek();
    SNode n;
    n.line = t.line;
    n.col = t.col;
    if (t.kind != Tok::Ident) fail("expected statement but found " + describe(t), t);
    if (kUnbounded.count(t.text) != 0) unbounded(t);
    const std::string kw = t.text;
    if (kw == "push0" || kw == "push1" || kw == "pop") {
      next();
      n.kind = kw == "push0" ? Kind::Push0 : kw == "push1" ? Kind::Push1 : Kind::Pop;
      n.dst = regref();
      expect(";");
    } else if (kw == "if") {
      next();
      if (accept("odd")) {
        n.odd = true;
      } else if (accept("even")) {
        n.odd = false;
      } else {
        fail("expected 'odd' or 'even' after 'if'", peek());
      }
      n.kind = Kind::If;
      n.dst = regref();
      n.body = block(nullptr, false);
      if (accept("else")) {
        if (is("if")) {
          n.alt.push_back(statement());
        } else {
          n.alt = block(nullptr, false);
        }
      }
    } else if (kw == "loop") {
      next();
      n.kind = Kind::Loop;
      n.dst = regref();
      n.body = block(nullptr, false);
    } else if (kw == "for") {
      next();
      n.kind = Kind::For;
      n.src = regref();
      expect("in");
      n.dst = regref();
      n.body = block(nullptr, false);
    } else if (kw == "break" || kw == "halt") {
      next();
      n.kind = kw == "break" ? Kind::Break : Kind::Halt;
      expect(";");
    } else if (kw == "call") {
      next();
      n.kind = Kind::Call;
      n.callee = ident();
      expect("(");
      if (!is(")")) {
        do {
          n.args.push_back(regref());
        } while (accept(","));
      }
      expect(")");
      expect(";");
    } else if (kw == "block") {
      next();
      n.kind = Kind::Block;
      n.body = block(nullptr, false);
    } else if (kw == "switch") {
      next();
      n.kind = Kind::Switch;
      expect("(");
      do {
        n.args.push_back(regref());
      } while (accept(","));
      expect(")");
      expect("{");
      while (!accept("}")) {
        if (at_end()) fail("unterminated switch", peek());
        if (accept("else")) {
          if (n.has_default) fail("duplicate else arm", peek());
          expect("=>");
          n.has_default = true;
          n.dflt = block(nullptr, false);
          continue;
        }
        Case c;
        if (peek().kind == Tok::Ident) {
          c.var = ident();
          expect("in");
          c.lo = small_number();
          expect("..");
          c.hi = small_number();
        } else {
          c.lo = small_number();
          c.hi = c.lo;
          if (accept("..")) c.hi = small_number();
        }
        if (c.hi < c.lo) fail("empty case range", peek());
        expect("=>");
        c.body = block(nullptr, false);
        n.cases.push_back(std::move(c));
      }
    } else {
      n.dst = regref();
      expect("=");
      const Token& rhs = peek();
      if (rhs.kind == Tok::Number) {
        auto v = parse_number(rhs.text);
        if (!v) fail("malformed number '" + rhs.text + "'", rhs);
        next();
        n.kind = v->is_zero() ? Kind::Zero : Kind::Const;
        n.konst = *v;
      } else {
        n.kind = Kind::Copy;
        n.src = regref();
      }
      expect(";");
    }
    return n;
  }

  std::vector<std::string> param_list() {
    std::vector<std::string> out;
    expect("(");
    if (!is(")")) {
      do {
        out.push_back(ident());
      } while (accept(","));
    }
    expect(")");
    return out;
  }

  ProcDef proc() {
    ProcDef p;
    p.name = ident();
    p.params = param_list();
    p.body = block(&p.locals, false);
    return p;
  }

  ProgDef program() {
    ProgDef p;
    p.line = peek().line;
    p.col = peek().col;
    p.name = ident();
    p.inputs = param_list();
    expect("->");
    p.output = ident();
    p.body = block(&p.decls, true);
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// -------------------------------------------------------------- lowering

using ProcTable = std::map<std::string, std::shared_ptr<const ProcDef>, std::less<>>;

struct Binding {
  int base = 0;
  std::size_t size = 1;
  bool array = false;
};

struct Scope {
  std::map<std::string, Binding, std::less<>> regs;
  std::map<std::string, std::uint64_t, std::less<>> consts;
};

constexpr int kCallDepthLimit = 64;

class Lowerer {
 public:
  Lowerer(const ProcTable& procs, int stack_base, int far_base, bool final)
      : procs_(procs), stack_base_(stack_base), far_base_(far_base), final_(final) {}

  int max_stack() const { return max_sp_; }
  int far_base() const { return far_base_; }

  Block lower(const std::vector<SNode>& nodes, Scope& scope) {
    Block out;
    for (const SNode& n : nodes) lower_node(n, scope, out);
    return out;
  }

  int resolve(const RegRef& r, const Scope& scope) const {
    auto it = scope.regs.find(r.name);
    if (it == scope.regs.end()) throw SyntaxError("unknown register '" + r.name + "'", r.line, r.col);
    const Binding& b = it->second;
    if (b.array != r.index.has_value()) {
      throw SyntaxError(b.array ? "array '" + r.name + "' needs an index" : "'" + r.name + "' is not an array",
                        r.line, r.col);
    }
    if (!b.array) return b.base;
    std::uint64_t ix = r.index->value;
    if (!r.index->literal) {
      auto c = scope.consts.find(r.index->var);
      if (c == scope.consts.end()) {
        throw SyntaxError("index '" + r.index->var + "' is not a switch binding", r.line, r.col);
      }
      ix = c->second;
    }
    if (ix >= b.size) throw SyntaxError("index out of range for '" + r.name + "'", r.line, r.col);
    return b.base + static_cast<int>(ix);
  }

 private:
  Reg reg(int id, int line, int col) const {
    if (final_ && (id < 0 || id >= kMaxRegisters)) throw SyntaxError("program needs too many registers", line, col);
    return static_cast<Reg>(id);
  }

  Stmt simple(Op op, int a, const SNode& n) const {
    Stmt s;
    s.op = op;
    s.a = reg(a, n.line, n.col);
    return s;
  }

  int push_stack() {
    const int id = stack_base_ + sp_++;
    max_sp_ = std::max(max_sp_, sp_);
    return id;
  }

  void lower_node(const SNode& n, Scope& scope, Block& out) {
    switch (n.kind) {
      case Kind::Zero:
        out.push_back(simple(Op::Zero, resolve(n.dst, scope), n));
        break;
      case Kind::Const:
        emit_const(resolve(n.dst, scope), n.konst, n, out);
        break;
      case Kind::Copy: {
        const int dst = resolve(n.dst, scope);
        auto c = scope.consts.find(n.src.name);
        if (!n.src.index && c != scope.consts.end() && scope.regs.count(n.src.name) == 0) {
          emit_const(dst, Natural(c->second), n, out);
          break;
        }
        Stmt s = simple(Op::Copy, dst, n);
        s.b = reg(resolve(n.src, scope), n.line, n.col);
        out.push_back(std::move(s));
        break;
      }
      case Kind::Push0:
        out.push_back(simple(Op::Push0, resolve(n.dst, scope), n));
        break;
      case Kind::Push1:
        out.push_back(simple(Op::Push1, resolve(n.dst, scope), n));
        break;
      case Kind::Pop:
        out.push_back(simple(Op::Pop, resolve(n.dst, scope), n));
        break;
      case Kind::If: {
        Stmt s = simple(Op::IfOdd, resolve(n.dst, scope), n);
        Block a = lower(n.body, scope);
        Block b = lower(n.alt, scope);
        s.body = n.odd ? std::move(a) : std::move(b);
        s.alt = n.odd ? std::move(b) : std::move(a);
        out.push_back(std::move(s));
        break;
      }
      case Kind::Loop: {
        Stmt s = simple(Op::Loop, resolve(n.dst, scope), n);
        s.body = lower(n.body, scope);
        out.push_back(std::move(s));
        break;
      }
      case Kind::For: {
        Stmt s = simple(Op::EachBit, resolve(n.dst, scope), n);
        s.b = reg(resolve(n.src, scope), n.line, n.col);
        s.body = lower(n.body, scope);
        out.push_back(std::move(s));
        break;
      }
      case Kind::Break: {
        Stmt s;
        s.op = Op::Break;
        out.push_back(s);
        break;
      }
      case Kind::Halt: {
        Stmt s;
        s.op = Op::Halt;
        out.push_back(s);
        break;
      }
      case Kind::Block: {
        const int t = push_stack();
        out.push_back(simple(Op::Zero, t, n));
        out.push_back(simple(Op::Push1, t, n));
        Stmt s = simple(Op::Loop, t, n);
        s.body = lower(n.body, scope);
        --sp_;
        out.push_back(std::move(s));
        break;
      }
      case Kind::Call:
        lower_call(n, scope, out);
        break;
      case Kind::Switch: {
        std::vector<int> bits;
        for (const RegRef& r : n.args) bits.push_back(resolve(r, scope));
        if (bits.size() > 32) throw SyntaxError("switch on too many bits", n.line, n.col);
        const std::uint64_t limit = std::uint64_t{1} << bits.size();
        for (std::size_t i = 0; i < n.cases.size(); ++i) {
          if (n.cases[i].hi >= limit) throw SyntaxError("case value out of range", n.line, n.col);
          for (std::size_t j = 0; j < i; ++j) {
            if (n.cases[i].lo <= n.cases[j].hi && n.cases[j].lo <= n.cases[i].hi) {
              throw SyntaxError("overlapping switch cases", n.line, n.col);
            }
          }
        }
        lower_switch(n, bits, 0, 0, scope, out);
        break;
      }
    }
  }

  void emit_const(int dst, const Natural& v, const SNode& n, Block& out) {
    out.push_back(simple(Op::Zero, dst, n));
    for (std::size_t i = v.bit_length(); i-- > 0;) {
      out.push_back(simple(v.bit(i) ? Op::Push1 : Op::Push0, dst, n));
    }
  }

  void lower_switch(const SNode& n, const std::vector<int>& bits, std::size_t level, std::uint64_t prefix,
                    Scope& scope, Block& out) {
    const std::size_t rem = bits.size() - level;
    const std::uint64_t lo = prefix << rem;
    const std::uint64_t hi = ((prefix + 1) << rem) - 1;
    const Case* only = nullptr;
    bool any = false;
    for (const Case& c : n.cases) {
      if (c.lo <= hi && lo <= c.hi) {
        any = true;
        if (c.lo <= lo && hi <= c.hi && c.var.empty()) only = &c;
      }
    }
    if (!any) {
      Block b = lower(n.dflt, scope);
      out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      return;
    }
    if (only != nullptr) {
      Block b = lower(only->body, scope);
      out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      return;
    }
    if (rem == 0) {
      for (const Case& c : n.cases) {
        if (c.lo <= lo && lo <= c.hi) {
          Scope inner = scope;
          inner.consts[c.var] = lo;
          Block b = lower(c.body, inner);
          out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
          return;
        }
      }
      return;
    }
    Stmt s = simple(Op::IfOdd, bits[level], n);
    lower_switch(n, bits, level + 1, prefix * 2 + 1, scope, s.body);
    lower_switch(n, bits, level + 1, prefix * 2, scope, s.alt);
    out.push_back(std::move(s));
  }

  void lower_call(const SNode& n, const Scope& scope, Block& out) {
    auto it = procs_.find(n.callee);
    if (it == procs_.end()) {
      throw SyntaxError("unknown procedure '" + n.callee + "' (procedures must be defined before use)", n.line,
                        n.col);
    }
    const ProcDef& p = *it->second;
    if (p.params.size() != n.args.size()) {
      throw SyntaxError("procedure '" + p.name + "' takes " + std::to_string(p.params.size()) + " arguments", n.line,
                        n.col);
    }
    if (++call_depth_ > kCallDepthLimit) throw SyntaxError("procedure calls nested too deeply", n.line, n.col);
    Scope inner;
    for (std::size_t i = 0; i < p.params.size(); ++i) {
      inner.regs[p.params[i]] = Binding{resolve(n.args[i], scope), 1, false};
    }
    const int saved = sp_;
    for (const Decl& d : p.locals) {
      if (inner.regs.count(d.name) != 0) throw SyntaxError("duplicate name '" + d.name + "'", d.line, d.col);
      Binding b{stack_base_ + sp_, d.size, d.array};
      sp_ += static_cast<int>(d.size);
      max_sp_ = std::max(max_sp_, sp_);
      inner.regs[d.name] = b;
    }
    Block body = lower(p.body, inner);
    sp_ = saved;
    --call_depth_;
    out.insert(out.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
  }

  const ProcTable& procs_;
  int stack_base_;
  int far_base_;
  bool final_;
  int sp_ = 0;
  int max_sp_ = 0;
  int call_depth_ = 0;
};

Program lower_program(const ProgDef& def, const ProcTable& procs) {
  if (def.inputs.size() > 254) throw SyntaxError("too many inputs", def.line, def.col);
  auto build_scope = [&](int far_base, int& fixed) {
    Scope scope;
    fixed = 0;
    auto bind = [&](const std::string& name, Binding b, int line, int col) {
      if (!scope.regs.emplace(name, b).second) throw SyntaxError("duplicate name '" + name + "'", line, col);
    };
    for (const auto& in : def.inputs) bind(in, Binding{fixed++, 1, false}, def.line, def.col);
    bind(def.output, Binding{fixed++, 1, false}, def.line, def.col);
    for (const Decl& d : def.decls) {
      if (d.far) continue;
      bind(d.name, Binding{fixed, d.size, d.array}, d.line, d.col);
      fixed += static_cast<int>(d.size);
    }
    int far = far_base;
    for (const Decl& d : def.decls) {
      if (!d.far) continue;
      bind(d.name, Binding{far, d.size, d.array}, d.line, d.col);
      far += static_cast<int>(d.size);
    }
    return scope;
  };

  int fixed = 0;
  Scope probe = build_scope(0, fixed);
  Lowerer first(procs, fixed, 0, false);
  first.lower(def.body, probe);

  const int far_base = fixed + first.max_stack();
  if (far_base > kMaxRegisters) {
    throw SyntaxError("program '" + def.name + "' needs " + std::to_string(far_base) + " registers", def.line,
                      def.col);
  }
  Scope scope = build_scope(far_base, fixed);
  Lowerer second(procs, fixed, far_base, true);
  Program p;
  p.name = def.name;
  p.arity = static_cast<std::uint8_t>(def.inputs.size());
  p.body = second.lower(def.body, scope);
  int far_count = 0;
  for (const Decl& d : def.decls) {
    if (d.far) far_count += static_cast<int>(d.size);
  }
  const int total = far_base + far_count;
  if (total > kMaxRegisters) {
    throw SyntaxError("program '" + def.name + "' needs " + std::to_string(total) + " registers", def.line, def.col);
  }
  p.nregs = static_cast<std::uint16_t>(total);
  validate(p);
  return p;
}

// -------------------------------------------------------------- printer

void print_block(const Block& b, int indent, std::ostringstream& os);

std::string r(Reg x) { return "r" + std::to_string(x); }

void print_stmt(const Stmt& s, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad;
  switch (s.op) {
    case Op::Zero: os << r(s.a) << " = 0;\n"; break;
    case Op::Copy: os << r(s.a) << " = " << r(s.b) << ";\n"; break;
    case Op::Push0: os << "push0 " << r(s.a) << ";\n"; break;
    case Op::Push1: os << "push1 " << r(s.a) << ";\n"; break;
    case Op::Pop: os << "pop " << r(s.a) << ";\n"; break;
    case Op::IfOdd:
      os << "if odd " << r(s.a) << " {\n";
      print_block(s.body, indent + 1, os);
      os << pad << "} else {\n";
      print_block(s.alt, indent + 1, os);
      os << pad << "}\n";
      break;
    case Op::Loop:
      os << "loop " << r(s.a) << " {\n";
      print_block(s.body, indent + 1, os);
      os << pad << "}\n";
      break;
    case Op::EachBit:
      os << "for " << r(s.b) << " in " << r(s.a) << " {\n";
      print_block(s.body, indent + 1, os);
      os << pad << "}\n";
      break;
    case Op::Break: os << "break;\n"; break;
    case Op::Halt: os << "halt;\n"; break;
  }
}

void print_block(const Block& b, int indent, std::ostringstream& os) {
  for (const Stmt& s : b) print_stmt(s, indent, os);
}

}  // namespace

Library::Library() = default;
Library::~Library() = default;
Library::Library(Library&&) noexcept = default;
Library& Library::operator=(Library&&) noexcept = default;

void Library::add_source(std::string_view text) {
  Parser parser(lex(text));
  while (!parser.at_end()) {
    const Token& t = parser.peek();
    if (t.kind == Tok::Ident && t.text == "proc") {
      parser.next();
      auto def = std::make_shared<ProcDef>(parser.proc());
      if (procs_.count(def->name) != 0) parser.fail("duplicate procedure '" + def->name + "'", t);
      procs_.emplace(def->name, std::move(def));
    } else if (t.kind == Tok::Ident && t.text == "program") {
      parser.next();
      ProgDef def = parser.program();
      if (programs_.count(def.name) != 0) parser.fail("duplicate program '" + def.name + "'", t);
      if (def.name.size() > 255) parser.fail("program name too long", t);
      Program p = lower_program(def, procs_);
      programs_.emplace(p.name, std::move(p));
    } else {
      if (t.kind == Tok::Ident && kUnbounded.count(t.text) != 0) parser.unbounded(t);
      parser.fail("expected 'proc' or 'program' but found " + Parser::describe(t), t);
    }
  }
}

bool Library::has_program(std::string_view name) const { return programs_.find(name) != programs_.end(); }

const Program& Library::program(std::string_view name) const {
  auto it = programs_.find(name);
  if (it == programs_.end()) throw ProgramError("no program named " + std::string(name));
  return it->second;
}

std::vector<std::string> Library::program_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : programs_) out.push_back(name);
  return out;
}

Program parse_program(std::string_view text) {
  Library lib;
  lib.add_source(text);
  const auto names = lib.program_names();
  if (names.size() != 1) throw SyntaxError("expected exactly one program, found " + std::to_string(names.size()), 1, 1);
  return lib.program(names.front());
}

std::string format(const Program& p) {
  std::ostringstream os;
  os << "program " << p.name << "(";
  for (int i = 0; i < p.arity; ++i) os << (i ? ", " : "") << r(static_cast<Reg>(i));
  os << ") -> " << r(p.output()) << " {\n";
  if (p.nregs > p.arity + 1) {
    os << "  var ";
    for (int i = p.arity + 1; i < p.nregs; ++i) os << (i > p.arity + 1 ? ", " : "") << r(static_cast<Reg>(i));
    os << ";\n";
  }
  print_block(p.body, 1, os);
  os << "}\n";
  return os.str();
}

}  // namespace selk::loop
