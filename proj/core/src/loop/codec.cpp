#include "selk/loop/codec.hpp"

#include <string>

namespace selk::loop {

namespace {

void encode_stmt(const Stmt& s, std::vector<std::uint8_t>& out);

void encode_block(const Block& b, std::size_t from, std::vector<std::uint8_t>& out) {
  if (from >= b.size()) {
    out.push_back(tag::kNop);
    return;
  }
  for (std::size_t i = from; i + 1 < b.size(); ++i) {
    out.push_back(tag::kSeq);
    encode_stmt(b[i], out);
  }
  encode_stmt(b.back(), out);
}

void encode_stmt(const Stmt& s, std::vector<std::uint8_t>& out) {
  switch (s.op) {
    case Op::Zero: out.insert(out.end(), {tag::kZero, s.a}); break;
    case Op::Copy: out.insert(out.end(), {tag::kCopy, s.a, s.b}); break;
    case Op::Push0: out.insert(out.end(), {tag::kPush0, s.a}); break;
    case Op::Push1: out.insert(out.end(), {tag::kPush1, s.a}); break;
    case Op::Pop: out.insert(out.end(), {tag::kPop, s.a}); break;
    case Op::IfOdd:
      out.insert(out.end(), {tag::kIf, s.a});
      encode_block(s.body, 0, out);
      encode_block(s.alt, 0, out);
      break;
    case Op::Loop:
      out.insert(out.end(), {tag::kLoop, s.a});
      encode_block(s.body, 0, out);
      break;
    case Op::EachBit:
      out.insert(out.end(), {tag::kEach, s.a, s.b});
      encode_block(s.body, 0, out);
      break;
    case Op::Break: out.push_back(tag::kBreak); break;
    case Op::Halt: out.push_back(tag::kHalt); break;
  }
}

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, std::size_t& pos) : bytes_(bytes), pos_(pos) {}

  std::uint8_t byte() {
    if (pos_ >= bytes_.size()) throw CodeError("truncated program code");
    return bytes_[pos_++];
  }

  std::uint8_t peek() const {
    if (pos_ >= bytes_.size()) throw CodeError("truncated program code");
    return bytes_[pos_];
  }

  Block block(int depth) {
    if (depth > kMaxNesting) throw CodeError("program nesting too deep");
    Block out;
    if (peek() == tag::kNop) {
      ++pos_;
      return out;
    }
    while (peek() == tag::kSeq) {
      ++pos_;
      const std::uint8_t t = peek();
      if (t == tag::kSeq || t == tag::kNop) throw CodeError("non-canonical sequence");
      out.push_back(stmt(depth));
      if (peek() == tag::kNop) throw CodeError("non-canonical sequence");
    }
    out.push_back(stmt(depth));
    return out;
  }

  Stmt stmt(int depth) {
    Stmt s;
    const std::uint8_t t = byte();
    switch (t) {
      case tag::kZero: s.op = Op::Zero; s.a = byte(); break;
      case tag::kCopy: s.op = Op::Copy; s.a = byte(); s.b = byte(); break;
      case tag::kPush0: s.op = Op::Push0; s.a = byte(); break;
      case tag::kPush1: s.op = Op::Push1; s.a = byte(); break;
      case tag::kPop: s.op = Op::Pop; s.a = byte(); break;
      case tag::kIf:
        s.op = Op::IfOdd;
        s.a = byte();
        s.body = block(depth + 1);
        s.alt = block(depth + 1);
        break;
      case tag::kLoop:
        s.op = Op::Loop;
        s.a = byte();
        s.body = block(depth + 1);
        break;
      case tag::kEach:
        s.op = Op::EachBit;
        s.a = byte();
        s.b = byte();
        s.body = block(depth + 1);
        break;
      case tag::kBreak: s.op = Op::Break; break;
      case tag::kHalt: s.op = Op::Halt; break;
      default: throw CodeError("unknown statement tag " + std::to_string(t));
    }
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t& pos_;
};

}  // namespace

void encode_into(const Program& p, std::vector<std::uint8_t>& out) {
  validate(p);
  out.push_back(tag::kProgram);
  out.push_back(static_cast<std::uint8_t>(p.name.size()));
  out.insert(out.end(), p.name.begin(), p.name.end());
  out.push_back(p.arity);
  out.push_back(static_cast<std::uint8_t>(p.nregs));
  encode_block(p.body, 0, out);
}

std::vector<std::uint8_t> encode(const Program& p) {
  std::vector<std::uint8_t> out;
  encode_into(p, out);
  return out;
}

Program decode_at(std::span<const std::uint8_t> bytes, std::size_t& pos) {
  Reader r(bytes, pos);
  if (r.byte() != tag::kProgram) throw CodeError("not a program node");
  Program p;
  const std::uint8_t len = r.byte();
  if (len == 0) throw CodeError("empty program name");
  for (int i = 0; i < len; ++i) p.name.push_back(static_cast<char>(r.byte()));
  p.arity = r.byte();
  p.nregs = r.byte();
  p.body = r.block(0);
  try {
    validate(p);
  } catch (const ProgramError& e) {
    throw CodeError(e.what());
  }
  return p;
}

Program decode(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  Program p = decode_at(bytes, pos);
  if (pos != bytes.size()) throw CodeError("trailing bytes after program");
  return p;
}

Natural program_code(const Program& p) {
  std::vector<std::uint8_t> bytes{0x01};
  encode_into(p, bytes);
  return Natural::from_bytes_be(bytes);
}

Program from_code(const Natural& code) {
  const auto bytes = code.to_bytes_be();
  if (bytes.empty() || bytes[0] != 0x01) throw CodeError("missing code sentinel");
  return decode(std::span(bytes).subspan(1));
}

}  // namespace selk::loop
