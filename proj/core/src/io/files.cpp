#include "selk/io/files.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "selk/arith/arith.hpp"
#include "selk/kernel/codec.hpp"

namespace selk::io {

namespace fs = std::filesystem;

namespace {

void put_u32(Bytes& out, std::size_t v) {
  if (v > 0xFFFFFFFFu) throw FormatError("section longer than 4 GiB");
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_section(Bytes& out, const Bytes& body) {
  put_u32(out, body.size());
  out.insert(out.end(), body.begin(), body.end());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (in_.size() - pos_ < n) throw FormatError(std::string("truncated ") + what);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32(const char* what) {
    std::uint32_t v = 0;
    for (std::uint8_t b : take(4, what)) v = (v << 8) | b;
    return v;
  }
  std::uint16_t u16(const char* what) {
    const auto s = take(2, what);
    return static_cast<std::uint16_t>((s[0] << 8) | s[1]);
  }
  std::span<const std::uint8_t> section(const char* what) { return take(u32(what), what); }
  void header(const char (&magic)[4], std::uint8_t version, const char* kind) {
    const auto m = take(4, "magic");
    if (!std::equal(m.begin(), m.end(), magic)) throw FormatError(std::string("not a ") + kind + " (bad magic)");
    const std::uint8_t v = take(1, "version")[0];
    if (v != version) throw FormatError(std::string("unsupported ") + kind + " version " + std::to_string(v));
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

template <class F>
auto decoding(const char* what, F&& f) {
  try {
    return f();
  } catch (const kernel::DecodeError& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto at = s.find(sep);
    out.push_back(s.substr(0, at));
    if (at == std::string_view::npos) return out;
    s.remove_prefix(at + 1);
  }
}

template <class T>
T parse_int(std::string_view s, const char* what) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw FormatError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

Natural parse_natural(std::string_view s, const char* what) {
  const auto n = Natural::parse(s);
  if (!n) throw FormatError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return *n;
}

}  // namespace

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return out;
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::random_device rd;
  const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

bool operator==(const ProofFile& a, const ProofFile& b) {
  return kernel::to_bytes(a.theory) == kernel::to_bytes(b.theory) && a.derivation == b.derivation &&
         a.conclusion == b.conclusion;
}

ProofFile make_proof_file(const TheorySpec& t, const Derivation& d) {
  if (d.lines.empty()) throw std::invalid_argument("empty derivation");
  return {t, d, d.lines.back().formula};
}

Bytes encode_proof_file(const ProofFile& f) {
  Bytes out(std::begin(kProofMagic), std::end(kProofMagic));
  out.push_back(kProofVersion);
  put_section(out, kernel::to_bytes(f.theory));
  put_section(out, kernel::to_bytes(f.derivation));
  put_section(out, kernel::to_bytes(f.conclusion));
  return out;
}

ProofFile decode_proof_file(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.header(kProofMagic, kProofVersion, "proof file");
  ProofFile f;
  f.theory = decoding("theory", [&] { return kernel::theory_from_bytes(r.section("theory")); });
  f.theory.name = "embedded";
  f.derivation = decoding("derivation", [&] { return kernel::derivation_from_bytes(r.section("derivation")); });
  f.conclusion = decoding("conclusion", [&] { return kernel::formula_from_bytes(r.section("conclusion")); });
  if (!r.done()) throw FormatError("trailing bytes after proof file");
  if (f.derivation.lines.empty() || !(f.derivation.lines.back().formula == f.conclusion)) {
    throw FormatError("stored conclusion is not the derivation's last line");
  }
  return f;
}

ProofSections split_proof_file(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.header(kProofMagic, kProofVersion, "proof file");
  ProofSections s;
  auto copy = [&](const char* what) {
    const auto b = r.section(what);
    return Bytes(b.begin(), b.end());
  };
  s.theory = copy("theory");
  s.derivation = copy("derivation");
  s.conclusion = copy("conclusion");
  if (!r.done()) throw FormatError("trailing bytes after proof file");
  return s;
}

void save_proof(const fs::path& path, const ProofFile& f) { write_file_atomic(path, encode_proof_file(f)); }

ProofFile load_proof(const fs::path& path) { return decode_proof_file(read_file(path)); }

Bytes encode_registry(const std::vector<TheorySpec>& entries) {
  Bytes out(std::begin(kRegistryMagic), std::end(kRegistryMagic));
  out.push_back(kRegistryVersion);
  put_u32(out, entries.size());
  for (const TheorySpec& t : entries) {
    if (t.name.empty() || t.name.size() > 0xFFFF) throw std::invalid_argument("registry names must be 1..65535 bytes");
    out.push_back(static_cast<std::uint8_t>(t.name.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(t.name.size()));
    out.insert(out.end(), t.name.begin(), t.name.end());
    put_section(out, kernel::to_bytes(t));
  }
  return out;
}

std::vector<TheorySpec> decode_registry(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.header(kRegistryMagic, kRegistryVersion, "registry");
  const std::uint32_t count = r.u32("entry count");
  std::vector<TheorySpec> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name = r.take(r.u16("name length"), "name");
    TheorySpec t = decoding("theory", [&] { return kernel::theory_from_bytes(r.section("theory")); });
    t.name.assign(name.begin(), name.end());
    out.push_back(std::move(t));
  }
  if (!r.done()) throw FormatError("trailing bytes after registry");
  return out;
}

Registry::Registry(fs::path dir) : dir_(std::move(dir)) {}

fs::path Registry::default_dir() {
  const char* env = std::getenv(kRegistryEnv);
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".selk");
}

std::vector<TheorySpec> Registry::entries() const {
  std::error_code ec;
  if (!fs::exists(file(), ec)) return {};
  return decode_registry(read_file(file()));
}

std::optional<TheorySpec> Registry::find(const std::string& name) const {
  if (name == arith::t0().name) return arith::t0();
  if (name == "T_bad") return arith::t_bad();
  for (TheorySpec& t : entries()) {
    if (t.name == name) return std::move(t);
  }
  return std::nullopt;
}

void Registry::put(std::span<const TheorySpec> theories) const {
  std::vector<TheorySpec> all = entries();
  for (const TheorySpec& t : theories) {
    auto it = std::find_if(all.begin(), all.end(), [&](const TheorySpec& e) { return e.name == t.name; });
    if (it != all.end()) {
      *it = t;
    } else {
      all.push_back(t);
    }
  }
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create registry directory " + dir_.string());
  write_file_atomic(file(), encode_registry(all));
}

std::string bench_csv(std::span<const selector::BenchRow> rows) {
  std::string out = std::string(selector::kBenchHeader) + "\n";
  for (const auto& r : rows) out += selector::bench_csv_row(r) + "\n";
  return out;
}

std::vector<selector::BenchRow> parse_bench_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || trim(lines[0]) != selector::kBenchHeader) throw FormatError("bad bench CSV header");
  std::vector<selector::BenchRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(trim(lines[i]), ',');
    if (f.size() != 6) throw FormatError("bench CSV row " + std::to_string(i) + " needs 6 fields");
    rows.push_back({parse_natural(f[0], "n"), parse_int<std::uint64_t>(f[1], "bitlen_n"), parse_int<int>(f[2], "case"),
                    parse_int<std::uint64_t>(f[3], "proof_bytes"), parse_int<std::uint64_t>(f[4], "replay_steps"),
                    parse_int<std::uint64_t>(f[5], "check_micros")});
  }
  return rows;
}

std::string corpus_text(std::span<const prf::CorpusItem> items) {
  std::string out;
  for (const auto& it : items) {
    if (it.label.empty() || it.label.find_first_of(" \t\n") != std::string::npos) {
      throw std::invalid_argument("corpus labels must be non-empty without whitespace");
    }
    out += it.label + " " + it.p.to_hex() + " " + it.x.to_hex() + "\n";
  }
  return out;
}

std::vector<prf::CorpusItem> parse_corpus(std::string_view text) {
  std::vector<prf::CorpusItem> out;
  std::size_t lineno = 0;
  for (std::string_view line : split(text, '\n')) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line, ' ');
    if (f.size() != 3) throw FormatError("corpus line " + std::to_string(lineno) + " needs 3 fields");
    out.push_back({parse_natural(f[1], "p"), parse_natural(f[2], "x"), std::string(f[0])});
  }
  return out;
}

}  // namespace selk::io
