#include "selk/prf/prfcheck.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "selk/arith/arith.hpp"
#include "selk/kernel/codec.hpp"
#include "selk/loop/codec.hpp"
#include "selk/loop/embedded.hpp"
#include "selk/loop/eval.hpp"
#include "selk/loop/stdlib.hpp"

namespace selk::prf {

namespace {

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

Natural code_of_bytes(const kernel::Bytes& b) {
  kernel::Bytes c{0x01};
  c.insert(c.end(), b.begin(), b.end());
  return Natural::from_bytes_be(c);
}

}  // namespace

const CheckerBuild& build_prfcheck() {
  static const CheckerBuild build = [] {
    const loop::Library& lib = loop::builtin_library();
    for (const char* name : {arith::kCheckerName, arith::kLeqName}) {
      if (!lib.has_program(name)) throw std::logic_error(std::string("library lacks program ") + name);
    }
    const std::string_view shared = loop::embedded_source("lib.loop");
    const std::string_view prf = loop::embedded_source("prf.loop");
    if (shared.empty() || prf.empty()) throw std::logic_error("checker sources are not embedded");
    CheckerBuild b;
    b.source = std::string(shared) + "\n" + std::string(prf);
    b.program = lib.program(arith::kCheckerName);
    if (b.program.arity != 3) throw std::logic_error("PRF must take three inputs");
    const auto bytes = loop::encode(b.program);
    b.code = loop::program_code(b.program);
    b.version_hash = sha256_hex(bytes);
    return b;
  }();
  return build;
}

std::uint64_t global_budget(std::uint64_t bitlen_p, std::uint64_t bitlen_x) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (bitlen_p > kMax / 4 || bitlen_x > kMax / 4) return kMax;
  const std::uint64_t u = bitlen_p + bitlen_x + 16;
  std::uint64_t acc = 64;
  for (int i = 0; i < 3; ++i) {
    if (u > kMax / acc) return kMax;
    acc *= u;
  }
  return acc;
}

const loop::Program* registered_checker(const TheorySpec& t) {
  const kernel::WhitelistEntry* w = t.find(arith::kCheckerName);
  return w == nullptr ? nullptr : &w->program;
}

PrfRun run_prf(const TheorySpec& t, const Natural& p, const Natural& x) {
  return run_prf(t, arith::theory_code(t), p, x);
}

PrfRun run_prf(const TheorySpec& t, const Natural& e, const Natural& p, const Natural& x) {
  const loop::Program* prog = registered_checker(t);
  if (prog == nullptr) throw std::invalid_argument("theory " + t.name + " has no registered proof checker");
  const Natural in[] = {e, p, x};
  const loop::RunResult r = loop::run(*prog, in);
  return {r.output == Natural(1), r.steps};
}

KernelRun kernel_accepts(const TheorySpec& t, const Natural& p, const Natural& x) {
  KernelRun out;
  Derivation d;
  try {
    d = arith::ungodel_derivation(p);
  } catch (const arith::CodeError& e) {
    out.verdict.reason = kernel::Reason::MalformedEncoding;
    out.verdict.detail = e.what();
    return out;
  }
  out.decoded = true;
  out.verdict = kernel::check(t, d);
  out.accepted = out.verdict.valid && arith::godel(out.verdict.conclusion) == x;
  return out;
}

CorpusItem item_of(const Derivation& d, std::string label, const std::optional<Formula>& claim) {
  if (d.lines.empty()) throw std::invalid_argument("empty derivation");
  const Formula& x = claim ? *claim : d.lines.back().formula;
  return {arith::godel(d), arith::godel(x), std::move(label)};
}

CorpusItem raw_item(const Natural& n, std::string label) {
  return {n, arith::contradiction_code(), std::move(label)};
}

DiffReport differential_check(const TheorySpec& t, std::span<const CorpusItem> corpus, unsigned threads) {
  DiffReport report;
  report.items = corpus.size();
  if (registered_checker(t) == nullptr) {
    throw std::invalid_argument("theory " + t.name + " has no registered proof checker");
  }
  const Natural e = arith::theory_code(t);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, corpus.size())));

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      const CorpusItem& item = corpus[i];
      const KernelRun k = kernel_accepts(t, item.p, item.x);
      const PrfRun r = run_prf(t, e, item.p, item.x);
      std::lock_guard lock(mu);
      report.max_prf_steps = std::max(report.max_prf_steps, r.steps);
      report.total_prf_steps += r.steps;
      if (k.accepted && r.accepted) ++report.accepted;
      if (k.accepted == r.accepted) continue;
      Disagreement d;
      d.index = i;
      d.label = item.label;
      d.kernel = k.accepted;
      d.prf = r.accepted;
      d.budget_rejection =
          k.accepted && k.verdict.replay_steps > global_budget(item.p.bit_length(), item.x.bit_length());
      d.detail = k.decoded ? kernel::reason_name(k.verdict.reason) : "undecodable";
      report.disagreements.push_back(std::move(d));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  std::sort(report.disagreements.begin(), report.disagreements.end(),
            [](const Disagreement& a, const Disagreement& b) { return a.index < b.index; });
  return report;
}

std::vector<CorpusItem> byte_mutants(const Derivation& d, std::size_t count, std::uint64_t seed) {
  kernel::Bytes bytes;
  kernel::encode(d, bytes);
  const Natural x = arith::godel(d.lines.back().formula);
  std::mt19937_64 rng(seed);
  std::vector<CorpusItem> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    kernel::Bytes m = bytes;
    const std::size_t at = rng() % m.size();
    m[at] = static_cast<std::uint8_t>(m[at] ^ (1 + rng() % 255));
    out.push_back({code_of_bytes(m), x, "mutant@" + std::to_string(at)});
  }
  return out;
}

}  // namespace selk::prf
