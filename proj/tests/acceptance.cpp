// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "selk/arith/arith.hpp"
#include "selk/cli/cli.hpp"
#include "selk/io/files.hpp"
#include "selk/kernel/check.hpp"
#include "selk/kernel/codec.hpp"
#include "selk/prf/prfcheck.hpp"
#include "selk/selector/selector.hpp"

using namespace selk;
using kernel::Derivation;
using kernel::Formula;
using kernel::TheorySpec;
namespace just = kernel::just;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int g_failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  if (!o.pass) ++g_failures;
  std::printf("criterion %2d %s: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", title, seconds_since(start),
              o.detail.c_str());
  std::fflush(stdout);
}

bool same_bytes(const Formula& a, const Formula& b) { return kernel::to_bytes(a) == kernel::to_bytes(b); }

std::vector<Natural> criterion1_ns(std::uint64_t limit, bool with_random) {
  std::vector<Natural> ns;
  for (std::uint64_t n = 0; n < limit; ++n) ns.emplace_back(n);
  if (with_random) {
    std::mt19937_64 rng(20261015);
    for (int i = 0; i < 200; ++i) ns.emplace_back(rng());
  }
  return ns;
}

// Selector totality on one theory; counts Case 1 paths and meta replays
// that return 0.
Outcome totality(const TheorySpec& t, const std::vector<Natural>& ns, std::size_t* case1, std::size_t* replay_zero) {
  Outcome o;
  for (const Natural& n : ns) {
    selector::Audit a;
    const Derivation d = selector::select_con_instance(t, n, &a);
    const kernel::Verdict v = kernel::check(t, d);
    if (!v.valid) o.fail("invalid output at n=" + n.to_decimal());
    if (!same_bytes(v.conclusion, arith::sentence_con_n(t, n))) o.fail("wrong conclusion at n=" + n.to_decimal());
    if (a.lines_emitted > a.line_bound || a.prf_replays != 1) o.fail("audit bound broken at n=" + n.to_decimal());
    if (case1 != nullptr && a.case_taken == 1) ++*case1;
    if (replay_zero != nullptr && !prf::run_prf(t, n, arith::contradiction_code()).accepted) ++*replay_zero;
  }
  return o;
}

Outcome prov_star(const TheorySpec& t) {
  Outcome o;
  const Derivation d = selector::refute_prov_star(t);
  const kernel::Verdict v = kernel::check(t, d);
  const Formula goal = kernel::neg(arith::sentence_prov_star(t, arith::quote(arith::contradiction())));
  if (!v.valid || !same_bytes(v.conclusion, goal)) o.fail("refutation fails in " + t.name);
  return o;
}

// Theorems of T0 for the D1 criterion: 40 assorted plus 10 selector outputs.
std::vector<Derivation> d1_theorems(const TheorySpec& t) {
  std::vector<Derivation> out;
  using kernel::Line;
  auto num = [](std::uint64_t v) { return kernel::numeral(Natural(v)); };
  for (std::uint64_t k = 0; k < 10; ++k) out.push_back({{Line{kernel::eq(num(k * 37), num(k * 37)), just::e1()}}});
  for (std::uint64_t k = 0; k < 10; ++k) {
    const bool le = k % 3 != 0;
    const std::uint64_t a = le ? k : k + 20;
    const Formula f = kernel::eq(kernel::ap(arith::kLeqName, {num(a), num(11)}), le ? num(1) : kernel::zero());
    out.push_back({{Line{f, just::compute()}}});
  }
  for (std::uint64_t k = 0; k < 5; ++k) {
    out.push_back({{Line{kernel::neg(kernel::eq(kernel::b1(num(k)), kernel::zero())), just::numeral_axiom(1)}}});
  }
  for (std::uint64_t k = 0; k < 5; ++k) {
    const Formula a = kernel::eq(num(k), num(k + 1));
    const Formula b = kernel::neg(kernel::eq(num(2 * k), kernel::zero()));
    out.push_back({{Line{kernel::imp(a, kernel::imp(b, a)), just::logic(1)}}});
  }
  for (std::uint64_t k = 0; k < 5; ++k) {
    selector::ProofBuilder b;
    const auto n1 = b.add(kernel::neg(kernel::eq(kernel::b1(num(k)), kernel::zero())), just::numeral_axiom(1));
    b.neq_symmetry(n1);
    out.push_back(b.take());
  }
  for (std::uint64_t k = 0; k < 4; ++k) {
    selector::ProofBuilder b;
    const auto r = b.add(kernel::eq(num(k + 3), num(k + 3)), just::e1());
    b.and_intro(r, b.eq_symmetry(r));
    out.push_back(b.take());
  }
  out.push_back(selector::refute_prov_star(t));
  for (std::uint64_t n = 0; n < 10; ++n) out.push_back(selector::select_con_instance(t, Natural(n * 101)));
  return out;
}

std::vector<prf::CorpusItem> random_naturals(std::size_t count) {
  std::mt19937_64 rng(4);
  std::vector<prf::CorpusItem> out;
  for (std::size_t i = 0; i < count; ++i) {
    Natural n;
    if (i % 4 == 0) {
      // A derivation-code header followed by junk bits.
      n = Natural(0x130);
      const int extra = 8 + static_cast<int>(rng() % 120);
      for (int b = 0; b < extra; ++b) n.push_low(rng() % 2);
    } else {
      const int bits = static_cast<int>(rng() % 512);
      for (int b = 0; b < bits; ++b) n.push_low(b == 0 || rng() % 2);
    }
    out.push_back(prf::raw_item(n, "rand" + std::to_string(i)));
  }
  return out;
}

}  // namespace

int main() {
  const TheorySpec& t0 = arith::t0();
  const auto ns = criterion1_ns(4096, true);
  std::size_t case1 = 0;
  std::size_t replay_zero = 0;

  report(1, "selector totality on T0 (n in 0..4095 and 200 random n < 2^64)", [&] {
    const auto start = Clock::now();
    Outcome o = totality(t0, ns, &case1, &replay_zero);
    const double secs = seconds_since(start);
    if (secs > 600) o.fail("took " + std::to_string(secs) + " s, target is 600 s");
    o.detail += std::to_string(ns.size()) + " instances";
    return o;
  });

  report(2, "Case 2 on T_bad with a hand-built proof of 0 = 1", [] {
    Outcome o;
    const TheorySpec t = arith::t_bad();
    const Derivation bottom{{kernel::Line{arith::contradiction(), just::extra(0)}}};
    const Natural n = arith::godel(bottom);
    selector::Audit a;
    const Derivation d = selector::select_con_instance(t, n, &a);
    const kernel::Verdict v = kernel::check(t, d);
    if (a.case_taken != 2) o.fail("took Case " + std::to_string(a.case_taken));
    if (!v.valid || !same_bytes(v.conclusion, arith::sentence_con_n(t, n))) o.fail("output does not kernel-check");
    o.detail = std::to_string(d.lines.size()) + " lines";
    return o;
  });

  report(3, "meta replay PRF(e0, n, c) = 0 on the criterion-1 corpus", [&] {
    Outcome o;
    if (replay_zero != ns.size()) o.fail(std::to_string(ns.size() - replay_zero) + " replays returned 1");
    if (case1 != ns.size()) o.fail(std::to_string(ns.size() - case1) + " outputs took Case 2");
    o.detail += std::to_string(replay_zero) + "/" + std::to_string(ns.size()) + " zero";
    return o;
  });

  report(4, "kernel and PRF agree (criterion-1 outputs, 500 mutants, 10^4 naturals)", [&] {
    Outcome o;
    const auto start = Clock::now();
    std::size_t items = 0;
    std::size_t disagreements = 0;
    std::size_t budget = 0;
    std::size_t accepted = 0;
    auto run = [&](const std::vector<prf::CorpusItem>& corpus) {
      const prf::DiffReport r = prf::differential_check(t0, corpus);
      items += r.items;
      accepted += r.accepted;
      disagreements += r.disagreements.size();
      for (const auto& d : r.disagreements) {
        if (d.budget_rejection) ++budget;
        o.fail("disagreement on " + d.label + " (" + d.detail + ")");
      }
    };
    constexpr std::size_t kChunk = 128;
    for (std::size_t i = 0; i < ns.size(); i += kChunk) {
      std::vector<prf::CorpusItem> chunk;
      for (std::size_t k = i; k < std::min(ns.size(), i + kChunk); ++k) {
        chunk.push_back(prf::item_of(selector::select_con_instance(t0, ns[k]), "con" + ns[k].to_decimal()));
      }
      run(chunk);
    }
    std::vector<prf::CorpusItem> mutants;
    const std::uint64_t bases[] = {0, 1, 77, 4095, 0xFFFFFFFFFFFFull};
    for (std::size_t b = 0; b < 5; ++b) {
      for (auto& m : prf::byte_mutants(selector::select_con_instance(t0, Natural(bases[b])), 100, 100 + b)) {
        mutants.push_back(std::move(m));
      }
    }
    run(mutants);
    run(random_naturals(10000));
    const double secs = seconds_since(start);
    if (secs > 1800) o.fail("took " + std::to_string(secs) + " s, target is 1800 s");
    std::ostringstream s;
    s << items << " items, " << accepted << " accepted by both, " << disagreements << " disagreements (" << budget
      << " budget)";
    o.detail = s.str() + (o.pass ? "" : "; " + o.detail);
    return o;
  });

  report(5, "D1 internalization of 50 theorems including 10 selector outputs", [&] {
    Outcome o;
    const auto theorems = d1_theorems(t0);
    for (std::size_t i = 0; i < theorems.size(); ++i) {
      const kernel::Verdict in = kernel::check(t0, theorems[i]);
      if (!in.valid) {
        o.fail("theorem " + std::to_string(i) + " is not valid");
        continue;
      }
      const Derivation d = selector::internalize_d1(t0, theorems[i]);
      const kernel::Verdict v = kernel::check(t0, d);
      if (!v.valid || !same_bytes(v.conclusion, arith::sentence_prov(t0, arith::quote(in.conclusion)))) {
        o.fail("internalization " + std::to_string(i) + " fails");
      }
    }
    o.detail += std::to_string(theorems.size()) + " theorems";
    return o;
  });

  const auto tower = selector::build_tower(t0, 3);

  report(6, "Prov* refutation in T0, T_bad and tower stages", [&] {
    Outcome o;
    for (const auto& t : tower) {
      if (!prov_star(t).pass) o.fail("fails in " + t.name);
    }
    if (!prov_star(arith::t_bad()).pass) o.fail("fails in T_bad");
    return o;
  });

  report(7, "bounded reduction in T0 + ConBd(2^16)", [&] {
    Outcome o;
    const Natural m(std::uint64_t{1} << 16);
    const TheorySpec tp = selector::with_con_bd(t0, m);
    std::mt19937_64 rng(7);
    std::vector<Natural> sample{m};
    while (sample.size() < 100) sample.emplace_back(rng() % ((std::uint64_t{1} << 16) + 1));
    for (const Natural& n : sample) {
      const kernel::Verdict v = kernel::check(tp, selector::reduce_bounded(tp, n));
      if (!v.valid || !same_bytes(v.conclusion, arith::sentence_con_n(t0, n))) o.fail("fails at n=" + n.to_decimal());
    }
    try {
      selector::reduce_bounded(tp, Natural((std::uint64_t{1} << 16) + 1));
      o.fail("n = 2^16 + 1 was not refused");
    } catch (const selector::SelectorError& e) {
      if (e.kind() != selector::ErrorKind::GuardFailed) o.fail("wrong refusal kind");
    }
    return o;
  });

  report(8, "tower stability: criteria 1 (0..255) and 6 on T1, T2, T3", [&] {
    Outcome o;
    const auto small = criterion1_ns(256, false);
    for (std::size_t i = 1; i < tower.size(); ++i) {
      std::size_t c1 = 0;
      const Outcome a = totality(tower[i], small, &c1, nullptr);
      if (!a.pass) o.fail(tower[i].name + ": " + a.detail);
      if (c1 != small.size()) o.fail(tower[i].name + ": Case 2 taken");
      if (!prov_star(tower[i]).pass) o.fail(tower[i].name + ": Prov* refutation fails");
    }
    return o;
  });

  report(10, "bench CSV for n in 0..1023 is deterministic", [&] {
    Outcome o;
    std::vector<Natural> range;
    for (std::uint64_t n = 0; n < 1024; ++n) range.emplace_back(n);
    const auto a = io::parse_bench_csv(io::bench_csv(selector::bench_sizes(t0, range)));
    const auto b = io::parse_bench_csv(io::bench_csv(selector::bench_sizes(t0, range)));
    if (a.size() != 1024 || b.size() != 1024) o.fail("wrong row count");
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> bytes_by_shape;
    std::uint64_t smallest = a.empty() ? 0 : a[0].proof_bytes;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (!(a[i].n == b[i].n) || a[i].bitlen_n != b[i].bitlen_n || a[i].case_taken != b[i].case_taken ||
          a[i].proof_bytes != b[i].proof_bytes || a[i].replay_steps != b[i].replay_steps) {
        o.fail("row " + std::to_string(i) + " differs between runs");
      }
      if (a[i].proof_bytes == 0) o.fail("zero proof_bytes");
      if (a[i].proof_bytes < smallest) o.fail("n = 0 is not the smallest derivation");
      if (a[i].case_taken != 1) continue;
      const auto [it, fresh] = bytes_by_shape.emplace(std::make_pair(a[i].bitlen_n, a[i].replay_steps), a[i].proof_bytes);
      if (!fresh && it->second != a[i].proof_bytes) o.fail("proof_bytes depends on more than bit-length and steps");
    }
    o.detail = std::to_string(bytes_by_shape.size()) + " (bitlen, steps) classes";
    return o;
  });

  // Last, so it covers every suite above.
  report(9, "never-universal guard never trips; prove-con exits 4", [] {
    Outcome o;
    const char* argv[] = {"selk", "prove-con"};
    std::ostringstream out, err;
    const int code = cli::run(2, argv, out, err);
    if (code != 4) o.fail("prove-con exited " + std::to_string(code));
    if (selector::universal_guard_trips() != 0) o.fail("guard tripped");
    o.detail = "guard trips " + std::to_string(selector::universal_guard_trips());
    return o;
  });

  std::printf("%s: %d failing criteria\n", g_failures == 0 ? "ACCEPTED" : "REJECTED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
