#include "selk/cli/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <random>

#include "selk/arith/arith.hpp"
#include "selk/io/files.hpp"
#include "selk/kernel/check.hpp"
#include "selk/kernel/codec.hpp"
#include "selk/kernel/text.hpp"
#include "selk/loop/program.hpp"
#include "selk/loop/text.hpp"
#include "selk/selector/selector.hpp"

namespace selk::cli {

namespace {

using kernel::TheorySpec;

constexpr const char* kConNotice =
    "note: Con(T) is constructible as a sentence, but no command derives it; "
    "by the second incompleteness theorem a consistent T cannot prove it.";

// Long numerals (theory codes) make sentences huge; shorten for display.
std::string brief(const std::string& text) {
  constexpr std::size_t kMax = 200;
  if (text.size() <= kMax) return text;
  return text.substr(0, kMax) + "... (" + std::to_string(text.size()) + " chars)";
}

struct Failure {
  int code;
  std::string message;
};

Natural parse_n(const std::string& text, const char* what) {
  const auto n = Natural::parse(text);
  if (!n) throw Failure{kParse, std::string("bad ") + what + " '" + text + "'"};
  return *n;
}

std::vector<Natural> parse_range(const std::string& spec) {
  std::vector<Natural> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_n(spec.substr(0, dots), "range start").to_u64();
    const auto hi = parse_n(spec.substr(dots + 2), "range end").to_u64();
    if (!lo || !hi || *lo > *hi || *hi - *lo >= (1u << 24)) throw Failure{kParse, "bad range '" + spec + "'"};
    for (std::uint64_t n = *lo; n <= *hi; ++n) out.emplace_back(n);
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = std::min(spec.find(',', start), spec.size());
    out.push_back(parse_n(spec.substr(start, comma - start), "range element"));
    start = comma + 1;
  }
  return out;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string registry_dir;
  std::string theory = "T0";

  io::Registry registry() const {
    return io::Registry(registry_dir.empty() ? io::Registry::default_dir() : std::filesystem::path(registry_dir));
  }
  TheorySpec resolve(const std::string& name) const {
    const io::Registry reg = registry();
    auto t = reg.find(name);
    if (!t) throw Failure{kIo, "unknown theory '" + name + "' (not built in, not in " + reg.file().string() + ")"};
    return *t;
  }
  TheorySpec theory_spec() const { return resolve(theory); }

  void write_proof(const std::string& path, const TheorySpec& t, const kernel::Derivation& d) const {
    const io::ProofFile f = io::make_proof_file(t, d);
    io::save_proof(path, f);
    if (!(io::load_proof(path) == f)) throw Failure{kIo, "re-read of " + path + " differs from what was written"};
    out << "wrote " << path << ": " << d.lines.size() << " lines, conclusion "
        << brief(kernel::to_text(f.conclusion, arith::text_context(t))) << "\n";
  }
};

int check_cmd(const Context& c, const std::string& proof, const std::string& claims, bool theory_given) {
  const io::ProofSections s = io::split_proof_file(io::read_file(proof));
  TheorySpec t;
  if (theory_given) {
    t = c.theory_spec();
    if (kernel::to_bytes(t) != s.theory) {
      c.err << "invalid: the proof file was made for a different theory than " << t.name << "\n";
      return kInvalid;
    }
  } else {
    try {
      t = kernel::theory_from_bytes(s.theory);
    } catch (const kernel::DecodeError& e) {
      c.err << "invalid: embedded theory is malformed: " << e.what() << "\n";
      return kInvalid;
    }
    t.name = "embedded";
  }
  const kernel::Verdict v = kernel::check_bytes(t, s.derivation);
  if (!v.valid) {
    c.err << "invalid: line " << v.line << ": " << kernel::reason_name(v.reason);
    if (!v.detail.empty()) c.err << ": " << v.detail;
    c.err << "\n";
    return kInvalid;
  }
  const auto ctx = arith::text_context(t);
  kernel::Formula stored;
  try {
    stored = kernel::formula_from_bytes(s.conclusion);
  } catch (const kernel::DecodeError& e) {
    c.err << "invalid: stored conclusion is malformed: " << e.what() << "\n";
    return kInvalid;
  }
  if (!(stored == v.conclusion)) {
    c.err << "invalid: stored conclusion differs from the derivation's last line\n";
    return kInvalid;
  }
  if (!claims.empty()) {
    const kernel::Formula claimed = kernel::parse_formula(claims, ctx);
    if (!(claimed == v.conclusion)) {
      c.err << "invalid: conclusion " << brief(kernel::to_text(v.conclusion, ctx)) << " is not the claimed formula\n";
      return kInvalid;
    }
  }
  c.out << "valid: " << brief(kernel::to_text(v.conclusion, ctx)) << " (replay steps " << v.replay_steps << ")\n";
  return kOk;
}

int selftest_cmd(const Context& c, const std::string& corpus_path, const std::string& checker_path, unsigned threads,
                 const std::string& write_corpus) {
  TheorySpec t = c.theory_spec();
  std::vector<prf::CorpusItem> corpus;
  if (!corpus_path.empty()) {
    const io::Bytes text = io::read_file(corpus_path);
    corpus = io::parse_corpus(std::string(text.begin(), text.end()));
  } else {
    corpus = shipped_corpus(t);
  }
  if (!checker_path.empty()) {
    const io::Bytes src = io::read_file(checker_path);
    loop::Program p = loop::parse_program(std::string(src.begin(), src.end()));
    kernel::WhitelistEntry* w = nullptr;
    for (auto& e : t.whitelist) {
      if (e.program.name == arith::kCheckerName) w = &e;
    }
    if (w == nullptr || p.name != arith::kCheckerName || p.arity != 3) {
      throw Failure{kInvalid, "replacement checker must be a 3-input program named PRF for a theory that registers PRF"};
    }
    w->program = std::move(p);
    c.out << "using replacement checker from " << checker_path << "\n";
  }
  if (!write_corpus.empty()) {
    const std::string text = io::corpus_text(corpus);
    io::write_file_atomic(write_corpus, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    c.out << "wrote " << corpus.size() << " corpus items to " << write_corpus << "\n";
    return kOk;
  }
  if (corpus.empty()) {
    c.err << "warning: empty corpus, nothing compared\n";
    return kOk;
  }
  const prf::DiffReport r = prf::differential_check(t, corpus, threads);
  if (checker_path.empty()) c.out << "checker " << prf::build_prfcheck().version_hash << "\n";
  c.out << "items " << r.items << ", accepted by both " << r.accepted << ", disagreements "
        << r.disagreements.size() << ", max PRF steps " << r.max_prf_steps << "\n";
  for (const auto& d : r.disagreements) {
    c.out << "  disagreement " << d.label << ": kernel " << (d.kernel ? "accepts" : "rejects") << ", PRF "
          << (d.prf ? "accepts" : "rejects") << (d.budget_rejection ? " (budget)" : "") << ", " << d.detail << "\n";
  }
  return r.ok() ? kOk : kInvalid;
}

int sentence_cmd(const Context& c, const std::string& kind, const std::string& n, const std::string& m,
                 const std::string& formula) {
  const TheorySpec t = c.theory_spec();
  const auto ctx = arith::text_context(t);
  auto quoted = [&] {
    return arith::quote(formula.empty() ? arith::contradiction() : kernel::parse_formula(formula, ctx));
  };
  auto need = [&](const std::string& v, const char* flag) {
    if (v.empty()) throw Failure{kParse, std::string("--kind ") + kind + " needs " + flag};
    return parse_n(v, flag);
  };
  kernel::Formula f;
  if (kind == "con") {
    f = arith::sentence_con(t);
  } else if (kind == "con-n") {
    f = arith::sentence_con_n(t, need(n, "--n"));
  } else if (kind == "con-bd") {
    f = arith::sentence_con_bd(t, need(m, "--m"));
  } else if (kind == "prov") {
    f = arith::sentence_prov(t, quoted());
  } else {
    f = arith::sentence_prov_star(t, quoted());
  }
  c.out << kernel::to_text(f, ctx) << "\n";
  if (kind == "con") c.err << kConNotice << "\n";
  return kOk;
}

int checker_info_cmd(const Context& c, bool code, bool source) {
  const prf::CheckerBuild& b = prf::build_prfcheck();
  if (source) {
    c.out << b.source;
    return kOk;
  }
  c.out << "name " << b.program.name << "\nregisters " << b.program.nregs << "\ncode_bits " << b.code.bit_length()
        << "\nsha256 " << b.version_hash << "\n";
  if (code) c.out << "code " << b.code.to_hex() << "\n";
  return kOk;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const selector::SelectorError& e) {
    err << "error: " << selector::error_name(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == selector::ErrorKind::CheckerNotRegistered ? kUnsupported : kInvalid;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const io::FormatError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const kernel::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const loop::SyntaxError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const loop::ProgramError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace

std::vector<prf::CorpusItem> shipped_corpus(const TheorySpec& t) {
  std::vector<prf::CorpusItem> items;
  auto add = [&](const kernel::Derivation& d, std::string label) { items.push_back(prf::item_of(d, std::move(label))); };
  for (std::uint64_t n = 0; n < 40; ++n) add(selector::select_con_instance(t, Natural(n)), "con" + std::to_string(n));
  add(selector::refute_prov_star(t), "prov-star");
  const kernel::Derivation refl{{kernel::Line{kernel::parse_formula("(= #3 #3)"), kernel::just::e1()}}};
  add(refl, "refl");
  add(selector::internalize_d1(t, refl), "d1-refl");
  items.push_back(prf::item_of(selector::select_con_instance(t, Natural(3)), "wrong-claim",
                               arith::sentence_con_n(t, Natural(4))));
  for (auto& m : prf::byte_mutants(selector::select_con_instance(t, Natural(7)), 60, 1)) items.push_back(std::move(m));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 60; ++i) {
    const Natural n(i < 20 ? static_cast<std::uint64_t>(i) : rng() >> (rng() % 64));
    items.push_back(prf::raw_item(n, "raw" + std::to_string(i)));
  }
  return items;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof-producing consistency selector with a kernel and an arithmetized checker"};
  app.require_subcommand(1);
  Context c{out, err, "", "T0"};
  app.add_option("--registry", c.registry_dir, "Registry directory (default: $SELK_REGISTRY or ./.selk)");
  std::function<int()> action;
  auto theory_opt = [&](CLI::App* s) { return s->add_option("--theory", c.theory, "Theory name")->capture_default_str(); };

  std::string proof, claims, out_path, n_text, m_text, kind, formula, range, csv, corpus, checker, write_corpus;
  unsigned height = 0;
  unsigned threads = 0;
  bool show_code = false;
  bool show_source = false;

  auto* check = app.add_subcommand("check", "Kernel-check a proof file");
  auto* check_theory = theory_opt(check);
  check->add_option("--proof", proof, "Proof file")->required();
  check->add_option("--claims", claims, "Formula the conclusion must equal");
  check->callback([&] { action = [&] { return check_cmd(c, proof, claims, check_theory->count() > 0); }; });

  auto* con = app.add_subcommand("con-instance", "Derive Con_n(T) with the selector");
  theory_opt(con);
  con->add_option("--n", n_text, "n")->required();
  con->add_option("--out", out_path, "Output proof file")->required();
  con->callback([&] {
    action = [&] {
      const TheorySpec t = c.theory_spec();
      selector::Audit a;
      const auto d = selector::select_con_instance(t, parse_n(n_text, "--n"), &a);
      out << "case " << a.case_taken << ", PRF replay steps " << a.replay_steps << "\n";
      c.write_proof(out_path, t, d);
      return kOk;
    };
  });

  auto* internalize = app.add_subcommand("internalize", "From a proof of phi, derive Prov(phi)");
  auto* int_theory = theory_opt(internalize);
  internalize->add_option("--proof", proof, "Input proof file")->required();
  internalize->add_option("--out", out_path, "Output proof file")->required();
  internalize->callback([&] {
    action = [&] {
      const io::ProofFile in = io::load_proof(proof);
      TheorySpec t = in.theory;
      if (int_theory->count() > 0) {
        t = c.theory_spec();
        if (kernel::to_bytes(t) != kernel::to_bytes(in.theory)) {
          throw Failure{kInvalid, "the proof file was made for a different theory than " + t.name};
        }
      }
      c.write_proof(out_path, t, selector::internalize_d1(t, in.derivation));
      return kOk;
    };
  });

  auto* star = app.add_subcommand("refute-prov-star", "Refute Prov*(0 = 1)");
  theory_opt(star);
  star->add_option("--out", out_path, "Output proof file")->required();
  star->callback([&] {
    action = [&] {
      const TheorySpec t = c.theory_spec();
      c.write_proof(out_path, t, selector::refute_prov_star(t));
      return kOk;
    };
  });

  auto* bounded = app.add_subcommand("reduce-bounded", "Derive Con_n(T) from a bounded consistency axiom");
  theory_opt(bounded);
  bounded->add_option("--bound", m_text, "Add ConBd(T, m) to the theory first");
  bounded->add_option("--n", n_text, "n")->required();
  bounded->add_option("--out", out_path, "Output proof file")->required();
  bounded->callback([&] {
    action = [&] {
      TheorySpec t = c.theory_spec();
      if (!m_text.empty()) t = selector::with_con_bd(t, parse_n(m_text, "--bound"));
      c.write_proof(out_path, t, selector::reduce_bounded(t, parse_n(n_text, "--n")));
      return kOk;
    };
  });

  auto* tower = app.add_subcommand("tower", "Register T, T + Con(T), ... up to the given height");
  theory_opt(tower);
  tower->add_option("--height", height, "Tower height")->required()->check(CLI::Range(0u, 8u));
  tower->callback([&] {
    action = [&] {
      const auto stages = selector::build_tower(c.theory_spec(), height);
      const io::Registry reg = c.registry();
      reg.put(stages);
      for (const auto& s : stages) out << s.name << " " << arith::theory_code(s).bit_length() << "-bit code\n";
      out << "registered " << stages.size() << " theories in " << reg.file().string() << "\n";
      return kOk;
    };
  });

  auto* sentence = app.add_subcommand("sentence", "Print a consistency or provability sentence");
  theory_opt(sentence);
  sentence->add_option("--kind", kind, "Sentence kind")
      ->required()
      ->check(CLI::IsMember({"con", "con-n", "con-bd", "prov", "prov-star"}));
  sentence->add_option("--n", n_text, "n for con-n");
  sentence->add_option("--m", m_text, "m for con-bd");
  sentence->add_option("--formula", formula, "Formula quoted by prov and prov-star (default 0 = 1)");
  sentence->callback([&] { action = [&] { return sentence_cmd(c, kind, n_text, m_text, formula); }; });

  auto* bench = app.add_subcommand("bench", "Measure selector outputs over a range of n");
  theory_opt(bench);
  bench->add_option("--range", range, "a..b (inclusive) or a comma-separated list")->required();
  bench->add_option("--csv", csv, "Output CSV file")->required();
  bench->callback([&] {
    action = [&] {
      const auto ns = parse_range(range);
      const auto rows = selector::bench_sizes(c.theory_spec(), ns);
      const std::string text = io::bench_csv(rows);
      io::write_file_atomic(csv, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      const io::Bytes back = io::read_file(csv);
      if (io::parse_bench_csv(std::string(back.begin(), back.end())).size() != rows.size()) {
        throw Failure{kIo, "re-read of " + csv + " differs from what was written"};
      }
      out << "wrote " << rows.size() << " rows to " << csv << "\n";
      return kOk;
    };
  });

  auto* self = app.add_subcommand("selftest", "Compare the kernel and PRF on a corpus");
  theory_opt(self);
  self->add_option("--corpus", corpus, "Corpus file (default: the built-in corpus)");
  self->add_option("--checker", checker, "Replace the theory's PRF with this loop program");
  self->add_option("--threads", threads, "Worker threads (0: all cores)");
  self->add_option("--write-corpus", write_corpus, "Write the corpus to a file and stop");
  self->callback([&] { action = [&] { return selftest_cmd(c, corpus, checker, threads, write_corpus); }; });

  auto* info = app.add_subcommand("checker-info", "Print the shipped PRF's version hash and program code");
  info->add_flag("--code", show_code, "Also print the program code in hex");
  info->add_flag("--source", show_source, "Print the PRF source text instead");
  info->callback([&] { action = [&] { return checker_info_cmd(c, show_code, show_source); }; });

  auto* prove_con = app.add_subcommand("prove-con", "");
  prove_con->group("");
  theory_opt(prove_con);
  prove_con->callback([&] {
    action = [&] {
      err << "unsupported: deriving Con(T) inside T is not offered. " << kConNotice << "\n";
      return static_cast<int>(kUnsupported);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kParse;
  }
  return guarded(err, action);
}

}  // namespace selk::cli
