#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "selk/kernel/derivation.hpp"
#include "selk/prf/prfcheck.hpp"
#include "selk/selector/selector.hpp"

namespace selk::io {

using Bytes = std::vector<std::uint8_t>;
using kernel::Derivation;
using kernel::Formula;
using kernel::TheorySpec;

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File contents that do not parse.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

inline constexpr char kProofMagic[4] = {'S', 'E', 'L', 'K'};
inline constexpr std::uint8_t kProofVersion = 1;

struct ProofFile {
  TheorySpec theory;  // name is not stored
  Derivation derivation;
  Formula conclusion;
};

/// Equal when theory encodings, derivations and conclusions match.
bool operator==(const ProofFile& a, const ProofFile& b);

ProofFile make_proof_file(const TheorySpec& t, const Derivation& d);
Bytes encode_proof_file(const ProofFile& f);
/// Throws FormatError on bad magic, version, framing, encodings, or a
/// conclusion that is not the derivation's last line.
ProofFile decode_proof_file(std::span<const std::uint8_t> bytes);
/// The three raw sections of a proof file; only magic, version and framing
/// are checked.
struct ProofSections {
  Bytes theory, derivation, conclusion;
};
ProofSections split_proof_file(std::span<const std::uint8_t> bytes);

void save_proof(const std::filesystem::path& path, const ProofFile& f);
ProofFile load_proof(const std::filesystem::path& path);

inline constexpr char kRegistryMagic[4] = {'S', 'E', 'L', 'R'};
inline constexpr std::uint8_t kRegistryVersion = 1;
inline constexpr const char* kRegistryEnv = "SELK_REGISTRY";
inline constexpr const char* kRegistryFile = "registry.bin";

Bytes encode_registry(const std::vector<TheorySpec>& entries);
std::vector<TheorySpec> decode_registry(std::span<const std::uint8_t> bytes);

/// Named theories stored in one file under a directory. The built-in
/// theories T0 and T_bad resolve without a registry file.
class Registry {
 public:
  explicit Registry(std::filesystem::path dir);
  /// $SELK_REGISTRY, or ./.selk when unset.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file() const { return dir_ / kRegistryFile; }
  std::vector<TheorySpec> entries() const;
  std::optional<TheorySpec> find(const std::string& name) const;
  /// Adds or replaces entries by name; last writer wins.
  void put(std::span<const TheorySpec> theories) const;

 private:
  std::filesystem::path dir_;
};

std::string bench_csv(std::span<const selector::BenchRow> rows);
/// Parses a CSV written by bench_csv; check_micros is kept as written.
std::vector<selector::BenchRow> parse_bench_csv(std::string_view text);

/// Corpus text: one item per line, "label p x" with p and x decimal or 0x
/// hex. Blank lines and lines starting with # are skipped.
std::string corpus_text(std::span<const prf::CorpusItem> items);
std::vector<prf::CorpusItem> parse_corpus(std::string_view text);

}  // namespace selk::io
