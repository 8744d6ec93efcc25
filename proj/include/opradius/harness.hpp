#pragma once

// Fuzz campaigns over the inequality catalog. Trials are independent: trial t
// builds its own space and operands from derive_seed(seed, {t, ...}), so the
// report does not depend on the number of threads.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opradius/ensembles.hpp"
#include "opradius/inequalities.hpp"

namespace opradius {

struct FuzzConfig {
  EnsembleConfig ensemble;
  std::vector<std::string> entries;  // empty selects the whole catalog
  Tolerance tol;
  bool verbose = false;              // keep one JSON line per (trial, entry)
};

struct ViolationRecord {
  std::string id;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  Matrix metric;
  double space_tol = kDefaultTol;
  Operands operands;
  Params params;
  MarginReport report;
  bool flagged = false;
};

struct EntryAggregate {
  std::string id;
  bool flagged = false;
  std::size_t trials = 0;
  std::size_t applicable = 0;
  std::size_t inapplicable = 0;
  std::size_t violations = 0;
  std::size_t errors = 0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
  double min_relative_margin = 0.0;  // margin / max(1, |lhs|, |rhs|)
  double min_ratio = 0.0;            // rhs / lhs over lhs > 0
};

struct FuzzReport {
  FuzzConfig config;
  std::vector<EntryAggregate> entries;
  std::vector<ViolationRecord> violations;  // non-flagged: implementation bugs
  std::vector<ViolationRecord> flagged;     // findings on suspect statements
  std::vector<std::string> error_messages;
  std::vector<std::string> verbose_lines;
  double seconds = 0.0;
  // Smallest (w - ||T||/2) / ||T|| seen by NORM-EQUIV; NaN when not run.
  double norm_equiv_min_lower = 0.0;
  // Smallest rhs / lhs seen by QA1; NaN when not run.
  double qa1_min_ratio = 0.0;

  bool ok() const noexcept { return violations.empty() && error_messages.empty(); }
};

/// Throws ConfigError on bad dimensions or unknown entries.
FuzzReport run_fuzz(const FuzzConfig& cfg);
/// Single-threaded reference; produces the same report as run_fuzz.
FuzzReport run_fuzz_serial(const FuzzConfig& cfg);

/// Re-evaluates a stored record. Throws CorruptRecord if the operands no
/// longer hash to the stored fingerprint.
MarginReport replay(const ViolationRecord& rec, const std::optional<Tolerance>& tol = std::nullopt);

json to_json(const ViolationRecord& rec);
ViolationRecord record_from_json(const json& j);
json to_json(const FuzzReport& report);

}  // namespace opradius
