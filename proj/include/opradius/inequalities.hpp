#pragma once

// Catalog of operator, vector and scalar inequalities in semi-Hilbertian
// spaces. Each entry evaluates both sides on compressions, so sharp adjoints
// become conjugate transposes and A-quantities become classical ones.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opradius/matrix_io.hpp"
#include "opradius/space.hpp"

namespace opradius {

enum class Status { satisfied, violated, inapplicable };
std::string_view to_string(Status s) noexcept;

struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-7;
};

/// Violated iff lhs > rhs + abs + rel * max(|lhs|, |rhs|). Equality entries
/// are also violated when lhs falls below rhs by the same band.
Status judge(double lhs, double rhs, bool equality, const Tolerance& tol) noexcept;

struct Operands {
  std::vector<Matrix> ops;
  std::vector<Vector> vecs;
  std::vector<double> scalars;
};

using Params = std::map<std::string, double>;

/// How the fuzzer should draw operands for an entry.
enum class Family {
  generic,      // independent members of B_A
  single,       // one member of B_A, cycling through structured styles
  commuting,    // functional calculus of one A-selfadjoint operator
  a_normal,     // independent A-normal operators
  positive_triples,  // (T_j, X_j, S_j) with T_j, S_j A-positive
  vectors,
  scalars,
};

struct ParamSpec {
  std::string name;
  double lo;
  double hi;
  double fallback;
  std::vector<double> grid;
};

struct Signature {
  int group = 1;          // operators per block
  int min_blocks = 1;     // operator count = group * blocks
  int max_blocks = 1;
  std::vector<int> block_grid;  // block counts tried by the fuzzer
  int vectors = 0;
  int scalars = 0;
  std::string text;
};

struct EvalContext {
  const SemiHilbertSpace& space;
  std::vector<Matrix> m;        // compressed operators
  std::vector<Vector> y;        // compressed vectors
  std::vector<double> s;        // scalars
  Params params;
  double param(const std::string& name) const { return params.at(name); }
  std::size_t blocks() const;
  int group = 1;
  /// Rounding-aware zero test for a matrix built from compressions.
  bool negligible(const Matrix& x, double scale) const;
};

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;
  std::vector<std::pair<std::string, double>> extras;
};

struct InequalityCatalogEntry {
  std::string id;
  std::string statement;
  std::string source;      // which result of the theory the entry encodes
  std::string variant;     // "as-stated" or "proof-consistent"
  bool flagged = false;    // known-suspect statement; violations are findings
  Family family = Family::generic;
  Signature signature;
  std::vector<ParamSpec> params;
  // Returns an empty string when applicable, else the reason it is not.
  std::function<std::string(const EvalContext&)> inapplicable;
  std::function<Sides(const EvalContext&)> sides;
};

struct MarginReport {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Status status = Status::inapplicable;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
  std::uint64_t fingerprint = 0;
  std::string reason;  // set when inapplicable
  std::vector<std::pair<std::string, double>> extras;
};

const std::vector<InequalityCatalogEntry>& list_catalog();

/// Throws UnknownEntry.
const InequalityCatalogEntry& find_entry(std::string_view id);

/// Fills defaults for missing parameters; throws BadParameter on unknown names
/// or out-of-range values.
Params resolve_params(const InequalityCatalogEntry& e, const Params& given);

/// Throws SignatureMismatch when operand counts do not fit, UnboundedForm
/// when an operator lies outside B_A, DimensionMismatch on shape errors.
MarginReport evaluate(std::string_view id, const SemiHilbertSpace& space, const Operands& operands,
                      const Params& params = {}, const Tolerance& tol = {});

/// FNV-1a over the id, operands and parameters.
std::uint64_t fingerprint(std::string_view id, const Operands& operands, const Params& params);

std::string fingerprint_hex(std::uint64_t h);
json to_json(const MarginReport& r);

}  // namespace opradius
