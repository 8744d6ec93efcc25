#pragma once

// Worked examples recomputed from their matrices and compared with the
// published values. Values that the definitions cannot reproduce because an
// operand lies outside B_A are reported as documented deviations.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opradius/matrix_io.hpp"

namespace opradius {

enum class ReproStatus { pass, fail, deviation, info };

std::string_view to_string(ReproStatus s) noexcept;

struct ReproValue {
  std::string name;
  std::string where;              // which published statement the value comes from
  std::optional<double> expected;
  double computed = 0.0;          // NaN when the quantity is undefined
  double tol = 0.0;
  ReproStatus status = ReproStatus::info;
  std::string note;
};

struct ReproReport {
  std::string id;
  std::string title;
  std::vector<ReproValue> values;
  std::vector<std::string> notes;

  bool ok() const noexcept;  // no value with status fail
};

const std::vector<std::string>& repro_case_ids();

/// Throws UnknownEntry for ids outside repro_case_ids().
ReproReport run_repro(std::string_view id);

json to_json(const ReproReport& r);
std::string to_table(const ReproReport& r);

}  // namespace opradius
