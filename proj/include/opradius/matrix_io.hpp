#pragma once

// JSON matrix format: {"rows": n, "cols": m, "data": [[re, im], ...]},
// entries row-major. Space files add an optional top-level "tol".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "opradius/numkernel.hpp"

namespace opradius {

using json = nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// Parses a matrix document. Syntax errors carry the byte offset.
Matrix parse_matrix(std::string_view text);
Matrix read_matrix_file(const std::filesystem::path& path);

struct SpaceFile {
  Matrix metric;
  std::optional<double> tol;
};
SpaceFile parse_space(std::string_view text);
SpaceFile read_space_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace opradius
