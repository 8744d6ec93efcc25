#include "opradius/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "opradius/errors.hpp"

namespace opradius {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::parse_error, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "malformed JSON at byte " << e.byte << ": " << e.what();
    raise(Errc::parse_error, os.str());
  }
}

std::size_t count_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    raise(Errc::parse_error, std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      data.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) raise(Errc::parse_error, "matrix must be a JSON object");
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) {
    raise(Errc::parse_error, "field \"data\" must be an array of [re, im] pairs");
  }
  const json& data = j.at("data");
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const json& e = data[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      raise(Errc::parse_error, "data[" + std::to_string(k) + "] must be a [re, im] number pair");
    }
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return make_matrix(rows, cols, entries);
}

Matrix parse_matrix(std::string_view text) { return matrix_from_json(parse_document(text)); }

Matrix read_matrix_file(const std::filesystem::path& path) {
  try {
    return parse_matrix(slurp(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

SpaceFile parse_space(std::string_view text) {
  const json doc = parse_document(text);
  SpaceFile out{matrix_from_json(doc), std::nullopt};
  if (doc.contains("tol")) {
    if (!doc.at("tol").is_number() || doc.at("tol").get<double>() <= 0.0) {
      raise(Errc::parse_error, "field \"tol\" must be a positive number");
    }
    out.tol = doc.at("tol").get<double>();
  }
  return out;
}

SpaceFile read_space_file(const std::filesystem::path& path) {
  try {
    return parse_space(slurp(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::config_error, "cannot write " + path.string());
  out << text;
}

}  // namespace opradius
