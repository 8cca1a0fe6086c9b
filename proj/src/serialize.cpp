#include "rbm/serialize.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <ostream>

namespace rbm {
namespace {

using nlohmann::json;

json angle_document(int n, std::span<const Angle> angles) {
  json doc;
  doc["n"] = n;
  json list = json::array();
  for (const Angle a : angles) list.push_back(a.radians());
  doc["angles"] = std::move(list);
  return doc;
}

std::pair<int, std::vector<Angle>> read_angle_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("angle JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("angles") ||
      !doc["n"].is_number_integer() || !doc["angles"].is_array()) {
    throw std::invalid_argument(R"(angle JSON needs {"n": int, "angles": [...]})");
  }
  const int n = doc["n"].get<int>();
  if (n < 0 || n > 40) throw std::invalid_argument("angle JSON level count out of range");
  std::vector<Angle> angles;
  angles.reserve(doc["angles"].size());
  for (const auto& v : doc["angles"]) {
    if (!v.is_number()) throw std::invalid_argument("angle JSON entries must be numbers");
    angles.push_back(Angle::wrap(v.get<double>()));
  }
  return {n, std::move(angles)};
}

}  // namespace

std::string to_json(const SimpleButterfly& b) { return angle_document(b.levels(), b.angles()).dump(); }

std::string to_json(const NonSimpleButterfly& b) { return angle_document(b.levels(), b.tree()).dump(); }

SimpleButterfly simple_from_json(std::string_view text) {
  auto [n, angles] = read_angle_document(text);
  if (angles.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("simple butterfly JSON needs exactly n angles");
  }
  return SimpleButterfly(std::move(angles));
}

NonSimpleButterfly nonsimple_from_json(std::string_view text) {
  auto [n, angles] = read_angle_document(text);
  if (angles.size() != dimension_for_levels(n) - 1) {
    throw std::invalid_argument("non-simple butterfly JSON needs exactly 2^n - 1 angles");
  }
  return NonSimpleButterfly(std::move(angles));
}

std::string format_double(double x) { return fmt::format("{}", x); }

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) line += ',';
      fmt::format_to(std::back_inserter(line), "{}", m(i, j));
    }
    line += '\n';
    os << line;
  }
}

std::string matrix_to_json(const Matrix& m) {
  json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    data.push_back(std::move(row));
  }
  doc["data"] = std::move(data);
  return doc.dump();
}

}  // namespace rbm
