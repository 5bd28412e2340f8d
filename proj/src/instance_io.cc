#include "srbm2d/instance_io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srbm2d/errors.h"

namespace srbm2d {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field " + path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

Vector2 vector_at(const json& doc, const std::string& key) {
  if (!doc.contains(key)) field_error(key, "missing");
  const json& j = doc.at(key);
  if (!j.is_array() || j.size() != 2) field_error(key, "expected an array of 2 numbers");
  return {number_at(j[0], key + "[0]"), number_at(j[1], key + "[1]")};
}

Matrix2 matrix_at(const json& doc, const std::string& key) {
  if (!doc.contains(key)) field_error(key, "missing");
  const json& j = doc.at(key);
  if (!j.is_array() || j.size() != 2) field_error(key, "expected a 2x2 array (2 rows)");
  double m[2][2];
  for (int r = 0; r < 2; ++r) {
    const std::string row = key + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != 2) field_error(row, "expected a row of 2 numbers");
    for (int c = 0; c < 2; ++c) m[r][c] = number_at(j[r][c], row + "[" + std::to_string(c) + "]");
  }
  return {m[0][0], m[0][1], m[1][0], m[1][1]};
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "top level must be an object");
  InstanceFile inst;
  inst.data.sigma = matrix_at(doc, "sigma");
  inst.data.mu = vector_at(doc, "mu");
  inst.data.r = matrix_at(doc, "r");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) field_error("name", "expected a string");
    inst.name = doc["name"].get<std::string>();
  }
  return inst;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  InstanceFile inst = parse_instance(buf.str());
  if (inst.name.empty()) inst.name = std::filesystem::path(path).stem().string();
  return inst;
}

std::string instance_to_json(const InstanceFile& inst) {
  const SrbmData& d = inst.data;
  json j;
  j["name"] = inst.name;
  j["sigma"] = {{d.sigma.a11, d.sigma.a12}, {d.sigma.a21, d.sigma.a22}};
  j["mu"] = {d.mu.x1, d.mu.x2};
  j["r"] = {{d.r.a11, d.r.a12}, {d.r.a21, d.r.a22}};
  return j.dump(2) + "\n";
}

}  // namespace srbm2d
