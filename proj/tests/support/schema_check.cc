#include "schema_check.h"

#include <fstream>

#ifndef SRBM2D_SOURCE_DIR
#define SRBM2D_SOURCE_DIR "."
#endif

namespace srbm2d::testing {

using nlohmann::json;

namespace {

bool has_type(const json& doc, const std::string& t) {
  if (t == "object") return doc.is_object();
  if (t == "array") return doc.is_array();
  if (t == "string") return doc.is_string();
  if (t == "boolean") return doc.is_boolean();
  if (t == "null") return doc.is_null();
  if (t == "number") return doc.is_number();
  if (t == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
  return false;
}

void check(const json& schema, const json& doc, const json& root, const std::string& path,
           std::vector<std::string>& errors) {
  if (schema.is_boolean()) {
    if (!schema.get<bool>()) errors.push_back(path + ": not allowed");
    return;
  }
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"];
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) {
      errors.push_back(path + ": unsupported $ref " + ref);
      return;
    }
    check(root["definitions"][ref.substr(prefix.size())], doc, root, path, errors);
    return;
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = has_type(doc, t);
    for (const auto& alt : t.is_array() ? t : json::array())
      ok = ok || has_type(doc, alt);
    if (!ok) {
      errors.push_back(path + ": expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"]) ok = ok || e == doc;
    if (!ok) errors.push_back(path + ": value " + doc.dump() + " not in enum");
  }
  if (schema.contains("minimum") && doc.is_number() && doc.get<double>() < schema["minimum"].get<double>())
    errors.push_back(path + ": below minimum");
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>())
      errors.push_back(path + ": too few items");
    if (schema.contains("maxItems") && doc.size() > schema["maxItems"].get<std::size_t>())
      errors.push_back(path + ": too many items");
    if (schema.contains("items"))
      for (std::size_t k = 0; k < doc.size(); ++k)
        check(schema["items"], doc[k], root, path + "[" + std::to_string(k) + "]", errors);
  }
  if (doc.is_object()) {
    for (const auto& r : schema.value("required", json::array()))
      if (!doc.contains(r.get<std::string>())) errors.push_back(path + ": missing " + r.get<std::string>());
    const json props = schema.value("properties", json::object());
    for (const auto& [k, v] : doc.items()) {
      if (props.contains(k)) {
        check(props[k], v, root, path + "." + k, errors);
      } else if (schema.contains("additionalProperties")) {
        check(schema["additionalProperties"], v, root, path + "." + k, errors);
      }
    }
  }
}

}  // namespace

std::vector<std::string> schema_errors(const json& schema, const json& doc, const json& root) {
  std::vector<std::string> errors;
  check(schema, doc, root, "$", errors);
  return errors;
}

std::vector<std::string> report_errors(const json& report) {
  static const json root = [] {
    std::ifstream f(std::string(SRBM2D_SOURCE_DIR) + "/schemas/report.schema.json");
    return json::parse(f);
  }();
  std::vector<std::string> errors = schema_errors(root, report, root);
  if (errors.empty()) {
    const std::string cmd = report["command"];
    for (auto& e : schema_errors(root["definitions"][cmd], report["payload"], root))
      errors.push_back("payload" + e.substr(1));
  }
  return errors;
}

}  // namespace srbm2d::testing
