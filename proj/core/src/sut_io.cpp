#include "mtdlab/sut_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mtdlab/rng.hpp"

namespace mtdlab {
namespace {

using json = nlohmann::ordered_json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw ValidationError("sut spec: unknown field '" + item.key() + "' in " + where);
  }
}

std::int64_t require_int(const json& obj, const std::string& field, const std::string& where) {
  if (!obj.contains(field))
    throw ValidationError("sut spec: missing field '" + field + "' in " + where);
  const auto& v = obj.at(field);
  if (!v.is_number_integer())
    throw ValidationError("sut spec: field '" + field + "' in " + where + " must be an integer");
  return v.get<std::int64_t>();
}

ParameterSpec parse_parameter(const json& p, std::size_t index) {
  const std::string where = "parameters[" + std::to_string(index) + "]";
  if (!p.is_object()) throw ValidationError("sut spec: " + where + " must be an object");
  reject_unknown_fields(p, {"name", "domain", "secure"}, where);

  ParameterSpec spec;
  if (!p.contains("name") || !p.at("name").is_string() || p.at("name").get<std::string>().empty())
    throw ValidationError("sut spec: field 'name' in " + where + " must be a non-empty string");
  spec.name = p.at("name").get<std::string>();

  if (!p.contains("domain") || !p.at("domain").is_object())
    throw ValidationError("sut spec: field 'domain' in " + where + " must be an object");
  const json& d = p.at("domain");
  if (!d.contains("kind") || !d.at("kind").is_string())
    throw ValidationError("sut spec: field 'domain.kind' in " + where + " must be a string");
  const std::string kind = d.at("kind").get<std::string>();
  if (kind == "numeric") {
    reject_unknown_fields(d, {"kind", "default"}, where + ".domain");
    spec.domain = NumericDomain{require_int(d, "default", where + ".domain")};
  } else if (kind == "list") {
    reject_unknown_fields(d, {"kind", "values", "allow_none"}, where + ".domain");
    ListDomain list;
    if (!d.contains("values") || !d.at("values").is_array() || d.at("values").empty())
      throw ValidationError("sut spec: field 'domain.values' in " + where +
                            " must be a non-empty array");
    for (const auto& v : d.at("values")) {
      if (!v.is_number_integer())
        throw ValidationError("sut spec: 'domain.values' in " + where +
                              " must contain only integers");
      list.values.push_back(v.get<std::int64_t>());
    }
    if (!d.contains("allow_none") || !d.at("allow_none").is_boolean())
      throw ValidationError("sut spec: field 'domain.allow_none' in " + where +
                            " must be a boolean");
    list.allow_none = d.at("allow_none").get<bool>();
    spec.domain = std::move(list);
  } else {
    throw ValidationError("sut spec: 'domain.kind' in " + where +
                          " must be \"numeric\" or \"list\"");
  }

  if (!p.contains("secure"))
    throw ValidationError("sut spec: missing field 'secure' in " + where);
  const json& s = p.at("secure");
  if (s.is_null()) {
    spec.secure_setting = SettingValue::none();
  } else if (s.is_number_integer()) {
    spec.secure_setting = SettingValue::integer(s.get<std::int64_t>());
  } else {
    throw ValidationError("sut spec: field 'secure' in " + where + " must be an integer or null");
  }
  return spec;
}

}  // namespace

SutSpec parse_sut_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("sut spec: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("sut spec: document root must be an object");
  reject_unknown_fields(doc, {"name", "parameters"}, "document root");
  if (!doc.contains("name") || !doc.at("name").is_string())
    throw ValidationError("sut spec: field 'name' must be a string");
  if (!doc.contains("parameters") || !doc.at("parameters").is_array())
    throw ValidationError("sut spec: field 'parameters' must be an array");
  if (doc.at("parameters").empty())
    throw ValidationError("sut spec: field 'parameters' must not be empty");

  std::vector<ParameterSpec> parameters;
  std::size_t i = 0;
  for (const auto& p : doc.at("parameters")) parameters.push_back(parse_parameter(p, i++));
  // SutSpec's constructor enforces duplicate-name and admissibility rules.
  return SutSpec(doc.at("name").get<std::string>(), std::move(parameters));
}

SutSpec load_sut_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open sut spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sut_spec(buf.str());
}

std::string sut_spec_to_string(const SutSpec& sut) {
  json doc;
  doc["name"] = sut.name();
  doc["parameters"] = json::array();
  for (const auto& p : sut.parameters()) {
    json jp;
    jp["name"] = p.name;
    if (const auto* numeric = std::get_if<NumericDomain>(&p.domain)) {
      jp["domain"] = {{"kind", "numeric"}, {"default", numeric->default_value}};
    } else {
      const auto& list = std::get<ListDomain>(p.domain);
      jp["domain"] = {{"kind", "list"}, {"values", list.values}, {"allow_none", list.allow_none}};
    }
    if (p.secure_setting.is_none())
      jp["secure"] = nullptr;
    else
      jp["secure"] = p.secure_setting.value();
    doc["parameters"].push_back(std::move(jp));
  }
  return doc.dump(2) + "\n";
}

void save_sut_spec(const SutSpec& sut, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write sut spec file: " + path);
  out << sut_spec_to_string(sut);
  if (!out) throw IoError("write failed: " + path);
}

SutSpec generate_synthetic_sut(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("generate_synthetic_sut: n must be >= 1");
  Rng rng(seed);
  std::vector<ParameterSpec> parameters;
  parameters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ParameterSpec p;
    p.name = "P" + std::to_string(i + 1);
    if (rng.next_double() < 0.6) {
      const std::int64_t v = rng.uniform_int(0, 50);
      p.domain = NumericDomain{v};
      // Keep the secure value within +-3 of the default (clamped to >= 0) so
      // the stock lim=10 range always contains it.
      p.secure_setting =
          SettingValue::integer(std::max<std::int64_t>(0, v + rng.uniform_int(-3, 3)));
    } else {
      ListDomain list;
      const std::int64_t count = rng.uniform_int(2, 6);
      std::set<std::int64_t> values;
      while (static_cast<std::int64_t>(values.size()) < count)
        values.insert(rng.uniform_int(0, 12));
      list.values.assign(values.begin(), values.end());
      list.allow_none = rng.next_double() < 0.5;
      const std::int64_t pick = rng.uniform_int(0, count - (list.allow_none ? 0 : 1));
      if (list.allow_none && pick == count)
        p.secure_setting = SettingValue::none();
      else
        p.secure_setting = SettingValue::integer(list.values[static_cast<std::size_t>(pick)]);
      p.domain = std::move(list);
    }
    parameters.push_back(std::move(p));
  }
  return SutSpec("synthetic-" + std::to_string(n) + "-" + std::to_string(seed),
                 std::move(parameters));
}

}  // namespace mtdlab
