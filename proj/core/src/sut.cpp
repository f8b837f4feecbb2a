#include "mtdlab/sut.hpp"

#include <algorithm>
#include <unordered_set>

namespace mtdlab {

bool is_admissible(const ParameterDomain& domain, const SettingValue& value) {
  if (const auto* numeric = std::get_if<NumericDomain>(&domain)) {
    (void)numeric;
    return value.is_integer();
  }
  const auto& list = std::get<ListDomain>(domain);
  if (value.is_none()) return list.allow_none;
  return std::find(list.values.begin(), list.values.end(), value.value()) != list.values.end();
}

SutSpec::SutSpec(std::string name, std::vector<ParameterSpec> parameters)
    : name_(std::move(name)), parameters_(std::move(parameters)) {
  if (parameters_.empty()) throw ValidationError("sut '" + name_ + "': needs at least one parameter");
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    const auto& p = parameters_[i];
    if (p.name.empty()) throw ValidationError("sut '" + name_ + "': parameter with empty name");
    if (const auto* list = std::get_if<ListDomain>(&p.domain)) {
      if (list->values.empty())
        throw ValidationError("parameter '" + p.name + "': list domain with no values");
      std::unordered_set<std::int64_t> seen;
      for (std::int64_t v : list->values) {
        if (v < 0) throw ValidationError("parameter '" + p.name + "': negative list value");
        if (!seen.insert(v).second)
          throw ValidationError("parameter '" + p.name + "': duplicate list value");
      }
    }
    if (!is_admissible(p.domain, p.secure_setting))
      throw ValidationError("parameter '" + p.name + "': secure setting not admissible for domain");
    if (!index_.emplace(p.name, i).second)
      throw ValidationError("sut '" + name_ + "': duplicate parameter name '" + p.name + "'");
  }
}

std::size_t SutSpec::index_of(const std::string& parameter_name) const {
  auto it = index_.find(parameter_name);
  if (it == index_.end())
    throw ValidationError("sut '" + name_ + "': unknown parameter '" + parameter_name + "'");
  return it->second;
}

Configuration Configuration::from_map(
    const SutSpec& sut, const std::unordered_map<std::string, SettingValue>& assignments) {
  std::vector<SettingValue> values(sut.size());
  for (std::size_t i = 0; i < sut.size(); ++i) {
    const auto& name = sut.parameters()[i].name;
    auto it = assignments.find(name);
    if (it == assignments.end())
      throw ValidationError("configuration: missing assignment for parameter '" + name + "'");
    values[i] = it->second;
  }
  if (assignments.size() != sut.size())
    throw ValidationError("configuration: has assignments for parameters not in the sut");
  return Configuration(std::move(values));
}

std::int64_t score_parameter(const ParameterSpec& spec, const SettingValue& value,
                             const ScoringConfig& scoring) {
  return value == spec.secure_setting ? scoring.high : scoring.low;
}

std::int64_t fitness(const SutSpec& sut, const Configuration& config,
                     const ScoringConfig& scoring) {
  if (config.size() != sut.size())
    throw ValidationError("fitness: configuration does not cover every parameter of '" +
                          sut.name() + "'");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < sut.size(); ++i)
    total += score_parameter(sut.parameters()[i], config.at(i), scoring);
  return total;
}

std::int64_t max_fitness(const SutSpec& sut, const ScoringConfig& scoring) {
  return static_cast<std::int64_t>(sut.size()) * scoring.high;
}

std::int64_t min_fitness(const SutSpec& sut, const ScoringConfig& scoring) {
  return static_cast<std::int64_t>(sut.size()) * scoring.low;
}

double normalize_fitness(std::int64_t fs, const SutSpec& sut, const ScoringConfig& scoring) {
  const std::int64_t lo = min_fitness(sut, scoring);
  const std::int64_t hi = max_fitness(sut, scoring);
  if (fs < lo || fs > hi)
    throw ValidationError("normalize_fitness: score " + std::to_string(fs) +
                          " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<double>(fs - lo) / static_cast<double>(hi - lo);
}

}  // namespace mtdlab
