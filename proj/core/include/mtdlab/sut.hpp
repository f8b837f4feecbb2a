#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mtdlab/errors.hpp"

namespace mtdlab {

// A parameter setting: either an integer or the explicit "None" marker that
// list-typed parameters may take.
class SettingValue {
 public:
  SettingValue() = default;

  static SettingValue integer(std::int64_t v) { return SettingValue(v); }
  static SettingValue none() { return SettingValue(); }

  bool is_none() const { return !value_.has_value(); }
  bool is_integer() const { return value_.has_value(); }
  std::int64_t value() const { return value_.value(); }

  // Canonical integer encoding used for state tuples. None gets a sentinel
  // outside the non-negative setting universe.
  static constexpr std::int64_t kNoneEncoding = std::numeric_limits<std::int64_t>::min();
  std::int64_t encode() const { return value_.value_or(kNoneEncoding); }

  friend bool operator==(const SettingValue&, const SettingValue&) = default;

 private:
  explicit SettingValue(std::int64_t v) : value_(v) {}
  std::optional<std::int64_t> value_;
};

struct NumericDomain {
  std::int64_t default_value = 0;
  friend bool operator==(const NumericDomain&, const NumericDomain&) = default;
};

struct ListDomain {
  std::vector<std::int64_t> values;  // distinct, non-negative
  bool allow_none = false;
  friend bool operator==(const ListDomain&, const ListDomain&) = default;
};

using ParameterDomain = std::variant<NumericDomain, ListDomain>;

struct ParameterSpec {
  std::string name;
  ParameterDomain domain;
  SettingValue secure_setting;

  friend bool operator==(const ParameterSpec&, const ParameterSpec&) = default;
};

// Whether `value` is a setting the domain can express. Numeric parameters
// accept any integer; list parameters accept listed values and, when enabled,
// the None marker.
bool is_admissible(const ParameterDomain& domain, const SettingValue& value);

// One system under test: an ordered list of configurable parameters.
class SutSpec {
 public:
  SutSpec(std::string name, std::vector<ParameterSpec> parameters);

  const std::string& name() const { return name_; }
  const std::vector<ParameterSpec>& parameters() const { return parameters_; }
  std::size_t size() const { return parameters_.size(); }

  // Index of a parameter by name; throws ValidationError if absent.
  std::size_t index_of(const std::string& parameter_name) const;

  friend bool operator==(const SutSpec& a, const SutSpec& b) {
    return a.name_ == b.name_ && a.parameters_ == b.parameters_;
  }

 private:
  std::string name_;
  std::vector<ParameterSpec> parameters_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ScoringConfig {
  std::int64_t high = 800;  // score for a securely set parameter
  std::int64_t low = 8;     // score for anything else
  std::int64_t val = 800;   // width of the hold-favoring fitness band

  void validate() const {
    if (high <= 0 || low <= 0 || high <= low)
      throw ValidationError("scoring: requires high > low > 0");
    if (val <= 0) throw ValidationError("scoring: requires val > 0");
  }
};

// Canonical per-state key: the configuration's settings in parameter order,
// integer-encoded. Hashable, comparable, usable as a value-table key.
using StateKey = std::vector<std::int64_t>;

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : key) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

// A total assignment of one setting per SUT parameter, in parameter order.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<SettingValue> values) : values_(std::move(values)) {}

  // Builds from a name->value map, checking totality (every parameter
  // assigned, nothing extra). Throws ValidationError otherwise.
  static Configuration from_map(const SutSpec& sut,
                                const std::unordered_map<std::string, SettingValue>& assignments);

  const std::vector<SettingValue>& values() const { return values_; }
  const SettingValue& at(std::size_t index) const { return values_.at(index); }
  void set(std::size_t index, SettingValue v) { values_.at(index) = v; }
  std::size_t size() const { return values_.size(); }

  StateKey to_key() const {
    StateKey key;
    key.reserve(values_.size());
    for (const auto& v : values_) key.push_back(v.encode());
    return key;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<SettingValue> values_;
};

// Per-parameter score: `high` iff the value equals the secure setting exactly
// (same variant, same payload), else `low`.
std::int64_t score_parameter(const ParameterSpec& spec, const SettingValue& value,
                             const ScoringConfig& scoring);

// Sum of per-parameter scores. Throws ValidationError if the configuration
// is not total over the SUT.
std::int64_t fitness(const SutSpec& sut, const Configuration& config, const ScoringConfig& scoring);

std::int64_t max_fitness(const SutSpec& sut, const ScoringConfig& scoring);
std::int64_t min_fitness(const SutSpec& sut, const ScoringConfig& scoring);

// Affine map of [min_fitness, max_fitness] onto [0, 1]. Throws
// ValidationError when fs is outside the representable range.
double normalize_fitness(std::int64_t fs, const SutSpec& sut, const ScoringConfig& scoring);

}  // namespace mtdlab
