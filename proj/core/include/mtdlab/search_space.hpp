#pragma once

#include <cstdint>
#include <vector>

#include "mtdlab/rng.hpp"
#include "mtdlab/sut.hpp"

namespace mtdlab {

// Sampling rule for one parameter. Numeric parameters draw from [lo, hi];
// list parameters draw from [0, hi] and, when include_none is set, take the
// None marker half of the time.
struct SamplingRule {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool include_none = false;

  bool contains(const SettingValue& v) const {
    if (v.is_none()) return include_none;
    return v.value() >= lo && v.value() <= hi;
  }
};

// The lim-parameterized search space: one sampling rule per SUT parameter.
// The raw (possibly fractional) lim is retained; bounds use the rounded lim.
class SearchSpace {
 public:
  SearchSpace(std::vector<SamplingRule> rules, double lim)
      : rules_(std::move(rules)), lim_(lim) {}

  const std::vector<SamplingRule>& rules() const { return rules_; }
  const SamplingRule& rule(std::size_t index) const { return rules_.at(index); }
  std::size_t size() const { return rules_.size(); }
  double lim() const { return lim_; }

 private:
  std::vector<SamplingRule> rules_;
  double lim_;
};

// Rounds a raw lim to the integer used for range bounds: nearest integer,
// ties away from zero.
std::int64_t rounded_lim(double lim);

// Builds per-parameter ranges from `lim`:
//   numeric v  -> [max(0, v - r), max(0, v + r)]      with r = rounded_lim(lim)
//   list vs    -> [0, max(vs) + r], plus None when the domain allows it
// Bounds are clamped to stay non-negative, so lo <= hi always holds.
SearchSpace build_search_space(const SutSpec& sut, double lim);

// Draws one setting for the parameter at `index`, uniformly over its rule.
// Rules with None pick the marker with probability 1/2, otherwise a uniform
// integer from the range.
SettingValue sample_setting(const SearchSpace& space, std::size_t index, Rng& rng);

// Name-addressed variant; throws ValidationError for unknown parameters.
SettingValue sample_setting(const SearchSpace& space, const SutSpec& sut,
                            const std::string& parameter_name, Rng& rng);

}  // namespace mtdlab
