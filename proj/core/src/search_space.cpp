#include "mtdlab/search_space.hpp"

#include <algorithm>
#include <cmath>

namespace mtdlab {

std::int64_t rounded_lim(double lim) { return std::llround(lim); }

SearchSpace build_search_space(const SutSpec& sut, double lim) {
  if (!(lim > 0.0)) throw ValidationError("build_search_space: lim must be > 0");
  const std::int64_t r = rounded_lim(lim);
  std::vector<SamplingRule> rules;
  rules.reserve(sut.size());
  for (const auto& param : sut.parameters()) {
    SamplingRule rule;
    if (const auto* numeric = std::get_if<NumericDomain>(&param.domain)) {
      const std::int64_t v = numeric->default_value;
      rule.lo = std::max<std::int64_t>(0, v - r);
      rule.hi = std::max<std::int64_t>(0, v + r);
    } else {
      const auto& list = std::get<ListDomain>(param.domain);
      rule.lo = 0;
      rule.hi = *std::max_element(list.values.begin(), list.values.end()) + r;
      rule.include_none = list.allow_none;
    }
    rules.push_back(rule);
  }
  return SearchSpace(std::move(rules), lim);
}

SettingValue sample_setting(const SearchSpace& space, std::size_t index, Rng& rng) {
  const SamplingRule& rule = space.rule(index);
  if (rule.include_none && rng.next_double() < 0.5) return SettingValue::none();
  return SettingValue::integer(rng.uniform_int(rule.lo, rule.hi));
}

SettingValue sample_setting(const SearchSpace& space, const SutSpec& sut,
                            const std::string& parameter_name, Rng& rng) {
  return sample_setting(space, sut.index_of(parameter_name), rng);
}

}  // namespace mtdlab
