#pragma once

#include <string>
#include <vector>

#include "mtdlab/sut.hpp"

namespace mtdlab::testing {

// n numeric parameters, default `v`, secure at v + delta.
inline SutSpec numeric_sut(std::size_t n, std::int64_t v = 20, std::int64_t delta = 5,
                           const std::string& name = "numeric-sut") {
  std::vector<ParameterSpec> params;
  for (std::size_t i = 0; i < n; ++i)
    params.push_back(ParameterSpec{"P" + std::to_string(i + 1), NumericDomain{v},
                                   SettingValue::integer(v + delta)});
  return SutSpec(name, std::move(params));
}

inline Configuration all_secure(const SutSpec& sut) {
  std::vector<SettingValue> values;
  for (const auto& p : sut.parameters()) values.push_back(p.secure_setting);
  return Configuration(std::move(values));
}

// Every parameter set to an inadmissible-but-scoreable wrong value.
inline Configuration all_insecure(const SutSpec& sut) {
  std::vector<SettingValue> values;
  for (const auto& p : sut.parameters()) {
    if (p.secure_setting.is_none())
      values.push_back(SettingValue::integer(-1));
    else
      values.push_back(SettingValue::integer(p.secure_setting.value() + 1));
  }
  return Configuration(std::move(values));
}

}  // namespace mtdlab::testing
