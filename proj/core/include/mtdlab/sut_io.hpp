#pragma once

#include <cstdint>
#include <string>

#include "mtdlab/sut.hpp"

namespace mtdlab {

// Reads a SUT spec document. Throws IoError when the file cannot be read and
// ValidationError (naming the offending field) on any schema violation,
// including unknown fields.
SutSpec load_sut_spec(const std::string& path);

// Parses the document format from a string; same error contract minus I/O.
SutSpec parse_sut_spec(const std::string& text);

// Serializes in the same document format load_sut_spec reads. Writing then
// loading yields an equal SutSpec, and the bytes are stable across runs.
std::string sut_spec_to_string(const SutSpec& sut);
void save_sut_spec(const SutSpec& sut, const std::string& path);

// Deterministically generates a SUT with `n` parameters: roughly 60% numeric
// (defaults uniform in [0, 50]) and 40% list (2-6 distinct values, None
// allowed for about half). Secure settings stay within the default lim=10
// search space so every generated SUT has a reachable goal state.
SutSpec generate_synthetic_sut(std::size_t n, std::uint64_t seed);

}  // namespace mtdlab
