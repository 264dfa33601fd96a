// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>

#include <catch_amalgamated.hpp>

#include <rfexpose/rfexpose.hpp>

namespace testutil {

inline std::string repo_path(const std::string& rel) {
    return std::string(RFEXPOSE_SOURCE_DIR) + "/" + rel;
}

inline std::string data_path(const std::string& rel) { return repo_path("data/" + rel); }

/// Uniform double in [lo, hi) from the same 53-bit construction the library
/// uses, so property tests are reproducible everywhere.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * rfexpose::detail::uniform01(rng);
}

} // namespace testutil
