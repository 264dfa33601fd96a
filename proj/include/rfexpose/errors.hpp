// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rfexpose {

/// Bad user input: malformed config, schema violation, out-of-contract
/// arguments. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal or model-file failure at run time. The CLI maps this to exit code 2.
class ModelError : public std::runtime_error {
  public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rfexpose
