#pragma once

#include <stdexcept>
#include <string>

namespace cwelch {

// A positive-definite solve or frame inversion hit a rank-deficient operator.
class SingularOperatorError : public std::runtime_error {
public:
  explicit SingularOperatorError(const std::string& what) : std::runtime_error(what) {}
};

// Iteration cap exceeded or other numerical breakdown.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed frame file or builtin spec string.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cwelch
