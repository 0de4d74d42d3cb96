#pragma once

#include <stdexcept>
#include <string>

namespace allpay {

/// Raised for caller mistakes: bad probabilities, indices out of range,
/// queries outside an operation's domain. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace allpay
