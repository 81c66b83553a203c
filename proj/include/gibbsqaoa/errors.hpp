#pragma once

#include <stdexcept>
#include <string>

namespace gibbsqaoa {

/// Raised when a request would exceed a configured memory/size cap.
class ResourceLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed model, config, or CSV input. The message names the offending field.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numerical stage produced a value outside its contract (NaN, out-of-range).
class ComputeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace gibbsqaoa
