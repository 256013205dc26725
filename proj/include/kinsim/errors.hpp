#pragma once

#include <stdexcept>
#include <string>

namespace kinsim {

// Error categories; the CLI maps config -> exit 2 and everything else -> 3.
enum class ErrorCode {
  config,
  domain,
  degenerate_input,
  invalid_state,
  shape,
  stability,
  resolution,
  validity,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::config, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct DegenerateInputError : Error {
  explicit DegenerateInputError(const std::string& w) : Error(ErrorCode::degenerate_input, w) {}
};
struct InvalidStateError : Error {
  explicit InvalidStateError(const std::string& w) : Error(ErrorCode::invalid_state, w) {}
};
struct ShapeError : Error {
  explicit ShapeError(const std::string& w) : Error(ErrorCode::shape, w) {}
};
struct StabilityError : Error {
  explicit StabilityError(const std::string& w) : Error(ErrorCode::stability, w) {}
};
struct ResolutionError : Error {
  explicit ResolutionError(const std::string& w) : Error(ErrorCode::resolution, w) {}
};
struct ValidityError : Error {
  explicit ValidityError(const std::string& w) : Error(ErrorCode::validity, w) {}
};

}  // namespace kinsim
