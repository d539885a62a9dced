#pragma once

#include <stdexcept>
#include <string>

namespace fcucb {

/// Invalid problem or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Action-space generator would expand past the configured cap.
class SizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested quantity is not defined for this estimator kind.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A regret bound was requested for an instance whose gaps are undefined.
class BoundUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fcucb
