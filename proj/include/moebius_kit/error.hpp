#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moebius_kit {

enum class ErrorKind {
  IndeterminateForm,
  InvalidPoint,
  InvalidTetrad,
  DegenerateAlpha,
  CollidingBasePoints,
  SingularMap,
  TooFewPoints,
  DegenerateFit,
  InsufficientSamples,
  NormalizationFailure,
  InvalidSampledMap,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error raised by every library operation. The kind is the
/// machine-readable part; the CLI reports it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace moebius_kit
