#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vdw {

// Base of everything thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (bad sizes, bad parameters).
class PreconditionError : public Error {
public:
  using Error::Error;
};

// A position or index fell outside the domain it was looked up in.
class DomainError : public Error {
public:
  using Error::Error;
};

// Something would need more memory or search than the configured limits allow.
class ResourceLimitError : public Error {
public:
  using Error::Error;
};

// Some W(k, c_m) needed by a tower could not be determined within the limits.
class TowerUncomputable : public ResourceLimitError {
public:
  TowerUncomputable(std::size_t stage, const std::string& reason)
      : ResourceLimitError("tower uncomputable at stage " + std::to_string(stage) + ": " + reason),
        stage_(stage), reason_(reason) {}

  std::size_t stage() const noexcept { return stage_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t stage_;
  std::string reason_;
};

// An internal guarantee did not hold. Never expected when preconditions are met.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A search-mode stream window produced no witness within its caps.
class WindowFailure : public Error {
public:
  WindowFailure(std::size_t window, const std::string& what)
      : Error("window " + std::to_string(window) + ": " + what), window_(window) {}

  std::size_t window() const noexcept { return window_; }

private:
  std::size_t window_;
};

} // namespace vdw
