// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_ERRORS_HPP
#define ZFPF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zfpf {

/// Base class of every error raised by the library. `exit_code()` is the
/// process status the command-line tool reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Malformed or inconsistent input (bad JSON, unsorted subsets, non-Hermitian terms).
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Caller broke an operation's precondition (e.g. zeta on a disconnected subset).
class ContractViolation : public InputError {
 public:
  using InputError::InputError;
};

/// Query point outside the region where the accuracy guarantee holds.
class OutOfRegimeError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// Problem too large for a configured cap.
class CapabilityError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Non-finite intermediate or degenerate numeric state.
class NumericError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 5; }
};

}  // namespace zfpf

#endif  // ZFPF_ERRORS_HPP
