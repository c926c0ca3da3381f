#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

// Exit-code contract: 0 ok, 2 usage, 3 data, 4 numeric domain.
enum class ErrorCode : int {
  usage = 2,
  data = 3,
  domain = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

// Malformed or degenerate data: parse failures, zero variance, dimension mismatch.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCode::data, what) {}
};

// Parameter outside the mathematical domain of a formula or operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCode::usage, what) {}
};

}  // namespace sepkit
