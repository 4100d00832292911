#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace etrap
{

//! Error categories; each maps onto a process exit code in the CLI.
enum class ErrorCategory
{
  Validation,  //!< bad input, parse failure, precondition violation (exit 2)
  Numerical,   //!< integration failure, truncation violation (exit 3)
  Resource,    //!< problem size beyond a configured cap (exit 3)
  Io           //!< filesystem failures (exit 4)
};

std::string_view category_name(ErrorCategory category);
int exit_code(ErrorCategory category);

class Error : public std::runtime_error
{
public:
  Error(ErrorCategory category, const std::string& what)
    : std::runtime_error(what), category_(category)
  {}

  ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

struct DomainError : Error
{
  explicit DomainError(const std::string& what)
    : Error(ErrorCategory::Validation, what) {}
};

struct ParseError : Error
{
  ParseError(std::string key, const std::string& what)
    : Error(ErrorCategory::Validation, key + ": " + what), key(std::move(key))
  {}
  std::string key;
};

struct NumericalError : Error
{
  explicit NumericalError(const std::string& what)
    : Error(ErrorCategory::Numerical, what) {}
};

//! The ladder is too short for the populated region of a state.
struct TruncationError : Error
{
  explicit TruncationError(const std::string& what)
    : Error(ErrorCategory::Numerical, what) {}
};

struct ResourceError : Error
{
  explicit ResourceError(const std::string& what)
    : Error(ErrorCategory::Resource, what) {}
};

struct IoError : Error
{
  IoError(const std::string& path, const std::string& what)
    : Error(ErrorCategory::Io, path + ": " + what) {}
};

}  // namespace etrap
