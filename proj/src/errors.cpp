#include "etrap/errors.hpp"

namespace etrap
{

std::string_view category_name(ErrorCategory category)
{
  switch (category)
  {
  case ErrorCategory::Validation: return "validation";
  case ErrorCategory::Numerical: return "numerical";
  case ErrorCategory::Resource: return "resource";
  case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category)
{
  switch (category)
  {
  case ErrorCategory::Validation: return 2;
  case ErrorCategory::Numerical: return 3;
  case ErrorCategory::Resource: return 3;
  case ErrorCategory::Io: return 4;
  }
  return 1;
}

}  // namespace etrap
