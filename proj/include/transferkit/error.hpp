#pragma once

#include <stdexcept>
#include <string>

namespace transferkit {

// Base for every error the library raises. `kind()` is the stable tag used by
// the CLI and by reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TRANSFERKIT_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

TRANSFERKIT_ERROR(InputError)
TRANSFERKIT_ERROR(NonAssociative)
TRANSFERKIT_ERROR(NoIdentity)
TRANSFERKIT_ERROR(NoInverse)
TRANSFERKIT_ERROR(OrderBoundExceeded)
TRANSFERKIT_ERROR(BasednessMismatch)
TRANSFERKIT_ERROR(NotRefining)
TRANSFERKIT_ERROR(SearchBoundExceeded)
TRANSFERKIT_ERROR(NotDiskLike)
TRANSFERKIT_ERROR(NoWitness)
TRANSFERKIT_ERROR(DescriptorMismatch)
TRANSFERKIT_ERROR(SizeBoundExceeded)
TRANSFERKIT_ERROR(DiagramFailure)

#undef TRANSFERKIT_ERROR

}  // namespace transferkit
