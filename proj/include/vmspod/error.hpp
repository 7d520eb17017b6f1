#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vmspod {

enum class ErrorKind {
  InvalidArgument,
  InvalidConfiguration,
  FactorizationFailure,
  EmptyBasis,
  RankDeficiency,
  Io,
  CorruptArchive,
  MismatchedMesh,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers branch on the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace vmspod
