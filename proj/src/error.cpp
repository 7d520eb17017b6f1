#include "vmspod/error.hpp"

namespace vmspod {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidConfiguration: return "invalid-configuration";
    case ErrorKind::FactorizationFailure: return "factorization-failure";
    case ErrorKind::EmptyBasis: return "empty-basis";
    case ErrorKind::RankDeficiency: return "rank-deficiency";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::CorruptArchive: return "corrupt-archive";
    case ErrorKind::MismatchedMesh: return "mismatched-mesh";
  }
  return "unknown";
}

}  // namespace vmspod
