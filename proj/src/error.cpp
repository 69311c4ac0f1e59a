#include "sumgraph/error.hpp"

namespace sumgraph {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CompositeModulus: return "CompositeModulus";
    case Errc::SizeExceeded: return "SizeExceeded";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotPrimeField: return "NotPrimeField";
    case Errc::BadParameter: return "BadParameter";
    case Errc::BadCongruence: return "BadCongruence";
    case Errc::EmptySet: return "EmptySet";
    case Errc::WrongFamily: return "WrongFamily";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace sumgraph
