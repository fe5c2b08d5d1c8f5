#include "octic/error.hpp"

namespace octic {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidModulus: return "invalid-modulus";
    case ErrorKind::NonIntegral: return "non-integral";
    case ErrorKind::RamifiedEntry: return "ramified-entry";
    case ErrorKind::MalformedArrangement: return "malformed-arrangement";
    case ErrorKind::UnsupportedSingularity: return "unsupported-singularity";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::BadPrime: return "bad-prime";
    case ErrorKind::NotSemiseparable: return "not-semiseparable";
    case ErrorKind::DegenerateSurface: return "degenerate-surface";
    case ErrorKind::MissingModel: return "missing-model";
    case ErrorKind::NoModel: return "no-model";
    case ErrorKind::InconsistentData: return "inconsistent-data";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::InvalidTracePair: return "invalid-trace-pair";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Coverage: return "coverage";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::MissingEigenvalue: return "missing-eigenvalue";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace octic
