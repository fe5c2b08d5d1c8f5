#pragma once

#include <stdexcept>
#include <string>

namespace octic {

enum class ErrorKind {
  InvalidModulus,
  NonIntegral,
  RamifiedEntry,
  MalformedArrangement,
  UnsupportedSingularity,
  Indeterminate,
  Unsupported,
  BadPrime,
  NotSemiseparable,
  DegenerateSurface,
  MissingModel,
  NoModel,
  InconsistentData,
  Ambiguity,
  InvalidTracePair,
  Inconsistency,
  Coverage,
  NoWitness,
  Parse,
  MissingEigenvalue,
  Usage,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace octic
