#pragma once

#include <stdexcept>
#include <string>

namespace weylkit {

enum class Errc {
  NonHermitian,
  IntegratorFailure,
  IndeterminateMode,
  ConsistencyError,
  RelationViolated,
  ExtensionFailure,
  UnsupportedEndpoint,
  OutOfScope,
  CaseMismatch,
  SingularBoundaryMatrix,
  ShapeMismatch,
  IllPosedParameter,
  PreconditionFailed,
  NonMonotone,
  NoConvergence,
  SingularQ0,
  EigenCrossing,
  UnsupportedSubclass,
  MatchFailure,
  NotSelfAdjointPair,
  ConfigError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }
  const char* id() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace weylkit
