#include "weylkit/error.hpp"

namespace weylkit {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::IntegratorFailure: return "IntegratorFailure";
    case Errc::IndeterminateMode: return "IndeterminateMode";
    case Errc::ConsistencyError: return "ConsistencyError";
    case Errc::RelationViolated: return "RelationViolated";
    case Errc::ExtensionFailure: return "ExtensionFailure";
    case Errc::UnsupportedEndpoint: return "UnsupportedEndpoint";
    case Errc::OutOfScope: return "OutOfScope";
    case Errc::CaseMismatch: return "CaseMismatch";
    case Errc::SingularBoundaryMatrix: return "SingularBoundaryMatrix";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::IllPosedParameter: return "IllPosedParameter";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::NonMonotone: return "NonMonotone";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularQ0: return "SingularQ0";
    case Errc::EigenCrossing: return "EigenCrossing";
    case Errc::UnsupportedSubclass: return "UnsupportedSubclass";
    case Errc::MatchFailure: return "MatchFailure";
    case Errc::NotSelfAdjointPair: return "NotSelfAdjointPair";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace weylkit
