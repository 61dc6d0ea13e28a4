// Error codes shared by every module. One exception type carrying a code so
// callers (tests, CLI) can dispatch without string matching.
#pragma once

#include <stdexcept>
#include <string>

namespace omega {

enum class Errc {
  ZeroPolynomial,
  DegreeZero,
  DivisionByZero,
  OrderOutOfRange,
  InhomogeneousDegree,
  ImageOutsideChart,
  ConstantMap,
  UnequalDegrees,
  ImageInDivisor,
  NotGlobalSection,
  ChartIncompatible,
  ZeroForm,
  NotReduced,
  SingularBasePoint,
  BranchNotRational,
  PointOnDiscriminant,
  ComponentNotIntegral,
  HypothesisFailed,
  ImageIsLine,
  ImageInExceptional,
  DegenerateFamily,
  WitnessInvalid,
  NotCampana,
  BadConfig,
  SyntaxError,
  UnknownReference,
  DuplicateName,
  Internal,
};

const char* errc_name(Errc c);

class CalcError : public std::runtime_error {
 public:
  CalcError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw CalcError(code, what); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::OrderOutOfRange: return "OrderOutOfRange";
    case Errc::InhomogeneousDegree: return "InhomogeneousDegree";
    case Errc::ImageOutsideChart: return "ImageOutsideChart";
    case Errc::ConstantMap: return "ConstantMap";
    case Errc::UnequalDegrees: return "UnequalDegrees";
    case Errc::ImageInDivisor: return "ImageInDivisor";
    case Errc::NotGlobalSection: return "NotGlobalSection";
    case Errc::ChartIncompatible: return "ChartIncompatible";
    case Errc::ZeroForm: return "ZeroForm";
    case Errc::NotReduced: return "NotReduced";
    case Errc::SingularBasePoint: return "SingularBasePoint";
    case Errc::BranchNotRational: return "BranchNotRational";
    case Errc::PointOnDiscriminant: return "PointOnDiscriminant";
    case Errc::ComponentNotIntegral: return "ComponentNotIntegral";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::ImageIsLine: return "ImageIsLine";
    case Errc::ImageInExceptional: return "ImageInExceptional";
    case Errc::DegenerateFamily: return "DegenerateFamily";
    case Errc::WitnessInvalid: return "WitnessInvalid";
    case Errc::NotCampana: return "NotCampana";
    case Errc::BadConfig: return "BadConfig";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownReference: return "UnknownReference";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace omega
