#pragma once

#include <stdexcept>
#include <string>

namespace sympair {

enum class Errc {
  SingularH,
  NotRegular,
  IllConditioned,
  ZeroArgument,
  EmptySupport,
  GridMiss,
  InsufficientBins,
  DegenerateFit,
  BranchViolation,
  TruncationFailure,
  DivisionFailure,
  NotInvariant,
  TooCloseToWall,
  StencilCrossesWall,
  OutsideDomain,
  LogPole,
  SupportViolation,
  FitFailure,
  BadInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SingularH: return "SingularH";
    case Errc::NotRegular: return "NotRegular";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::GridMiss: return "GridMiss";
    case Errc::InsufficientBins: return "InsufficientBins";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::BranchViolation: return "BranchViolation";
    case Errc::TruncationFailure: return "TruncationFailure";
    case Errc::DivisionFailure: return "DivisionFailure";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::TooCloseToWall: return "TooCloseToWall";
    case Errc::StencilCrossesWall: return "StencilCrossesWall";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::LogPole: return "LogPole";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::FitFailure: return "FitFailure";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace sympair
