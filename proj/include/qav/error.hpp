#pragma once

#include <stdexcept>
#include <string>

namespace qav {

/// Error categories. The CLI maps `input` kinds to exit code 1 and
/// `inconsistency` kinds to exit code 2.
enum class ErrorKind {
  DivisionByZero,
  NotDivisible,
  PoleAtWitness,
  DimensionMismatch,
  NotASublattice,
  RankDeficient,
  ZeroDirection,
  NotToroidal,
  NotHermitian,
  NonIntegralPairing,
  NotPositiveOnCm,
  OrderingInvalid,
  NotClosedSubvariety,
  NotJInvariant,
  FormNotAmpleOnFactor,
  NotEndomorphism,
  AnalyticInconsistent,
  NotInvertible,
  SyntaxError,
  UnknownSymbol,
  DuplicateName,
  UnknownName,
  InvalidArgument,
  NoValidSelection,
  DegenerateSpan,
  InternalInconsistency,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PoleAtWitness: return "PoleAtWitness";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::NotToroidal: return "NotToroidal";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonIntegralPairing: return "NonIntegralPairing";
    case ErrorKind::NotPositiveOnCm: return "NotPositiveOnCm";
    case ErrorKind::OrderingInvalid: return "OrderingInvalid";
    case ErrorKind::NotClosedSubvariety: return "NotClosedSubvariety";
    case ErrorKind::NotJInvariant: return "NotJInvariant";
    case ErrorKind::FormNotAmpleOnFactor: return "FormNotAmpleOnFactor";
    case ErrorKind::NotEndomorphism: return "NotEndomorphism";
    case ErrorKind::AnalyticInconsistent: return "AnalyticInconsistent";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoValidSelection: return "NoValidSelection";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

/// True for errors that mean a proof obligation failed on the input
/// (bug or invalid hypothesis) rather than bad user input.
inline bool is_inconsistency(ErrorKind k) {
  return k == ErrorKind::NoValidSelection || k == ErrorKind::DegenerateSpan ||
         k == ErrorKind::InternalInconsistency;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace qav
