#ifndef DIGRAPHON_ERROR_HPP
#define DIGRAPHON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace digraphon {

enum class ErrorCode {
  MeasureSum,
  NonPositiveMeasure,
  ValueRange,
  ShapeMismatch,
  EmptyDigraph,
  EmptyRestriction,
  RefinementOverflow,
  ParseError,
  TooManyVertices,
  TooLarge,
  EqualBlocksRequired,
  NotOriented,
  NotAComponent,
  NotFragmented,
  Unreachable,
  NotStronglyConnected,
  ZeroSpectralRadius,
  ConvergenceFailure,
  CellBudgetExceeded,
  UnequalCells,
  Acyclic,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace digraphon

#endif  // DIGRAPHON_ERROR_HPP
