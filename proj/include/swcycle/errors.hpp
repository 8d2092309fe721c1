#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swcycle {

/// Failure categories raised by the numerical routines. The CLI reports the
/// name of the kind in its machine-readable error record.
enum class ErrorKind {
  Evaluation,           // a vector field returned a non-finite value
  Domain,               // argument outside the operation's domain
  DegenerateDenominator,
  NotSliding,           // threshold fields not of opposite sign
  NoEquilibrium,
  Convergence,
  NotAnEquilibrium,
  Stiffness,            // step size underflow
  Divergence,           // left the working rectangle
  NoReturn,             // no threshold crossing within the time budget
  Tangency,             // crossing with vanishing normal velocity
  BudgetExceeded,       // switch budget exhausted (chattering)
  Hypothesis,           // standing hypotheses of the bifurcation result fail
  NoCycle,
  NoRoot,
  DesignInfeasible,
};

std::string_view to_string(ErrorKind kind);

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace swcycle
