#pragma once

#include <stdexcept>
#include <string>

namespace qfall {

/// Runtime failure of a numerical procedure (step-size underflow, singularity
/// encounter, quadrature non-convergence).  Precondition violations throw
/// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class StepSizeUnderflow : public NumericalError {
  public:
    StepSizeUnderflow(const std::string& what, double t_reached)
        : NumericalError(what), t_reached(t_reached) {}

    double t_reached;
};

}  // namespace qfall
