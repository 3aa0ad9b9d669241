#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hardy {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Raised when a numerical contract (convergence, tolerance, sanity bound) is
// violated. Usage errors are std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardy
