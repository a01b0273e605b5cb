#pragma once

#include "qgroupoid/qgauss.hpp"

#include <functional>

namespace qgroupoid {

struct QuadratureResult {
    double value;
    double error_estimate;
    bool converged;
};

/// Adaptive Gauss-Kronrod (15 point) on [lo, hi]; hi may be +infinity.
/// Converged when the error estimate is at most `abs_tol`.
QuadratureResult integrate_gk(const std::function<double(double)>& f, double lo, double hi, double abs_tol);

/// Tanh-sinh on a finite [lo, hi]; tolerates integrable endpoint singularities.
QuadratureResult integrate_tanh_sinh(const std::function<double(double)>& f, double lo, double hi, double abs_tol);

/// int_0^{|z|} pdf of d, computed by quadrature of the density alone.
///
/// For unbounded support the stretch beyond 1 is integrated in t = ln x so
/// that heavy tails and huge upper limits stay tractable; compact supports
/// use tanh-sinh to absorb the edge singularity.
QuadratureResult half_line_integral(const QGaussian& d, double z, double abs_tol);

}  // namespace qgroupoid
