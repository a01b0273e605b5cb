#include "qgroupoid/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qgroupoid {

namespace {

constexpr unsigned kMaxDepth = 30;

}  // namespace

QuadratureResult integrate_gk(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
    if (lo == hi) return {0.0, 0.0, true};
    double error = 0.0;
    double l1 = 0.0;
    // Boost terminates on error <= tol * L1; the L1 norm of our integrands is
    // at most 1/2, so a relative tolerance of abs_tol is conservative.
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, lo, hi, kMaxDepth, std::max(abs_tol, 1e-15), &error, &l1);
    return {value, error, std::isfinite(value) && error <= abs_tol};
}

QuadratureResult integrate_tanh_sinh(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
    if (lo == hi) return {0.0, 0.0, true};
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double value = integrator.integrate(f, lo, hi, std::max(abs_tol, 1e-15), &error, &l1, &levels);
    return {value, error, std::isfinite(value) && error <= abs_tol};
}

QuadratureResult half_line_integral(const QGaussian& d, double z, double abs_tol) {
    const double upper = std::min(std::fabs(z), d.support_bound());
    if (upper == 0.0) return {0.0, 0.0, true};
    auto density = [&d](double x) { return pdf(d, x); };

    if (d.index().regime() == Regime::compact) {
        // x = L sin(theta) smooths the edge behaviour (1 - x^2/L^2)^(1/(1-q)).
        const double bound = d.support_bound();
        auto angular = [&d, bound](double theta) { return pdf(d, bound * std::sin(theta)) * bound * std::cos(theta); };
        const double theta_end = upper == bound ? 0.5 * std::numbers::pi : std::asin(upper / bound);
        return integrate_gk(angular, 0.0, theta_end, abs_tol);
    }

    const double head_end = std::min(upper, 1.0);
    const QuadratureResult head = integrate_gk(density, 0.0, head_end, 0.5 * abs_tol);
    if (upper <= 1.0) return head;

    auto log_stretched = [&d](double t) {
        const double x = std::exp(t);
        return std::isinf(x) ? 0.0 : pdf(d, x) * x;
    };
    const double t_end = std::isinf(upper) ? upper : std::log(upper);
    const QuadratureResult tail = integrate_gk(log_stretched, 0.0, t_end, 0.5 * abs_tol);
    return {head.value + tail.value, head.error_estimate + tail.error_estimate, head.converged && tail.converged};
}

}  // namespace qgroupoid
