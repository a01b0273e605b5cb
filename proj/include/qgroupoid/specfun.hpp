#pragma once

// Special-function kernel: log-gamma, Beta, the regularized incomplete Beta
// and its inverse, a restricted Gauss hypergeometric series, and erf/inverse
// erf. Everything here is pure and reentrant.

namespace qgroupoid::specfun {

/// Parameter pair (a, b) of the regularized incomplete Beta function.
/// Both entries are strictly positive and finite.
class BetaParams {
public:
    BetaParams(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// (b, a): the pair used by the reflection I_x(a,b) = 1 - I_{1-x}(b,a).
    BetaParams swapped() const noexcept { return BetaParams(b_, a_, Unchecked{}); }

    friend bool operator==(const BetaParams&, const BetaParams&) = default;

private:
    struct Unchecked {};
    BetaParams(double a, double b, Unchecked) noexcept : a_(a), b_(b) {}

    double a_;
    double b_;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b). Uses a Stirling-difference form when an argument is large so
/// that the result keeps full relative accuracy for b up to ~1e15.
double log_beta(double a, double b);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

/// I_x(a, b) = B_x(a, b) / B(a, b) for x in [0, 1].
///
/// Evaluated by the continued fraction of the incomplete Beta with modified
/// Lentz iteration; for x above (a+1)/(a+b+2) the reflected fraction is used.
double reg_inc_beta(double x, BetaParams p);

/// I_x(a, b) with x given through its logarithm. Useful when x is far below
/// the smallest normal double; the lower tail stays accurate there.
double reg_inc_beta_logx(double log_x, BetaParams p);

/// Smallest x in [0, 1] with I_x(a, b) = y.
///
/// Safeguarded Newton iteration on ln I against t = ln(x/(1-x)), bracketed by
/// bisection in t. Throws ConvergenceError if |I_x - y| > 1e-12 after 200 steps.
double inv_reg_inc_beta(double y, BetaParams p);

/// ln of inv_reg_inc_beta(y, p) for y in (0, 1/2]. Stays finite where x itself
/// would underflow.
double inv_reg_inc_beta_log(double y, BetaParams p);

/// ln(x/(1-x)) for the x with I_x(a, b) = y, or with 1 - I_x(a, b) = y when
/// `complement`. Both x and 1-x are recoverable from it without cancellation.
double inv_reg_inc_beta_logit(double y, BetaParams p, bool complement);

/// ln(1 / (1 + e^-t)): ln x for logit t, and ln(1-x) at -t. Finite for all finite t.
double log_sigmoid(double t) noexcept;

/// Gauss hypergeometric 2F1(a, b; c; z) on the slice needed for the
/// q-Gaussian half-line integral and the incomplete-Beta series:
///   - 0 <= z < 1 with a > 0, c >= a, b <= 1: direct series;
///   - z < 0 with the Pfaff image (a, c - b; c; z/(z-1)) in the first case.
/// Anything else throws UnsupportedParametersError.
double gauss_2f1_restricted(double a, double b, double c, double z);

double erf(double x);
double erfc(double x);

/// Inverse of erf on (-1, 1).
double inv_erf(double y);

/// Inverse of erfc on (0, 2). Accurate in the far tail (y down to ~1e-300).
double inv_erfc(double y);

}  // namespace qgroupoid::specfun
