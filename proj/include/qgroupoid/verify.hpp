#pragma once

#include "qgroupoid/groupoid.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qgroupoid::verify {

enum class Outcome {
    pass,
    fail,
    inconclusive,  // the check itself could not be carried out (quadrature, unsupported 2F1)
    undefined,     // structural: the operation is not defined for these inputs
};

const char* to_string(Outcome o) noexcept;

/// One check result. For numerical outcomes pass <=> residual <= tolerance;
/// inconclusive and undefined reports carry a NaN residual.
struct VerificationReport {
    std::string check;
    std::string inputs;
    double residual;
    double tolerance;
    Outcome outcome;

    bool passed() const noexcept { return outcome == Outcome::pass; }
};

VerificationReport make_report(std::string check, std::string inputs, double residual, double tolerance);

/// |a - b| / max(1, |b|): absolute near the origin, relative for large values.
double mixed_difference(double a, double b) noexcept;

/// Probability preservation: |int_0^{gamma(z)} G_q - int_0^z G_{q'}| by
/// quadrature with absolute tolerance tol/10. Requires z >= 0.
VerificationReport check_probability_preservation(const ScalingMap& map, double z, double tol);

/// Differential form: central difference of gamma times G_q(gamma(z)) against
/// G_{q'}(z), relative. Falls back to a Richardson-extrapolated difference
/// when the plain residual comes within a factor 2 of tol.
VerificationReport check_ode(const ScalingMap& map, double z, double h, double tol);

struct AxiomTolerances {
    double closure = 1e-8;
    double associativity = 1e-8;
    double identity = 0.0;
    double inverse = 1e-9;
};

/// Closure, associativity, identity and inverse checks over every ordered
/// tuple of distinct indices in `q_list` and every z in `z_grid` inside the
/// relevant domain. `fault` perturbs the first map of each tuple (negative
/// controls); zero for the real check.
std::vector<VerificationReport> check_groupoid_axioms(const std::vector<QIndex>& q_list,
                                                      const std::vector<double>& z_grid,
                                                      const AxiomTolerances& tol, double fault = 0.0);

/// Attempts compose(left, right) and reports `undefined` when the shared
/// index does not match, `pass` when it does.
VerificationReport check_composability(const ScalingMap& left, const ScalingMap& right);

/// The half-line integral of the unnormalized density along the 2F1 route
/// and along the incomplete-Beta route, relative difference. q in (1, 3).
VerificationReport check_hypergeometric_equivalence(QIndex q, double z, double tol);

/// Closed-form row against the general evaluator at z, relative.
VerificationReport check_closed_form(TableRow row, double z, double tol);

/// Closed-form row against the probability identity directly (quadrature),
/// using either the verified or the printed expression and indices.
VerificationReport check_closed_form_preflight(TableRow row, double z, double tol, bool printed);

/// Draws n points from the target G_{q'}, maps them with eval and runs a
/// one-sample Kolmogorov-Smirnov test against the source cdf at alpha = 0.01.
/// Residual is the KS statistic, tolerance the critical value 1.628/sqrt(n).
VerificationReport ks_pushforward(const ScalingMap& map, std::size_t n, std::uint64_t seed);

/// Same test with explicit sampling and reference distributions; mismatched
/// choices serve as negative controls.
VerificationReport ks_pushforward(const ScalingMap& map, const QGaussian& draw_from, const QGaussian& compare_to,
                                  std::size_t n, std::uint64_t seed);

/// Default index grid for axiom checks (heavy tails plus the gaussian bridge).
std::vector<QIndex> default_q_grid();
/// Compact indices appended for the extended checks.
std::vector<QIndex> compact_q_grid();
std::vector<double> default_z_grid();

/// `count` (q, q') pairs uniform on [lo, hi]^2 from CounterRng(seed).
std::vector<std::pair<double, double>> random_index_pairs(std::size_t count, double lo, double hi,
                                                          std::uint64_t seed);

struct SuiteOptions {
    std::uint64_t seed = 42;
    /// Overrides the per-suite default tolerance when positive.
    double tolerance = 0.0;
    /// Relative fault injected into every map under test.
    double fault = 0.0;
};

std::vector<std::string_view> suite_names();

/// Runs a named suite: axioms, preservation, ode, closed-forms,
/// hypergeometric, pushforward, or all. Throws DomainError for other names.
std::vector<VerificationReport> run_suite(std::string_view name, const SuiteOptions& options);

}  // namespace qgroupoid::verify
