#include "qgroupoid/qgauss.hpp"

#include "qgroupoid/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qgroupoid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(1 - e^s) for s < 0.

}  // namespace

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::compact: return "compact";
        case Regime::gaussian: return "gaussian";
        case Regime::heavy_tail: return "heavy_tail";
    }
    return "?";
}

Regime classify(double q) noexcept {
    if (std::fabs(q - 1.0) <= QIndex::gaussian_bridge) return Regime::gaussian;
    return q < 1.0 ? Regime::compact : Regime::heavy_tail;
}

QIndex::QIndex(double q) : q_(q), regime_(classify(q)) {
    if (!std::isfinite(q)) throw DomainError("entropic index must be finite, got " + std::to_string(q));
    if (q >= 3.0)
        throw NotNormalizableError("q-Gaussian with q=" + std::to_string(q) + " is not normalizable (q < 3)");
}

double norm_const(QIndex index, double beta_scale) {
    if (!(beta_scale > 0.0) || !std::isfinite(beta_scale))
        throw DomainError("beta scale must be positive, got " + std::to_string(beta_scale));
    const double q = index.value();
    switch (index.regime()) {
        case Regime::gaussian: return std::sqrt(std::numbers::pi / beta_scale);
        case Regime::heavy_tail:
            return specfun::beta_fn(0.5, 1.0 / (q - 1.0) - 0.5) / std::sqrt((q - 1.0) * beta_scale);
        case Regime::compact:
            return specfun::beta_fn(0.5, (2.0 - q) / (1.0 - q)) / std::sqrt((1.0 - q) * beta_scale);
    }
    return 0.0;
}

QGaussian::QGaussian(QIndex index, double beta_scale)
    : index_(index),
      beta_(beta_scale),
      norm_(norm_const(index, beta_scale)),
      support_(index.regime() == Regime::compact ? 1.0 / std::sqrt((1.0 - index.value()) * beta_scale) : kInf) {}

specfun::BetaParams QGaussian::beta_params() const {
    const double q = index_.value();
    switch (index_.regime()) {
        case Regime::heavy_tail: return {0.5, 1.0 / (q - 1.0) - 0.5};
        case Regime::compact: return {0.5, (2.0 - q) / (1.0 - q)};
        case Regime::gaussian: break;
    }
    throw DomainError("the gaussian regime has no incomplete-beta parameters");
}

double pdf(const QGaussian& d, double x) {
    const double q = d.q();
    const double w2 = d.beta_scale() * x * x;
    switch (d.index().regime()) {
        case Regime::gaussian: return std::exp(-w2) / d.norm();
        case Regime::heavy_tail: {
            // ln(1 + (q-1) w^2); the log form covers w^2 overflowing.
            const double c = (q - 1.0) * w2;
            const double log_base =
                std::isfinite(c) ? std::log1p(c)
                                 : std::log(q - 1.0) + std::log(d.beta_scale()) + 2.0 * std::log(std::fabs(x));
            return std::exp(-log_base / (q - 1.0)) / d.norm();
        }
        case Regime::compact: {
            if (std::fabs(x) >= d.support_bound()) return 0.0;
            return std::exp(std::log1p(-(1.0 - q) * w2) / (1.0 - q)) / d.norm();
        }
    }
    return 0.0;
}

HalfMass half_mass(const QGaussian& d, double z) {
    if (std::isnan(z)) throw DomainError("half_mass of NaN");
    const double w = std::sqrt(d.beta_scale()) * std::fabs(z);
    if (w == 0.0) return {0.0, 0.5};
    const double q = d.q();

    switch (d.index().regime()) {
        case Regime::gaussian: {
            if (w == kInf) return {0.5, 0.0};
            return {0.5 * std::erf(w), 0.5 * std::erfc(w)};
        }
        case Regime::heavy_tail: {
            if (w == kInf) return {0.5, 0.0};
            const specfun::BetaParams p = d.beta_params();
            // c = (q-1) w^2; inner argument c/(1+c), outer argument 1/(1+c).
            const double log_c = std::log(q - 1.0) + 2.0 * std::log(w);
            const double log_x = specfun::log_sigmoid(log_c);
            const double log_v = specfun::log_sigmoid(-log_c);
            const double inner = specfun::reg_inc_beta_logx(log_x, p);
            if (inner <= 0.5) return {0.5 * inner, 0.5 * (1.0 - inner)};
            const double outer = 0.5 * specfun::reg_inc_beta_logx(log_v, p.swapped());
            return {0.5 - outer, outer};
        }
        case Regime::compact: {
            const double s = std::sqrt(1.0 - q);
            if (s * w >= 1.0) return {0.5, 0.0};
            const specfun::BetaParams p = d.beta_params();
            const double y = (1.0 - q) * w * w;
            const double inner = specfun::reg_inc_beta(y, p);
            if (inner <= 0.5) return {0.5 * inner, 0.5 * (1.0 - inner)};
            const double one_minus_y = (1.0 - s * w) * (1.0 + s * w);
            const double outer = 0.5 * specfun::reg_inc_beta(one_minus_y, p.swapped());
            return {0.5 - outer, outer};
        }
    }
    return {0.0, 0.5};
}

double point_at_half_mass(const QGaussian& d, HalfMass m) {
    if (!(m.inner >= 0.0) || !(m.outer >= 0.0))
        throw DomainError("half mass components must be nonnegative");
    if (m.inner == 0.0) return 0.0;
    if (m.outer == 0.0) return d.support_bound();

    const double q = d.q();
    const double inv_sqrt_beta = 1.0 / std::sqrt(d.beta_scale());
    const bool use_inner = m.inner <= m.outer;

    switch (d.index().regime()) {
        case Regime::gaussian: {
            const double w = use_inner ? specfun::inv_erf(2.0 * m.inner) : specfun::inv_erfc(2.0 * m.outer);
            return w * inv_sqrt_beta;
        }
        case Regime::heavy_tail: {
            const specfun::BetaParams p = d.beta_params();
            // w^2 = x / ((1-x)(q-1)) with x the inner Beta argument.
            const double t = use_inner ? specfun::inv_reg_inc_beta_logit(2.0 * m.inner, p, false)
                                       : specfun::inv_reg_inc_beta_logit(2.0 * m.outer, p, true);
            return std::exp(0.5 * (t - std::log(q - 1.0))) * inv_sqrt_beta;
        }
        case Regime::compact: {
            const specfun::BetaParams p = d.beta_params();
            const double t = use_inner ? specfun::inv_reg_inc_beta_logit(2.0 * m.inner, p, false)
                                       : specfun::inv_reg_inc_beta_logit(2.0 * m.outer, p, true);
            const double y = 1.0 / (1.0 + std::exp(-t));
            return std::sqrt(y / (1.0 - q)) * inv_sqrt_beta;
        }
    }
    return 0.0;
}

double cdf(const QGaussian& d, double z) {
    const HalfMass m = half_mass(d, z);
    return std::signbit(z) ? m.outer : 0.5 + m.inner;
}

double quantile(const QGaussian& d, double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile requires p in (0,1), got " + std::to_string(p));
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -point_at_half_mass(d, {0.5 - p, p});
    return point_at_half_mass(d, {p - 0.5, 1.0 - p});
}

std::uint64_t CounterRng::next_u64() noexcept {
    ++counter_;
    std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::next_uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample(const QGaussian& d, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample size must be at least 1");
    CounterRng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(d, rng.next_uniform()));
    return out;
}

}  // namespace qgroupoid
