#pragma once

#include "qgroupoid/specfun.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qgroupoid {

enum class Regime { compact, gaussian, heavy_tail };

const char* to_string(Regime r) noexcept;

/// Entropic index q of a normalizable q-Gaussian, q in (-inf, 3).
///
/// Indices within `gaussian_bridge` of 1 are classified as gaussian and every
/// formula switches to its q -> 1 exponential limit there.
class QIndex {
public:
    static constexpr double gaussian_bridge = 1e-8;

    /// Throws NotNormalizableError for q >= 3 and DomainError for non-finite q.
    explicit QIndex(double q);

    double value() const noexcept { return q_; }
    Regime regime() const noexcept { return regime_; }

    friend bool operator==(const QIndex& l, const QIndex& r) noexcept { return l.q_ == r.q_; }

private:
    double q_;
    Regime regime_;
};

Regime classify(double q) noexcept;

/// Probability carried by a half line, split at |z|:
/// inner = P(0 < Y < |z|), outer = P(Y > |z|), inner + outer = 1/2.
/// Whichever component is smaller is computed directly, so tails keep their
/// relative accuracy.
struct HalfMass {
    double inner;
    double outer;
};

/// G_q(x) = [1 - (1-q) beta x^2]^{1/(1-q)} / Z_q.
///
/// Immutable after construction. For q < 1 the support is [-L, L] with
/// L = 1/sqrt((1-q) beta); otherwise the whole line.
class QGaussian {
public:
    explicit QGaussian(QIndex index, double beta_scale = 1.0);

    const QIndex& index() const noexcept { return index_; }
    double q() const noexcept { return index_.value(); }
    double beta_scale() const noexcept { return beta_; }
    double norm() const noexcept { return norm_; }
    /// L for compact q, +infinity otherwise.
    double support_bound() const noexcept { return support_; }

    /// Incomplete-Beta pair behind the CDF: (1/2, 1/(q-1) - 1/2) for heavy
    /// tails, (1/2, (2-q)/(1-q)) for compact support. Not defined in the
    /// gaussian regime (throws DomainError).
    specfun::BetaParams beta_params() const;

private:
    QIndex index_;
    double beta_;
    double norm_;
    double support_;
};

/// Normalization Z_q of G_q at scale beta.
double norm_const(QIndex index, double beta_scale);

double pdf(const QGaussian& d, double x);
double cdf(const QGaussian& d, double z);

/// Inverse of cdf on (0, 1).
double quantile(const QGaussian& d, double p);

/// Half-line mass split at |z|. Accepts |z| = infinity.
HalfMass half_mass(const QGaussian& d, double z);

/// The nonnegative point whose half mass is `m`; inverse of half_mass. Uses
/// the smaller of the two components.
double point_at_half_mass(const QGaussian& d, HalfMass m);

/// Counter-based 64-bit generator: draw i is splitmix64(seed + (i+1) * golden).
/// Stable across releases; uniform draws lie strictly inside (0, 1).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next_u64() noexcept;
    double next_uniform() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// n draws quantile(u_i), u_i from CounterRng(seed).
std::vector<double> sample(const QGaussian& d, std::size_t n, std::uint64_t seed);

}  // namespace qgroupoid
