#include "qgroupoid/groupoid.hpp"

#include "qgroupoid/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qgroupoid {

namespace {

double with_sign(double magnitude, double z) { return std::signbit(z) ? -magnitude : magnitude; }

MapFactor make_factor(QIndex source, QIndex target) {
    return MapFactor{QGaussian(source), QGaussian(target), select_strategy(source, target),
                     match_table_row(source.value(), target.value())};
}

double eval_half_masses(const QGaussian& source, const QGaussian& target, double z) {
    const double bound = target.support_bound();
    const double az = std::fabs(z);
    if (az > bound)
        throw DomainError("z=" + std::to_string(z) + " lies outside the support of G_" + std::to_string(target.q()));
    if (az == bound) return with_sign(source.support_bound(), z);
    return with_sign(point_at_half_mass(source, half_mass(target, z)), z);
}

double eval_factor(const MapFactor& f, double z) {
    if (std::isnan(z)) throw DomainError("scaling map evaluated at NaN");
    double r;
    if (f.strategy == Strategy::identity) {
        r = z;
    } else if (f.strategy == Strategy::closed_form && std::isfinite(z)) {
        r = eval_closed_form(*f.row, z);
    } else {
        r = eval_half_masses(f.source, f.target, z);
    }
    return f.fault == 0.0 ? r : r * (1.0 + f.fault);
}

}  // namespace

const char* to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::identity: return "identity";
        case Strategy::general_beta: return "general_beta";
        case Strategy::gaussian_bridge: return "gaussian_bridge";
        case Strategy::closed_form: return "closed_form";
        case Strategy::extended_compact: return "extended_compact";
    }
    return "?";
}

Strategy select_strategy(QIndex source, QIndex target) noexcept {
    if (source == target) return Strategy::identity;
    if (match_table_row(source.value(), target.value())) return Strategy::closed_form;
    if (source.regime() == Regime::compact || target.regime() == Regime::compact) return Strategy::extended_compact;
    if (source.regime() == Regime::gaussian || target.regime() == Regime::gaussian) return Strategy::gaussian_bridge;
    return Strategy::general_beta;
}

ScalingMap::ScalingMap(QIndex source, QIndex target, std::vector<MapFactor> factors)
    : source_(source),
      target_(target),
      strategy_(select_strategy(source, target)),
      row_(match_table_row(source.value(), target.value())),
      factors_(std::move(factors)) {
    if (strategy_ == Strategy::identity) row_.reset();
}

double ScalingMap::domain_bound() const noexcept { return factors_.front().target.support_bound(); }

double ScalingMap::range_bound() const noexcept { return factors_.back().source.support_bound(); }

ScalingMap make_map(QIndex source, QIndex target) {
    return ScalingMap(source, target, {make_factor(source, target)});
}

ScalingMap identity_map(QIndex q) { return make_map(q, q); }

double eval(const ScalingMap& map, double z) {
    double x = z;
    for (const MapFactor& f : map.factors()) x = eval_factor(f, x);
    return x;
}

double eval_canonical(QIndex source, QIndex target, double z) {
    if (std::isnan(z)) throw DomainError("scaling map evaluated at NaN");
    return eval_half_masses(QGaussian(source), QGaussian(target), z);
}

double eval_literal(const ScalingMap& map, double z) {
    if (map.is_composite()) throw DomainError("eval_literal applies to elementary maps only");
    if (std::isnan(z)) throw DomainError("scaling map evaluated at NaN");
    if (map.strategy() == Strategy::identity) return z;
    const double qs = map.source().value();
    const double qt = map.target().value();
    if (map.source().regime() != Regime::heavy_tail || map.target().regime() != Regime::heavy_tail)
        throw DomainError("eval_literal requires heavy-tail source and target");
    if (std::isinf(z)) return z;

    const specfun::BetaParams target_params(0.5, 1.0 / (qt - 1.0) - 0.5);
    const specfun::BetaParams source_params(0.5, 1.0 / (qs - 1.0) - 0.5);
    const double c = (qt - 1.0) * z * z;
    const double y = specfun::reg_inc_beta(c / (1.0 + c), target_params);
    const double x = specfun::inv_reg_inc_beta(y, source_params);
    return with_sign(std::sqrt(x / (1.0 - x)) / std::sqrt(qs - 1.0), z);
}

ScalingMap compose(const ScalingMap& left, const ScalingMap& right) {
    if (!(left.source() == right.target()))
        throw CompositionUndefinedError("cannot compose: left source q=" + std::to_string(left.source().value()) +
                                        " differs from right target q=" + std::to_string(right.target().value()));
    std::vector<MapFactor> factors(left.factors().begin(), left.factors().end());
    factors.insert(factors.end(), right.factors().begin(), right.factors().end());
    return ScalingMap(right.source(), left.target(), std::move(factors));
}

ScalingMap inverse(const ScalingMap& map) {
    std::vector<MapFactor> factors;
    factors.reserve(map.factors().size());
    for (auto it = map.factors().rbegin(); it != map.factors().rend(); ++it) {
        MapFactor f = make_factor(it->target.index(), it->source.index());
        f.fault = it->fault;
        factors.push_back(std::move(f));
    }
    return ScalingMap(map.target(), map.source(), std::move(factors));
}

ScalingMap with_fault(const ScalingMap& map, double relative) {
    ScalingMap out = map;
    out.factors_.back().fault = relative;
    return out;
}

double duality(double q) {
    if (std::isnan(q)) throw DomainError("duality of NaN");
    if (q == -std::numeric_limits<double>::infinity()) return 5.0 / 3.0;
    if (q == 5.0 / 3.0) throw PoleError("duality has a pole at q = 5/3");
    if (q > 5.0 / 3.0) throw DomainError("duality is defined for q <= 5/3, got " + std::to_string(q));
    return std::fma(-5.0, q, 7.0) / std::fma(-3.0, q, 5.0);
}

Rational duality(Rational q) {
    const Rational pole_distance = Rational(5) - Rational(3) * q;
    if (pole_distance == Rational(0)) throw PoleError("duality has a pole at q = 5/3");
    if (pole_distance < Rational(0))
        throw DomainError("duality is defined for q <= 5/3, got " + q.to_string());
    return (Rational(7) - Rational(5) * q) / pole_distance;
}

}  // namespace qgroupoid
