#pragma once

#include "qgroupoid/qgauss.hpp"
#include "qgroupoid/rational.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qgroupoid {

// ---------------------------------------------------------------------------
// Closed-form scaling functions
// ---------------------------------------------------------------------------

/// The ten elementary-function scaling maps, named source_to_target.
enum class TableRow {
    two_to_five_thirds,
    two_to_seven_fifths,
    two_to_nine_sevenths,
    two_to_eleven_ninths,
    two_to_thirteen_elevenths,
    five_thirds_to_two,
    five_thirds_to_seven_fifths,
    five_thirds_to_nine_sevenths,
    five_thirds_to_eleven_ninths,
    five_thirds_to_thirteen_elevenths,
};

struct TableRowInfo {
    TableRow id;
    Rational source;
    Rational target;
    std::string_view label;
    /// Indices and expression of the original tabulation. Four
    /// rows carry mislabelled target indices and two carry a wrong
    /// expression; see eval_printed_form.
    Rational printed_source;
    Rational printed_target;
    std::string_view printed_expression;
};

std::span<const TableRowInfo> table_rows() noexcept;
const TableRowInfo& row_info(TableRow row) noexcept;

/// Row whose (source, target) pair lies within 1e-12 of (q_source, q_target).
std::optional<TableRow> match_table_row(double q_source, double q_target) noexcept;

/// Closed-form scaling function of `row`, verified against the defining
/// probability identity. Odd in z.
double eval_closed_form(TableRow row, double z);

/// The expression of the original tabulation, unchanged. Differs from
/// eval_closed_form for five_thirds_to_two (missing square root) and
/// five_thirds_to_seven_fifths (constant 11 instead of 15).
double eval_printed_form(TableRow row, double z);

// ---------------------------------------------------------------------------
// Scaling maps
// ---------------------------------------------------------------------------

enum class Strategy { identity, general_beta, gaussian_bridge, closed_form, extended_compact };

const char* to_string(Strategy s) noexcept;

/// One elementary scaling function inside a (possibly composed) map.
struct MapFactor {
    QGaussian source;
    QGaussian target;
    Strategy strategy;
    std::optional<TableRow> row;
    /// Relative perturbation applied to the output; zero except for
    /// negative-control fault injection.
    double fault = 0.0;
};

/// The scaling function gamma_{q'q}, a morphism G_q -> G_{q'}.
///
/// Direction convention: the morphism points from the source G_q to the
/// target G_{q'}, but pointwise the evaluator takes a point z of the target
/// variable and returns the point gamma(z) of the source variable with equal
/// half-line probability:
///
///     int_0^{gamma(z)} G_q = int_0^z G_{q'},   gamma = quantile_q o cdf_{q'}.
///
/// A composed map keeps its factors and evaluates them in sequence; its
/// strategy still names the class of the direct map between its endpoints.
class ScalingMap {
public:
    const QIndex& source() const noexcept { return source_; }
    const QIndex& target() const noexcept { return target_; }
    Strategy strategy() const noexcept { return strategy_; }
    std::optional<TableRow> row() const noexcept { return row_; }

    /// Factors in pointwise application order.
    std::span<const MapFactor> factors() const noexcept { return factors_; }
    bool is_composite() const noexcept { return factors_.size() > 1; }

    /// Half-width of the evaluator's domain (target support) and range
    /// (source support); +infinity for unbounded support.
    double domain_bound() const noexcept;
    double range_bound() const noexcept;

private:
    ScalingMap(QIndex source, QIndex target, std::vector<MapFactor> factors);

    friend ScalingMap make_map(QIndex, QIndex);
    friend ScalingMap identity_map(QIndex);
    friend ScalingMap compose(const ScalingMap&, const ScalingMap&);
    friend ScalingMap inverse(const ScalingMap&);
    friend ScalingMap with_fault(const ScalingMap&, double);

    QIndex source_;
    QIndex target_;
    Strategy strategy_;
    std::optional<TableRow> row_;
    std::vector<MapFactor> factors_;
};

/// Strategy the direct map between the two indices uses.
Strategy select_strategy(QIndex source, QIndex target) noexcept;

/// gamma_{q'q} with source q and target q'.
ScalingMap make_map(QIndex source, QIndex target);

ScalingMap identity_map(QIndex q);

/// Pointwise value. Odd, strictly increasing, eval(0) = 0. At |z| equal to
/// the domain bound (including infinity) returns the matching range bound.
/// Throws DomainError for |z| beyond a compact target's support.
double eval(const ScalingMap& map, double z);

/// quantile_source o cdf_target at z without any closed-form shortcut; the
/// route every non-identity, non-closed-form map takes.
double eval_canonical(QIndex source, QIndex target, double z);

/// Same as eval; named for maps with a compactly supported endpoint.
inline double extended_eval(const ScalingMap& map, double z) { return eval(map, z); }

/// Evaluates an elementary heavy-tail map through the nested form
/// I^{-1}_{I_{x'}(1/2, b')}(1/2, b) instead of the quantile/cdf split. Kept as
/// an independent route for cross-checking; less accurate far in the tails,
/// and throws ConvergenceError once the source Beta point has no double close
/// enough to 1 (small b, i.e. source q near 3).
double eval_literal(const ScalingMap& map, double z);

/// left o right, defined iff left.source() == right.target(): the result maps
/// right.source() to left.target() and applies left's evaluator first.
/// Throws CompositionUndefinedError otherwise.
ScalingMap compose(const ScalingMap& left, const ScalingMap& right);

/// gamma_{qq'} for gamma_{q'q}.
ScalingMap inverse(const ScalingMap& map);

/// Copy of `map` whose output is scaled by (1 + relative). Negative controls only.
ScalingMap with_fault(const ScalingMap& map, double relative);

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

/// f(q) = (7 - 5q) / (5 - 3q) for q <= 5/3; f(-inf) = 5/3.
/// Throws PoleError at q = 5/3 and DomainError above it.
double duality(double q);

/// Exact version of duality for rational indices.
Rational duality(Rational q);

}  // namespace qgroupoid
