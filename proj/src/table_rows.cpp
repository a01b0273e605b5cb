#include "qgroupoid/errors.hpp"
#include "qgroupoid/groupoid.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qgroupoid {

namespace {

using std::numbers::pi;

// clang-format off
constexpr std::array<std::string_view, 10> kPrintedExpressions = {
    "tan(pi z / (6+4z^2)^(1/2))",
    "tan(pi z (15+4z^2) / (2 sqrt2 (5+2z^2)^(3/2)))",
    "tan(pi z (735+280z^2+32z^4) / (8 sqrt2 (7+2z^2)^(5/2)))",
    "tan(pi z (25515+4z^2(2835+504z^2+32z^4)) / (16 sqrt2 (9+2z^2)^(7/2)))",
    "tan(pi z (4611915+16z^2(139755+4z^2(7623+792z^2+32z^4))) / (128 sqrt2 (11+2z^2)^(9/2)))",
    "sqrt6 arcsin(z/sqrt(1+z^2)) / (pi^2 - 4 arcsin^2(z/sqrt(1+z^2)))",
    "sqrt3 z (11+4z^2) / sqrt(500+150z^2)",
    "sqrt3 z (735+280z^2+32z^4) / sqrt(1075648+456190z^2+54880z^4)",
    "z (25515+4z^2(2835+504z^2+32z^4)) / (27 sqrt6 sqrt(93312+45927z^2+8568z^4+560z^6))",
    "sqrt(3/22) z (4611915+16z^2(139755+4z^2(7623+792z^2+32z^4))) / (121 sqrt(119939072+3z^2(21398487+32z^2(152823+16324z^2+672z^4))))",
};
// clang-format on

const std::array<TableRowInfo, 10>& rows() {
    static const std::array<TableRowInfo, 10> table = {{
        {TableRow::two_to_five_thirds, {2}, {5, 3}, "G2->G5/3", {2}, {5, 3}, kPrintedExpressions[0]},
        {TableRow::two_to_seven_fifths, {2}, {7, 5}, "G2->G7/5", {2}, {7, 5}, kPrintedExpressions[1]},
        {TableRow::two_to_nine_sevenths, {2}, {9, 7}, "G2->G9/7", {2}, {9, 5}, kPrintedExpressions[2]},
        {TableRow::two_to_eleven_ninths, {2}, {11, 9}, "G2->G11/9", {2}, {11, 9}, kPrintedExpressions[3]},
        {TableRow::two_to_thirteen_elevenths, {2}, {13, 11}, "G2->G13/11", {2}, {13, 9}, kPrintedExpressions[4]},
        {TableRow::five_thirds_to_two, {5, 3}, {2}, "G5/3->G2", {5, 3}, {2}, kPrintedExpressions[5]},
        {TableRow::five_thirds_to_seven_fifths, {5, 3}, {7, 5}, "G5/3->G7/5", {5, 3}, {7, 5}, kPrintedExpressions[6]},
        {TableRow::five_thirds_to_nine_sevenths, {5, 3}, {9, 7}, "G5/3->G9/7", {5, 3}, {9, 5}, kPrintedExpressions[7]},
        {TableRow::five_thirds_to_eleven_ninths, {5, 3}, {11, 9}, "G5/3->G11/9", {5, 3}, {11, 9}, kPrintedExpressions[8]},
        {TableRow::five_thirds_to_thirteen_elevenths, {5, 3}, {13, 11}, "G5/3->G13/11", {5, 3}, {13, 9}, kPrintedExpressions[9]},
    }};
    return table;
}

// Polynomials in u = z^2. Long double keeps z^9-sized intermediates in
// range for any finite double z.
using real = long double;

real poly_7(real u) { return 735.0L + 280.0L * u + 32.0L * u * u; }
real poly_9(real u) { return 25515.0L + 4.0L * u * (2835.0L + 504.0L * u + 32.0L * u * u); }
real poly_11(real u) {
    return 4611915.0L + 16.0L * u * (139755.0L + 4.0L * u * (7623.0L + 792.0L * u + 32.0L * u * u));
}

// The G2 family is tan(pi m) with m = z P(u) / A(u), A = C (a + 2u)^(k + 1/2),
// m < 1/2. Near the pole the complement 1/2 - m = D(u) / (2 A (A + 2 z P))
// with D = A^2 - 4 u P^2, an exact polynomial, replaces the cancelling
// difference.
double tan_family(real z, real num, real a_term, real power, real c, real d) {
    const real pi_l = 3.141592653589793238462643383279502884L;
    const real big_a = c * std::pow(a_term, power);
    const real m = z * num / big_a;
    if (m <= 0.25L) return static_cast<double>(std::tan(pi_l * m));
    const real outer = d / (2.0L * big_a * (big_a + 2.0L * z * num));
    return static_cast<double>(1.0L / std::tan(pi_l * outer));
}

// Positive branch, z >= 0.
double closed_form_positive(TableRow row, double zd, bool printed) {
    const real z = zd;
    const real u = z * z;
    const real sqrt2_l = 1.414213562373095048801688724209698079L;
    switch (row) {
        case TableRow::two_to_five_thirds:
            return tan_family(z, 1.0L, 6.0L + 4.0L * u, 0.5L, 1.0L, 6.0L);
        case TableRow::two_to_seven_fifths:
            return tan_family(z, 15.0L + 4.0L * u, 5.0L + 2.0L * u, 1.5L, 2.0L * sqrt2_l, 100.0L * (3.0L * u + 10.0L));
        case TableRow::two_to_nine_sevenths:
            return tan_family(z, poly_7(u), 7.0L + 2.0L * u, 2.5L, 8.0L * sqrt2_l,
                              1372.0L * (80.0L * u * u + 665.0L * u + 1568.0L));
        case TableRow::two_to_eleven_ninths:
            return tan_family(z, poly_9(u), 9.0L + 2.0L * u, 3.5L, 16.0L * sqrt2_l,
                              26244.0L * (93312.0L + u * (45927.0L + u * (8568.0L + 560.0L * u))));
        case TableRow::two_to_thirteen_elevenths:
            return tan_family(
                z, poly_11(u), 11.0L + 2.0L * u, 4.5L, 128.0L * sqrt2_l,
                644204.0L * (119939072.0L + u * (64195461.0L + u * (14671008.0L + u * (1567104.0L + 64512.0L * u)))));
        case TableRow::five_thirds_to_two: {
            // theta = arcsin(z / sqrt(1+z^2)) = arctan z; pi - 2 theta = 2 arctan(1/z)
            // keeps pi^2 - 4 theta^2 free of cancellation for large z.
            const double theta = std::atan(zd);
            const double gap = zd > 1.0 ? 2.0 * std::atan(1.0 / zd) : pi - 2.0 * theta;
            const double denom = gap * (pi + 2.0 * theta);
            return std::sqrt(6.0) * theta / (printed ? denom : std::sqrt(denom));
        }
        case TableRow::five_thirds_to_seven_fifths:
            return static_cast<double>(std::sqrt(3.0L) * z * ((printed ? 11.0L : 15.0L) + 4.0L * u) /
                                       std::sqrt(500.0L + 150.0L * u));
        case TableRow::five_thirds_to_nine_sevenths:
            return static_cast<double>(std::sqrt(3.0L) * z * poly_7(u) /
                                       std::sqrt(1075648.0L + 456190.0L * u + 54880.0L * u * u));
        case TableRow::five_thirds_to_eleven_ninths:
            return static_cast<double>(
                z * poly_9(u) /
                (27.0L * std::sqrt(6.0L) * std::sqrt(93312.0L + u * (45927.0L + u * (8568.0L + 560.0L * u)))));
        case TableRow::five_thirds_to_thirteen_elevenths:
            return static_cast<double>(
                std::sqrt(3.0L / 22.0L) * z * poly_11(u) /
                (121.0L * std::sqrt(119939072.0L +
                                    3.0L * u * (21398487.0L + 32.0L * u * (152823.0L + 16324.0L * u + 672.0L * u * u)))));
    }
    throw DomainError("unknown table row");
}

double odd_extension(TableRow row, double z, bool printed) {
    if (std::isnan(z)) throw DomainError("closed form evaluated at NaN");
    const double v = closed_form_positive(row, std::fabs(z), printed);
    return std::signbit(z) ? -v : v;
}

}  // namespace

std::span<const TableRowInfo> table_rows() noexcept { return rows(); }

const TableRowInfo& row_info(TableRow row) noexcept { return rows()[static_cast<std::size_t>(row)]; }

std::optional<TableRow> match_table_row(double q_source, double q_target) noexcept {
    for (const TableRowInfo& info : rows()) {
        if (std::fabs(info.source.to_double() - q_source) <= 1e-12 &&
            std::fabs(info.target.to_double() - q_target) <= 1e-12)
            return info.id;
    }
    return std::nullopt;
}

double eval_closed_form(TableRow row, double z) { return odd_extension(row, z, false); }

double eval_printed_form(TableRow row, double z) { return odd_extension(row, z, true); }

}  // namespace qgroupoid
