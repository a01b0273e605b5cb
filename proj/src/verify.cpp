#include "qgroupoid/verify.hpp"

#include "qgroupoid/errors.hpp"
#include "qgroupoid/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qgroupoid::verify {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string describe(const ScalingMap& m) {
    return "q=" + fmt(m.source().value()) + " q'=" + fmt(m.target().value());
}

VerificationReport non_numerical(std::string check, std::string inputs, double tolerance, Outcome outcome) {
    return {std::move(check), std::move(inputs), kNaN, tolerance, outcome};
}

bool in_domain(const ScalingMap& m, double z) { return std::fabs(z) < m.domain_bound(); }

double relative_difference(double a, double b) {
    if (a == b) return 0.0;
    return std::fabs(a - b) / std::fabs(b);
}

}  // namespace

const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::pass: return "PASS";
        case Outcome::fail: return "FAIL";
        case Outcome::inconclusive: return "INCONCLUSIVE";
        case Outcome::undefined: return "UNDEFINED";
    }
    return "?";
}

VerificationReport make_report(std::string check, std::string inputs, double residual, double tolerance) {
    const Outcome outcome = residual <= tolerance ? Outcome::pass : Outcome::fail;
    return {std::move(check), std::move(inputs), residual, tolerance, outcome};
}

double mixed_difference(double a, double b) noexcept {
    if (a == b) return 0.0;
    return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

VerificationReport check_probability_preservation(const ScalingMap& map, double z, double tol) {
    if (!(z >= 0.0)) throw DomainError("probability preservation is checked for z >= 0");
    const std::string inputs = describe(map) + " z=" + fmt(z);
    const double gz = eval(map, z);
    const QGaussian source(map.source());
    const QGaussian target(map.target());
    const QuadratureResult lhs = half_line_integral(source, gz, tol / 10.0);
    const QuadratureResult rhs = half_line_integral(target, z, tol / 10.0);
    if (!lhs.converged || !rhs.converged)
        return non_numerical("preservation", inputs, tol, Outcome::inconclusive);
    return make_report("preservation", inputs, std::fabs(lhs.value - rhs.value), tol);
}

VerificationReport check_ode(const ScalingMap& map, double z, double h, double tol) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    if (!(std::fabs(z) + h < map.domain_bound()))
        throw DomainError("z +- h leaves the domain of the map");
    const QGaussian source(map.source());
    const QGaussian target(map.target());
    const double rhs = pdf(target, z);
    const double density_at_image = pdf(source, eval(map, z));
    auto central = [&](double step) { return (eval(map, z + step) - eval(map, z - step)) / (2.0 * step); };

    const double d1 = central(h);
    double residual = relative_difference(d1 * density_at_image, rhs);
    std::string inputs = describe(map) + " z=" + fmt(z) + " h=" + fmt(h);
    if (residual > 0.5 * tol) {
        const double richardson = (4.0 * central(0.5 * h) - d1) / 3.0;
        const double refined = relative_difference(richardson * density_at_image, rhs);
        if (refined < residual) {
            residual = refined;
            inputs += " richardson";
        }
    }
    return make_report("ode", inputs, residual, tol);
}

std::vector<VerificationReport> check_groupoid_axioms(const std::vector<QIndex>& q_list,
                                                      const std::vector<double>& z_grid,
                                                      const AxiomTolerances& tol, double fault) {
    std::vector<VerificationReport> out;
    auto faulted = [fault](ScalingMap m) { return fault == 0.0 ? m : with_fault(m, fault); };
    auto add = [&](const char* name, const std::string& tuple, double z, double got, double want, double t) {
        const double residual = std::isnan(got) ? std::numeric_limits<double>::infinity() : mixed_difference(got, want);
        out.push_back(make_report(name, tuple + " z=" + fmt(z), residual, t));
    };
    // A perturbed chain can push an intermediate point off a compact support;
    // that counts as a failed check, not an error.
    auto attempt = [](const ScalingMap& m, double z) {
        try {
            return eval(m, z);
        } catch (const DomainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    // Identity element: gamma_qq is the identity, and absorbs on both sides.
    for (const QIndex& q : q_list) {
        const ScalingMap id = faulted(identity_map(q));
        for (double z : z_grid) add("identity", "q=" + fmt(q.value()), z, attempt(id, z), z, tol.identity);
    }
    for (const QIndex& q : q_list) {
        for (const QIndex& qp : q_list) {
            if (q == qp) continue;
            const ScalingMap m = make_map(q, qp);
            const ScalingMap mf = faulted(m);
            const ScalingMap left_unit = compose(identity_map(qp), mf);
            const ScalingMap right_unit = compose(mf, identity_map(q));
            const ScalingMap there_and_back = compose(inverse(mf), mf);
            const ScalingMap back_and_there = compose(mf, inverse(mf));
            const std::string tuple = describe(m);
            for (double z : z_grid) {
                if (in_domain(m, z)) {
                    const double direct = eval(m, z);
                    add("identity", tuple + " id o m", z, attempt(left_unit, z), direct, tol.identity);
                    add("identity", tuple + " m o id", z, attempt(right_unit, z), direct, tol.identity);
                }
                if (in_domain(there_and_back, z))
                    add("inverse", tuple + " inv(m) o m", z, attempt(there_and_back, z), z, tol.inverse);
                if (in_domain(back_and_there, z))
                    add("inverse", tuple + " m o inv(m)", z, attempt(back_and_there, z), z, tol.inverse);
            }
        }
    }

    // Closure: gamma_{q''q'} o gamma_{q'q} = gamma_{q''q}.
    for (const QIndex& q : q_list) {
        for (const QIndex& q1 : q_list) {
            for (const QIndex& q2 : q_list) {
                if (q == q1 || q1 == q2 || q == q2) continue;
                const ScalingMap chained = compose(faulted(make_map(q1, q2)), make_map(q, q1));
                const ScalingMap direct = make_map(q, q2);
                const std::string tuple = "q=" + fmt(q.value()) + " q'=" + fmt(q1.value()) + " q''=" + fmt(q2.value());
                for (double z : z_grid) {
                    if (!in_domain(direct, z)) continue;
                    add("closure", tuple, z, attempt(chained, z), eval(direct, z), tol.closure);
                }
            }
        }
    }

    // Associativity: realize each inner pair by its direct map, so the two
    // parenthesizations take genuinely different numerical routes.
    for (const QIndex& q0 : q_list) {
        for (const QIndex& q1 : q_list) {
            for (const QIndex& q2 : q_list) {
                for (const QIndex& q3 : q_list) {
                    if (q0 == q1 || q0 == q2 || q0 == q3 || q1 == q2 || q1 == q3 || q2 == q3) continue;
                    const ScalingMap a = faulted(make_map(q2, q3));
                    const ScalingMap c = make_map(q0, q1);
                    const ScalingMap lhs = compose(a, make_map(q0, q2));
                    const ScalingMap rhs = compose(make_map(q1, q3), c);
                    const std::string tuple = "q=" + fmt(q0.value()) + " q'=" + fmt(q1.value()) +
                                              " q''=" + fmt(q2.value()) + " q'''=" + fmt(q3.value());
                    for (double z : z_grid) {
                        if (!in_domain(lhs, z)) continue;
                        add("associativity", tuple, z, attempt(lhs, z), eval(rhs, z), tol.associativity);
                    }
                }
            }
        }
    }
    return out;
}

VerificationReport check_composability(const ScalingMap& left, const ScalingMap& right) {
    const std::string inputs = "left " + describe(left) + " right " + describe(right);
    try {
        (void)compose(left, right);
        return make_report("composability", inputs, 0.0, 0.0);
    } catch (const CompositionUndefinedError&) {
        return non_numerical("composability", inputs, 0.0, Outcome::undefined);
    }
}

VerificationReport check_hypergeometric_equivalence(QIndex q, double z, double tol) {
    const double qv = q.value();
    if (!(qv > 1.0)) throw DomainError("hypergeometric equivalence needs q in (1, 3)");
    if (!std::isfinite(z)) throw DomainError("hypergeometric equivalence needs finite z");
    const std::string inputs = "q=" + fmt(qv) + " z=" + fmt(z);
    if (z == 0.0) return make_report("hypergeometric", inputs, 0.0, tol);

    const double az = std::fabs(z);
    const double c = (qv - 1.0) * az * az;
    double series_route;
    try {
        series_route = az * specfun::gauss_2f1_restricted(0.5, 1.0 / (qv - 1.0), 1.5, -c);
    } catch (const UnsupportedParametersError&) {
        return non_numerical("hypergeometric", inputs, tol, Outcome::inconclusive);
    } catch (const ConvergenceError&) {
        return non_numerical("hypergeometric", inputs, tol, Outcome::inconclusive);
    }
    const double b = 1.0 / (qv - 1.0) - 0.5;
    const double beta_route = specfun::reg_inc_beta(c / (1.0 + c), {0.5, b}) * specfun::beta_fn(0.5, b) /
                              (2.0 * std::sqrt(qv - 1.0));
    return make_report("hypergeometric", inputs, relative_difference(series_route, beta_route), tol);
}

VerificationReport check_closed_form(TableRow row, double z, double tol) {
    const TableRowInfo& info = row_info(row);
    const double closed = eval_closed_form(row, z);
    const double general = eval_canonical(QIndex(info.source.to_double()), QIndex(info.target.to_double()), z);
    return make_report("closed-form", std::string(info.label) + " z=" + fmt(z), relative_difference(general, closed),
                       tol);
}

VerificationReport check_closed_form_preflight(TableRow row, double z, double tol, bool printed) {
    const TableRowInfo& info = row_info(row);
    const Rational qs = printed ? info.printed_source : info.source;
    const Rational qt = printed ? info.printed_target : info.target;
    const std::string inputs = std::string(printed ? "printed " : "") + "G" + qs.to_string() + "->G" +
                               qt.to_string() + " z=" + fmt(z);
    const double gz = printed ? eval_printed_form(row, z) : eval_closed_form(row, z);
    const QuadratureResult lhs = half_line_integral(QGaussian(QIndex(qs.to_double())), gz, tol / 10.0);
    const QuadratureResult rhs = half_line_integral(QGaussian(QIndex(qt.to_double())), z, tol / 10.0);
    if (!lhs.converged || !rhs.converged) return non_numerical("preflight", inputs, tol, Outcome::inconclusive);
    return make_report("preflight", inputs, std::fabs(lhs.value - rhs.value), tol);
}

VerificationReport ks_pushforward(const ScalingMap& map, std::size_t n, std::uint64_t seed) {
    return ks_pushforward(map, QGaussian(map.target()), QGaussian(map.source()), n, seed);
}

VerificationReport ks_pushforward(const ScalingMap& map, const QGaussian& draw_from, const QGaussian& compare_to,
                                  std::size_t n, std::uint64_t seed) {
    if (n < 1000) throw DomainError("pushforward test needs n >= 1000");
    const QGaussian& source = compare_to;
    std::vector<double> pushed = sample(draw_from, n, seed);
    for (double& y : pushed) y = eval(map, y);
    std::sort(pushed.begin(), pushed.end());

    double statistic = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(source, pushed[i]);
        statistic = std::max({statistic, (static_cast<double>(i) + 1.0) / dn - f, f - static_cast<double>(i) / dn});
    }
    const double critical = 1.628 / std::sqrt(dn);
    std::string inputs = describe(map) + " n=" + std::to_string(n) + " seed=" + std::to_string(seed);
    if (!(draw_from.index() == map.target()) || !(compare_to.index() == map.source()))
        inputs += " draw=" + fmt(draw_from.q()) + " ref=" + fmt(compare_to.q());
    return make_report("pushforward", inputs, statistic, critical);
}

std::vector<QIndex> default_q_grid() {
    return {QIndex(1.0 + 1e-6), QIndex(9.0 / 7.0), QIndex(7.0 / 5.0), QIndex(1.5),
            QIndex(5.0 / 3.0),  QIndex(2.0),       QIndex(2.5),       QIndex(2.9)};
}

std::vector<QIndex> compact_q_grid() { return {QIndex(-5.0), QIndex(-1.0), QIndex(0.0), QIndex(0.5)}; }

std::vector<double> default_z_grid() { return {-2.0, -0.3, 0.05, 0.25, 0.5, 1.0, 2.0, 4.0}; }

std::vector<std::pair<double, double>> random_index_pairs(std::size_t count, double lo, double hi,
                                                          std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = lo + (hi - lo) * rng.next_uniform();
        const double b = lo + (hi - lo) * rng.next_uniform();
        pairs.emplace_back(a, b);
    }
    return pairs;
}

std::vector<std::string_view> suite_names() {
    return {"axioms", "preservation", "ode", "closed-forms", "hypergeometric", "pushforward", "all"};
}

namespace {

double pick(double override_tol, double fallback) { return override_tol > 0.0 ? override_tol : fallback; }

ScalingMap maybe_faulted(const ScalingMap& m, double fault) { return fault == 0.0 ? m : with_fault(m, fault); }

void append(std::vector<VerificationReport>& to, std::vector<VerificationReport> from) {
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

std::vector<VerificationReport> axioms_suite(const SuiteOptions& o) {
    AxiomTolerances tol;
    if (o.tolerance > 0.0) {
        tol.closure = o.tolerance;
        tol.associativity = o.tolerance;
        tol.inverse = std::min(tol.inverse, o.tolerance);
    }
    std::vector<VerificationReport> out = check_groupoid_axioms(default_q_grid(), default_z_grid(), tol, o.fault);

    // Extended grid: compact indices together with representatives of the
    // other regimes.
    std::vector<QIndex> extended = compact_q_grid();
    extended.push_back(QIndex(1.0 + 1e-6));
    extended.push_back(QIndex(5.0 / 3.0));
    extended.push_back(QIndex(2.0));
    for (VerificationReport& r : check_groupoid_axioms(extended, default_z_grid(), tol, o.fault)) {
        r.check = "extended-" + r.check;
        out.push_back(std::move(r));
    }
    return out;
}

const double kPairLo = 1.05;
const double kPairHi = 2.9;
const std::size_t kPairCount = 100;

std::vector<VerificationReport> preservation_suite(const SuiteOptions& o) {
    const double tol = pick(o.tolerance, 1e-8);
    std::vector<VerificationReport> out;
    for (const auto& [q, qp] : random_index_pairs(kPairCount, kPairLo, kPairHi, o.seed)) {
        const ScalingMap m = maybe_faulted(make_map(QIndex(q), QIndex(qp)), o.fault);
        for (double z : {0.25, 1.0, 4.0}) out.push_back(check_probability_preservation(m, z, tol));
    }
    const std::pair<double, double> extended[] = {{0.0, 2.0}, {-1.0, 1.5}, {2.0, 0.5}, {-5.0, 0.0}, {0.5, 2.9}};
    for (const auto& [q, qp] : extended) {
        const ScalingMap m = maybe_faulted(make_map(QIndex(q), QIndex(qp)), o.fault);
        for (double z : {0.1, 0.3, 0.9}) {
            if (z < m.domain_bound()) out.push_back(check_probability_preservation(m, z, tol));
        }
    }
    return out;
}

std::vector<VerificationReport> ode_suite(const SuiteOptions& o) {
    const double tol = pick(o.tolerance, 1e-6);
    std::vector<VerificationReport> out;
    for (const auto& [q, qp] : random_index_pairs(kPairCount, kPairLo, kPairHi, o.seed)) {
        const ScalingMap m = maybe_faulted(make_map(QIndex(q), QIndex(qp)), o.fault);
        for (double z : {0.25, 1.0, 4.0}) out.push_back(check_ode(m, z, 1e-5, tol));
    }
    return out;
}

std::vector<VerificationReport> closed_forms_suite(const SuiteOptions& o) {
    const double tol = pick(o.tolerance, 1e-8);
    std::vector<VerificationReport> out;
    for (const TableRowInfo& info : table_rows()) {
        for (int i = 0; i < 50; ++i) {
            const double z = 0.05 + (5.0 - 0.05) * i / 49.0;
            VerificationReport r = check_closed_form(info.id, z, tol);
            if (o.fault != 0.0) {
                // Perturb the general route the way a faulty map would.
                const double closed = eval_closed_form(info.id, z);
                const double general = eval_canonical(QIndex(info.source.to_double()),
                                                      QIndex(info.target.to_double()), z) * (1.0 + o.fault);
                r = make_report(r.check, r.inputs, std::fabs(general - closed) / std::fabs(closed), tol);
            }
            out.push_back(std::move(r));
        }
        for (double z : {0.5, 1.0, 2.0}) out.push_back(check_closed_form_preflight(info.id, z, tol, false));
    }
    return out;
}

std::vector<VerificationReport> hypergeometric_suite(const SuiteOptions& o) {
    const double tol = pick(o.tolerance, 1e-10);
    std::vector<VerificationReport> out;
    for (const QIndex& q : default_q_grid()) {
        for (double z : {0.0, 0.5, 1.0, 2.0, 4.0}) out.push_back(check_hypergeometric_equivalence(q, z, tol));
    }
    return out;
}

std::vector<VerificationReport> pushforward_suite(const SuiteOptions& o) {
    const std::pair<double, double> maps[] = {{2.0, 2.0}, {2.0, 5.0 / 3.0}, {2.0, 7.0 / 5.0}, {0.0, 2.0}};
    std::vector<VerificationReport> out;
    for (const auto& [q, qp] : maps)
        out.push_back(ks_pushforward(maybe_faulted(make_map(QIndex(q), QIndex(qp)), o.fault), 100'000, o.seed));
    return out;
}

}  // namespace

std::vector<VerificationReport> run_suite(std::string_view name, const SuiteOptions& options) {
    if (name == "axioms") return axioms_suite(options);
    if (name == "preservation") return preservation_suite(options);
    if (name == "ode") return ode_suite(options);
    if (name == "closed-forms") return closed_forms_suite(options);
    if (name == "hypergeometric") return hypergeometric_suite(options);
    if (name == "pushforward") return pushforward_suite(options);
    if (name == "all") {
        std::vector<VerificationReport> out;
        for (std::string_view s : suite_names()) {
            if (s != "all") append(out, run_suite(s, options));
        }
        return out;
    }
    throw DomainError("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace qgroupoid::verify
