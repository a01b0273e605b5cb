#include "qgroupoid/cli.hpp"

#include "qgroupoid/errors.hpp"
#include "qgroupoid/groupoid.hpp"
#include "qgroupoid/qgauss.hpp"
#include "qgroupoid/rational.hpp"
#include "qgroupoid/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>

namespace qgroupoid::cli {

namespace {

double parse_real(std::string_view text, const char* what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty())
        throw DomainError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a number");
    return v;
}

std::size_t parse_count(std::string_view text, const char* what) {
    std::size_t v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty())
        throw DomainError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a count");
    return v;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) s += ',';
        s += header[i];
    }
    s += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ',';
            s += format_double(row[i]);
        }
        s += '\n';
    }
    return s;
}

// stdout when no path was given, otherwise an atomic file write.
void emit(std::ostream& out, const std::string& content, const std::string& path) {
    if (path.empty())
        out << content;
    else
        write_file_atomic(path, content);
}

std::vector<double> points(const std::optional<double>& single, const std::string& grid, const char* name) {
    if (single && !grid.empty()) throw DomainError(std::string("give either --") + name + " or --grid, not both");
    if (single) return {*single};
    if (!grid.empty()) return parse_grid(grid);
    throw DomainError(std::string("one of --") + name + " or --grid is required");
}

struct Options {
    std::string q, q_prime, q_mid, grid, output, suite = "all", id;
    std::optional<double> z, p;
    double beta = 1.0;
    double tol = 0.0;
    double check_tol = 1e-8;
    double fault = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 42;
    bool check = false;
    bool json = false;
};

QGaussian distribution(const Options& o) { return QGaussian(QIndex(parse_index(o.q)), o.beta); }

int cmd_density(const Options& o, std::ostream& out, const char* column,
                const std::function<double(const QGaussian&, double)>& f) {
    const QGaussian d = distribution(o);
    const std::vector<double> zs = points(o.z, o.grid, "z");
    if (o.z && o.output.empty()) {
        out << format_double(f(d, zs.front())) << '\n';
        return exit_ok;
    }
    std::vector<std::vector<double>> rows;
    for (double z : zs) rows.push_back({z, f(d, z)});
    emit(out, csv({"z", column}, rows), o.output);
    return exit_ok;
}

int cmd_quantile(const Options& o, std::ostream& out) {
    const QGaussian d = distribution(o);
    const std::vector<double> ps = points(o.p, o.grid, "p");
    if (o.p && o.output.empty()) {
        out << format_double(quantile(d, ps.front())) << '\n';
        return exit_ok;
    }
    std::vector<std::vector<double>> rows;
    for (double p : ps) rows.push_back({p, quantile(d, p)});
    emit(out, csv({"p", "quantile"}, rows), o.output);
    return exit_ok;
}

int cmd_transform(const Options& o, std::ostream& out) {
    const ScalingMap map = make_map(QIndex(parse_index(o.q)), QIndex(parse_index(o.q_prime)));
    const std::vector<double> zs = points(o.z, o.grid, "z");
    bool all_pass = true;
    std::vector<std::vector<double>> rows;
    for (double z : zs) {
        const double g = eval(map, z);
        std::vector<double> row{z, g};
        if (o.check) {
            const verify::VerificationReport r = verify::check_probability_preservation(map, std::fabs(z), o.check_tol);
            all_pass = all_pass && r.passed();
            row.push_back(r.residual);
        }
        rows.push_back(std::move(row));
    }
    if (o.z && o.output.empty()) {
        out << format_double(rows.front()[1]) << '\n';
        if (o.check) out << "residual " << format_double(rows.front()[2]) << '\n';
    } else {
        std::vector<std::string> header{"z", "gamma"};
        if (o.check) header.emplace_back("residual");
        emit(out, csv(header, rows), o.output);
    }
    return all_pass ? exit_ok : exit_verification_failed;
}

int cmd_compose(const Options& o, std::ostream& out) {
    const QIndex q(parse_index(o.q));
    const QIndex mid(parse_index(o.q_mid));
    const QIndex qp(parse_index(o.q_prime));
    if (!o.z) throw DomainError("--z is required");
    const ScalingMap composed = compose(make_map(mid, qp), make_map(q, mid));
    const double c = eval(composed, *o.z);
    const double d = eval(make_map(q, qp), *o.z);
    const double diff = verify::mixed_difference(c, d);
    out << "composed " << format_double(c) << '\n'
        << "direct " << format_double(d) << '\n'
        << "difference " << format_double(diff) << '\n';
    return diff <= o.check_tol ? exit_ok : exit_verification_failed;
}

int cmd_sample(const Options& o, std::ostream& out) {
    const QGaussian d = distribution(o);
    if (o.n == 0) throw DomainError("--n must be at least 1");
    std::string s = "x\n";
    for (double x : sample(d, o.n, o.seed)) {
        s += format_double(x);
        s += '\n';
    }
    emit(out, s, o.output);
    return exit_ok;
}

nlohmann::json report_json(const verify::VerificationReport& r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["inputs"] = r.inputs;
    j["residual"] = std::isfinite(r.residual) ? nlohmann::json(r.residual) : nlohmann::json(nullptr);
    j["tolerance"] = r.tolerance;
    j["outcome"] = verify::to_string(r.outcome);
    return j;
}

int cmd_verify(const Options& o, std::ostream& out) {
    verify::SuiteOptions so;
    so.seed = o.seed;
    so.tolerance = o.tol;
    so.fault = o.fault;
    if (o.tol < 0.0) throw DomainError("--tol must be positive");
    const std::vector<verify::VerificationReport> reports = verify::run_suite(o.suite, so);
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.passed() ? 0 : 1;

    if (o.json) {
        nlohmann::json j;
        j["suite"] = o.suite;
        j["seed"] = o.seed;
        j["total"] = reports.size();
        j["failed"] = failed;
        j["passed"] = failed == 0;
        j["reports"] = nlohmann::json::array();
        for (const auto& r : reports) j["reports"].push_back(report_json(r));
        out << j.dump(2) << '\n';
    } else {
        char buf[64];
        for (const auto& r : reports) {
            std::snprintf(buf, sizeof buf, " residual=%.3e tol=%.1e", r.residual, r.tolerance);
            out << verify::to_string(r.outcome) << ' ' << r.check << ' ' << r.inputs << buf << '\n';
        }
        out << "suite=" << o.suite << " reports=" << reports.size() << " failed=" << failed << '\n';
    }
    return failed == 0 ? exit_ok : exit_verification_failed;
}

int cmd_figure(const Options& o, std::ostream& out) {
    const std::vector<double> grid = o.grid.empty() ? default_figure_grid() : parse_grid(o.grid);
    const std::string content = figure_csv(o.id, grid);
    std::string path = o.output;
    if (path.empty()) {
        const char* dir = std::getenv(kOutputDirEnv);
        path = (std::filesystem::path(dir && *dir ? dir : ".") / (o.id + ".csv")).string();
    }
    write_file_atomic(path, content);
    out << path << '\n';
    return exit_ok;
}

int cmd_table(std::ostream& out) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-14s %6s %24s %24s %10s\n", "map", "z", "closed_form", "general", "rel_diff");
    out << buf;
    double worst = 0.0;
    for (const TableRowInfo& row : table_rows()) {
        for (double z : {0.5, 1.0, 2.0}) {
            const double c = eval_closed_form(row.id, z);
            const double g = eval_canonical(QIndex(row.source.to_double()), QIndex(row.target.to_double()), z);
            const double diff = std::fabs(g - c) / std::fabs(c);
            worst = std::max(worst, diff);
            std::snprintf(buf, sizeof buf, "%-14s %6.2f %24.17g %24.17g %10.3e\n", std::string(row.label).c_str(), z,
                          c, g, diff);
            out << buf;
        }
    }
    std::snprintf(buf, sizeof buf, "max rel_diff %.3e\n", worst);
    out << buf;
    return exit_ok;
}

void add_q(CLI::App* c, Options& o) { c->add_option("--q", o.q, "entropic index (rational or decimal)")->required(); }

}  // namespace

double parse_index(std::string_view text) {
    try {
        return Rational::parse(text).to_double();
    } catch (const DomainError&) {
        return parse_real(text, "index");
    }
}

std::vector<double> parse_grid(std::string_view spec) {
    const std::size_t a = spec.find(':');
    const std::size_t b = a == std::string_view::npos ? a : spec.find(':', a + 1);
    if (b == std::string_view::npos) throw DomainError("grid must look like lo:hi:n, got '" + std::string(spec) + "'");
    const double lo = parse_real(spec.substr(0, a), "grid lo");
    const double hi = parse_real(spec.substr(a + 1, b - a - 1), "grid hi");
    const std::size_t n = parse_count(spec.substr(b + 1), "grid n");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid bounds must be finite");
    if (n == 0) throw DomainError("grid needs at least one point");
    if (n > 10'000'000) throw DomainError("grid has too many points");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = hi;
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> default_figure_grid() {
    std::vector<double> g;
    for (int i = -100; i <= 100; ++i) g.push_back(i / 20.0);
    return g;
}

std::string figure_csv(std::string_view id, const std::vector<double>& grid) {
    auto curves = [&grid](const char* source, std::initializer_list<const char*> targets) {
        const QIndex src(parse_index(source));
        std::vector<std::string> header{"z"};
        std::vector<ScalingMap> maps;
        for (const char* t : targets) {
            header.push_back(std::string("gamma_") + t);
            maps.push_back(make_map(src, QIndex(parse_index(t))));
        }
        std::vector<std::vector<double>> rows;
        for (double z : grid) {
            std::vector<double> row{z};
            for (const ScalingMap& m : maps) row.push_back(eval(m, z));
            rows.push_back(std::move(row));
        }
        return csv(header, rows);
    };
    if (id == "fig1a") return curves("2", {"5/3", "7/5", "9/7", "25/23"});
    if (id == "fig1b") return curves("5/3", {"7/5", "9/7", "11/9", "25/23"});
    if (id == "fig2") {
        std::string s = "kind,q,q_prime,label\n";
        for (const TableRowInfo& row : table_rows()) {
            s += "point," + format_double(row.source.to_double()) + ',' + format_double(row.target.to_double()) + ',' +
                 row.source.to_string() + "->" + row.target.to_string() + '\n';
        }
        // The mappable region is the open square (1,3) x (1,3); corners listed
        // counter-clockwise, boundary excluded.
        const int corners[4][2] = {{1, 1}, {3, 1}, {3, 3}, {1, 3}};
        for (const auto& c : corners) s += "boundary," + std::to_string(c[0]) + ',' + std::to_string(c[1]) + ",open\n";
        return s;
    }
    throw DomainError("unknown figure id '" + std::string(id) + "' (expected fig1a, fig1b or fig2)");
}

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot rename onto '" + path + "': " + ec.message());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"q-Gaussian scaling maps: evaluation, verification and figure data"};
    app.name("qgroupoid");
    app.require_subcommand(1);

    auto* eval_cmd = app.add_subcommand("eval", "probability density G_q(z)");
    auto* cdf_cmd = app.add_subcommand("cdf", "cumulative distribution at z");
    for (CLI::App* c : {eval_cmd, cdf_cmd}) {
        add_q(c, o);
        c->add_option("--beta", o.beta, "scale parameter beta > 0");
        c->add_option("--z", o.z, "evaluation point");
        c->add_option("--grid", o.grid, "lo:hi:n grid, CSV output");
        c->add_option("--output", o.output, "CSV file for grid output");
    }
    auto* quantile_cmd = app.add_subcommand("quantile", "inverse cdf at probability p");
    add_q(quantile_cmd, o);
    quantile_cmd->add_option("--beta", o.beta, "scale parameter beta > 0");
    quantile_cmd->add_option("--p", o.p, "probability in (0,1)");
    quantile_cmd->add_option("--grid", o.grid, "lo:hi:n grid of probabilities");
    quantile_cmd->add_option("--output", o.output, "CSV file for grid output");

    auto* transform_cmd = app.add_subcommand("transform", "scaling map from G_q to G_q' at z");
    add_q(transform_cmd, o);
    transform_cmd->add_option("--q-prime", o.q_prime, "target index")->required();
    transform_cmd->add_option("--z", o.z, "point in the target variable");
    transform_cmd->add_option("--grid", o.grid, "lo:hi:n grid, CSV output (z, gamma)");
    transform_cmd->add_flag("--check", o.check, "also report the probability-preservation residual");
    transform_cmd->add_option("--check-tol", o.check_tol, "residual tolerance for --check");
    transform_cmd->add_option("--output", o.output, "CSV file for grid output");

    auto* compose_cmd = app.add_subcommand("compose", "compare q <- q-mid <- q' with the direct map");
    add_q(compose_cmd, o);
    compose_cmd->add_option("--q-mid", o.q_mid, "intermediate index")->required();
    compose_cmd->add_option("--q-prime", o.q_prime, "target index")->required();
    compose_cmd->add_option("--z", o.z, "point in the target variable")->required();
    compose_cmd->add_option("--check-tol", o.check_tol, "tolerance on the difference");

    auto* sample_cmd = app.add_subcommand("sample", "seeded samples by inverse transform");
    add_q(sample_cmd, o);
    sample_cmd->add_option("--beta", o.beta, "scale parameter beta > 0");
    sample_cmd->add_option("--n", o.n, "sample size")->required();
    sample_cmd->add_option("--seed", o.seed, "seed");
    sample_cmd->add_option("--output", o.output, "CSV file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", o.suite, "axioms, preservation, ode, closed-forms, hypergeometric, pushforward, all");
    verify_cmd->add_option("--tol", o.tol, "override the suite tolerance");
    verify_cmd->add_option("--seed", o.seed, "seed");
    verify_cmd->add_flag("--json", o.json, "JSON summary instead of report lines");
    verify_cmd->add_option("--inject-fault", o.fault)->group("");

    auto* figure_cmd = app.add_subcommand("figure", "write figure data as CSV");
    figure_cmd->add_option("--id", o.id, "fig1a, fig1b or fig2")->required();
    figure_cmd->add_option("--grid", o.grid, "lo:hi:n z grid for the curve figures");
    figure_cmd->add_option("--output", o.output, std::string("CSV path (default $") + kOutputDirEnv + "/<id>.csv)");

    auto* table_cmd = app.add_subcommand("table", "closed forms against the general evaluator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (eval_cmd->parsed()) return cmd_density(o, out, "pdf", [](const QGaussian& d, double z) { return pdf(d, z); });
        if (cdf_cmd->parsed()) return cmd_density(o, out, "cdf", [](const QGaussian& d, double z) { return cdf(d, z); });
        if (quantile_cmd->parsed()) return cmd_quantile(o, out);
        if (transform_cmd->parsed()) return cmd_transform(o, out);
        if (compose_cmd->parsed()) return cmd_compose(o, out);
        if (sample_cmd->parsed()) return cmd_sample(o, out);
        if (verify_cmd->parsed()) return cmd_verify(o, out);
        if (figure_cmd->parsed()) return cmd_figure(o, out);
        if (table_cmd->parsed()) return cmd_table(out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_no_convergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace qgroupoid::cli
