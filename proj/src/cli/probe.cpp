#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "../numeric_util.hpp"
#include "internal.hpp"
#include "redundancy/errors.hpp"
#include "redundancy/order_stats.hpp"

namespace redundancy::cli {

std::vector<double> parse_grid(const std::string& text) {
    auto parse = [&](std::string_view part) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size() || !std::isfinite(v))
            throw UsageError("bad grid '" + text + "' (expected a:b:step or a single value)");
        return v;
    };
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos; rest.remove_prefix(pos + 1))
        parts.push_back(rest.substr(0, pos));
    parts.push_back(rest);

    if (parts.size() == 1) return {parse(parts[0])};
    if (parts.size() != 3) throw UsageError("bad grid '" + text + "' (expected a:b:step)");
    const double a = parse(parts[0]), b = parse(parts[1]), step = parse(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError("bad grid '" + text + "' (need a <= b, step > 0)");
    std::vector<double> out;
    // Index-based so that 0.1:0.9:0.1 does not drift past its end point.
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    if (count > 1000000) throw UsageError("grid '" + text + "' is too large");
    for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
}

namespace {

std::vector<int> n_values(const std::string& grid) {
    std::vector<int> out;
    for (double v : parse_grid(grid)) {
        const int n = static_cast<int>(std::lround(v));
        if (n < 1 || std::abs(v - n) > 1e-9) throw UsageError("n grid must hold positive integers");
        out.push_back(n);
    }
    return out;
}

struct Point {
    int k;
    double value;
    double std_error = 0.0;
};

struct Outcome {
    std::size_t checked = 0;
    std::vector<std::string> findings;
};

void report(const std::string& id, const char* claim, const Outcome& o, std::ostream& out) {
    out << "probe " << id << ": " << o.checked << (o.checked == 1 ? " point" : " points")
        << " checked, " << o.findings.size() << " counterexample candidate"
        << (o.findings.size() == 1 ? "" : "s") << " (" << claim << ")\n";
    for (const auto& line : o.findings) out << line << '\n';
}

std::string describe(const Point& p) {
    std::string s = "k=" + std::to_string(p.k) + " value=" + format_short(p.value);
    if (p.std_error > 0.0) s += " stderr=" + format_short(p.std_error);
    return s;
}

// Best of the k >= 2 points.
const Point& best_other(const std::vector<Point>& pts) {
    return *std::min_element(pts.begin() + 1, pts.end(),
                             [](const Point& a, const Point& b) { return a.value < b.value; });
}

// Server scaling applied to the whole unit time X = delta + Z: Y = s X.
std::vector<Point> whole_scaling_points(const ServiceDistribution& dist, int n, double& delta) {
    std::vector<Point> pts;
    for (int k : divisors(n)) {
        const double s = static_cast<double>(n) / k;
        const double v = std::visit(
            overloaded{
                [&](const ShiftedExp& d) {
                    delta = d.delta;
                    return s * (d.delta + exp_order_mean(n, k, d.w));
                },
                [&](const Pareto& d) {
                    delta = d.lambda;
                    return s * pareto_order_mean(n, k, d.lambda, d.alpha);
                },
                [&](const BiModal& d) {
                    delta = 1.0;
                    return s * bimodal_order_mean(n, k, d.b, d.eps);
                },
            },
            dist);
        pts.push_back({k, v});
    }
    return pts;
}

std::vector<ServiceDistribution> probe_dists(const ProbeFlags& f) {
    std::vector<ServiceDistribution> out;
    for (const auto& lit : f.dists) out.push_back(parse_distribution(lit));
    if (f.delta_grid || f.w_grid) {
        for (double d : parse_grid(f.delta_grid.value_or("0")))
            for (double w : parse_grid(f.w_grid.value_or("1"))) out.push_back(ShiftedExp(d, w));
    }
    if (f.b_grid || f.eps_grid) {
        for (double b : parse_grid(f.b_grid.value_or("10")))
            for (double eps : parse_grid(f.eps_grid.value_or("0.4"))) out.push_back(BiModal(b, eps));
    }
    if (out.empty()) throw UsageError("probe needs --dist or a parameter grid");
    return out;
}

Outcome probe_c1(const ProbeFlags& f) {
    Outcome o;
    for (const auto& dist : probe_dists(f)) {
        for (int n : n_values(f.n_grid)) {
            if (n < 2) continue;
            double delta = 0.0;
            const auto pts = whole_scaling_points(dist, n, delta);
            ++o.checked;
            const Point& other = best_other(pts);
            const Point& rep = pts.front();
            const double tol = 1e-12 * std::max(std::abs(rep.value), 1e-300);
            const bool bad = delta == 0.0 ? other.value < rep.value - tol
                                          : rep.value < other.value - tol;
            if (bad)
                o.findings.push_back("counterexample: dist=" + to_literal(dist) + " n=" +
                                     std::to_string(n) + " delta=" + format_short(delta) +
                                     " replication " + describe(rep) + " best_other " +
                                     describe(other));
        }
    }
    return o;
}

Outcome probe_c2(const ProbeFlags& f) {
    Outcome o;
    for (int n : n_values(f.n_grid)) {
        if (n < 2) continue;
        for (double b : parse_grid(f.b_grid.value_or("10"))) {
            for (double eps : parse_grid(f.eps_grid.value_or("0.4"))) {
                std::vector<Point> pts;
                for (int k : divisors(n)) pts.push_back({k, bimodal_sum_order_mean(n, k, n / k, b, eps)});
                ++o.checked;
                const Point& other = best_other(pts);
                if (!(other.value < pts.front().value))
                    o.findings.push_back("counterexample: b=" + format_short(b) + " eps=" +
                                         format_short(eps) + " n=" + std::to_string(n) +
                                         " replication " + describe(pts.front()) + " best_other " +
                                         describe(other));
            }
        }
    }
    return o;
}

Outcome probe_c3(const ProbeFlags& f) {
    Outcome o;
    SweepOptions options;
    options.fallback = MonteCarlo{f.trials, f.seed};
    for (const auto& dist : probe_dists(f)) {
        const ServiceModel model(dist, ScalingModel::Additive);
        for (int n : n_values(f.n_grid)) {
            if (n < 2) continue;
            const SweepResult r = sweep(model, n, Analytic{}, options);
            std::vector<Point> pts;
            for (const auto& row : r.rows) {
                if (!row.expected_time) throw Error("probe c3: " + row.note);
                pts.push_back({row.k, *row.expected_time, row.std_error.value_or(0.0)});
            }
            ++o.checked;
            const Point& rep = pts.front();
            // Replication must beat every k >= 2 by more than 4 combined standard errors.
            bool bad = true;
            for (auto it = pts.begin() + 1; it != pts.end() && bad; ++it) {
                const double se = std::hypot(it->std_error, rep.std_error);
                bad = it->value - rep.value > 4.0 * se && it->value > rep.value;
            }
            if (bad)
                o.findings.push_back("counterexample: dist=" + to_literal(dist) + " n=" +
                                     std::to_string(n) + " replication " + describe(rep) +
                                     " best_other " + describe(best_other(pts)));
        }
    }
    return o;
}

}  // namespace

void run_probe(const std::string& id, const ProbeFlags& flags, std::ostream& out) {
    if (id == "c1") {
        report(id, "server scaling of X = delta + Z: replication optimal iff delta = 0",
               probe_c1(flags), out);
    } else if (id == "c2") {
        report(id, "bimodal additive: some k >= 2 beats replication", probe_c2(flags), out);
    } else if (id == "c3") {
        report(id, "additive scaling: some k >= 2 beats replication", probe_c3(flags), out);
    } else {
        throw UsageError("unknown probe '" + id + "'; supported: c1, c2, c3");
    }
}

}  // namespace redundancy::cli
