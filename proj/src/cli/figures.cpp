#include <functional>
#include <sstream>

#include "../numeric_util.hpp"
#include "internal.hpp"
#include "redundancy/errors.hpp"
#include "redundancy/order_stats.hpp"

namespace redundancy::cli {

namespace {

constexpr std::size_t kFigureTrials = 10000;  // lighter than the sweep default

struct Series {
    std::string label;
    ServiceModel model;
};

std::string label(std::initializer_list<std::pair<const char*, double>> params) {
    std::string s;
    for (const auto& [name, value] : params) {
        if (!s.empty()) s += ' ';
        s += name;
        s += '=';
        s += format_short(value);
    }
    return s;
}

std::vector<FigureRow> sweep_rows(const std::vector<Series>& series, int n,
                                  const EvalMethod& method, const SweepOptions& options = {}) {
    std::vector<FigureRow> rows;
    for (const auto& s : series) {
        const SweepResult r = sweep(s.model, n, method, options);
        for (const auto& row : r.rows) {
            if (!row.expected_time) throw Error(s.label + ", k=" + std::to_string(row.k) + ": " + row.note);
            rows.push_back({s.label, n, row.k, row.rate, *row.expected_time, row.method, row.std_error});
        }
    }
    return rows;
}

std::vector<FigureRow> analytic(const std::vector<Series>& series, const FigureFlags& f,
                                int default_n = 12) {
    // Cells beyond the reach of the closed forms (large n) fall back to simulation.
    SweepOptions options;
    options.fallback = MonteCarlo{f.trials.value_or(kFigureTrials), f.seed};
    return sweep_rows(series, f.n.value_or(default_n), Analytic{}, options);
}

std::vector<FigureRow> simulated(const std::vector<Series>& series, const FigureFlags& f) {
    return sweep_rows(series, f.n.value_or(12), MonteCarlo{f.trials.value_or(kFigureTrials), f.seed});
}

std::vector<Series> sexp_series(ScalingModel scaling,
                                std::initializer_list<std::pair<double, double>> delta_w) {
    std::vector<Series> out;
    for (auto [delta, w] : delta_w)
        out.push_back({label({{"delta", delta}, {"w", w}}), ServiceModel(ShiftedExp(delta, w), scaling)});
    return out;
}

// Exact points at divisors plus the LLN curve at every r = k/n.
std::vector<FigureRow> lln_figure(ScalingModel scaling, std::optional<double> shift,
                                  const FigureFlags& f) {
    const int n = f.n.value_or(60);
    const double b = 10.0;
    std::vector<FigureRow> rows;
    for (double eps : {0.2, 0.6, 0.9}) {
        const std::string tag = label({{"eps", eps}});
        for (int k = 1; k <= n; ++k) {
            const LlnValue v = bimodal_lln(scaling, static_cast<double>(k) / n, b, eps, shift);
            rows.push_back({"lln " + tag, n, k, static_cast<double>(k) / n, v.value,
                            v.at_boundary ? "lln-boundary" : "lln", std::nullopt});
        }
        const ServiceModel model(BiModal(b, eps), scaling, shift);
        for (const auto& row : sweep(model, n, Analytic{}).rows)
            rows.push_back({"exact " + tag, n, row.k, row.rate, *row.expected_time, row.method,
                            std::nullopt});
    }
    return rows;
}

std::vector<FigureRow> pareto_additive_lln(const FigureFlags& f) {
    const double lambda = 1.0, alpha = 4.5, eta = 1.0;
    const std::vector<double> grid = parse_grid(f.n_grid.value_or("20:200:20"));
    const ServiceModel model(Pareto(lambda, alpha), ScalingModel::Additive);
    const std::size_t trials = f.trials.value_or(kFigureTrials);
    std::vector<FigureRow> rows;
    for (double nv : grid) {
        const int n = static_cast<int>(nv);
        if (n < 1 || n != nv) throw UsageError("--n-grid must hold positive integers");
        const McEstimate rep = estimate(model, JobConfig(n, 1), trials, f.seed);
        rows.push_back({"replication", n, 1, 1.0 / n, rep.mean, "mc", rep.std_error});
        rows.push_back({"splitting", n, n, 1.0, pareto_order_mean(n, n, lambda, alpha), "analytic",
                        std::nullopt});
        const LowerBound lb = pareto_replication_lower_bound(n, lambda, alpha, eta);
        rows.push_back({"replication lower bound", n, 1, 1.0 / n, lb.value,
                        lb.vacuous ? "bound-vacuous" : "bound", std::nullopt});
    }
    return rows;
}

struct Figure {
    const char* id;
    std::function<std::vector<FigureRow>(const FigureFlags&)> make;
};

const std::vector<Figure>& registry() {
    using S = ScalingModel;
    static const std::vector<Figure> figures{
        {"fig3",
         [](const FigureFlags& f) {
             return analytic(sexp_series(S::Server, {{1, 0}, {1, 5}, {1, 10}, {0, 1}, {5, 1}, {10, 1}}), f);
         }},
        {"fig4",
         [](const FigureFlags& f) {
             return analytic(sexp_series(S::Data, {{10, 0}, {10, 1}, {5, 5}, {1, 10}, {0, 10}}), f);
         }},
        {"fig5",
         [](const FigureFlags& f) {
             return analytic(sexp_series(S::Additive, {{10, 0}, {10, 1}, {5, 5}, {1, 10}, {0, 10}}), f);
         }},
        {"fig6",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double a : {1.5, 2.0, 3.0, 5.0})
                 s.push_back({label({{"alpha", a}}), ServiceModel(Pareto(1.0, a), S::Server)});
             return analytic(s, f);
         }},
        {"fig7",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double a : {1.5, 2.0, 3.0, 5.0})
                 s.push_back({label({{"alpha", a}}), ServiceModel(Pareto(1.0, a), S::Data, 5.0)});
             return analytic(s, f);
         }},
        {"fig8",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double d : {0.1, 0.5, 5.0, 10.0})
                 s.push_back({label({{"delta", d}}), ServiceModel(Pareto(5.0, 3.0), S::Data, d)});
             return analytic(s, f);
         }},
        {"bimodal-server-eps",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double e : {0.005, 0.2, 0.4, 0.6, 0.8, 0.9})
                 s.push_back({label({{"eps", e}}), ServiceModel(BiModal(10.0, e), S::Server)});
             return analytic(s, f);
         }},
        {"bimodal-server-b",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double b : {2.0, 5.0, 10.0, 15.0})
                 s.push_back({label({{"b", b}}), ServiceModel(BiModal(b, 0.6), S::Server)});
             return analytic(s, f);
         }},
        {"fig11-lln", [](const FigureFlags& f) { return lln_figure(S::Server, std::nullopt, f); }},
        {"bimodal-data-eps",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double e : {0.05, 0.2, 0.5, 0.6, 0.9})
                 s.push_back({label({{"eps", e}}), ServiceModel(BiModal(10.0, e), S::Data, 5.0)});
             return analytic(s, f);
         }},
        {"bimodal-data-b",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double b : {2.0, 10.0, 30.0, 60.0})
                 s.push_back({label({{"b", b}}), ServiceModel(BiModal(b, 0.6), S::Data, 5.0)});
             return analytic(s, f);
         }},
        {"bimodal-data-lln", [](const FigureFlags& f) { return lln_figure(S::Data, 5.0, f); }},
        {"fig14",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double a : {1.3, 2.0, 3.0, 5.0})
                 s.push_back({label({{"alpha", a}}), ServiceModel(Pareto(1.0, a), S::Additive)});
             return simulated(s, f);
         }},
        {"bimodal-additive-eps",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double e : {0.005, 0.2, 0.6, 0.9})
                 s.push_back({label({{"eps", e}}), ServiceModel(BiModal(10.0, e), S::Additive)});
             return analytic(s, f);
         }},
        {"bimodal-additive-b",
         [](const FigureFlags& f) {
             std::vector<Series> s;
             for (double b : {2.0, 5.0, 10.0, 20.0})
                 s.push_back({label({{"b", b}}), ServiceModel(BiModal(b, 0.4), S::Additive)});
             return analytic(s, f);
         }},
        {"fig16", pareto_additive_lln},
    };
    return figures;
}

}  // namespace

std::vector<std::string> figure_ids() {
    std::vector<std::string> ids;
    for (const auto& f : registry()) ids.emplace_back(f.id);
    return ids;
}

std::vector<FigureRow> make_figure(const std::string& id, const FigureFlags& flags) {
    for (const auto& f : registry())
        if (id == f.id) return f.make(flags);
    std::string list;
    for (const auto& known : figure_ids()) list += (list.empty() ? "" : ", ") + known;
    throw UsageError("unknown figure '" + id + "'; supported: " + list);
}

}  // namespace redundancy::cli
