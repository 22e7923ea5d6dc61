#include <CLI11.hpp>
#include <cmath>
#include <sstream>

#include "../numeric_util.hpp"
#include "internal.hpp"
#include "redundancy/birthday.hpp"
#include "redundancy/cli.hpp"
#include "redundancy/errors.hpp"

namespace redundancy {

namespace cli {

using nlohmann::ordered_json;

ServiceModel make_model(const ModelFlags& flags) {
    if (flags.n < 1) throw UsageError("--n must be >= 1");
    return ServiceModel(parse_distribution(flags.dist), parse_scaling(flags.scaling), flags.shift);
}

SweepResult run_sweep(const ServiceModel& model, const ModelFlags& flags) {
    SweepOptions options;
    EvalMethod method = Analytic{};
    if (flags.method == "auto")
        options.fallback = MonteCarlo{flags.trials, flags.seed};
    else if (flags.method == "mc")
        method = MonteCarlo{flags.trials, flags.seed};
    else if (flags.method == "lln")
        method = Lln{};
    else if (flags.method != "analytic")
        throw UsageError("--method must be auto, analytic, mc or lln");

    if ((flags.method == "auto" || flags.method == "mc") && flags.trials < 100)
        throw UsageError("--trials must be >= 100");

    SweepResult result = sweep(model, flags.n, method, options);
    if (flags.method != "auto") {
        for (const auto& row : result.rows)
            if (row.method_unavailable)
                throw MethodUnavailable("method '" + flags.method + "' unavailable at k=" +
                                        std::to_string(row.k) + ": " + row.note);
    }
    return result;
}

namespace {

// Text rendering of a flat JSON object: one "key: value" line per member.
std::string as_text(const ordered_json& j) {
    std::ostringstream os;
    for (const auto& [key, value] : j.items()) {
        os << key << ": ";
        if (value.is_number_float()) {
            os << format_short(value.get<double>());
        } else if (value.is_string()) {
            os << value.get<std::string>();
        } else if (value.is_array()) {
            bool first = true;
            for (const auto& v : value) {
                os << (first ? "" : " ") << (v.is_number_float() ? format_short(v.get<double>()) : v.dump());
                first = false;
            }
        } else {
            os << value.dump();
        }
        os << '\n';
    }
    return os.str();
}

std::string render(const ordered_json& j, const std::string& format) {
    if (format == "json") return j.dump(2) + '\n';
    if (format == "text") return as_text(j);
    throw UsageError("--format must be text or json");
}

void add_model_options(CLI::App& cmd, ModelFlags& f, double& shift_value, CLI::Option*& shift_opt) {
    cmd.add_option("--dist", f.dist, "sexp:DELTA,W | pareto:LAMBDA,ALPHA | bimodal:B,EPS")->required();
    cmd.add_option("--scaling", f.scaling, "server | data | additive")->required();
    cmd.add_option("--n", f.n, "workers (= job size in units)")->required();
    shift_opt = cmd.add_option("--shift", shift_value, "per-unit shift for data scaling of pareto/bimodal");
    cmd.add_option("--method", f.method, "auto | analytic | mc | lln")->capture_default_str();
    cmd.add_option("--trials", f.trials, "Monte Carlo trials")->capture_default_str();
    cmd.add_option("--seed", f.seed, "Monte Carlo seed")->capture_default_str();
    cmd.add_option("--out", f.out, "write to this file instead of stdout");
}

ordered_json analysis_notes(const ServiceModel& model, int n) {
    ordered_json j = ordered_json::object();
    std::visit(
        overloaded{
            [&](const ShiftedExp& d) {
                if (model.scaling == ScalingModel::Server) {
                    j["claim"] = d.w > 0.0 ? "expected time increases in k; replication optimal"
                                             : "deterministic service; every k ties";
                } else if (model.scaling == ScalingModel::Data) {
                    const OptimalK o = optimal_k_sexp_data(n, d.delta, d.w);
                    j["continuous_k"] = o.continuous;
                    if (o.best_integer) j["best_integer_k"] = *o.best_integer;
                    if (o.degenerate) j["note"] = o.note;
                } else if (d.delta == 0.0 && n % 2 == 0 && n >= 4) {
                    j["claim"] = "rate 1/2 coding beats splitting for delta = 0";
                }
            },
            [&](const Pareto& d) {
                if (model.scaling == ScalingModel::Server && d.alpha > 1.0) {
                    const OptimalK o = optimal_k_pareto_server(n, d.alpha);
                    j["continuous_k"] = o.continuous;
                    if (o.best_integer) j["best_integer_k"] = *o.best_integer;
                }
                if (model.scaling == ScalingModel::Additive && d.alpha > 4.0) {
                    const LowerBound lb = pareto_replication_lower_bound(n, d.lambda, d.alpha, 1.0);
                    j["replication_lower_bound"] = lb.value;
                    j["replication_lower_bound_vacuous"] = lb.vacuous;
                }
            },
            [&](const BiModal& d) {
                if (model.scaling == ScalingModel::Additive) return;
                const double t = bimodal_lln_threshold(model.scaling, d.b, model.shift);
                j["threshold_formula"] =
                    model.scaling == ScalingModel::Server ? "(b-1)/b" : "(b-1)/(shift+b-1)";
                j["threshold"] = t;
                j["eps"] = d.eps;
                j["lln_regime"] = d.eps <= t ? "coding at rate 1-eps" : "splitting";
            },
        },
        model.dist);
    return j;
}

int cmd_sweep(const ModelFlags& f, std::ostream& out) {
    const ServiceModel model = make_model(f);
    const SweepResult r = run_sweep(model, f);
    std::ostringstream os;
    if (f.format == "csv") {
        write_sweep_csv(os, r);
    } else if (f.format == "json") {
        ordered_json j = sweep_json(f, r);
        ordered_json notes = analysis_notes(model, f.n);
        if (!notes.empty()) j["analysis"] = std::move(notes);
        os << j.dump(2) << '\n';
    } else {
        throw UsageError("--format must be csv or json");
    }
    emit(os.str(), f.out, out);
    return kExitOk;
}

int cmd_optimal(const ModelFlags& f, const std::string& format, std::ostream& out) {
    const ServiceModel model = make_model(f);
    const SweepResult r = run_sweep(model, f);
    const SweepRow* best = r.optimal();
    if (!best) throw Error("no k could be evaluated for this configuration");

    ordered_json j;
    if (format == "json") j["config"] = config_json(f);
    else {
        j["dist"] = f.dist;
        j["scaling"] = f.scaling;
        j["n"] = f.n;
    }
    j["strategy"] = std::string(to_string(r.strategy->kind));
    j["best_k"] = best->k;
    j["rate"] = best->rate;
    j["expected_time"] = *best->expected_time;
    j["method"] = best->method;
    if (best->std_error) j["stderr"] = *best->std_error;
    if (best->std_error_unreliable) j["stderr_unreliable"] = true;
    if (best->quantiles) {
        j["q05"] = best->quantiles->q05;
        j["median"] = best->quantiles->median;
        j["q95"] = best->quantiles->q95;
    }
    j["tied_k"] = r.tied_k;
    const ordered_json notes = analysis_notes(model, f.n);
    for (const auto& [key, value] : notes.items()) j[key] = value;
    emit(render(j, format), f.out, out);
    return kExitOk;
}

}  // namespace

}  // namespace cli

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    CLI::App app("Diversity/parallelism trade-off for coded distributed jobs", "redundancy");
    app.require_subcommand(1);

    ModelFlags sweep_flags;
    double sweep_shift = 0.0;
    CLI::Option* sweep_shift_opt = nullptr;
    auto* sweep_cmd = app.add_subcommand("sweep", "expected job time for every divisor k of n");
    add_model_options(*sweep_cmd, sweep_flags, sweep_shift, sweep_shift_opt);
    sweep_cmd->add_option("--format", sweep_flags.format, "csv | json")->capture_default_str();

    ModelFlags opt_flags;
    double opt_shift = 0.0;
    CLI::Option* opt_shift_opt = nullptr;
    std::string opt_format = "text";
    auto* optimal_cmd = app.add_subcommand("optimal", "optimal strategy with closed-form diagnostics");
    add_model_options(*optimal_cmd, opt_flags, opt_shift, opt_shift_opt);
    optimal_cmd->add_option("--format", opt_format, "text | json")->capture_default_str();

    std::string figure_id;
    FigureFlags fig;
    int fig_n = 0;
    std::string fig_grid, fig_out;
    std::size_t fig_trials = 0;
    auto* figure_cmd = app.add_subcommand("figure", "data series for a named figure (see figure list)");
    figure_cmd->add_option("id", figure_id, "figure id (see 'figure list')")->required();
    auto* fig_n_opt = figure_cmd->add_option("--n", fig_n, "override the number of workers");
    auto* fig_grid_opt = figure_cmd->add_option("--n-grid", fig_grid, "n values for fig16 (a:b:step)");
    auto* fig_trials_opt = figure_cmd->add_option("--trials", fig_trials, "Monte Carlo trials (default 10000)");
    figure_cmd->add_option("--seed", fig.seed, "Monte Carlo seed")->capture_default_str();
    figure_cmd->add_option("--out", fig_out, "write to this file instead of stdout");

    std::string probe_id, probe_out;
    ProbeFlags probe;
    std::string probe_delta, probe_w, probe_b, probe_eps;
    auto* probe_cmd = app.add_subcommand("probe", "scan a grid for counterexamples to c1, c2 or c3");
    probe_cmd->add_option("id", probe_id, "c1 | c2 | c3")->required();
    probe_cmd->add_option("--dist", probe.dists, "distribution literal (repeatable)");
    auto* pd = probe_cmd->add_option("--delta-grid", probe_delta, "shifted-exponential delta grid");
    auto* pw = probe_cmd->add_option("--w-grid", probe_w, "shifted-exponential w grid");
    auto* pb = probe_cmd->add_option("--b-grid", probe_b, "bimodal b grid (c2)");
    auto* pe = probe_cmd->add_option("--eps-grid", probe_eps, "bimodal eps grid (c2)");
    probe_cmd->add_option("--n", probe.n_grid, "n or n grid a:b:step")->capture_default_str();
    probe_cmd->add_option("--trials", probe.trials, "Monte Carlo trials (c3)")->capture_default_str();
    probe_cmd->add_option("--seed", probe.seed, "Monte Carlo seed")->capture_default_str();
    probe_cmd->add_option("--out", probe_out, "write to this file instead of stdout");

    int bd_n = 0, bd_d = 0;
    bool bd_asymptotic = false;
    std::string bd_out;
    auto* birthday_cmd = app.add_subcommand("birthday", "expected draws until some coupon is seen d times");
    birthday_cmd->add_option("--n", bd_n, "coupons")->required();
    birthday_cmd->add_option("--d", bd_d, "multiplicity")->required();
    birthday_cmd->add_flag("--asymptotic", bd_asymptotic, "also print the large-n approximation and the ratio");
    birthday_cmd->add_option("--out", bd_out, "write to this file instead of stdout");

    std::string cmp_dist, cmp_format = "text", cmp_out;
    int cmp_n = 0;
    SplitVsReplicationOptions cmp;
    auto* compare_cmd = app.add_subcommand("compare", "splitting against replication under additive scaling");
    compare_cmd->add_option("--dist", cmp_dist, "distribution literal")->required();
    compare_cmd->add_option("--n", cmp_n, "workers")->required();
    compare_cmd->add_option("--trials", cmp.trials, "Monte Carlo trials (pareto)")->capture_default_str();
    compare_cmd->add_option("--seed", cmp.seed, "Monte Carlo seed")->capture_default_str();
    compare_cmd->add_option("--eta", cmp.eta, "lower-bound slack eta (pareto)")->capture_default_str();
    compare_cmd->add_option("--scan-max", cmp.scan_max, "largest n in the crossover scan")->capture_default_str();
    compare_cmd->add_option("--format", cmp_format, "text | json")->capture_default_str();
    compare_cmd->add_option("--out", cmp_out, "write to this file instead of stdout");

    std::vector<std::string> argv_store{"redundancy"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*sweep_cmd) {
            if (*sweep_shift_opt) sweep_flags.shift = sweep_shift;
            return cmd_sweep(sweep_flags, out);
        }
        if (*optimal_cmd) {
            if (*opt_shift_opt) opt_flags.shift = opt_shift;
            return cmd_optimal(opt_flags, opt_format, out);
        }
        if (*figure_cmd) {
            if (figure_id == "list") {
                std::string list;
                for (const auto& id : figure_ids()) list += id + '\n';
                emit(list, fig_out, out);
                return kExitOk;
            }
            if (*fig_n_opt) {
                if (fig_n < 1) throw UsageError("--n must be >= 1");
                fig.n = fig_n;
            }
            if (*fig_grid_opt) fig.n_grid = fig_grid;
            if (*fig_trials_opt) fig.trials = fig_trials;
            std::ostringstream os;
            write_figure_csv(os, make_figure(figure_id, fig));
            emit(os.str(), fig_out, out);
            return kExitOk;
        }
        if (*probe_cmd) {
            if (*pd) probe.delta_grid = probe_delta;
            if (*pw) probe.w_grid = probe_w;
            if (*pb) probe.b_grid = probe_b;
            if (*pe) probe.eps_grid = probe_eps;
            std::ostringstream os;
            run_probe(probe_id, probe, os);
            emit(os.str(), probe_out, out);
            return kExitOk;
        }
        if (*birthday_cmd) {
            const QuadratureResult q = birthday_integral(bd_n, bd_d);
            std::ostringstream os;
            os << "n,d,value,error_estimate,truncation" << (bd_asymptotic ? ",asymptotic,ratio" : "")
               << '\n'
               << bd_n << ',' << bd_d << ',' << num(q.value) << ',' << num(q.error_estimate) << ','
               << num(q.truncation);
            if (bd_asymptotic) {
                const double a = birthday_asymptotic(bd_n, bd_d);
                os << ',' << num(a) << ',' << num(q.value / a);
            }
            os << '\n';
            emit(os.str(), bd_out, out);
            return kExitOk;
        }
        if (*compare_cmd) {
            const SplitVsReplication rep =
                splitting_vs_replication_report(parse_distribution(cmp_dist), cmp_n, cmp);
            ordered_json j;
            j["dist"] = cmp_dist;
            j["n"] = cmp_n;
            j["splitting"] = rep.splitting;
            j["replication"] = rep.replication;
            j["replication_method"] = rep.replication_method;
            if (rep.replication_std_error) j["replication_stderr"] = *rep.replication_std_error;
            if (rep.replication_lower_bound) {
                j["replication_lower_bound"] = rep.replication_lower_bound->value;
                j["replication_lower_bound_vacuous"] = rep.replication_lower_bound->vacuous;
            }
            j["verdict"] = rep.verdict;
            if (rep.splitting_wins_from) j["splitting_wins_from_n"] = *rep.splitting_wins_from;
            emit(render(j, cmp_format), cmp_out, out);
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const MethodUnavailable& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnavailable;
    } catch (const NoClosedForm& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnavailable;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const MomentDoesNotExist& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace redundancy
