#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "redundancy/analysis.hpp"

namespace redundancy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnavailable = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MethodUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags shared by sweep and optimal.
struct ModelFlags {
    std::string dist;
    std::string scaling;
    std::optional<double> shift;
    int n = 0;
    std::string method = "auto";
    std::size_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "csv";
    std::string out;
};

ServiceModel make_model(const ModelFlags& flags);

/// Evaluates the sweep for `flags.method`. Throws MethodUnavailable when a
/// forced method cannot produce some row.
SweepResult run_sweep(const ServiceModel& model, const ModelFlags& flags);

// --- output ---------------------------------------------------------------

/// printf("%.17g"); empty for missing values.
std::string num(double x);
std::string num(const std::optional<double>& x);

void write_sweep_csv(std::ostream& os, const SweepResult& result);
nlohmann::ordered_json config_json(const ModelFlags& flags);
nlohmann::ordered_json sweep_json(const ModelFlags& flags, const SweepResult& result);

struct FigureRow {
    std::string series;
    int n;
    int k;
    double r;
    double value;
    std::string method;
    std::optional<double> std_error;
};

void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows);

/// Writes `text` to `path`, or to `out` when `path` is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out);

// --- figures ----------------------------------------------------------------

struct FigureFlags {
    std::optional<int> n;
    std::optional<std::string> n_grid;
    std::optional<std::size_t> trials;
    std::uint64_t seed = kDefaultSeed;
};

std::vector<std::string> figure_ids();
/// Throws UsageError for an unknown id.
std::vector<FigureRow> make_figure(const std::string& id, const FigureFlags& flags);

// --- probes -----------------------------------------------------------------

/// Inclusive arithmetic grid "a:b:step", or a single value "x".
std::vector<double> parse_grid(const std::string& text);

struct ProbeFlags {
    std::vector<std::string> dists;
    std::optional<std::string> delta_grid;
    std::optional<std::string> w_grid;
    std::optional<std::string> b_grid;
    std::optional<std::string> eps_grid;
    std::string n_grid = "12";
    std::size_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
};

/// Writes a report; the first line summarizes, one line per counterexample candidate follows.
void run_probe(const std::string& id, const ProbeFlags& flags, std::ostream& out);

}  // namespace redundancy::cli
