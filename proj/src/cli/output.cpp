#include <cstdio>
#include <fstream>
#include <sstream>

#include "internal.hpp"
#include "redundancy/distributions.hpp"
#include "redundancy/errors.hpp"

namespace redundancy::cli {

using nlohmann::ordered_json;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

namespace {

ordered_json opt_json(const std::optional<double>& x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

// RFC 4180: quote fields that contain separators or quotes.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "k,s,rate,expected_time,method,stderr,is_optimal\n";
    for (const auto& row : result.rows) {
        os << row.k << ',' << row.s << ',' << num(row.rate) << ',' << num(row.expected_time) << ','
           << row.method << ',' << num(row.std_error) << ',' << (row.is_optimal ? "true" : "false")
           << '\n';
    }
}

ordered_json config_json(const ModelFlags& flags) {
    ordered_json c;
    c["dist"] = flags.dist;
    c["scaling"] = flags.scaling;
    c["shift"] = opt_json(flags.shift);
    c["n"] = flags.n;
    c["method"] = flags.method;
    c["trials"] = flags.trials;
    c["seed"] = flags.seed;
    return c;
}

ordered_json sweep_json(const ModelFlags& flags, const SweepResult& result) {
    ordered_json j;
    j["config"] = config_json(flags);
    j["rows"] = ordered_json::array();
    for (const auto& row : result.rows) {
        ordered_json r;
        r["k"] = row.k;
        r["s"] = row.s;
        r["rate"] = row.rate;
        r["expected_time"] = opt_json(row.expected_time);
        r["method"] = row.method;
        r["stderr"] = opt_json(row.std_error);
        r["is_optimal"] = row.is_optimal;
        if (row.lln_boundary) r["lln_boundary"] = true;
        if (row.std_error_unreliable) r["stderr_unreliable"] = true;
        if (row.quantiles) {
            r["q05"] = row.quantiles->q05;
            r["median"] = row.quantiles->median;
            r["q95"] = row.quantiles->q95;
        }
        if (!row.note.empty()) r["note"] = row.note;
        j["rows"].push_back(std::move(r));
    }
    if (const SweepRow* best = result.optimal()) {
        ordered_json o;
        o["k"] = best->k;
        o["s"] = best->s;
        o["rate"] = best->rate;
        o["strategy"] = std::string(to_string(result.strategy->kind));
        o["expected_time"] = opt_json(best->expected_time);
        o["tied_k"] = result.tied_k;
        j["optimal"] = std::move(o);
    } else {
        j["optimal"] = nullptr;
    }
    return j;
}

void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows) {
    os << "series,n,k,r,value,method,stderr\n";
    for (const auto& r : rows) {
        os << csv_field(r.series) << ',' << r.n << ',' << r.k << ',' << num(r.r) << ','
           << num(r.value) << ',' << r.method << ',' << num(r.std_error) << '\n';
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
    if (!file) throw Error("failed writing '" + path + "'");
}

}  // namespace redundancy::cli
