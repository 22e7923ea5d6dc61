#include "redundancy/distributions.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "redundancy/errors.hpp"
#include "numeric_util.hpp"

namespace redundancy {

ShiftedExp::ShiftedExp(double delta_, double w_) : delta(delta_), w(w_) {
    if (!std::isfinite(delta) || !std::isfinite(w) || delta < 0.0 || w < 0.0)
        throw InvalidArgument("sexp: delta and w must be finite and >= 0");
    if (delta == 0.0 && w == 0.0)
        throw InvalidArgument("sexp: delta and w cannot both be zero");
}

Pareto::Pareto(double lambda_, double alpha_) : lambda(lambda_), alpha(alpha_) {
    if (!std::isfinite(lambda) || !std::isfinite(alpha) || lambda <= 0.0 || alpha <= 0.0)
        throw InvalidArgument("pareto: lambda and alpha must be finite and > 0");
}

BiModal::BiModal(double b_, double eps_) : b(b_), eps(eps_) {
    if (!std::isfinite(b) || b <= 1.0)
        throw InvalidArgument("bimodal: b must be finite and > 1");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw InvalidArgument("bimodal: eps must lie in [0, 1]");
}

double sample_from_uniform(const ServiceDistribution& dist, double u) {
    return std::visit(
        overloaded{
            [u](const ShiftedExp& d) { return d.delta - d.w * std::log(u); },
            [u](const Pareto& d) { return d.lambda * std::pow(u, -1.0 / d.alpha); },
            [u](const BiModal& d) { return u <= d.eps ? d.b : 1.0; },
        },
        dist);
}

double mean(const ServiceDistribution& dist) { return moment(dist, 1); }

double moment(const ServiceDistribution& dist, int p) {
    if (p < 1) throw InvalidArgument("moment order must be a positive integer");
    return std::visit(
        overloaded{
            [p](const ShiftedExp& d) {
                // E[(delta + W E)^p] with E ~ Exp(1): sum_j C(p,j) delta^(p-j) W^j j!
                double total = 0.0;
                for (int j = 0; j <= p; ++j) {
                    const double term = std::exp(log_binomial(p, j) + std::lgamma(j + 1.0)) *
                                        std::pow(d.delta, p - j) * std::pow(d.w, j);
                    total += term;
                }
                return total;
            },
            [p](const Pareto& d) {
                if (d.alpha <= p)
                    throw MomentDoesNotExist("pareto moment of order " + std::to_string(p) +
                                             " requires alpha > " + std::to_string(p));
                return d.alpha * std::pow(d.lambda, p) / (d.alpha - p);
            },
            [p](const BiModal& d) { return (1.0 - d.eps) + d.eps * std::pow(d.b, p); },
        },
        dist);
}

double tail(const ServiceDistribution& dist, double x) {
    return std::visit(
        overloaded{
            [x](const ShiftedExp& d) {
                if (x < d.delta) return 1.0;
                if (d.w == 0.0) return 0.0;
                return std::exp(-(x - d.delta) / d.w);
            },
            [x](const Pareto& d) { return x < d.lambda ? 1.0 : std::pow(d.lambda / x, d.alpha); },
            [x](const BiModal& d) {
                if (x < 1.0) return 1.0;
                if (x < d.b) return d.eps;
                return 0.0;
            },
        },
        dist);
}

namespace {

std::vector<double> parse_numbers(std::string_view text, std::string_view literal) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view field = text.substr(0, comma);
        double value = 0.0;
        const auto* first = field.data();
        const auto* last = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (field.empty() || ec != std::errc{} || ptr != last)
            throw InvalidArgument("malformed number in distribution literal '" +
                                  std::string(literal) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

ServiceDistribution parse_distribution(std::string_view literal) {
    const auto colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw InvalidArgument("distribution literal '" + std::string(literal) +
                              "' must look like sexp:DELTA,W | pareto:LAMBDA,ALPHA | bimodal:B,EPS");
    const std::string_view family = literal.substr(0, colon);
    const auto args = parse_numbers(literal.substr(colon + 1), literal);
    if (args.size() != 2)
        throw InvalidArgument("distribution literal '" + std::string(literal) +
                              "' needs exactly two parameters");
    if (family == "sexp") return ShiftedExp(args[0], args[1]);
    if (family == "pareto") return Pareto(args[0], args[1]);
    if (family == "bimodal") return BiModal(args[0], args[1]);
    throw InvalidArgument("unknown distribution family '" + std::string(family) + "'");
}

std::string to_literal(const ServiceDistribution& dist) {
    auto fmt = [](double a, double b) { return format_short(a) + "," + format_short(b); };
    return std::visit(overloaded{
                          [&](const ShiftedExp& d) { return "sexp:" + fmt(d.delta, d.w); },
                          [&](const Pareto& d) { return "pareto:" + fmt(d.lambda, d.alpha); },
                          [&](const BiModal& d) { return "bimodal:" + fmt(d.b, d.eps); },
                      },
                      dist);
}

std::string_view family_name(const ServiceDistribution& dist) {
    return std::visit(overloaded{
                          [](const ShiftedExp&) { return std::string_view("sexp"); },
                          [](const Pareto&) { return std::string_view("pareto"); },
                          [](const BiModal&) { return std::string_view("bimodal"); },
                      },
                      dist);
}

}  // namespace redundancy
