#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "redundancy/random.hpp"

namespace redundancy {

/// Shifted exponential: minimum service time `delta` plus an Exp(`w`) component.
/// P{X > x} = exp(-(x - delta) / w) for x > delta; a point mass at delta when w == 0.
struct ShiftedExp {
    double delta;
    double w;

    ShiftedExp(double delta, double w);
};

/// Pareto with scale (minimum value) `lambda` and tail index `alpha`.
/// P{X > x} = (lambda / x)^alpha for x > lambda.
struct Pareto {
    double lambda;
    double alpha;

    Pareto(double lambda, double alpha);
};

/// Two-point service time: 1 with probability 1 - eps, `b` with probability eps.
struct BiModal {
    double b;
    double eps;

    BiModal(double b, double eps);
};

using ServiceDistribution = std::variant<ShiftedExp, Pareto, BiModal>;

/// Inverse-transform draw for a given uniform u in (0, 1].
double sample_from_uniform(const ServiceDistribution& dist, double u);

/// One draw; consumes exactly one uniform from `rng`.
inline double sample(const ServiceDistribution& dist, RandomStream& rng) {
    return sample_from_uniform(dist, rng.uniform());
}

double mean(const ServiceDistribution& dist);

/// p-th raw moment E[X^p]. Throws MomentDoesNotExist for Pareto with alpha <= p.
double moment(const ServiceDistribution& dist, int p);

/// P{X > x}.
double tail(const ServiceDistribution& dist, double x);

/// Parses `sexp:DELTA,W`, `pareto:LAMBDA,ALPHA` or `bimodal:B,EPS`.
ServiceDistribution parse_distribution(std::string_view literal);

/// Inverse of parse_distribution (shortest round-tripping decimals).
std::string to_literal(const ServiceDistribution& dist);

/// "sexp", "pareto" or "bimodal".
std::string_view family_name(const ServiceDistribution& dist);

}  // namespace redundancy
