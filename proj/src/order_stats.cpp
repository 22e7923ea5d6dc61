#include "redundancy/order_stats.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "numeric_util.hpp"
#include "redundancy/errors.hpp"

namespace redundancy {

namespace {

void check_order(int n, int k) {
    if (n < 1) throw DomainError("order statistic needs n >= 1");
    if (k < 1 || k > n)
        throw DomainError("order statistic index k=" + std::to_string(k) + " outside 1.." +
                          std::to_string(n));
}

}  // namespace

HarmonicTable::HarmonicTable(int max_index) {
    if (max_index < 0) throw InvalidArgument("harmonic table size must be >= 0");
    values_.resize(static_cast<std::size_t>(max_index) + 1);
    values_[0] = 0.0L;
    for (int j = 1; j <= max_index; ++j) values_[j] = values_[j - 1] + 1.0L / j;
}

double HarmonicTable::operator()(int j) const {
    if (j < 0) throw DomainError("harmonic number index must be >= 0");
    if (j <= max_index()) return static_cast<double>(values_[j]);
    return HarmonicTable(j)(j);
}

double HarmonicTable::difference(int n, int m) const {
    if (m < 0 || m > n) throw DomainError("harmonic difference needs 0 <= m <= n");
    if (n > max_index()) return HarmonicTable(n).difference(n, m);
    return static_cast<double>(values_[n] - values_[m]);
}

const HarmonicTable& HarmonicTable::shared() {
    static const HarmonicTable table(4096);
    return table;
}

double exp_order_mean(int n, int k, double w) {
    check_order(n, k);
    if (w < 0.0) throw InvalidArgument("exponential scale must be >= 0");
    return w * HarmonicTable::shared().difference(n, n - k);
}

namespace {

// beta[j] = P{no coupon drawn s or more times after j uniform draws from c coupons}.
// Related to the convolution power of the truncated exponential series by
//   [t^j] (sum_{l<s} t^l/l!)^c = beta[j] * c^j / j!.
// Moving from c-1 to c coupons splits the j draws binomially between the new
// coupon and the old ones, which keeps every intermediate in [0, 1].
void add_coupon(std::vector<long double>& beta, int c, int s, const std::vector<long double>& lf) {
    const int old_len = static_cast<int>(beta.size());
    const int new_len = (s - 1) * c + 1;
    std::vector<long double> next(static_cast<std::size_t>(new_len), 0.0L);
    if (c == 1) {
        for (int j = 0; j < s; ++j) next[j] = 1.0L;
        beta.swap(next);
        return;
    }
    const long double log_new = -std::log(static_cast<long double>(c));
    const long double log_old = std::log(static_cast<long double>(c - 1) / c);
    for (int j = 0; j < new_len; ++j) {
        long double acc = 0.0L;
        for (int a = 0; a < s && a <= j; ++a) {
            const int rest = j - a;
            if (rest >= old_len) continue;
            const long double log_w = lf[j] - lf[a] - lf[rest] + a * log_new + rest * log_old;
            acc += std::exp(log_w) * beta[rest];
        }
        next[j] = acc;
    }
    beta.swap(next);
}

}  // namespace

double erlang_order_mean(int n, int k, int s, double w, const ErlangOrderOptions& options) {
    check_order(n, k);
    if (s < 1) throw InvalidArgument("erlang shape s must be >= 1");
    if (!(w > 0.0)) throw InvalidArgument("erlang scale w must be > 0");
    const auto where = " (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                       ", s=" + std::to_string(s) + ")";
    if (static_cast<long long>(n) * s > options.max_units)
        throw NumericalRangeError("erlang order statistic: n*s exceeds the configured guard" + where);

    const int max_j = (s - 1) * (n - 1);
    std::vector<long double> lf(static_cast<std::size_t>(std::max(max_j + s + 2, n + 1)));
    for (std::size_t i = 0; i < lf.size(); ++i) lf[i] = std::lgamma(static_cast<long double>(i) + 1);

    // log of (W k / (s-1)!) * C(n, k)
    const long double log_pre = std::log(static_cast<long double>(w) * k) - lf[s - 1] + lf[n] -
                                lf[k] - lf[n - k];

    std::vector<long double> beta{1.0L};
    int coupons = 0;
    long double signed_sum = 0.0L;
    long double abs_sum = 0.0L;
    for (int i = 0; i < k; ++i) {
        const int m = n - k + i;
        while (coupons < m) add_coupon(beta, ++coupons, s, lf);

        // inner = sum_j alpha_j(s, m) (s+j)! / (m+1)^(s+j+1)
        //       = sum_j beta_j (m/(m+1))^j (s+j)!/j! / (m+1)^(s+1)
        const long double log_ratio =
            m == 0 ? 0.0L : std::log(static_cast<long double>(m) / (m + 1));
        const long double log_tail = (s + 1) * std::log(static_cast<long double>(m + 1));
        long double inner = 0.0L;
        for (std::size_t j = 0; j < beta.size(); ++j) {
            if (beta[j] <= 0.0L) continue;
            const long double log_term = std::log(beta[j]) + (m == 0 ? 0.0L : j * log_ratio) +
                                         lf[s + j] - lf[j] - log_tail;
            inner += std::exp(log_term);
        }
        const long double magnitude = std::exp(log_pre + lf[k - 1] - lf[i] - lf[k - 1 - i]) * inner;
        signed_sum += (i % 2 == 0) ? magnitude : -magnitude;
        abs_sum += magnitude;
    }

    if (!std::isfinite(signed_sum) || !std::isfinite(abs_sum))
        throw NumericalRangeError("erlang order statistic: intermediate overflow" + where);
    if (abs_sum > options.max_cancellation * std::fabs(signed_sum))
        throw NumericalRangeError("erlang order statistic: alternating sum cancels beyond " +
                                  std::string("the working precision") + where);
    return static_cast<double>(signed_sum);
}

double erlang_order_mean_quadrature(int n, int k, int s, double w) {
    check_order(n, k);
    if (s < 1) throw InvalidArgument("erlang shape s must be >= 1");
    if (!(w > 0.0)) throw InvalidArgument("erlang scale w must be > 0");
    namespace bm = boost::math;
    const double a = n - k + 1, b = k;
    auto survival = [&](double u) { return bm::ibeta(a, b, bm::gamma_q(static_cast<double>(s), u)); };
    // P{Z_{k:n} > u} <= n Q(s, u) and the integral of Q(s, .) over [U, inf) is below
    // s Q(s + 1, U), so this U leaves an absolute tail under 1e-17 (in units of w).
    const double upper = bm::gamma_q_inv(s + 1.0, 1e-17 / (static_cast<double>(n) * s));
    double error = 0.0, l1 = 0.0;
    const double value = bm::quadrature::gauss_kronrod<double, 31>::integrate(survival, 0.0, upper, 20,
                                                                             1e-12, &error, &l1);
    if (!std::isfinite(value) || error > 1e-10 * l1)
        throw NumericalRangeError("erlang order statistic quadrature did not converge (n=" +
                                  std::to_string(n) + ", k=" + std::to_string(k) +
                                  ", s=" + std::to_string(s) + ")");
    return w * value;
}

double pareto_order_mean(int n, int k, double lambda, double alpha) {
    check_order(n, k);
    if (!(alpha > 1.0))
        throw MomentDoesNotExist("pareto order statistic mean requires alpha > 1");
    if (!(lambda > 0.0)) throw InvalidArgument("pareto scale must be > 0");
    const double inv = 1.0 / alpha;
    const double log_ratio = std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0) +
                             std::lgamma(n - k + 1.0 - inv) - std::lgamma(n + 1.0 - inv);
    return lambda * std::exp(log_ratio);
}

double gamma_ratio_approx(double x, double beta, double alpha) {
    if (!(x > 0.0)) throw DomainError("gamma ratio approximation needs x > 0");
    return std::pow(x, beta - alpha);
}

double gamma_ratio(double x, double beta, double alpha) {
    if (!(x + beta > 0.0) || !(x + alpha > 0.0))
        throw DomainError("gamma ratio needs positive arguments");
    return std::exp(std::lgamma(x + beta) - std::lgamma(x + alpha));
}

namespace {

void check_bimodal(double b, double eps) {
    if (!(b > 1.0)) throw InvalidArgument("bimodal b must be > 1");
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("bimodal eps must lie in [0, 1]");
}

}  // namespace

double bimodal_order_mean(int n, int k, double b, double eps) {
    check_order(n, k);
    check_bimodal(b, eps);
    // P{fewer than k of the n units are fast}
    const auto fast = binomial_pmf(n, 1.0 - eps);
    double slow_prob = 0.0;
    for (int i = 0; i < k; ++i) slow_prob += fast[i];
    return 1.0 + (b - 1.0) * slow_prob;
}

std::vector<SupportPoint> bimodal_sum_order_pmf(int n, int k, int s, double b, double eps) {
    check_order(n, k);
    check_bimodal(b, eps);
    if (s < 1) throw InvalidArgument("task size s must be >= 1");

    const auto unit = binomial_pmf(s, eps);  // p_v: v of the s units straggle
    std::vector<SupportPoint> pmf;
    pmf.reserve(static_cast<std::size_t>(s) + 1);
    for (int w = 0; w <= s; ++w) {
        double below = 0.0;
        double above = 0.0;
        for (int j = 0; j < w; ++j) below += unit[j];
        for (int j = w + 1; j <= s; ++j) above += unit[j];
        const double at = unit[w];

        // i workers strictly below the value, at least k - i of the rest exactly at it.
        double prob = 0.0;
        if (at > 0.0) {
            const auto lower = binomial_pmf(n, below);
            const double theta = at / (at + above);
            for (int i = 0; i < k; ++i) {
                if (lower[i] == 0.0) continue;
                const auto equal = binomial_pmf(n - i, theta);
                double reach = 0.0;
                for (int l = k - i; l <= n - i; ++l) reach += equal[l];
                prob += lower[i] * reach;
            }
        }
        pmf.push_back({w, s - w + w * b, prob});
    }
    for (const auto& point : pmf)
        if (!std::isfinite(point.probability))
            throw NumericalRangeError("bimodal sum order statistic: non-finite probability (n=" +
                                      std::to_string(n) + ", s=" + std::to_string(s) + ")");
    return pmf;
}

double bimodal_sum_order_mean(int n, int k, int s, double b, double eps) {
    const auto pmf = bimodal_sum_order_pmf(n, k, s, b, eps);
    double weighted = 0.0;
    for (int w = 1; w <= s; ++w) weighted += w * pmf[w].probability;
    return s + (b - 1.0) * weighted;
}

}  // namespace redundancy
