#pragma once
// Independent reference computations used only by the tests. Deliberately
// naive: direct sums, enumeration and brute-force quadrature.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson on [a, b] with m (even) panels.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, int m) {
    const long double h = (b - a) / m;
    long double acc = f(a) + f(b);
    for (int i = 1; i < m; ++i) acc += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
    return acc * h / 3.0L;
}

inline long double choose(int n, int k) {
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// P{Y_{k:n} > t} given the single-variable survival q = P{Y > t}.
inline long double order_survival(int n, int k, long double q) {
    const long double p = 1.0L - q;
    long double acc = 0.0L;
    for (int i = 0; i < k; ++i) acc += choose(n, i) * std::pow(p, i) * std::pow(q, n - i);
    return acc;
}

// E[Z_{k:n}], Z ~ Erlang(s, w), integrating the order-statistic survival.
inline double erlang_order_mean(int n, int k, int s, double w, int panels = 200000) {
    auto surv = [&](long double t) {
        const long double x = t / w;
        long double term = 1.0L, sum = 0.0L;
        for (int j = 0; j < s; ++j) {
            sum += term;
            term *= x / (j + 1);
        }
        return order_survival(n, k, std::exp(-x) * sum);
    };
    const long double top = w * (s + 40.0L + 12.0L * std::sqrt(static_cast<long double>(s)));
    return static_cast<double>(simpson(surv, 0.0L, top, panels));
}

// Generalized birthday expectation as the discrete sum
//   E(n, d) = sum_m P{no coupon seen d times after m draws}
//           = sum_m m! / n^m [t^m] (sum_{j<d} t^j / j!)^n.
inline double birthday_exact(int n, int d) {
    std::vector<long double> base(d);
    long double f = 1.0L;
    for (int j = 0; j < d; ++j) {
        base[j] = 1.0L / f;
        f *= (j + 1);
    }
    std::vector<long double> poly{1.0L};
    for (int c = 0; c < n; ++c) {
        std::vector<long double> next(poly.size() + d - 1, 0.0L);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int j = 0; j < d; ++j) next[i + j] += poly[i] * base[j];
        poly.swap(next);
    }
    long double acc = 0.0L, scale = 1.0L;  // scale = m! / n^m
    for (std::size_t m = 0; m < poly.size(); ++m) {
        acc += poly[m] * scale;
        scale *= static_cast<long double>(m + 1) / n;
    }
    return static_cast<double>(acc);
}

// E[Y_{k:n}] where each Y is the sum of s draws from {1 w.p. 1-eps, b w.p. eps},
// by enumerating every assignment of straggler counts to the n workers.
inline double bimodal_sum_enumerated(int n, int k, int s, double b, double eps) {
    std::vector<long double> pw(s + 1);
    for (int w = 0; w <= s; ++w)
        pw[w] = choose(s, w) * std::pow((long double)eps, w) * std::pow(1.0L - eps, s - w);
    std::vector<int> counts(n, 0);
    long double total = 0.0L;
    while (true) {
        long double prob = 1.0L;
        std::vector<double> times(n);
        for (int i = 0; i < n; ++i) {
            prob *= pw[counts[i]];
            times[i] = (s - counts[i]) + counts[i] * b;
        }
        std::sort(times.begin(), times.end());
        total += prob * times[k - 1];
        int i = 0;
        while (i < n && ++counts[i] > s) counts[i++] = 0;
        if (i == n) break;
    }
    return static_cast<double>(total);
}

}  // namespace oracle
