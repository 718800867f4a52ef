#include "akhs/quadrature.hpp"

#include "akhs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

namespace akhs {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::acos(-1.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw ValidationError("gauss_legendre: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double integrate_fixed(const RealFn& f, double lo, double hi, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < order; ++i)
        sum += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return hw * sum;
}

namespace {

struct Panel {
    double lo, hi, value, err;
};

Panel evaluate_panel(const RealFn& f, double lo, double hi) {
    // Error estimate from the difference of two Gauss rules.
    double coarse = integrate_fixed(f, lo, hi, 10);
    double fine = integrate_fixed(f, lo, hi, 21);
    return Panel{lo, hi, fine, std::abs(fine - coarse)};
}

} // namespace

double integrate(const RealFn& f, double lo, double hi, double tol,
                 std::span<const double> breaks) {
    if (!(hi > lo)) {
        if (hi == lo) return 0.0;
        return -integrate(f, hi, lo, tol, breaks);
    }
    std::vector<double> cuts{lo};
    for (double b : breaks)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    std::vector<Panel> active;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) active.push_back(evaluate_panel(f, cuts[i], cuts[i + 1]));

    const int max_panels = 4000;
    for (;;) {
        double total_err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < active.size(); ++i) {
            total_err += active[i].err;
            if (active[i].err > active[worst].err) worst = i;
        }
        if (total_err <= tol || active[worst].err == 0.0) break;
        if ((int)active.size() >= max_panels ||
            active[worst].hi - active[worst].lo < 1e-15 * (hi - lo)) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "adaptive quadrature: tolerance %.3g not reached "
                          "(achieved ~%.3g)",
                          tol, total_err);
            throw NumericError(msg, total_err);
        }
        Panel p = active[worst];
        double mid = 0.5 * (p.lo + p.hi);
        active[worst] = evaluate_panel(f, p.lo, mid);
        active.push_back(evaluate_panel(f, mid, p.hi));
    }
    double value = 0.0;
    for (const Panel& p : active) value += p.value;
    return value;
}

double mean_value(const RealFn& f, double lo, double hi, double tol,
                  std::span<const double> breaks) {
    if (!(hi > lo)) throw ValidationError("mean_value: empty interval");
    double len = hi - lo;
    return integrate(f, lo, hi, tol * len, breaks) / len;
}

} // namespace akhs
