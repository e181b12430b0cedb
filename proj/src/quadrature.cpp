#include "tailbound/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace tailbound::quad {

namespace {

// 15-point Kronrod abscissae (non-negative half) and weights, with the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const std::function<double(double)>& fn, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = fn(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = fn(center - dx) + fn(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
    return {lo, hi, kronrod, err};
}

}  // namespace

double default_abs_tol() {
    if (const char* env = std::getenv("TAILBOUND_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) return v;
    }
    return 1e-10;
}

QuadOptions default_options() {
    QuadOptions opts;
    opts.abs_tol = default_abs_tol();
    return opts;
}

QuadResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                     const QuadOptions& opts) {
    if (lo == hi) return {0.0, 0.0, 0, true};
    double sign = 1.0;
    if (hi < lo) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::priority_queue<Panel> panels;
    Panel first = kronrod_panel(fn, lo, hi);
    double total = first.value;
    double error = first.error;
    panels.push(first);
    int count = 1;

    while (error > opts.abs_tol && count < opts.max_panels) {
        Panel worst = panels.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;  // cannot split further
        panels.pop();
        Panel left = kronrod_panel(fn, worst.lo, mid);
        Panel right = kronrod_panel(fn, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }

    // Re-sum to shed the drift from the running updates.
    double value = 0.0;
    double err = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    return {sign * value, err, count, err <= opts.abs_tol};
}

QuadResult integrate_upper(const std::function<double(double)>& fn, double lo,
                           const QuadOptions& opts) {
    auto mapped = [&](double u) {
        const double one_minus = 1.0 - u;
        const double t = lo + u / one_minus;
        const double v = fn(t);
        return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

QuadResult integrate_lower(const std::function<double(double)>& fn, double hi,
                           const QuadOptions& opts) {
    auto mapped = [&](double u) {
        const double one_minus = 1.0 - u;
        const double t = hi - u / one_minus;
        const double v = fn(t);
        return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

QuadResult integrate_any(const std::function<double(double)>& fn, double lo, double hi,
                         const QuadOptions& opts) {
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return integrate(fn, lo, hi, opts);
    if (!lo_inf) return integrate_upper(fn, lo, opts);
    if (!hi_inf) return integrate_lower(fn, hi, opts);
    QuadOptions half = opts;
    half.abs_tol = 0.5 * opts.abs_tol;
    const QuadResult left = integrate_lower(fn, 0.0, half);
    const QuadResult right = integrate_upper(fn, 0.0, half);
    return {left.value + right.value, left.abs_error + right.abs_error,
            left.panels + right.panels, left.converged && right.converged};
}

}  // namespace tailbound::quad
