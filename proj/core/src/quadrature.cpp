#include "deloc/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace deloc {

namespace {

// Gauss-Kronrod 7-15 nodes on [-1, 1]. Odd-indexed nodes are the embedded
// Gauss points.
constexpr double kNodes[15] = {
    0.0,
    -0.2077849550078984676006894, 0.2077849550078984676006894,
    -0.4058451513773971669066064, 0.4058451513773971669066064,
    -0.5860872354676911302941448, 0.5860872354676911302941448,
    -0.7415311855993944398638648, 0.7415311855993944398638648,
    -0.8648644233597690727897128, 0.8648644233597690727897128,
    -0.9491079123427585245261897, 0.9491079123427585245261897,
    -0.9914553711208126392068547, 0.9914553711208126392068547,
};

constexpr double kKronrodW[15] = {
    0.2094821410847278280129992,
    0.2044329400752988924141620, 0.2044329400752988924141620,
    0.1903505780647854099132564, 0.1903505780647854099132564,
    0.1690047266392679028265834, 0.1690047266392679028265834,
    0.1406532597155259187451896, 0.1406532597155259187451896,
    0.1047900103222501838398763, 0.1047900103222501838398763,
    0.0630920926299785532907007, 0.0630920926299785532907007,
    0.0229353220105292249637320, 0.0229353220105292249637320,
};

// Gauss-7 weights matched to kNodes indices 0, 3, 4, 7, 8, 11, 12.
constexpr int kGaussIdx[7] = {0, 3, 4, 7, 8, 11, 12};
constexpr double kGaussW[7] = {
    0.4179591836734693877551020,
    0.3818300505051189449503698, 0.3818300505051189449503698,
    0.2797053914892766679014678, 0.2797053914892766679014678,
    0.1294849661688696932706114, 0.1294849661688696932706114,
};

struct PanelEval {
    Complex value;
    double error;
};

PanelEval gk15(const std::function<Complex(double)>& f, double a, double b,
               long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex vals[15];
    for (int i = 0; i < 15; ++i) {
        vals[i] = f(mid + half * kNodes[i]);
        if (!std::isfinite(vals[i].real()) || !std::isfinite(vals[i].imag()))
            throw std::domain_error("integrand returned a non-finite value");
    }
    evals += 15;
    Complex k15{0.0, 0.0};
    for (int i = 0; i < 15; ++i) k15 += kKronrodW[i] * vals[i];
    Complex g7{0.0, 0.0};
    for (int i = 0; i < 7; ++i) g7 += kGaussW[i] * vals[kGaussIdx[i]];
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
}

PanelEval adaptive(const std::function<Complex(double)>& f, double a, double b,
                   double tol, int depth, long& evals) {
    PanelEval e = gk15(f, a, b, evals);
    if (e.error <= tol || depth <= 0) return e;
    const double mid = 0.5 * (a + b);
    PanelEval l = adaptive(f, a, mid, 0.5 * tol, depth - 1, evals);
    PanelEval r = adaptive(f, mid, b, 0.5 * tol, depth - 1, evals);
    return {l.value + r.value, l.error + r.error};
}

}  // namespace

QuadratureResult integrate_real_line(const std::function<Complex(double)>& f,
                                     const QuadratureOptions& opts) {
    QuadratureResult res;
    const double w = opts.panel_width;

    auto budget = [&]() {
        return opts.abs_tol + opts.rel_tol * std::abs(res.value);
    };

    // One direction at a time: panels [k w, (k+1) w] going right (sign = +1)
    // or [-(k+1) w, -k w] going left.
    auto sweep = [&](int sign) {
        double small_run = 0;  // consecutive panels below the cutoff
        double prev_mag = -1.0;
        double last_mag = 0.0;
        bool decaying = true;
        for (int k = 0; k < opts.max_panels; ++k) {
            double a = sign > 0 ? k * w : -(k + 1) * w;
            double b = a + w;
            double cutoff = 0.02 * budget();
            PanelEval p = adaptive(f, a, b, std::max(cutoff * 0.5, 1e-17),
                                   opts.max_panel_depth, res.evaluations);
            res.value += p.value;
            res.error_estimate += p.error;
            double mag = std::abs(p.value);
            decaying = prev_mag < 0 || mag <= prev_mag * 1.0000001;
            if (mag < cutoff && decaying && k + 1 >= opts.min_panels) {
                small_run += 1;
                if (small_run >= 3) {
                    double ratio = 0.5;
                    if (prev_mag > 0 && mag > 0)
                        ratio = std::clamp(mag / prev_mag, 0.0, 0.9);
                    last_mag = mag;
                    res.tail_estimate += last_mag * ratio / (1.0 - ratio);
                    return true;
                }
            } else {
                small_run = 0;
            }
            prev_mag = mag;
        }
        // Budget exhausted: bound the tail pessimistically by the last panel.
        res.tail_estimate += std::max(prev_mag, 0.0) * 9.0;
        return false;
    };

    bool right_ok = sweep(+1);
    bool left_ok = sweep(-1);

    double allowance = 4.0 * budget();
    if (!right_ok || !left_ok || res.tail_estimate + res.error_estimate > allowance) {
        throw ConvergenceError(
            "improper integral did not converge within the panel budget "
            "(tail estimate " + std::to_string(res.tail_estimate) + ")",
            res.value, res.tail_estimate);
    }
    return res;
}

QuadratureResult integrate_dt_over_t(const std::function<Complex(double)>& g,
                                     const QuadratureOptions& opts) {
    return integrate_real_line([&g](double u) { return g(std::exp(u)); }, opts);
}

QuadratureResult integrate_halfline(const std::function<Complex(double)>& g,
                                    const QuadratureOptions& opts) {
    return integrate_real_line(
        [&g](double u) {
            double s = std::exp(u);
            return g(s) * s;
        },
        opts);
}

}  // namespace deloc
