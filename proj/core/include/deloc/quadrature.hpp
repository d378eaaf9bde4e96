#ifndef DELOC_QUADRATURE_HPP
#define DELOC_QUADRATURE_HPP

#include <functional>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"

namespace deloc {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_panel_depth = 28;   // adaptive bisection depth inside one panel
    double panel_width = 1.0;   // width of one panel on the log axis
    int max_panels = 400;       // per direction
    int min_panels = 16;        // explored per direction before stopping;
                                // guards against integrands whose support
                                // underflows to zero near the origin
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;  // accumulated interior estimates
    double tail_estimate = 0.0;   // bound for the two un-integrated tails
    long evaluations = 0;
};

/// Integral of f over the whole real line. The integrand must decay in both
/// directions; panels are added outward until three consecutive panel
/// contributions per direction fall below the tolerance budget, and the
/// remaining tail is bounded by geometric extrapolation of the panel decay.
/// Throws ConvergenceError (with partial value and tail estimate) when the
/// panel budget runs out before the decay criterion is met.
QuadratureResult integrate_real_line(const std::function<Complex(double)>& f,
                                     const QuadratureOptions& opts = {});

/// Integral of g(t) dt/t over (0, inf), via the substitution u = ln t.
QuadratureResult integrate_dt_over_t(const std::function<Complex(double)>& g,
                                     const QuadratureOptions& opts = {});

/// Integral of g(s) ds over (0, inf), via the substitution u = ln s.
QuadratureResult integrate_halfline(const std::function<Complex(double)>& g,
                                    const QuadratureOptions& opts = {});

}  // namespace deloc

#endif
