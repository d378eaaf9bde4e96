#ifndef DELOC_HYPERBOLIC_HPP
#define DELOC_HYPERBOLIC_HPP

#include <string>
#include <utility>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"
#include "deloc/invariants.hpp"

namespace deloc::hyperbolic {

/// Conjugacy-class datum of a closed geodesic in a closed oriented hyperbolic
/// manifold of dimension 2n+1: multiplicity over the underlying prime
/// geodesic, total length, and the normal-holonomy rotation angles.
struct GeodesicClass {
    int n = 1;              // dimension d = 2n + 1
    int multiplicity = 1;   // times the prime geodesic is covered
    double length = 1.0;    // total hyperbolic length
    std::vector<double> angles;  // n rotation angles in (-pi, pi]
};

/// Validates and normalizes (wraps angles into (-pi, pi]).
GeodesicClass make_geodesic_class(int n, int multiplicity, double length,
                                  std::vector<double> angles);

/// Trace of the induced rotation on the j-th exterior power of R^{2n}: the
/// j-th elementary symmetric polynomial of the eigenvalues e^{+-i theta_m}.
/// Always real.
double sigma_trace(const std::vector<double>& angles, int j);

/// det(I - e^{-length} m) for the holonomy rotation m; positive.
double holonomy_determinant(const GeodesicClass& g);

/// Length-normalized geodesic heat kernel for exterior-power degree j
/// (0 <= j <= 2n, zero outside that range):
///   Tr sigma_j / (k det(I - e^{-l} m)) * l * (4 pi t)^{-1/2}
///     * e^{-l^2/4t} * e^{-t (n-j)^2} * e^{-n l}.
/// The factor l (equivalently, prime length l/k against the multiplicity)
/// makes the dt/t integral of the kernel family reproduce torsion_closed.
double selberg_kernel(const GeodesicClass& g, int j, double t);

/// Heat-trace sampler in form degree p: kernel(j=p) + kernel(j=p-1).
HeatTraceSampler selberg_heat_trace(const GeodesicClass& g, int p);

/// Closed form of the per-class analytic torsion:
///   e^{-nl} / (k det(I - e^{-l} m)) * sum_j (-1)^j e^{-l|n-j|} Tr sigma_j.
double torsion_closed(const GeodesicClass& g);

/// Closed form of the per-class eta invariant of the tangential signature
/// operator; identically zero when n is even.
double eta_closed(const GeodesicClass& g);

/// Odd heat kernel sampler whose eta_integral reproduces eta_closed.
/// Unsupported for n even (the invariant vanishes; no kernel is defined).
EtaSampler millson_eta_sampler(const GeodesicClass& g);

/// The class of g^r: length r*l, multiplicity r*k, angles r*theta wrapped.
GeodesicClass power_class(const GeodesicClass& g, int r);

/// Per-class Betti numbers of hyperbolic manifolds vanish in every degree.
double hyperbolic_betti(const GeodesicClass& g, int p);

/// Numerical check behind hyperbolic_betti: samples the heat trace on a
/// geometric time ladder and fits the decay.
struct BettiDecayReport {
    std::vector<std::pair<double, double>> samples;  // (t, trace value)
    double fitted_rate = 0.0;                        // d(ln|v|)/dt, sign-flipped
    bool decayed = false;
};
BettiDecayReport betti_decay_report(const GeodesicClass& g, int p, double t_max);

/// Both sides of the dimension-three identity
///   torsion - i pi eta = (2/k) / (1 - mu^2),   mu^2 = e^{l + i theta}.
/// Pins the angle-sign convention.
struct N1Identity {
    Complex lhs;
    Complex rhs;
};
N1Identity n1_identity(const GeodesicClass& g);

/// Length recovered from the decay of |torsion(g^r)| in r.
struct LengthFit {
    double length = 0.0;
    double residual_rms = 0.0;
    int points_used = 0;
    bool reliable = true;
    std::string note;
};

/// Estimate the prime-geodesic length from pairs (r, torsion of g^r).
/// Zero values are dropped; at least five usable points are required.
///
/// Pure exponential data is detected and fitted exactly. Otherwise the decay
/// exponent is fitted with a ln(r) nuisance column, and for n = 1 the fit is
/// refined against the full closed-form model (unknown rotation angle found
/// by grid search), which suppresses the oscillation of the holonomy trace.
LengthFit recover_length(const std::vector<std::pair<int, Complex>>& values, int n);

}  // namespace deloc::hyperbolic

#endif
