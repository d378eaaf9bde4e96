#ifndef DELOC_INVARIANTS_HPP
#define DELOC_INVARIANTS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"
#include "deloc/quadrature.hpp"

namespace deloc {

enum class InvariantKind { betti, torsion, eta };

/// One degree of a per-class heat trace: t -> Tr restricted to the class, in
/// form degree `degree` of a manifold of dimension `dimension`. `eval` must be
/// finite for all t > 0 and reentrant (quadrature may sample it in parallel).
struct HeatTraceSampler {
    std::function<Complex(double)> eval;
    int degree = 0;
    int dimension = 0;
};

/// Alternating degree-weighted combination of heat traces together with its
/// large-time limit.
struct TorsionSeries {
    std::function<Complex(double)> value;
    Complex limit_at_infinity{0.0, 0.0};
    int dimension = 0;
};

/// Odd heat kernel trace of a Dirac-type operator, s -> trace at diffusion
/// parameter s. Expected to vanish Gaussian-fast at s -> 0 and decay at
/// large s.
struct EtaSampler {
    std::function<Complex(double)> eval;
};

struct InvariantValue {
    InvariantKind kind = InvariantKind::torsion;
    std::string class_label;
    Complex value{0.0, 0.0};
};

/// Combine per-degree samplers (one for each degree 0..d) into the
/// alternating sum  sum_p (-1)^p p * sampler_p(t).  Missing or duplicated
/// degrees are rejected.
TorsionSeries assemble_torsion_series(const std::vector<HeatTraceSampler>& samplers,
                                      Complex limit_at_infinity);

/// -Integral over (0, inf) of (series(t) - (1 - e^{-t}) * limit) dt/t,
/// evaluated by adaptive quadrature on the log-time axis. The subtraction is
/// applied verbatim even when the limit is zero.
Complex torsion_integral(const TorsionSeries& series, double tolerance = 1e-10);
QuadratureResult torsion_integral_info(const TorsionSeries& series,
                                       const QuadratureOptions& opts);

/// (2/sqrt(pi)) * integral of sampler over (0, inf).
Complex eta_integral(const EtaSampler& sampler, double tolerance = 1e-10);
QuadratureResult eta_integral_info(const EtaSampler& sampler,
                                   const QuadratureOptions& opts);

/// Closed form of the moment integral
///   int_0^inf (4 pi t)^{-1/2} e^{-length^2/4t} e^{-t rate^2} dt/t
/// which equals e^{-length*rate}/length for length > 0.
double gaussian_moment(double length, double rate);

/// Same moment evaluated by the quadrature path; used to validate the
/// closed form and the integrator against each other.
double gaussian_moment_quadrature(double length, double rate,
                                  double tolerance = 1e-10);

/// Value predicted for the inverse conjugacy class: the complex conjugate.
InvariantValue dual_class_value(const InvariantValue& v);

/// Product-space torsion: delta_{g1,e} chi1 * t2 + delta_{g2,e} chi2 * t1.
Complex product_torsion(long long chi1, long long chi2, Complex t1, Complex t2,
                        bool g1_trivial, bool g2_trivial);

/// Eta analog of product_torsion; the index-density integrals of the two
/// factors are supplied by the caller.
Complex product_eta(Complex index_integral1, Complex index_integral2,
                    Complex eta1, Complex eta2, bool g1_trivial, bool g2_trivial);

enum class VanishingKind { torsion, signature_eta };

/// Dimension-parity vanishing: torsion vanishes in even dimension, the
/// signature-operator eta vanishes when d = 1 mod 4. Returns 0 when forced,
/// nullopt otherwise.
std::optional<Complex> forced_vanishing(int dimension, VanishingKind kind);

}  // namespace deloc

#endif
