#ifndef DELOC_MAPPING_TORUS_HPP
#define DELOC_MAPPING_TORUS_HPP

#include <Eigen/Dense>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"
#include "deloc/zeta.hpp"

namespace deloc::torus {

/// Graded action of a gluing diffeomorphism on the fiber cohomology: one
/// invertible complex matrix per degree (possibly 0x0 when the Betti number
/// vanishes).
struct CohomologyAction {
    std::vector<Eigen::MatrixXcd> matrices;

    int top_degree() const { return static_cast<int>(matrices.size()) - 1; }
};

/// Validates squareness and invertibility of each degree.
CohomologyAction make_action(std::vector<Eigen::MatrixXcd> matrices);

/// Spectral clamp onto the closed unit disc:
///   f(z) = z for |z| <= 1,  conj(1/z) otherwise.
Complex clamp_spectrum(Complex lambda);

/// Per-winding-class torsion of the mapping torus:
///   k > 0:  (1/k) sum_p (-1)^p sum_i f(lambda_{p,i})^k
///   k < 0: -(1/k) sum_p (-1)^p sum_i f(conj lambda_{p,i})^{-k}
/// where the lambda run over the spectrum with multiplicity. A defective
/// matrix with a unit-circle eigenvalue has no unambiguous clamp and is
/// rejected.
Complex torsion_k(const CohomologyAction& action, long long k);

/// Alternating trace of the k-th power, k >= 1. Exact (in floating point)
/// for integer inputs.
Complex lefschetz_number(const CohomologyAction& action, long long k);

/// The fixed-point zeta function as a product of characteristic polynomials
/// det(I - z A_p) with exponent (-1)^{p+1}.
RationalZeta zeta_rational(const CohomologyAction& action);

/// Circle-average oracle for torsion_k: the k-th Fourier coefficient of
///   theta -> sum_p (-1)^p ln |det(I - e^{i theta} A_p)|^{-2},
/// computed by midpoint sums with doubling refinement and Richardson
/// extrapolation. Unit-circle eigenvalues give integrable log singularities;
/// the accuracy target degrades to ~1e-4 there.
Complex fourier_torsion_oracle(const CohomologyAction& action, long long k,
                               long grid);

struct FourierDiagnostics {
    Complex value;
    Complex previous;   // estimate one refinement earlier
    long grid_used = 0;
    double residual = 0.0;
};
FourierDiagnostics fourier_torsion_oracle_info(const CohomologyAction& action,
                                               long long k, long grid);

/// Eta of the suspension from the equivariant index datum:
///   i * supertrace / (k pi).
Complex atiyah_bott_eta(Complex supertrace, long long k);

/// Spectrum of one degree (eigenvalues with multiplicity).
std::vector<Complex> action_spectrum(const CohomologyAction& action, int p);

/// True when some eigenvalue lies within `tol` of the unit circle.
bool has_unit_circle_spectrum(const CohomologyAction& action, double tol = 1e-9);

}  // namespace deloc::torus

#endif
