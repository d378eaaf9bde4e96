#ifndef DELOC_NIELSEN_HPP
#define DELOC_NIELSEN_HPP

#include <string>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"
#include "deloc/groups.hpp"
#include "deloc/rational.hpp"
#include "deloc/zeta.hpp"

namespace deloc::nielsen {

/// One cochain degree of an equivariant complex. The basis is (orbit, group
/// element) pairs, flattened as orbit * |F| + element, carrying the free right
/// regular action of F. Linear maps are stored as coefficient tables with the
/// source on the row: T(e_a) = sum_b T[a][b] e_b.
struct DegreeData {
    int orbit_count = 0;
    Mat<long long> diff;     // dim(p) x dim(p+1); empty in the top degree
    Mat<long long> phi_hat;  // dim(p) x dim(p)
};

/// Cellular cochain complex of a free F-cover together with a lift of the
/// gluing map, twisted by the automorphism alpha.
struct EquivariantComplex {
    groups::FiniteGroup group;
    groups::Automorphism alpha;
    std::vector<DegreeData> degrees;

    int dim(int p) const { return degrees[p].orbit_count * group.order; }
    int basis_index(int orbit, int element) const {
        return orbit * group.order + element;
    }
    int top_degree() const { return static_cast<int>(degrees.size()) - 1; }
};

struct ValidationReport {
    bool valid = true;
    std::string message;
    int degree = -1;
    int orbit = -1;
    int element = -1;
};

/// Checks d o d = 0, commutation of phi_hat with the differentials and with
/// the F-action, and the alpha-twisted equivariance of phi_hat. Reports the
/// first violation found.
ValidationReport validate_complex(const EquivariantComplex& x);

/// (phi_hat_p)^k as an exact rational matrix; k may be negative when phi_hat
/// is invertible over the rationals.
Mat<Rat> phi_power(const EquivariantComplex& x, int p, long long k);

/// Average twisted diagonal coefficient
///   n_{p,k}(f) = (1/|F|) sum_over_basis phi_hat^k[b -> b.f].
Rat twisted_coefficient_sum(const EquivariantComplex& x, int p, int f, long long k);

/// i_{p,k}(f) = n_{p,k}(f) * |[f]_k|; an integer for valid complexes.
Rat twisted_cell_index(const EquivariantComplex& x, int p, int f, long long k);

/// Nielsen fixed point index I_k(f) = sum_p (-1)^p i_{p,k}(f). Exact integer
/// arithmetic throughout; a non-integer result or a value that varies over
/// the twisted class signals a broken free-action assumption.
long long nielsen_index(const EquivariantComplex& x, long long k, int f);

/// Twisted Lefschetz number of the r-th return, evaluated along two
/// independent routes (direct supertrace on the twisted complex, and the
/// character/index sum over twisted classes). The routes must agree.
Complex twisted_lefschetz(const EquivariantComplex& x,
                          const groups::InducedRepData& rep, long long r);

/// Exact representation datum over Q(i) for the rational evaluation path.
struct ExactRep {
    int j = 1;
    std::vector<Mat<GaussianRat>> mu;  // one matrix per group element
    Mat<GaussianRat> U;
};

/// Exact twin of twisted_lefschetz; route agreement is checked with exact
/// equality.
GaussianRat twisted_lefschetz_exact(const EquivariantComplex& x,
                                    const ExactRep& rep, long long r);

/// Twisted fixed-point zeta function: the determinant product over the
/// twisted complex in the variable z^j. The leading series coefficients are
/// validated against the defining character/index sum.
RationalZeta zeta_rho(const EquivariantComplex& x,
                      const groups::InducedRepData& rep);

/// Defining log-series coefficients a_k = (1/k) sum_f chi(f,k) I_k(f)/|[f]_k|,
/// the independent route against which zeta_rho is checked.
std::vector<Complex> defining_log_series(const EquivariantComplex& x,
                                         const groups::InducedRepData& rep,
                                         int nterms);

/// ln |zeta_rho(1)|^2; throws PoleError when 1 is a zero or pole (non-acyclic
/// twisted cohomology).
double eq8_pairing(const EquivariantComplex& x, const groups::InducedRepData& rep);

/// For a trivial deck group, individual per-winding torsion values can be
/// recovered by the circle-average route on the fiber data.
Complex recover_torsion_infinite_cyclic(const EquivariantComplex& x, long long k,
                                        long grid);

/// Right regular representation with the permutation intertwiner of alpha;
/// integer entries, period 1.
ExactRep regular_rep(const groups::FiniteGroup& g, const groups::Automorphism& alpha);

groups::InducedRepData to_complex_rep(const ExactRep& rep);

}  // namespace deloc::nielsen

#endif
