#ifndef DELOC_HEAT_TRACE_HPP
#define DELOC_HEAT_TRACE_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"

namespace deloc::heat {

/// One Laurent-polynomial entry: finite sum of coeff * z^exponents over the
/// rank-many cover generators.
struct LaurentTerm {
    std::vector<long long> exponents;
    Complex coeff{0.0, 0.0};
};
using LaurentEntry = std::vector<LaurentTerm>;

struct LaurentMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<LaurentEntry> entries;  // row-major

    const LaurentEntry& at(int r, int c) const { return entries[r * cols + c]; }
    LaurentEntry& at(int r, int c) { return entries[r * cols + c]; }
};

/// Cochain complex over the group ring of Z^rank: explicit cochain dimensions
/// and one coboundary matrix per consecutive pair of degrees.
struct LaurentComplex {
    int rank = 1;
    std::vector<int> dims;
    std::vector<LaurentMatrix> differentials;  // differentials[p]: C^p -> C^{p+1}

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }
};

/// Validates shapes and checks d o d = 0 in the group ring.
LaurentComplex make_laurent_complex(int rank, std::vector<int> dims,
                                    std::vector<LaurentMatrix> differentials);

/// Evaluate a Laurent matrix at a point of the dual torus (generator a maps
/// to e^{i theta_a}).
Eigen::MatrixXcd evaluate_matrix(const LaurentMatrix& m,
                                 const std::vector<double>& theta, int rank);

/// Twisted cochain Laplacian at theta; Hermitian positive semidefinite.
Eigen::MatrixXcd twisted_laplacian(const LaurentComplex& x, int p,
                                   const std::vector<double>& theta);

struct HeatTraceResult {
    Complex value{0.0, 0.0};
    long grid_used = 0;
    double refinement_residual = 0.0;
};

/// Fourier coefficient of the twisted heat trace over the dual torus:
///   integral of e^{-i m.theta} Tr e^{-t Laplacian_theta} d theta / (2 pi)^rank,
/// by tensor-product trapezoidal sums (spectrally accurate here) with
/// doubling refinement.
HeatTraceResult delocalized_heat_trace(const LaurentComplex& x, int p,
                                       const std::vector<long long>& m, double t,
                                       long grid);

struct DecayReport {
    std::vector<std::pair<double, Complex>> ladder;  // (t, value)
    double exponential_rate = 0.0;  // fitted d(-ln|v|)/dt
    double power_rate = 0.0;        // fitted d(-ln|v|)/d(ln t)
    Complex extrapolated_limit{0.0, 0.0};
    bool anomaly = false;
    std::string note;
};

/// Evaluates the trace on the geometric ladder t = 1, 2, 4, ... <= t_max and
/// extrapolates the large-time limit (expected zero for m != 0). A
/// non-decaying ladder is reported as an anomaly rather than silently
/// claiming a vanishing limit.
DecayReport delocalized_betti(const LaurentComplex& x, int p,
                              const std::vector<long long>& m, double t_max,
                              long grid = 64);

}  // namespace deloc::heat

#endif
