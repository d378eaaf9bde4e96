#include "deloc/mapping_torus.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace deloc::torus {

namespace {

constexpr double kCircleTol = 1e-9;

// Reject matrices that are defective at a unit-circle eigenvalue: the clamp
// is defined spectrally and a nontrivial Jordan block on the circle leaves it
// ambiguous.
void check_unit_circle_semisimple(const Eigen::MatrixXcd& a,
                                  const Eigen::VectorXcd& eigs) {
    const int n = static_cast<int>(a.rows());
    std::vector<char> used(n, 0);
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (std::abs(std::abs(eigs(i)) - 1.0) > 1e-7) continue;
        // Cluster eigenvalues around eigs(i).
        int algebraic = 0;
        for (int j = 0; j < n; ++j)
            if (std::abs(eigs(j) - eigs(i)) < 1e-6) {
                algebraic += 1;
                used[j] = 1;
            }
        if (algebraic < 2) continue;
        Eigen::MatrixXcd shifted =
            a - eigs(i) * Eigen::MatrixXcd::Identity(n, n);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
        int rank = 0;
        double smax = svd.singularValues()(0);
        for (int j = 0; j < n; ++j)
            if (svd.singularValues()(j) > 1e-9 * std::max(1.0, smax)) ++rank;
        int geometric = n - rank;
        if (geometric < algebraic)
            throw std::domain_error(
                "spectral clamp is ambiguous: defective matrix with a "
                "unit-circle eigenvalue");
    }
}

}  // namespace

CohomologyAction make_action(std::vector<Eigen::MatrixXcd> matrices) {
    if (matrices.empty()) throw SchemaError("action needs at least one degree");
    for (std::size_t p = 0; p < matrices.size(); ++p) {
        const auto& m = matrices[p];
        if (m.rows() != m.cols())
            throw SchemaError("matrix in degree " + std::to_string(p) +
                              " is not square");
        if (m.rows() == 0) continue;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        if (svd.singularValues()(m.rows() - 1) < 1e-12)
            throw SchemaError("matrix in degree " + std::to_string(p) +
                              " is numerically singular; the gluing map must be "
                              "invertible");
    }
    CohomologyAction a;
    a.matrices = std::move(matrices);
    return a;
}

Complex clamp_spectrum(Complex lambda) {
    if (lambda == Complex(0.0, 0.0))
        throw std::domain_error("spectral clamp is undefined at zero");
    if (std::abs(lambda) <= 1.0) return lambda;
    return std::conj(1.0 / lambda);
}

std::vector<Complex> action_spectrum(const CohomologyAction& action, int p) {
    if (p < 0 || p > action.top_degree())
        throw std::domain_error("degree outside the action range");
    const auto& m = action.matrices[p];
    if (m.rows() == 0) return {};
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> out(es.eigenvalues().data(),
                             es.eigenvalues().data() + m.rows());
    return out;
}

bool has_unit_circle_spectrum(const CohomologyAction& action, double tol) {
    for (int p = 0; p <= action.top_degree(); ++p)
        for (Complex l : action_spectrum(action, p))
            if (std::abs(std::abs(l) - 1.0) <= tol) return true;
    return false;
}

Complex torsion_k(const CohomologyAction& action, long long k) {
    if (k == 0) throw std::domain_error("winding class k must be nonzero");
    Complex sum{0.0, 0.0};
    for (int p = 0; p <= action.top_degree(); ++p) {
        const auto& m = action.matrices[p];
        if (m.rows() == 0) continue;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
        check_unit_circle_semisimple(m, es.eigenvalues());
        double sign = (p % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < m.rows(); ++i) {
            Complex lambda = es.eigenvalues()(i);
            if (std::abs(lambda) < 1e-14)
                throw std::domain_error("zero eigenvalue in the action spectrum");
            Complex clamped =
                clamp_spectrum(k > 0 ? lambda : std::conj(lambda));
            sum += sign * std::pow(clamped, static_cast<double>(std::llabs(k)));
        }
    }
    return k > 0 ? sum / static_cast<double>(k) : -sum / static_cast<double>(k);
}

Complex lefschetz_number(const CohomologyAction& action, long long k) {
    if (k < 1) throw std::domain_error("lefschetz_number wants k >= 1");
    Complex sum{0.0, 0.0};
    for (int p = 0; p <= action.top_degree(); ++p) {
        const auto& m = action.matrices[p];
        if (m.rows() == 0) continue;
        Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(m.rows(), m.rows());
        for (long long i = 0; i < k; ++i) pw = pw * m;
        double sign = (p % 2 == 0) ? 1.0 : -1.0;
        sum += sign * pw.trace();
    }
    return sum;
}

RationalZeta zeta_rational(const CohomologyAction& action) {
    RationalZeta zeta;
    for (int p = 0; p <= action.top_degree(); ++p) {
        const auto& m = action.matrices[p];
        if (m.rows() == 0) continue;
        Poly factor = det_one_minus_z(m);
        // Exponent (-1)^{p+1}: odd degrees upstairs, even degrees downstairs.
        if (p % 2 == 1)
            zeta.numerator.push_back(std::move(factor));
        else
            zeta.denominator.push_back(std::move(factor));
    }
    return zeta;
}

FourierDiagnostics fourier_torsion_oracle_info(const CohomologyAction& action,
                                               long long k, long grid) {
    if (k == 0) throw std::domain_error("winding class k must be nonzero");
    if (grid < 256) throw std::invalid_argument("fourier oracle wants grid >= 256");

    std::vector<std::vector<Complex>> spectra;
    std::vector<double> signs;
    for (int p = 0; p <= action.top_degree(); ++p) {
        spectra.push_back(action_spectrum(action, p));
        signs.push_back(p % 2 == 0 ? 1.0 : -1.0);
    }
    const bool singular = has_unit_circle_spectrum(action, kCircleTol);
    const double target = singular ? 1e-5 : 1e-9;
    const long max_grid = 1L << 19;

    auto torsion_density = [&](double theta) {
        // sum_p (-1)^p ln |det(I - e^{i theta} A_p)|^{-2}
        Complex phase = std::exp(Complex(0.0, theta));
        double acc = 0.0;
        for (std::size_t p = 0; p < spectra.size(); ++p) {
            double lg = 0.0;
            for (Complex lambda : spectra[p])
                lg += std::log(std::max(std::abs(1.0 - phase * lambda), 1e-280));
            acc += signs[p] * (-2.0) * lg;
        }
        return acc;
    };

    auto midpoint_sum = [&](long n) {
        Complex s{0.0, 0.0};
        for (long m = 0; m < n; ++m) {
            double theta = 2.0 * kPi * (m + 0.5) / n;
            s += std::exp(Complex(0.0, -k * theta)) * torsion_density(theta);
        }
        return s / static_cast<double>(n);
    };

    FourierDiagnostics diag;
    long n = std::max<long>(grid, 256);
    Complex prev = midpoint_sum(n);
    Complex prev2{0.0, 0.0};
    bool have_prev2 = false;
    while (true) {
        n *= 2;
        Complex cur = midpoint_sum(n);
        double delta = std::abs(cur - prev);
        diag.value = cur;
        diag.previous = prev;
        diag.grid_used = n;
        diag.residual = delta;
        if (have_prev2) {
            // Richardson step from the observed refinement order.
            double d1 = std::abs(prev - prev2);
            if (delta > 0 && d1 > delta) {
                double p_hat = std::log2(d1 / delta);
                if (p_hat > 0.3 && p_hat < 6.0) {
                    Complex extrap =
                        cur + (cur - prev) / (std::pow(2.0, p_hat) - 1.0);
                    diag.value = extrap;
                    diag.residual = std::abs(extrap - cur);
                }
            }
        }
        if (diag.residual < target || (delta == 0.0 && n > 2 * grid)) return diag;
        if (n >= max_grid) {
            if (diag.residual < (singular ? 5e-5 : 1e-8) * 10) return diag;
            throw ConvergenceError(
                "fourier oracle failed to converge: last two estimates (" +
                    std::to_string(cur.real()) + ", " + std::to_string(prev.real()) +
                    "), residual " + std::to_string(diag.residual),
                diag.value, diag.residual);
        }
        prev2 = prev;
        have_prev2 = true;
        prev = cur;
    }
}

Complex fourier_torsion_oracle(const CohomologyAction& action, long long k,
                               long grid) {
    return fourier_torsion_oracle_info(action, k, grid).value;
}

Complex atiyah_bott_eta(Complex supertrace, long long k) {
    if (k == 0) throw std::domain_error("winding class k must be nonzero");
    return Complex(0.0, 1.0) * supertrace / (static_cast<double>(k) * kPi);
}

}  // namespace deloc::torus
