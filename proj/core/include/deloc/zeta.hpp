#ifndef DELOC_ZETA_HPP
#define DELOC_ZETA_HPP

#include <Eigen/Dense>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"
#include "deloc/rational.hpp"

namespace deloc {

/// Dense polynomial with complex coefficients, ascending powers.
struct Poly {
    std::vector<Complex> coeff{Complex(1.0, 0.0)};

    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    Complex eval(Complex z) const;
};

Poly poly_mul(const Poly& a, const Poly& b);

/// Replace z by z^j (spreads coefficients).
Poly poly_compose_power(const Poly& p, int j);

/// Multiplicity of z0 as a root, and the value of the deflated polynomial
/// p(z)/(z-z0)^mult at z0. Detection threshold is relative to the
/// coefficient scale.
struct RootProbe {
    int multiplicity = 0;
    Complex deflated_value{0.0, 0.0};
};
RootProbe probe_root(const Poly& p, Complex z0, double tol = 1e-9);

/// Coefficients a_1..a_n of log p(z) = sum_k a_k z^k; requires p(0) = 1.
std::vector<Complex> log_series(const Poly& p, int nterms);

/// Coefficients of det(I - z A) via power sums and Newton's identities.
/// Exact (in floating point) when A has integer entries.
Poly det_one_minus_z(const Eigen::MatrixXcd& a);

/// Rational function given as a product of polynomial factors with exponents
/// +1 (numerator) and -1 (denominator); the factored form keeps the
/// per-degree characteristic polynomials intact.
struct RationalZeta {
    std::vector<Poly> numerator;
    std::vector<Poly> denominator;

    /// True when every stored coefficient is exactly a (real) integer, which
    /// enables the exact-series path.
    bool integral_coefficients() const;

    /// Net order at z0: zero multiplicities minus pole multiplicities.
    int order_at(Complex z0) const;

    /// Value at z0. Throws PoleError when z0 is a pole; a zero evaluates
    /// to 0.
    Complex value_at(Complex z0) const;

    /// ln |value|^2 at z0. Throws PoleError when the net order at z0 is
    /// nonzero (zero or pole), carrying the order.
    double log_abs_sq_at(Complex z0) const;

    /// Coefficients a_1..a_n of log of the rational function.
    std::vector<Complex> log_series(int nterms) const;

    /// Exact rational series coefficients; requires integral_coefficients().
    std::vector<Rat> log_series_exact(int nterms) const;
};

}  // namespace deloc

#endif
