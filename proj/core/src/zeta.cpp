#include "deloc/zeta.hpp"

#include <algorithm>
#include <cmath>

namespace deloc {

Complex Poly::eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    out.coeff.assign(a.coeff.size() + b.coeff.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        for (std::size_t j = 0; j < b.coeff.size(); ++j)
            out.coeff[i + j] += a.coeff[i] * b.coeff[j];
    return out;
}

Poly poly_compose_power(const Poly& p, int j) {
    if (j < 1) throw std::domain_error("poly_compose_power wants j >= 1");
    Poly out;
    out.coeff.assign((p.coeff.size() - 1) * j + 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < p.coeff.size(); ++i) out.coeff[i * j] = p.coeff[i];
    return out;
}

RootProbe probe_root(const Poly& p, Complex z0, double tol) {
    double scale = 0.0;
    double zpow = 1.0;
    for (const Complex& c : p.coeff) {
        scale += std::abs(c) * zpow;
        zpow *= std::max(1.0, std::abs(z0));
    }
    if (scale == 0.0) throw InternalError("zero polynomial in probe_root");

    RootProbe probe;
    std::vector<Complex> cur = p.coeff;
    while (static_cast<int>(cur.size()) > 1) {
        // Synthetic division by (z - z0): remainder is the value at z0.
        std::vector<Complex> quot(cur.size() - 1);
        Complex carry = cur.back();
        for (int i = static_cast<int>(cur.size()) - 2; i >= 0; --i) {
            quot[i] = carry;
            carry = cur[i] + carry * z0;
        }
        if (std::abs(carry) > tol * scale) break;
        probe.multiplicity += 1;
        cur = std::move(quot);
    }
    Poly deflated;
    deflated.coeff = cur;
    probe.deflated_value = deflated.eval(z0);
    return probe;
}

std::vector<Complex> log_series(const Poly& p, int nterms) {
    if (std::abs(p.coeff.at(0) - Complex(1.0, 0.0)) > 1e-12)
        throw InternalError("log_series wants a polynomial with constant term 1");
    std::vector<Complex> a(nterms + 1, Complex(0.0, 0.0));
    auto c = [&p](int i) {
        return i < static_cast<int>(p.coeff.size()) ? p.coeff[i] : Complex(0.0, 0.0);
    };
    for (int k = 1; k <= nterms; ++k) {
        Complex acc = c(k) * static_cast<double>(k);
        for (int m = 1; m < k; ++m) acc -= static_cast<double>(m) * a[m] * c(k - m);
        a[k] = acc / static_cast<double>(k);
    }
    return {a.begin() + 1, a.end()};
}

Poly det_one_minus_z(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw SchemaError("det_one_minus_z wants a square matrix");
    Poly out;
    if (n == 0) return out;

    // Power sums p_i = Tr(A^i), then Newton's identities for the elementary
    // symmetric polynomials e_k; det(I - zA) = sum_k (-1)^k e_k z^k.
    std::vector<Complex> psum(n + 1, Complex(0.0, 0.0));
    Eigen::MatrixXcd pw = a;
    for (int i = 1; i <= n; ++i) {
        psum[i] = pw.trace();
        if (i < n) pw = pw * a;
    }
    std::vector<Complex> e(n + 1, Complex(0.0, 0.0));
    e[0] = Complex(1.0, 0.0);
    for (int k = 1; k <= n; ++k) {
        Complex acc{0.0, 0.0};
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[k - i] * psum[i];
            sign = -sign;
        }
        e[k] = acc / static_cast<double>(k);
    }
    out.coeff.resize(n + 1);
    for (int k = 0; k <= n; ++k)
        out.coeff[k] = (k % 2 == 0 ? 1.0 : -1.0) * e[k];
    return out;
}

bool RationalZeta::integral_coefficients() const {
    auto ok = [](const Poly& p) {
        for (const Complex& c : p.coeff)
            if (c.imag() != 0.0 || c.real() != std::round(c.real()) ||
                std::abs(c.real()) > 9.0e15)
                return false;
        return true;
    };
    return std::all_of(numerator.begin(), numerator.end(), ok) &&
           std::all_of(denominator.begin(), denominator.end(), ok);
}

int RationalZeta::order_at(Complex z0) const {
    int order = 0;
    for (const Poly& p : numerator) order += probe_root(p, z0).multiplicity;
    for (const Poly& p : denominator) order -= probe_root(p, z0).multiplicity;
    return order;
}

Complex RationalZeta::value_at(Complex z0) const {
    int order = 0;
    Complex num{1.0, 0.0};
    Complex den{1.0, 0.0};
    for (const Poly& p : numerator) {
        RootProbe pr = probe_root(p, z0);
        order += pr.multiplicity;
        num *= pr.deflated_value;
    }
    for (const Poly& p : denominator) {
        RootProbe pr = probe_root(p, z0);
        order -= pr.multiplicity;
        den *= pr.deflated_value;
    }
    if (order < 0)
        throw PoleError("rational function has a pole of order " +
                            std::to_string(-order) + " at the requested point",
                        order);
    if (order > 0) return {0.0, 0.0};
    return num / den;
}

double RationalZeta::log_abs_sq_at(Complex z0) const {
    int order = order_at(z0);
    if (order != 0)
        throw PoleError(order > 0
                            ? "zero of order " + std::to_string(order) +
                                  " at the evaluation point"
                            : "pole of order " + std::to_string(-order) +
                                  " at the evaluation point",
                        order);
    return std::log(std::norm(value_at(z0)));
}

std::vector<Complex> RationalZeta::log_series(int nterms) const {
    std::vector<Complex> acc(nterms, Complex(0.0, 0.0));
    for (const Poly& p : numerator) {
        std::vector<Complex> s = deloc::log_series(p, nterms);
        for (int i = 0; i < nterms; ++i) acc[i] += s[i];
    }
    for (const Poly& p : denominator) {
        std::vector<Complex> s = deloc::log_series(p, nterms);
        for (int i = 0; i < nterms; ++i) acc[i] -= s[i];
    }
    return acc;
}

std::vector<Rat> RationalZeta::log_series_exact(int nterms) const {
    if (!integral_coefficients())
        throw InternalError("exact series requires integer coefficients");
    auto accumulate = [nterms](std::vector<Rat>& acc, const Poly& p, bool plus) {
        std::vector<Rat> c(std::max<std::size_t>(p.coeff.size(), nterms + 1));
        for (std::size_t i = 0; i < p.coeff.size(); ++i)
            c[i] = Rat(static_cast<long long>(std::llround(p.coeff[i].real())));
        std::vector<Rat> a(nterms + 1);
        for (int k = 1; k <= nterms; ++k) {
            Rat s = c[k] * Rat(k);
            for (int m = 1; m < k; ++m) s -= Rat(m) * a[m] * c[k - m];
            a[k] = s / Rat(k);
        }
        for (int k = 1; k <= nterms; ++k)
            acc[k - 1] = plus ? acc[k - 1] + a[k] : acc[k - 1] - a[k];
    };
    std::vector<Rat> acc(nterms);
    for (const Poly& p : numerator) accumulate(acc, p, true);
    for (const Poly& p : denominator) accumulate(acc, p, false);
    return acc;
}

}  // namespace deloc
