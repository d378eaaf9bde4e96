#ifndef DELOC_RATIONAL_HPP
#define DELOC_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"

namespace deloc {

/// Exact rational arithmetic on 64-bit numerator/denominator with 128-bit
/// intermediates. Overflow beyond int64 after normalization throws.
struct Rat {
    long long num = 0;
    long long den = 1;  // always > 0, gcd(|num|, den) == 1

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rat(long long n, long long d) { assign(n, d); }

    void assign(long long n, long long d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num = n;
        den = d;
    }

    static Rat from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        constexpr __int128 lo = -__int128(0x7fffffffffffffffLL) - 1;
        constexpr __int128 hi = __int128(0x7fffffffffffffffLL);
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("rational overflow");
        Rat r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_i128(__int128(a.num) * b.den + __int128(b.num) * a.den,
                         __int128(a.den) * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from_i128(__int128(a.num) * b.den - __int128(b.num) * a.den,
                         __int128(a.den) * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128(__int128(a.num) * b.num, __int128(a.den) * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::domain_error("rational division by zero");
        return from_i128(__int128(a.num) * b.den, __int128(a.den) * b.num);
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
    Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
    Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

/// Element of Q(i): exact complex numbers with rational real/imaginary parts.
struct GaussianRat {
    Rat re;
    Rat im;

    GaussianRat() = default;
    GaussianRat(Rat r) : re(r) {}  // NOLINT: implicit by design
    GaussianRat(Rat r, Rat i) : re(r), im(i) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Complex to_complex() const { return {re.to_double(), im.to_double()}; }

    friend GaussianRat operator+(const GaussianRat& a, const GaussianRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRat operator-(const GaussianRat& a, const GaussianRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRat operator*(const GaussianRat& a, const GaussianRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRat operator-() const { return {-re, -im}; }
    GaussianRat& operator+=(const GaussianRat& b) { *this = *this + b; return *this; }
    friend bool operator==(const GaussianRat& a, const GaussianRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRat& a, const GaussianRat& b) { return !(a == b); }
};

inline GaussianRat conj(const GaussianRat& a) { return {a.re, -a.im}; }

// Minimal dense matrix helpers over an exact scalar (Rat, GaussianRat) or
// Complex. Row-major vectors of rows; fine at the sizes this library handles.
template <class S>
using Mat = std::vector<std::vector<S>>;

template <class S>
Mat<S> mat_identity(int n) {
    Mat<S> m(n, std::vector<S>(n, S{}));
    for (int i = 0; i < n; ++i) m[i][i] = S{1};
    return m;
}

template <class S>
Mat<S> mat_mul(const Mat<S>& a, const Mat<S>& b) {
    const int n = static_cast<int>(a.size());
    const int k = n ? static_cast<int>(a[0].size()) : 0;
    const int m = b.empty() ? 0 : static_cast<int>(b[0].size());
    if (static_cast<int>(b.size()) != k)
        throw InternalError("matrix dimension mismatch in mat_mul");
    Mat<S> c(n, std::vector<S>(m, S{}));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            const S& aij = a[i][j];
            for (int l = 0; l < m; ++l) c[i][l] += aij * b[j][l];
        }
    return c;
}

template <class S>
S mat_trace(const Mat<S>& a) {
    S t{};
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

template <class S>
Mat<S> mat_pow(Mat<S> a, long long k) {
    if (k < 0) throw std::domain_error("mat_pow wants k >= 0");
    Mat<S> r = mat_identity<S>(static_cast<int>(a.size()));
    while (k > 0) {
        if (k & 1) r = mat_mul(r, a);
        a = mat_mul(a, a);
        k >>= 1;
    }
    return r;
}

/// Exact inverse by Gauss-Jordan elimination. Throws on singular input.
Mat<Rat> rat_inverse(Mat<Rat> a);

}  // namespace deloc

#endif
