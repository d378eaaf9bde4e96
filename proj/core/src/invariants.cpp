#include "deloc/invariants.hpp"

#include <cmath>

#include "deloc/rational.hpp"

namespace deloc {

TorsionSeries assemble_torsion_series(const std::vector<HeatTraceSampler>& samplers,
                                      Complex limit_at_infinity) {
    if (samplers.empty())
        throw SchemaError("torsion series needs at least one sampler");
    const int d = samplers.front().dimension;
    if (d < 0) throw SchemaError("sampler dimension must be nonnegative");
    std::vector<char> seen(static_cast<std::size_t>(d) + 1, 0);
    for (const auto& s : samplers) {
        if (s.dimension != d)
            throw SchemaError("samplers disagree on the ambient dimension");
        if (s.degree < 0 || s.degree > d)
            throw SchemaError("sampler degree " + std::to_string(s.degree) +
                              " outside [0, " + std::to_string(d) + "]");
        if (seen[s.degree])
            throw SchemaError("duplicate sampler for degree " + std::to_string(s.degree));
        if (!s.eval) throw SchemaError("sampler has no evaluation function");
        seen[s.degree] = 1;
    }
    for (int p = 0; p <= d; ++p)
        if (!seen[p])
            throw SchemaError("missing sampler for degree " + std::to_string(p));

    TorsionSeries series;
    series.dimension = d;
    series.limit_at_infinity = limit_at_infinity;
    series.value = [samplers](double t) {
        Complex acc{0.0, 0.0};
        for (const auto& s : samplers) {
            double sign = (s.degree % 2 == 0) ? 1.0 : -1.0;
            acc += sign * static_cast<double>(s.degree) * s.eval(t);
        }
        return acc;
    };
    return series;
}

QuadratureResult torsion_integral_info(const TorsionSeries& series,
                                       const QuadratureOptions& opts) {
    const Complex limit = series.limit_at_infinity;
    const auto& value = series.value;
    QuadratureResult r = integrate_dt_over_t(
        [&value, limit](double t) {
            return value(t) - (1.0 - std::exp(-t)) * limit;
        },
        opts);
    r.value = -r.value;
    return r;
}

Complex torsion_integral(const TorsionSeries& series, double tolerance) {
    QuadratureOptions opts;
    opts.abs_tol = tolerance;
    opts.rel_tol = tolerance;
    return torsion_integral_info(series, opts).value;
}

QuadratureResult eta_integral_info(const EtaSampler& sampler,
                                   const QuadratureOptions& opts) {
    QuadratureResult r = integrate_halfline(sampler.eval, opts);
    const double c = 2.0 / std::sqrt(kPi);
    r.value *= c;
    r.error_estimate *= c;
    r.tail_estimate *= c;
    return r;
}

Complex eta_integral(const EtaSampler& sampler, double tolerance) {
    QuadratureOptions opts;
    opts.abs_tol = tolerance;
    opts.rel_tol = tolerance;
    return eta_integral_info(sampler, opts).value;
}

double gaussian_moment(double length, double rate) {
    if (length <= 0.0) throw std::domain_error("gaussian_moment wants length > 0");
    if (rate < 0.0) throw std::domain_error("gaussian_moment wants rate >= 0");
    return std::exp(-length * rate) / length;
}

double gaussian_moment_quadrature(double length, double rate, double tolerance) {
    if (length <= 0.0) throw std::domain_error("gaussian_moment wants length > 0");
    if (rate < 0.0) throw std::domain_error("gaussian_moment wants rate >= 0");
    QuadratureOptions opts;
    opts.abs_tol = tolerance;
    opts.rel_tol = tolerance;
    auto kernel = [length, rate](double t) {
        return Complex(std::exp(-length * length / (4.0 * t) - t * rate * rate) /
                           std::sqrt(4.0 * kPi * t),
                       0.0);
    };
    return integrate_dt_over_t(kernel, opts).value.real();
}

InvariantValue dual_class_value(const InvariantValue& v) {
    InvariantValue dual = v;
    dual.value = std::conj(v.value);
    return dual;
}

Complex product_torsion(long long chi1, long long chi2, Complex t1, Complex t2,
                        bool g1_trivial, bool g2_trivial) {
    Complex out{0.0, 0.0};
    if (g1_trivial) out += static_cast<double>(chi1) * t2;
    if (g2_trivial) out += static_cast<double>(chi2) * t1;
    return out;
}

Complex product_eta(Complex index_integral1, Complex index_integral2,
                    Complex eta1, Complex eta2, bool g1_trivial, bool g2_trivial) {
    Complex out{0.0, 0.0};
    if (g1_trivial) out += index_integral1 * eta2;
    if (g2_trivial) out += index_integral2 * eta1;
    return out;
}

std::optional<Complex> forced_vanishing(int dimension, VanishingKind kind) {
    switch (kind) {
        case VanishingKind::torsion:
            if (dimension % 2 == 0) return Complex{0.0, 0.0};
            break;
        case VanishingKind::signature_eta:
            if (((dimension % 4) + 4) % 4 == 1) return Complex{0.0, 0.0};
            break;
    }
    return std::nullopt;
}

Mat<Rat> rat_inverse(Mat<Rat> a) {
    const int n = static_cast<int>(a.size());
    Mat<Rat> inv = mat_identity<Rat>(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) throw std::domain_error("singular matrix in rat_inverse");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rat p = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] = a[col][c] / p;
            inv[col][c] = inv[col][c] / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat factor = a[r][col];
            for (int c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace deloc
