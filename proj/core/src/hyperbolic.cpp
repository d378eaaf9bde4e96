#include "deloc/hyperbolic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace deloc::hyperbolic {

namespace {

double envelope_sq(double length, double theta) {
    // |mu - mu^{-1}|^2 for mu = e^{(l + i theta)/2}.
    return std::exp(length) + std::exp(-length) - 2.0 * std::cos(theta);
}

struct LinearFit {
    Eigen::VectorXd coeff;
    double sse = 0.0;
    double max_abs_residual = 0.0;
};

LinearFit least_squares(const Eigen::MatrixXd& basis, const Eigen::VectorXd& y) {
    LinearFit fit;
    fit.coeff = basis.colPivHouseholderQr().solve(y);
    Eigen::VectorXd resid = y - basis * fit.coeff;
    fit.sse = resid.squaredNorm();
    fit.max_abs_residual = resid.cwiseAbs().maxCoeff();
    return fit;
}

}  // namespace

GeodesicClass make_geodesic_class(int n, int multiplicity, double length,
                                  std::vector<double> angles) {
    if (n < 1) throw SchemaError("geodesic class needs n >= 1");
    if (multiplicity < 1) throw SchemaError("geodesic multiplicity must be >= 1");
    if (!(length > 0.0)) throw SchemaError("geodesic length must be positive");
    if (static_cast<int>(angles.size()) != n)
        throw SchemaError("expected " + std::to_string(n) + " holonomy angles, got " +
                          std::to_string(angles.size()));
    for (double& a : angles) a = wrap_angle(a);
    GeodesicClass g;
    g.n = n;
    g.multiplicity = multiplicity;
    g.length = length;
    g.angles = std::move(angles);
    if (!(holonomy_determinant(g) > 0.0))
        throw InternalError("holonomy determinant failed to be positive");
    return g;
}

double sigma_trace(const std::vector<double>& angles, int j) {
    const int n = static_cast<int>(angles.size());
    if (j < 0 || j > 2 * n)
        throw std::domain_error("sigma_trace degree outside [0, 2n]");
    // Coefficients of prod_m (1 + 2 cos(theta_m) x + x^2); entry j is the
    // j-th elementary symmetric polynomial of the rotation eigenvalues.
    std::vector<double> coeff{1.0};
    for (int m = 0; m < n; ++m) {
        const double c = 2.0 * std::cos(angles[m]);
        std::vector<double> next(coeff.size() + 2, 0.0);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i];
            next[i + 1] += c * coeff[i];
            next[i + 2] += coeff[i];
        }
        coeff = std::move(next);
    }
    return coeff[j];
}

double holonomy_determinant(const GeodesicClass& g) {
    const double e = std::exp(-g.length);
    double det = 1.0;
    for (double th : g.angles) det *= 1.0 - 2.0 * e * std::cos(th) + e * e;
    return det;
}

double selberg_kernel(const GeodesicClass& g, int j, double t) {
    if (j < 0 || j > 2 * g.n) return 0.0;
    const double l = g.length;
    const double c = std::abs(static_cast<double>(g.n - j));
    const double front = sigma_trace(g.angles, j) /
                         (g.multiplicity * holonomy_determinant(g));
    return front * l / std::sqrt(4.0 * kPi * t) *
           std::exp(-l * l / (4.0 * t) - t * c * c - g.n * l);
}

HeatTraceSampler selberg_heat_trace(const GeodesicClass& g, int p) {
    if (p < 0 || p > 2 * g.n + 1)
        throw std::domain_error("form degree outside [0, 2n+1]");
    HeatTraceSampler s;
    s.degree = p;
    s.dimension = 2 * g.n + 1;
    GeodesicClass copy = g;
    s.eval = [copy, p](double t) {
        return Complex(selberg_kernel(copy, p, t) + selberg_kernel(copy, p - 1, t),
                       0.0);
    };
    return s;
}

double torsion_closed(const GeodesicClass& g) {
    const double l = g.length;
    double sum = 0.0;
    for (int j = 0; j <= 2 * g.n; ++j) {
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(-l * std::abs(g.n - j)) * sigma_trace(g.angles, j);
    }
    return std::exp(-g.n * l) / (g.multiplicity * holonomy_determinant(g)) * sum;
}

double eta_closed(const GeodesicClass& g) {
    if (g.n % 2 == 0) return 0.0;
    // (2i)^{n+1} is real for odd n: 2^{n+1} * (-1)^{(n+1)/2}.
    const double front = std::pow(2.0, g.n + 1) *
                         (((g.n + 1) / 2) % 2 == 0 ? 1.0 : -1.0);
    double ratio = 1.0;
    for (double th : g.angles) ratio *= std::sin(th) / envelope_sq(g.length, th);
    return front / (2.0 * kPi * g.multiplicity) * ratio;
}

EtaSampler millson_eta_sampler(const GeodesicClass& g) {
    if (g.n % 2 == 0)
        throw std::domain_error(
            "no odd heat kernel is defined for even n (the invariant vanishes)");
    // (2i)^n * i is real for odd n: 2^n * (-1)^{(n+1)/2}.
    const double sign = ((g.n + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    double ratio = 1.0;
    for (double th : g.angles) ratio *= std::sin(th) / envelope_sq(g.length, th);
    const double l = g.length;
    const double front = sign * std::pow(2.0, g.n) * 2.0 * kPi / g.multiplicity *
                         l * l * ratio / std::pow(4.0 * kPi, 1.5);
    EtaSampler s;
    s.eval = [front, l](double t) {
        if (front == 0.0) return Complex(0.0, 0.0);
        return Complex(front * std::exp(-l * l / (4.0 * t * t)) / (t * t * t), 0.0);
    };
    return s;
}

GeodesicClass power_class(const GeodesicClass& g, int r) {
    if (r < 1) throw std::domain_error("power_class wants r >= 1");
    std::vector<double> angles = g.angles;
    for (double& a : angles) a = wrap_angle(a * r);
    return make_geodesic_class(g.n, g.multiplicity * r, g.length * r,
                               std::move(angles));
}

double hyperbolic_betti(const GeodesicClass& g, int p) {
    if (p < 0 || p > 2 * g.n + 1)
        throw std::domain_error("form degree outside [0, 2n+1]");
    return 0.0;
}

BettiDecayReport betti_decay_report(const GeodesicClass& g, int p, double t_max) {
    HeatTraceSampler s = selberg_heat_trace(g, p);
    BettiDecayReport rep;
    for (double t = 1.0; t <= t_max * 1.0000001; t *= 2.0)
        rep.samples.emplace_back(t, s.eval(t).real());

    int tail = std::min<int>(5, static_cast<int>(rep.samples.size()));
    if (tail >= 2) {
        Eigen::MatrixXd basis(tail, 2);
        Eigen::VectorXd y(tail);
        int base = static_cast<int>(rep.samples.size()) - tail;
        for (int i = 0; i < tail; ++i) {
            basis(i, 0) = 1.0;
            basis(i, 1) = rep.samples[base + i].first;
            y(i) = std::log(std::max(std::abs(rep.samples[base + i].second),
                                     1e-300));
        }
        rep.fitted_rate = -least_squares(basis, y).coeff(1);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rep.samples.size(); ++i)
        monotone = monotone &&
                   std::abs(rep.samples[i].second) <= std::abs(rep.samples[i - 1].second);
    rep.decayed = monotone && std::abs(rep.samples.back().second) <
                                  std::abs(rep.samples.front().second);
    return rep;
}

N1Identity n1_identity(const GeodesicClass& g) {
    if (g.n != 1) throw std::domain_error("n1_identity wants n == 1");
    N1Identity out;
    const Complex i_unit{0.0, 1.0};
    out.lhs = Complex(torsion_closed(g), 0.0) - i_unit * kPi * eta_closed(g);
    Complex mu_sq = std::exp(Complex(g.length, g.angles[0]));
    out.rhs = 2.0 / (static_cast<double>(g.multiplicity) * (Complex(1.0, 0.0) - mu_sq));
    return out;
}

namespace {

// Full closed-form log-magnitude model for n = 1 power data, up to the
// affine-in-(ln r, r) part handled by the linear solve:
//   offset(r) = ln|2 cos(r theta) - 2 e^{-l r}| - ln det(I - e^{-l r} m^r).
double n1_model_offset(double r, double theta, double length) {
    const double e = std::exp(-length * r);
    const double osc = 2.0 * std::cos(r * theta) - 2.0 * e;
    const double det = 1.0 - 2.0 * e * std::cos(r * theta) + e * e;
    if (std::abs(osc) < 1e-14 || det <= 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return std::log(std::abs(osc)) - std::log(det);
}

struct ModelFit {
    double sse = std::numeric_limits<double>::infinity();
    double length = 0.0;
};

// Linear solve of y - offset = c0 + c1 ln r - l r, with the offset's decay
// parameter updated from the previous iterate.
ModelFit n1_model_fit(const std::vector<double>& rs, const std::vector<double>& ys,
                      double theta, double length_seed) {
    const int m = static_cast<int>(rs.size());
    ModelFit fit;
    double length = length_seed;
    for (int iter = 0; iter < 3; ++iter) {
        Eigen::MatrixXd basis(m, 3);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            double off = n1_model_offset(rs[i], theta, length);
            if (!std::isfinite(off)) return {};
            basis(i, 0) = 1.0;
            basis(i, 1) = std::log(rs[i]);
            basis(i, 2) = -rs[i];
            rhs(i) = ys[i] - off;
        }
        LinearFit lf = least_squares(basis, rhs);
        double next = lf.coeff(2);
        if (!(next > 0.0) || next > 50.0) return {};
        fit.sse = lf.sse;
        fit.length = next;
        if (std::abs(next - length) < 1e-12) break;
        length = next;
    }
    return fit;
}

}  // namespace

LengthFit recover_length(const std::vector<std::pair<int, Complex>>& values, int n) {
    if (n < 1) throw SchemaError("recover_length wants n >= 1");
    std::vector<double> rs;
    std::vector<double> ys;
    bool monotone = true;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (const auto& [r, v] : values) {
        double mag = std::abs(v);
        if (r < 1 || mag < 1e-290) continue;  // zeros are dropped
        rs.push_back(static_cast<double>(r));
        ys.push_back(std::log(mag));
        monotone = monotone && mag <= prev_mag;
        prev_mag = mag;
    }
    const int m = static_cast<int>(rs.size());
    if (m < 5)
        throw SchemaError("insufficient data: need at least 5 nonzero torsion values, got " +
                          std::to_string(m));

    LengthFit out;
    out.points_used = m;

    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(ys.data(), m);

    // Pure exponential data: exact two-parameter fit.
    Eigen::MatrixXd basis2(m, 2);
    for (int i = 0; i < m; ++i) {
        basis2(i, 0) = 1.0;
        basis2(i, 1) = rs[i];
    }
    LinearFit fit2 = least_squares(basis2, y);
    if (fit2.max_abs_residual < 1e-9) {
        out.length = -fit2.coeff(1) / n;
        out.residual_rms = std::sqrt(fit2.sse / m);
        out.note = "pure exponential decay";
        return out;
    }

    // Slope with a ln(r) nuisance column (power-of-r prefactors).
    Eigen::MatrixXd basis3(m, 3);
    for (int i = 0; i < m; ++i) {
        basis3(i, 0) = 1.0;
        basis3(i, 1) = rs[i];
        basis3(i, 2) = std::log(rs[i]);
    }
    LinearFit fit3 = least_squares(basis3, y);
    out.length = -fit3.coeff(1) / n;
    out.residual_rms = std::sqrt(fit3.sse / m);
    out.note = "log-linear fit with ln(r) nuisance";

    // n = 1: refine against the full closed-form magnitude model; the unknown
    // rotation angle is located by grid search plus golden-section polish.
    if (n == 1 && fit3.sse > 1e-16) {
        const double seed = std::max(out.length, 1e-3);
        ModelFit best;
        double best_theta = 0.0;
        const int grid = 4096;
        for (int i = 0; i <= grid; ++i) {
            double theta = kPi * i / grid;
            ModelFit f = n1_model_fit(rs, ys, theta, seed);
            if (f.sse < best.sse) {
                best = f;
                best_theta = theta;
            }
        }
        if (std::isfinite(best.sse)) {
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = best_theta - kPi / grid;
            double b = best_theta + kPi / grid;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            ModelFit f1 = n1_model_fit(rs, ys, x1, best.length);
            ModelFit f2 = n1_model_fit(rs, ys, x2, best.length);
            for (int iter = 0; iter < 60; ++iter) {
                if (f1.sse < f2.sse) {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = n1_model_fit(rs, ys, x1, best.length);
                } else {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = n1_model_fit(rs, ys, x2, best.length);
                }
            }
            ModelFit refined = f1.sse < f2.sse ? f1 : f2;
            if (refined.sse < best.sse) best = refined;
            if (best.sse < 0.25 * fit3.sse) {
                out.length = best.length;
                out.residual_rms = std::sqrt(best.sse / m);
                out.note = "closed-form model fit (holonomy oscillation removed)";
            }
        }
    }

    if (!monotone && out.residual_rms > 0.1) {
        out.reliable = false;
        out.note += "; non-monotone magnitudes exceed the residual threshold";
    }
    return out;
}

}  // namespace deloc::hyperbolic
