#include "deloc/nielsen.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "deloc/mapping_torus.hpp"

namespace deloc::nielsen {

namespace {

Mat<Rat> to_rat(const Mat<long long>& m) {
    Mat<Rat> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (long long v : m[i]) out[i].emplace_back(v);
    }
    return out;
}

Mat<GaussianRat> gaussian_adjoint(const Mat<GaussianRat>& m) {
    const std::size_t n = m.size();
    Mat<GaussianRat> out(n, std::vector<GaussianRat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = conj(m[j][i]);
    return out;
}

GaussianRat exact_character(const EquivariantComplex& x, const ExactRep& rep,
                            int f, long long k) {
    if (k % rep.j != 0) return {};
    const long long r = k / rep.j;
    const int n = static_cast<int>(rep.U.size());
    Mat<GaussianRat> sum(n, std::vector<GaussianRat>(n));
    for (int q = 0; q < rep.j; ++q) {
        groups::Automorphism aq = groups::automorphism_power(x.alpha, -q);
        const Mat<GaussianRat>& m = rep.mu[aq.apply(f)];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sum[a][b] += m[a][b];
    }
    Mat<GaussianRat> upow =
        mat_pow(r >= 0 ? rep.U : gaussian_adjoint(rep.U), std::llabs(r));
    return mat_trace(mat_mul(sum, upow));
}

}  // namespace

ValidationReport validate_complex(const EquivariantComplex& x) {
    ValidationReport rep;
    auto fail = [&rep](std::string msg, int degree, int orbit, int element) {
        rep.valid = false;
        rep.message = std::move(msg);
        rep.degree = degree;
        rep.orbit = orbit;
        rep.element = element;
        return rep;
    };

    const int order = x.group.order;
    for (int p = 0; p <= x.top_degree(); ++p) {
        const DegreeData& deg = x.degrees[p];
        const int dim = x.dim(p);
        if (deg.orbit_count < 0)
            return fail("negative orbit count", p, -1, -1);
        if (static_cast<int>(deg.phi_hat.size()) != dim)
            return fail("phi_hat has wrong row count", p, -1, -1);
        for (const auto& row : deg.phi_hat)
            if (static_cast<int>(row.size()) != dim)
                return fail("phi_hat is not square", p, -1, -1);
        const int next_dim = p < x.top_degree() ? x.dim(p + 1) : 0;
        if (p < x.top_degree()) {
            if (static_cast<int>(deg.diff.size()) != dim)
                return fail("differential has wrong row count", p, -1, -1);
            for (const auto& row : deg.diff)
                if (static_cast<int>(row.size()) != next_dim)
                    return fail("differential has wrong column count", p, -1, -1);
        } else if (!deg.diff.empty()) {
            return fail("top degree must not carry a differential", p, -1, -1);
        }
    }

    // Right action of g on basis indices.
    auto act = [&x, order](int p, int b, int g) {
        (void)p;
        int orbit = b / order;
        int f = b % order;
        return orbit * order + x.group.mul(f, g);
    };

    // alpha-twisted equivariance of phi_hat:
    //   phi[(i, f g) -> (l, f' alpha(g))] == phi[(i, f) -> (l, f')].
    for (int p = 0; p <= x.top_degree(); ++p) {
        const auto& phi = x.degrees[p].phi_hat;
        const int dim = x.dim(p);
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int g = 0; g < order; ++g) {
                    int bg = act(p, b, g);
                    int cg = act(p, c, x.alpha.apply(g));
                    if (phi[bg][cg] != phi[b][c])
                        return fail("phi_hat violates twisted equivariance",
                                    p, b / order, g);
                }
    }

    // F-equivariance of the differentials and d o d = 0.
    for (int p = 0; p < x.top_degree(); ++p) {
        const auto& d = x.degrees[p].diff;
        const int dim = x.dim(p);
        const int next_dim = x.dim(p + 1);
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < next_dim; ++c)
                for (int g = 0; g < order; ++g)
                    if (d[act(p, b, g)][act(p + 1, c, g)] != d[b][c])
                        return fail("differential does not commute with the group action",
                                    p, b / order, g);
    }
    for (int p = 0; p + 1 < x.top_degree(); ++p) {
        Mat<Rat> dd = mat_mul(to_rat(x.degrees[p].diff), to_rat(x.degrees[p + 1].diff));
        for (std::size_t i = 0; i < dd.size(); ++i)
            for (std::size_t j = 0; j < dd[i].size(); ++j)
                if (!dd[i][j].is_zero())
                    return fail("d o d != 0", p, static_cast<int>(i) / order, -1);
    }
    for (int p = 0; p < x.top_degree(); ++p) {
        Mat<Rat> lhs = mat_mul(to_rat(x.degrees[p].phi_hat), to_rat(x.degrees[p].diff));
        Mat<Rat> rhs = mat_mul(to_rat(x.degrees[p].diff), to_rat(x.degrees[p + 1].phi_hat));
        for (std::size_t i = 0; i < lhs.size(); ++i)
            for (std::size_t j = 0; j < lhs[i].size(); ++j)
                if (lhs[i][j] != rhs[i][j])
                    return fail("phi_hat does not commute with the differential",
                                p, static_cast<int>(i) / order, -1);
    }
    return rep;
}

Mat<Rat> phi_power(const EquivariantComplex& x, int p, long long k) {
    if (p < 0 || p > x.top_degree())
        throw std::domain_error("degree outside the complex");
    Mat<Rat> phi = to_rat(x.degrees[p].phi_hat);
    if (k >= 0) return mat_pow(phi, k);
    Mat<Rat> inverse;
    try {
        inverse = rat_inverse(phi);
    } catch (const std::domain_error&) {
        throw std::domain_error("phi_hat is singular; negative powers are undefined");
    }
    return mat_pow(inverse, -k);
}

Rat twisted_coefficient_sum(const EquivariantComplex& x, int p, int f, long long k) {
    if (f < 0 || f >= x.group.order)
        throw SchemaError("group element out of range");
    Mat<Rat> pw = phi_power(x, p, k);
    const int order = x.group.order;
    Rat acc;
    for (int b = 0; b < x.dim(p); ++b) {
        int orbit = b / order;
        int g = b % order;
        acc += pw[b][orbit * order + x.group.mul(g, f)];
    }
    return acc / Rat(order);
}

Rat twisted_cell_index(const EquivariantComplex& x, int p, int f, long long k) {
    groups::TwistedClassDecomposition dec = twisted_classes(x.group, x.alpha, k);
    Rat n = twisted_coefficient_sum(x, p, f, k);
    return n * Rat(dec.sizes[dec.class_of[f]]);
}

namespace {

Rat nielsen_index_rat(const EquivariantComplex& x,
                      const groups::TwistedClassDecomposition& dec,
                      long long k, int f) {
    Rat acc;
    for (int p = 0; p <= x.top_degree(); ++p) {
        Rat n = twisted_coefficient_sum(x, p, f, k);
        Rat i = n * Rat(dec.sizes[dec.class_of[f]]);
        if (!i.is_integer())
            throw InternalError("twisted cell count in degree " + std::to_string(p) +
                                " is not an integer; the free-action assumption "
                                "is broken");
        acc = (p % 2 == 0) ? acc + i : acc - i;
    }
    return acc;
}

}  // namespace

long long nielsen_index(const EquivariantComplex& x, long long k, int f) {
    groups::TwistedClassDecomposition dec = twisted_classes(x.group, x.alpha, k);
    Rat value = nielsen_index_rat(x, dec, k, f);
    if (!value.is_integer())
        throw InternalError("Nielsen index is not an integer; the free-action "
                            "assumption is broken");
    for (int member : dec.members[dec.class_of[f]]) {
        if (member == f) continue;
        if (nielsen_index_rat(x, dec, k, member) != value)
            throw InternalError("Nielsen index is not constant on the twisted class");
    }
    return value.num;
}

Complex twisted_lefschetz(const EquivariantComplex& x,
                          const groups::InducedRepData& rep, long long r) {
    if (r < 1) throw std::domain_error("twisted_lefschetz wants r >= 1");
    groups::validate_rep(x.group, x.alpha, rep);
    const long long k = static_cast<long long>(rep.j) * r;
    const int order = x.group.order;
    const int n = static_cast<int>(rep.U.rows());

    Eigen::MatrixXcd upow = Eigen::MatrixXcd::Identity(n, n);
    for (long long i = 0; i < r; ++i) upow = upow * rep.U;

    // Route one: supertrace of the return map on the twisted complex,
    // assembled as an explicit matrix on (orbit tensor C^n) coordinates.
    Complex direct{0.0, 0.0};
    for (int p = 0; p <= x.top_degree(); ++p) {
        Mat<Rat> pw = phi_power(x, p, k);
        const int orbits = x.degrees[p].orbit_count;
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(orbits * n, orbits * n);
        for (int i = 0; i < orbits; ++i) {
            int src = x.basis_index(i, x.group.identity);
            for (int l = 0; l < orbits; ++l)
                for (int f = 0; f < order; ++f) {
                    double coef = pw[src][x.basis_index(l, f)].to_double();
                    if (coef == 0.0) continue;
                    b.block(i * n, l * n, n, n) +=
                        coef * (rep.mu[f] * upow);
                }
        }
        direct += (p % 2 == 0 ? 1.0 : -1.0) * b.trace();
    }

    // Route two: character/index sum over the twisted classes.
    groups::TwistedClassDecomposition dec = twisted_classes(x.group, x.alpha, k);
    Complex by_classes{0.0, 0.0};
    for (int f = 0; f < order; ++f) {
        Complex chi = groups::induced_character(x.group, x.alpha, rep, f, k);
        if (chi == Complex(0.0, 0.0)) continue;
        Rat index;
        for (int p = 0; p <= x.top_degree(); ++p) {
            Rat i = twisted_coefficient_sum(x, p, f, k) *
                    Rat(dec.sizes[dec.class_of[f]]);
            index = (p % 2 == 0) ? index + i : index - i;
        }
        by_classes += chi * index.to_double() /
                      static_cast<double>(dec.sizes[dec.class_of[f]]);
    }
    by_classes /= static_cast<double>(rep.j);

    if (std::abs(direct - by_classes) > 1e-9 * (1.0 + std::abs(direct)))
        throw ConsistencyError(
            "twisted Lefschetz routes disagree: direct " +
            std::to_string(direct.real()) + "+" + std::to_string(direct.imag()) +
            "i vs class sum " + std::to_string(by_classes.real()) + "+" +
            std::to_string(by_classes.imag()) + "i");
    return direct;
}

GaussianRat twisted_lefschetz_exact(const EquivariantComplex& x,
                                    const ExactRep& rep, long long r) {
    if (r < 1) throw std::domain_error("twisted_lefschetz wants r >= 1");
    const long long k = static_cast<long long>(rep.j) * r;
    const int order = x.group.order;

    Mat<GaussianRat> upow = mat_pow(rep.U, r);

    GaussianRat direct;
    for (int p = 0; p <= x.top_degree(); ++p) {
        Mat<Rat> pw = phi_power(x, p, k);
        const int orbits = x.degrees[p].orbit_count;
        GaussianRat tr;
        for (int i = 0; i < orbits; ++i) {
            int src = x.basis_index(i, x.group.identity);
            for (int f = 0; f < order; ++f) {
                Rat coef = pw[src][x.basis_index(i, f)];
                if (coef.is_zero()) continue;
                GaussianRat rep_trace = mat_trace(mat_mul(rep.mu[f], upow));
                tr += GaussianRat(coef) * rep_trace;
            }
        }
        direct = (p % 2 == 0) ? direct + tr : direct - tr;
    }

    groups::TwistedClassDecomposition dec = twisted_classes(x.group, x.alpha, k);
    GaussianRat by_classes;
    for (int f = 0; f < order; ++f) {
        GaussianRat chi = exact_character(x, rep, f, k);
        if (chi.is_zero()) continue;
        Rat index;
        for (int p = 0; p <= x.top_degree(); ++p) {
            Rat i = twisted_coefficient_sum(x, p, f, k) *
                    Rat(dec.sizes[dec.class_of[f]]);
            index = (p % 2 == 0) ? index + i : index - i;
        }
        by_classes += chi * GaussianRat(index / Rat(dec.sizes[dec.class_of[f]]));
    }
    by_classes = by_classes * GaussianRat(Rat(1, rep.j));

    if (direct != by_classes)
        throw ConsistencyError("exact twisted Lefschetz routes disagree");
    return direct;
}

RationalZeta zeta_rho(const EquivariantComplex& x,
                      const groups::InducedRepData& rep) {
    groups::validate_rep(x.group, x.alpha, rep);
    const int order = x.group.order;
    const int n = static_cast<int>(rep.U.rows());

    RationalZeta zeta;
    for (int p = 0; p <= x.top_degree(); ++p) {
        Mat<Rat> pw = phi_power(x, p, rep.j);
        const int orbits = x.degrees[p].orbit_count;
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(orbits * n, orbits * n);
        for (int i = 0; i < orbits; ++i) {
            int src = x.basis_index(i, x.group.identity);
            for (int l = 0; l < orbits; ++l)
                for (int f = 0; f < order; ++f) {
                    double coef = pw[src][x.basis_index(l, f)].to_double();
                    if (coef == 0.0) continue;
                    b.block(i * n, l * n, n, n) +=
                        coef * (rep.mu[f] * rep.U);
                }
        }
        if (b.rows() == 0) continue;
        Poly factor = poly_compose_power(det_one_minus_z(b), rep.j);
        if (p % 2 == 1)
            zeta.numerator.push_back(std::move(factor));
        else
            zeta.denominator.push_back(std::move(factor));
    }

    // Validate the opening series coefficients against the defining sum over
    // twisted classes.
    constexpr int kSeriesTerms = 10;
    std::vector<Complex> series = zeta.log_series(kSeriesTerms);
    std::vector<Complex> expected = defining_log_series(x, rep, kSeriesTerms);
    for (int k = 1; k <= kSeriesTerms; ++k)
        if (std::abs(series[k - 1] - expected[k - 1]) >
            1e-9 * (1.0 + std::abs(expected[k - 1])))
            throw ConsistencyError(
                "zeta series coefficient " + std::to_string(k) +
                " disagrees with the defining class sum");
    return zeta;
}

std::vector<Complex> defining_log_series(const EquivariantComplex& x,
                                         const groups::InducedRepData& rep,
                                         int nterms) {
    const int order = x.group.order;
    std::vector<Complex> out(nterms, Complex{0.0, 0.0});
    for (int k = 1; k <= nterms; ++k) {
        if (k % rep.j != 0) continue;
        groups::TwistedClassDecomposition dec =
            twisted_classes(x.group, x.alpha, k);
        Complex acc{0.0, 0.0};
        for (int f = 0; f < order; ++f) {
            Complex chi = groups::induced_character(x.group, x.alpha, rep, f, k);
            if (chi == Complex(0.0, 0.0)) continue;
            Rat index;
            for (int p = 0; p <= x.top_degree(); ++p) {
                Rat i = twisted_coefficient_sum(x, p, f, k) *
                        Rat(dec.sizes[dec.class_of[f]]);
                index = (p % 2 == 0) ? index + i : index - i;
            }
            acc += chi * index.to_double() /
                   static_cast<double>(dec.sizes[dec.class_of[f]]);
        }
        out[k - 1] = acc / static_cast<double>(k);
    }
    return out;
}

double eq8_pairing(const EquivariantComplex& x, const groups::InducedRepData& rep) {
    RationalZeta zeta = zeta_rho(x, rep);
    int order = zeta.order_at(Complex(1.0, 0.0));
    if (order != 0)
        throw PoleError("pairing undefined: twisted zeta has " +
                            std::string(order > 0 ? "a zero" : "a pole") +
                            " of order " + std::to_string(std::abs(order)) +
                            " at 1 (non-acyclic twisted cohomology)",
                        order);
    return zeta.log_abs_sq_at(Complex(1.0, 0.0));
}

Complex recover_torsion_infinite_cyclic(const EquivariantComplex& x, long long k,
                                        long grid) {
    if (x.group.order != 1)
        throw std::domain_error(
            "per-class torsion recovery is implemented only for a trivial deck "
            "group");
    std::vector<Eigen::MatrixXcd> mats;
    for (int p = 0; p <= x.top_degree(); ++p) {
        const auto& phi = x.degrees[p].phi_hat;
        const int dim = x.dim(p);
        Eigen::MatrixXcd m(dim, dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                m(a, b) = Complex(static_cast<double>(phi[a][b]), 0.0);
        mats.push_back(std::move(m));
    }
    torus::CohomologyAction action = torus::make_action(std::move(mats));
    return torus::fourier_torsion_oracle(action, k, grid);
}

ExactRep regular_rep(const groups::FiniteGroup& g,
                     const groups::Automorphism& alpha) {
    const int n = g.order;
    ExactRep rep;
    rep.j = 1;
    rep.mu.resize(n);
    for (int f = 0; f < n; ++f) {
        Mat<GaussianRat> m(n, std::vector<GaussianRat>(n));
        for (int y = 0; y < n; ++y) m[g.mul(y, g.inv(f))][y] = GaussianRat(Rat(1));
        rep.mu[f] = std::move(m);
    }
    rep.U.assign(n, std::vector<GaussianRat>(n));
    for (int y = 0; y < n; ++y) rep.U[alpha.apply(y)][y] = GaussianRat(Rat(1));
    return rep;
}

groups::InducedRepData to_complex_rep(const ExactRep& rep) {
    groups::InducedRepData out;
    out.j = rep.j;
    const int n = static_cast<int>(rep.U.size());
    out.U.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.U(i, j) = rep.U[i][j].to_complex();
    out.mu.reserve(rep.mu.size());
    for (const auto& m : rep.mu) {
        Eigen::MatrixXcd em(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) em(i, j) = m[i][j].to_complex();
        out.mu.push_back(std::move(em));
    }
    return out;
}

}  // namespace deloc::nielsen
