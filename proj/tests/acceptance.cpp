// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion owns its tolerances; nothing here is
// calibrated at run time.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "deloc/finite_cover.hpp"
#include "deloc/groups.hpp"
#include "deloc/heat_trace.hpp"
#include "deloc/hyperbolic.hpp"
#include "deloc/invariants.hpp"
#include "deloc/mapping_torus.hpp"
#include "deloc/nielsen.hpp"

using namespace deloc;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(3) << std::scientific << v;
    return ss.str();
}

// ---------------------------------------------------------------- helpers

hyperbolic::GeodesicClass random_geodesic(std::mt19937& rng, int n,
                                          double angle_lo, double angle_hi) {
    std::uniform_real_distribution<double> len(0.5, 3.0);
    std::uniform_real_distribution<double> mag(angle_lo, angle_hi);
    std::uniform_int_distribution<int> mult(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<double> angles;
    for (int i = 0; i < n; ++i)
        angles.push_back((sign(rng) ? 1.0 : -1.0) * mag(rng));
    return hyperbolic::make_geodesic_class(n, mult(rng), len(rng), angles);
}

TorsionSeries geodesic_series(const hyperbolic::GeodesicClass& g) {
    std::vector<HeatTraceSampler> samplers;
    for (int p = 0; p <= 2 * g.n + 1; ++p)
        samplers.push_back(hyperbolic::selberg_heat_trace(g, p));
    return assemble_torsion_series(samplers, Complex{0.0, 0.0});
}

double bessel_i(int m, double x) {
    double term = std::pow(x / 2.0, m);
    for (int s = 1; s <= m; ++s) term /= s;
    double sum = term;
    for (int s = 1; s < 500; ++s) {
        term *= (x / 2.0) * (x / 2.0) / (s * (s + m));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

heat::LaurentComplex circle_complex() {
    heat::LaurentMatrix d;
    d.rows = 1;
    d.cols = 1;
    d.entries = {{{{1}, Complex(1.0, 0.0)}, {{0}, Complex(-1.0, 0.0)}}};
    return heat::make_laurent_complex(1, {1, 1}, {d});
}

long long int_lefschetz(const std::vector<Mat<long long>>& mats, int k) {
    long long acc = 0;
    int p = 0;
    for (const auto& m : mats) {
        Mat<long long> pw = mat_identity<long long>(static_cast<int>(m.size()));
        for (int i = 0; i < k; ++i) pw = mat_mul(pw, m);
        long long tr = 0;
        for (std::size_t d = 0; d < pw.size(); ++d) tr += pw[d][d];
        acc += (p % 2 == 0 ? 1 : -1) * tr;
        ++p;
    }
    return acc;
}

torus::CohomologyAction to_action(const std::vector<Mat<long long>>& mats) {
    std::vector<Eigen::MatrixXcd> cm;
    for (const auto& m : mats) {
        Eigen::MatrixXcd e(m.size(), m.empty() ? 0 : m[0].size());
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < m[r].size(); ++c)
                e(r, c) = Complex(static_cast<double>(m[r][c]), 0.0);
        cm.push_back(std::move(e));
    }
    return torus::make_action(std::move(cm));
}

Mat<long long> extend_equivariant(const groups::FiniteGroup& f,
                                  const groups::Automorphism& alpha,
                                  const Mat<long long>& seed, int orbits_out) {
    const int n = f.order;
    const int rows = static_cast<int>(seed.size());
    Mat<long long> full(rows * n, std::vector<long long>(orbits_out * n, 0));
    for (int i = 0; i < rows; ++i)
        for (int g = 0; g < n; ++g)
            for (int l = 0; l < orbits_out; ++l)
                for (int h = 0; h < n; ++h)
                    full[i * n + g][l * n + h] =
                        seed[i][l * n + f.mul(h, f.inv(alpha.apply(g)))];
    return full;
}

nielsen::EquivariantComplex random_equivariant(const groups::FiniteGroup& f,
                                               const groups::Automorphism& alpha,
                                               std::mt19937& rng) {
    std::uniform_int_distribution<int> entry(-2, 2);
    std::uniform_int_distribution<int> orbit_count(1, 2);
    nielsen::EquivariantComplex x;
    x.group = f;
    x.alpha = alpha;
    for (int p = 0; p < 3; ++p) {
        nielsen::DegreeData deg;
        deg.orbit_count = orbit_count(rng);
        Mat<long long> seed(deg.orbit_count,
                            std::vector<long long>(deg.orbit_count * f.order, 0));
        for (auto& row : seed)
            for (auto& v : row) v = entry(rng);
        deg.phi_hat = extend_equivariant(f, alpha, seed, deg.orbit_count);
        x.degrees.push_back(std::move(deg));
    }
    for (int p = 0; p + 1 < 3; ++p)
        x.degrees[p].diff.assign(x.dim(p), std::vector<long long>(x.dim(p + 1), 0));
    return x;
}

// ------------------------------------------------------------- criteria

std::string criterion_hyperbolic_torsion() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> dim(1, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        hyperbolic::GeodesicClass g =
            random_geodesic(rng, dim(rng), 1e-3, kPi - 1e-3);
        double closed = hyperbolic::torsion_closed(g);
        Complex quad = torsion_integral(geodesic_series(g), 1e-10);
        double dev = std::abs(quad - Complex{closed, 0.0}) / (1.0 + std::abs(closed));
        worst = std::max(worst, dev);
        require(dev <= 1e-8, "scaled deviation " + fmt(dev) + " on trial " +
                                 std::to_string(trial));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count();
    require(secs < 30.0, "runtime " + std::to_string(secs) + "s exceeds 30s");
    return "20 classes, worst scaled deviation " + fmt(worst) + ", " +
           fmt(secs) + "s";
}

std::string criterion_hyperbolic_eta() {
    std::mt19937 rng(202);
    double worst = 0.0;
    for (int n : {1, 3}) {
        for (int trial = 0; trial < 6; ++trial) {
            hyperbolic::GeodesicClass g = random_geodesic(rng, n, 0.6, 2.0);
            double closed = hyperbolic::eta_closed(g);
            QuadratureOptions opts;
            opts.rel_tol = 1e-11;
            opts.abs_tol = std::max(1e-14, 1e-11 * std::abs(closed));
            Complex quad =
                eta_integral_info(hyperbolic::millson_eta_sampler(g), opts).value;
            double rel = std::abs(quad - Complex{closed, 0.0}) / std::abs(closed);
            worst = std::max(worst, rel);
            require(rel <= 1e-8, "n=" + std::to_string(n) + " relative deviation " +
                                     fmt(rel));
        }
    }
    for (int trial = 0; trial < 4; ++trial) {
        hyperbolic::GeodesicClass g = random_geodesic(rng, 2, 0.3, 2.8);
        require(hyperbolic::eta_closed(g) == 0.0,
                "even-n eta must vanish exactly");
    }
    return "n in {1,3} worst relative deviation " + fmt(worst) +
           "; even n exactly zero";
}

std::string criterion_n1_identity() {
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> len(0.3, 3.0);
    std::uniform_real_distribution<double> ang(-kPi + 1e-12, kPi);
    std::uniform_int_distribution<int> mult(1, 3);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        hyperbolic::GeodesicClass g =
            hyperbolic::make_geodesic_class(1, mult(rng), len(rng), {ang(rng)});
        hyperbolic::N1Identity id = hyperbolic::n1_identity(g);
        double dev = std::abs(id.lhs - id.rhs);
        worst = std::max(worst, dev);
        require(dev <= 1e-12, "identity deviation " + fmt(dev));
    }
    return "100 samples, worst deviation " + fmt(worst);
}

std::string criterion_length_recovery() {
    hyperbolic::GeodesicClass g =
        hyperbolic::make_geodesic_class(1, 1, 0.7, {1.0});
    std::vector<std::pair<int, Complex>> values;
    for (int r = 4; r <= 30; ++r)
        values.emplace_back(
            r, Complex{hyperbolic::torsion_closed(hyperbolic::power_class(g, r)),
                       0.0});
    hyperbolic::LengthFit fit = hyperbolic::recover_length(values, 1);
    double err = std::abs(fit.length - 0.7);
    require(err <= 1e-3, "length error " + fmt(err));
    return "recovered length " + std::to_string(fit.length) + " (error " +
           fmt(err) + ")";
}

std::string criterion_mapping_torus() {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> small(-1, 1);

    // Ten integer actions: five with spectra off the unit circle (products of
    // hyperbolic two-blocks and expanding triangles), five containing roots of
    // unity.
    std::vector<std::vector<Mat<long long>>> actions;
    for (int i = 0; i < 5; ++i) {
        Mat<long long> anosov{{2 + i % 2, 1}, {1, 1}};
        Mat<long long> tri{{2, small(rng)}, {0, 3}};
        actions.push_back({{}, anosov, {}, tri});
    }
    for (int i = 0; i < 5; ++i) {
        Mat<long long> circle;
        if (i % 3 == 0)
            circle = {{0, -1}, {1, 0}};  // rotation, eigenvalues +-i
        else if (i % 3 == 1)
            circle = {{1}};
        else
            circle = {{0, 1}, {1, 0}};  // swap, eigenvalues +-1
        Mat<long long> anosov{{2, 1}, {1, 1}};
        actions.push_back({circle, anosov});
    }

    double worst_smooth = 0.0, worst_singular = 0.0;
    for (std::size_t a = 0; a < actions.size(); ++a) {
        torus::CohomologyAction action = to_action(actions[a]);
        bool singular = torus::has_unit_circle_spectrum(action);
        double tol = singular ? 1e-4 : 1e-8;
        for (long long k = -8; k <= 8; ++k) {
            if (k == 0) continue;
            Complex direct = torus::torsion_k(action, k);
            Complex oracle = torus::fourier_torsion_oracle(action, k, 256);
            double dev = std::abs(direct - oracle);
            (singular ? worst_singular : worst_smooth) =
                std::max(singular ? worst_singular : worst_smooth, dev);
            require(dev <= tol, "action " + std::to_string(a) + " k=" +
                                    std::to_string(k) + " deviation " + fmt(dev));
        }
        RationalZeta zeta = torus::zeta_rational(action);
        require(zeta.integral_coefficients(), "integer action lost integrality");
        std::vector<Rat> series = zeta.log_series_exact(12);
        for (int k = 1; k <= 12; ++k) {
            Rat expected = Rat(int_lefschetz(actions[a], k)) / Rat(k);
            require(series[k - 1] == expected,
                    "zeta series term " + std::to_string(k) + " of action " +
                        std::to_string(a) + " is not exactly L/k");
        }
    }
    return "off-circle worst " + fmt(worst_smooth) + ", on-circle worst " +
           fmt(worst_singular) + "; 12 series terms exact on 10 actions";
}

std::string criterion_nielsen() {
    std::mt19937 rng(505);

    // Exact dual-route agreement over three deck groups, twisted where the
    // group allows it.
    struct Case {
        groups::FiniteGroup f;
        groups::Automorphism alpha;
    };
    std::vector<Case> cases;
    {
        groups::FiniteGroup z2 = groups::cyclic_group(2);
        cases.push_back({z2, groups::Automorphism::identity(2)});
        groups::FiniteGroup z3 = groups::cyclic_group(3);
        std::vector<int> inv(3);
        for (int x = 0; x < 3; ++x) inv[x] = z3.inv(x);
        cases.push_back({z3, groups::make_automorphism(z3, inv)});
        groups::FiniteGroup s3 = groups::symmetric_group(3);
        std::vector<int> conj(s3.order);
        for (int x = 0; x < s3.order; ++x)
            conj[x] = s3.mul(s3.mul(1, x), s3.inv(1));
        cases.push_back({s3, groups::make_automorphism(s3, conj)});
    }
    for (const Case& c : cases) {
        for (int trial = 0; trial < 2; ++trial) {
            nielsen::EquivariantComplex x = random_equivariant(c.f, c.alpha, rng);
            require(nielsen::validate_complex(x).valid, "random complex invalid");
            nielsen::ExactRep rep = nielsen::regular_rep(c.f, c.alpha);
            for (long long r = 1; r <= 6; ++r) {
                GaussianRat v = nielsen::twisted_lefschetz_exact(x, rep, r);
                require(v.im.is_zero() && v.re.is_integer(),
                        "regular-representation trace must be an integer");
            }
        }
    }

    // Trivial deck group against the fiber module, bit for bit.
    std::vector<Mat<long long>> phis{{{1}}, {}, {{-1}}};
    nielsen::EquivariantComplex triv;
    triv.group = groups::cyclic_group(1);
    triv.alpha = groups::Automorphism::identity(1);
    for (const auto& m : phis) {
        nielsen::DegreeData deg;
        deg.orbit_count = static_cast<int>(m.size());
        deg.phi_hat = m;
        triv.degrees.push_back(deg);
    }
    for (int p = 0; p + 1 < 3; ++p)
        triv.degrees[p].diff.assign(triv.dim(p),
                                    std::vector<long long>(triv.dim(p + 1), 0));
    torus::CohomologyAction action = to_action(phis);
    groups::InducedRepData rep1;
    rep1.j = 1;
    rep1.mu = {Eigen::MatrixXcd::Identity(1, 1)};
    rep1.U = Eigen::MatrixXcd::Identity(1, 1);
    for (long long r = 1; r <= 6; ++r) {
        Complex mine = nielsen::twisted_lefschetz(triv, rep1, r);
        Complex theirs = torus::lefschetz_number(action, r);
        require(mine.real() == theirs.real() && mine.imag() == theirs.imag(),
                "trivial-cover Lefschetz is not bit-for-bit");
    }
    RationalZeta za = nielsen::zeta_rho(triv, rep1);
    RationalZeta zb = torus::zeta_rational(action);
    require(za.numerator.size() == zb.numerator.size() &&
                za.denominator.size() == zb.denominator.size(),
            "zeta factor layout differs");
    for (std::size_t i = 0; i < za.denominator.size(); ++i)
        for (std::size_t c = 0; c < za.denominator[i].coeff.size(); ++c)
            require(za.denominator[i].coeff[c] == zb.denominator[i].coeff[c],
                    "zeta coefficients are not bit-for-bit");

    // Pairing against the winding-class Fourier series, trivial deck group.
    std::vector<Mat<long long>> fiber{{}, {{2, 1}, {1, 1}}, {}};
    nielsen::EquivariantComplex anosov;
    anosov.group = groups::cyclic_group(1);
    anosov.alpha = groups::Automorphism::identity(1);
    for (const auto& m : fiber) {
        nielsen::DegreeData deg;
        deg.orbit_count = static_cast<int>(m.size());
        deg.phi_hat = m;
        anosov.degrees.push_back(deg);
    }
    for (int p = 0; p + 1 < 3; ++p)
        anosov.degrees[p].diff.assign(anosov.dim(p),
                                      std::vector<long long>(anosov.dim(p + 1), 0));
    torus::CohomologyAction fiber_action = to_action(fiber);
    double worst = 0.0;
    for (double theta : {0.4, 1.1, 2.7}) {
        groups::InducedRepData rep = rep1;
        rep.U(0, 0) = std::exp(Complex(0.0, theta));
        double pairing = nielsen::eq8_pairing(anosov, rep);
        Complex series{0.0, 0.0};
        for (long long k = 1; k <= 45; ++k) {
            series += std::exp(Complex(0.0, theta * k)) *
                      torus::torsion_k(fiber_action, k);
            series += std::exp(Complex(0.0, -theta * k)) *
                      torus::torsion_k(fiber_action, -k);
        }
        double mean = 0.0;
        for (int p = 0; p <= fiber_action.top_degree(); ++p)
            for (Complex lambda : torus::action_spectrum(fiber_action, p))
                mean += (p % 2 == 0 ? 1.0 : -1.0) * (-2.0) *
                        std::max(std::log(std::abs(lambda)), 0.0);
        double dev = std::abs(Complex{pairing, 0.0} - (series + mean));
        worst = std::max(worst, dev);
        require(dev <= 1e-8, "pairing vs series deviation " + fmt(dev));
    }
    return "dual routes exact on 3 deck groups; trivial cover bit-for-bit; "
           "pairing-series deviation " +
           fmt(worst);
}

std::string criterion_bessel() {
    heat::LaurentComplex x = circle_complex();
    double worst = 0.0;
    for (int m = 0; m <= 5; ++m)
        for (double t : {1.0, 2.5, 7.0, 20.0}) {
            Complex got = heat::delocalized_heat_trace(x, 0, {m}, t, 64).value;
            double expected = std::exp(-2.0 * t) * bessel_i(m, 2.0 * t);
            double dev = std::abs(got - Complex{expected, 0.0});
            worst = std::max(worst, dev);
            require(dev <= 1e-10, "m=" + std::to_string(m) +
                                      " t=" + std::to_string(t) +
                                      " deviation " + fmt(dev));
        }
    for (long long m : {1LL, 3LL}) {
        heat::DecayReport rep = heat::delocalized_betti(x, 0, {m}, 512.0, 64);
        require(!rep.anomaly, "ladder anomaly for m=" + std::to_string(m));
        double limit = std::abs(rep.extrapolated_limit);
        require(limit < 1e-3,
                "extrapolated limit " + fmt(limit) + " for m=" + std::to_string(m));
    }
    return "Bessel worst deviation " + fmt(worst) +
           "; vanishing limits below 1e-3";
}

std::string criterion_finite_cover() {
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<groups::FiniteGroup> family{
        groups::cyclic_group(2),    groups::cyclic_group(3),
        groups::cyclic_group(4),
        groups::direct_product(groups::cyclic_group(2), groups::cyclic_group(2)),
        groups::cyclic_group(6),    groups::symmetric_group(3),
        groups::cyclic_group(8),    groups::dihedral_group(4),
        groups::quaternion_group(), groups::cyclic_group(12),
        groups::dihedral_group(6),  groups::symmetric_group(4),
        groups::dihedral_group(12), groups::cyclic_group(24),
        groups::cyclic_group(48),   groups::dihedral_group(24)};
    double worst = 0.0;
    for (const auto& g : family) {
        groups::CharacterTable t = groups::character_table(g);
        const Eigen::Index c = t.rows.cols();
        cover::ClassValueVector v;
        v.table = t;
        v.kind = InvariantKind::torsion;
        for (Eigen::Index i = 0; i < c; ++i)
            v.values.push_back(Complex{u(rng), u(rng)});
        cover::ClassValueVector back = cover::delocalized_from_twisted(
            t, cover::twisted_from_delocalized(v), v.kind);
        for (Eigen::Index i = 0; i < c; ++i) {
            double dev = std::abs(back.values[i] - v.values[i]);
            worst = std::max(worst, dev);
            require(dev <= 1e-10, "round trip deviation " + fmt(dev) +
                                      " on group of order " +
                                      std::to_string(g.order));
        }
    }

    // Order-two cover: class fractions (1/2, 1/2) map to counts (1, 0).
    groups::CharacterTable z2;
    z2.class_sizes = {1, 1};
    z2.representatives = {0, 1};
    z2.rows.resize(2, 2);
    z2.rows << 1, 1, 1, -1;
    cover::ClassValueVector b0;
    b0.table = z2;
    b0.kind = InvariantKind::betti;
    b0.values = {Complex{0.5, 0.0}, Complex{0.5, 0.0}};
    std::vector<Complex> twisted = cover::twisted_from_delocalized(b0);
    require(twisted[0] == Complex{1.0, 0.0} && twisted[1] == Complex{0.0, 0.0},
            "order-two cover example is not exact");
    return "16 groups (orders 2..48), worst round-trip deviation " + fmt(worst);
}

std::string criterion_elementary() {
    for (int d : {2, 4, 6, 8})
        require(forced_vanishing(d, VanishingKind::torsion) == Complex{0.0, 0.0},
                "even-dimension torsion must be forced to zero");
    for (int d : {3, 5, 7})
        require(!forced_vanishing(d, VanishingKind::torsion).has_value(),
                "odd-dimension torsion must not be forced");
    for (int d : {5, 9, 13})
        require(forced_vanishing(d, VanishingKind::signature_eta) ==
                    Complex{0.0, 0.0},
                "d = 1 mod 4 signature eta must be forced to zero");
    for (int d : {3, 7, 11})
        require(!forced_vanishing(d, VanishingKind::signature_eta).has_value(),
                "d = 3 mod 4 signature eta must not be forced");

    require(product_torsion(2, 3, {1, 0}, {1, 0}, false, false) == Complex{0, 0},
            "both classes nontrivial must kill the product");
    require(product_torsion(2, 0, {0, 0}, {0.5, 0}, true, false) ==
                Complex{1.0, 0.0},
            "one-sided product value");
    require(product_torsion(2, 0, {3, 0}, {5, 0}, true, true) == Complex{10.0, 0.0},
            "two-sided product value");
    require(product_eta({2, 0}, {7, 0}, {3, 0}, {0.5, 0}, true, false) ==
                Complex{1.0, 0.0},
            "eta product value");

    InvariantValue v{InvariantKind::torsion, "c", {1.25, -0.5}};
    require(dual_class_value(v).value == Complex{1.25, 0.5},
            "inverse-class value must conjugate");
    require(dual_class_value(dual_class_value(v)).value == v.value,
            "conjugate duality must be an involution");

    // The conjugation symmetry where it is literally computable: opposite
    // classes of a free abelian cover.
    heat::LaurentComplex x = circle_complex();
    for (int m : {1, 2}) {
        Complex plus = heat::delocalized_heat_trace(x, 0, {m}, 0.7, 64).value;
        Complex minus = heat::delocalized_heat_trace(x, 0, {-m}, 0.7, 64).value;
        require(std::abs(plus - std::conj(minus)) < 1e-14,
                "opposite classes must be conjugate");
    }
    return "parity rules, product deltas and conjugate duality all hold";
}

struct Criterion {
    std::string title;
    std::function<std::string()> body;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"hyperbolic torsion oracle equivalence", criterion_hyperbolic_torsion},
        {"hyperbolic eta oracle equivalence", criterion_hyperbolic_eta},
        {"dimension-three torsion/eta identity", criterion_n1_identity},
        {"marked length recovery from power decay", criterion_length_recovery},
        {"mapping-torus Fourier identity and zeta series",
         criterion_mapping_torus},
        {"Nielsen dual routes and trivial-cover reduction", criterion_nielsen},
        {"free-cyclic-cover Bessel benchmark", criterion_bessel},
        {"finite-cover round trip", criterion_finite_cover},
        {"elementary property suite", criterion_elementary},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = criteria[i].body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::cout << "[" << (i + 1) << "/" << criteria.size() << "] "
                  << (ok ? "PASS" : "FAIL") << "  " << criteria[i].title << " — "
                  << detail << "  (" << std::fixed << std::setprecision(2) << secs
                  << "s)\n"
                  << std::defaultfloat;
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "RESULT: all criteria passed"
                                : "RESULT: " + std::to_string(failures) +
                                      " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
