#include <doctest.h>

#include <cmath>
#include <random>

#include "deloc/mapping_torus.hpp"

using namespace deloc;
using namespace deloc::torus;

namespace {

Eigen::MatrixXcd m1(double v) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = v;
    return m;
}

CohomologyAction sphere_identity() {
    return make_action({m1(1.0), Eigen::MatrixXcd(0, 0), m1(1.0)});
}

CohomologyAction antipodal() {
    return make_action({m1(1.0), Eigen::MatrixXcd(0, 0), m1(-1.0)});
}

// Exact integer Lefschetz numbers via long long matrix powers.
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

Eigen::MatrixXcd to_cd(const Mat<long long>& m) {
    Eigen::MatrixXcd out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            out(r, c) = Complex(static_cast<double>(m[r][c]), 0.0);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("mapping_torus");

TEST_CASE("spectral clamp") {
    CHECK(clamp_spectrum({1.0, 0.0}) == Complex{1.0, 0.0});
    CHECK(clamp_spectrum({2.0, 0.0}) == Complex{0.5, 0.0});
    CHECK(std::abs(clamp_spectrum({0.0, 3.0}) - Complex{0.0, 1.0 / 3.0}) < 1e-15);
    CHECK_THROWS_AS(clamp_spectrum({0.0, 0.0}), std::domain_error);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        Complex z{u(rng), u(rng)};
        if (std::abs(z) < 1e-6) continue;
        Complex f = clamp_spectrum(z);
        CHECK(std::abs(f) <= 1.0 + 1e-14);
        CHECK(std::abs(clamp_spectrum(f) - f) < 1e-14);
    }
}

TEST_CASE("per-winding torsion from the spectrum") {
    CHECK(std::abs(torsion_k(sphere_identity(), 3) - Complex{2.0 / 3.0, 0.0}) < 1e-14);
    CHECK(std::abs(torsion_k(antipodal(), 2) - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(torsion_k(antipodal(), 1)) < 1e-14);

    CohomologyAction expanding = make_action({m1(1.0), Eigen::MatrixXcd(0, 0), m1(2.0)});
    CHECK(std::abs(torsion_k(expanding, 1) - Complex{1.5, 0.0}) < 1e-14);
    CHECK_THROWS_AS(torsion_k(antipodal(), 0), std::domain_error);
}

TEST_CASE("a unit-circle Jordan block is rejected") {
    Eigen::MatrixXcd jordan(2, 2);
    jordan << 1.0, 1.0, 0.0, 1.0;
    CohomologyAction a = make_action({jordan});
    CHECK_THROWS_AS(torsion_k(a, 1), std::domain_error);
    // Same block off the circle is fine.
    Eigen::MatrixXcd off(2, 2);
    off << 2.0, 1.0, 0.0, 2.0;
    CHECK_NOTHROW(torsion_k(make_action({off}), 1));
}

TEST_CASE("Lefschetz numbers of basic actions") {
    for (int k : {1, 2, 5}) {
        CHECK(std::abs(lefschetz_number(sphere_identity(), k) - Complex{2.0, 0.0}) <
              1e-14);
        double expect = 1.0 + ((k % 2 == 0) ? 1.0 : -1.0);
        CHECK(std::abs(lefschetz_number(antipodal(), k) - Complex{expect, 0.0}) <
              1e-14);
    }
    // Rotation by pi/2 in degree one, rank-one identities outside.
    Eigen::MatrixXcd rot(2, 2);
    rot << 0.0, -1.0, 1.0, 0.0;
    CohomologyAction a = make_action({m1(1.0), rot, m1(1.0)});
    CHECK(std::abs(lefschetz_number(a, 1) - Complex{2.0, 0.0}) < 1e-14);
    CHECK_THROWS_AS(lefschetz_number(a, 0), std::domain_error);
}

TEST_CASE("zeta of the identity action is (1-z)^{-2}") {
    RationalZeta zeta = zeta_rational(sphere_identity());
    CHECK(zeta.numerator.empty());
    REQUIRE(zeta.denominator.size() == 2);
    Complex z{0.3, 0.1};
    Complex expected = 1.0 / ((1.0 - z) * (1.0 - z));
    CHECK(std::abs(zeta.value_at(z) - expected) < 1e-14);
    CHECK(zeta.order_at({1.0, 0.0}) == -2);
    CHECK_THROWS_AS(zeta.value_at({1.0, 0.0}), PoleError);
    try {
        zeta.log_abs_sq_at({1.0, 0.0});
    } catch (const PoleError& e) {
        CHECK(e.order() == -2);
    }
}

TEST_CASE("zeta of the antipodal action is 1/(1-z^2)") {
    RationalZeta zeta = zeta_rational(antipodal());
    for (Complex z : {Complex{0.5, 0.0}, Complex{-0.25, 0.3}, Complex{0.0, 0.9}}) {
        Complex expected = 1.0 / (1.0 - z * z);
        CHECK(std::abs(zeta.value_at(z) - expected) < 1e-12);
    }
}

TEST_CASE("zeta log-series equals Lefschetz numbers exactly over the rationals") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        // Integer actions in three degrees with invertible small matrices.
        std::vector<Mat<long long>> mats;
        std::vector<Eigen::MatrixXcd> cmats;
        for (int p = 0; p < 3; ++p) {
            int dim = 1 + (trial + p) % 2;
            Mat<long long> m;
            do {
                m.assign(dim, std::vector<long long>(dim, 0));
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < dim; ++c) m[r][c] = entry(rng);
            } while ([&m, dim]() {
                if (dim == 1) return m[0][0] == 0;
                return m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0;
            }());
            mats.push_back(m);
            cmats.push_back(to_cd(m));
        }
        RationalZeta zeta = zeta_rational(make_action(cmats));
        REQUIRE(zeta.integral_coefficients());
        std::vector<Rat> series = zeta.log_series_exact(12);
        for (int k = 1; k <= 12; ++k) {
            Rat expected = Rat(int_lefschetz(mats, k)) / Rat(k);
            CHECK(series[k - 1] == expected);
        }
    }
}

TEST_CASE("circle-average oracle matches the spectral sum") {
    // Integrable log singularity: unit-circle spectrum.
    CHECK(std::abs(fourier_torsion_oracle(antipodal(), 2, 256) - Complex{1.0, 0.0}) <
          1e-6);
    CHECK(std::abs(fourier_torsion_oracle(sphere_identity(), 1, 256) -
                   Complex{2.0, 0.0}) < 1e-4);

    // Off-circle spectrum: eigenvalues 2 and 1/3.
    CohomologyAction off =
        make_action({m1(2.0), Eigen::MatrixXcd(0, 0), m1(1.0 / 3.0)});
    for (long long k : {1LL, -1LL}) {
        Complex direct = torsion_k(off, k);
        Complex oracle = fourier_torsion_oracle(off, k, 256);
        CHECK(std::abs(direct - oracle) < 1e-8);
    }
    CHECK_THROWS_AS(fourier_torsion_oracle(off, 1, 64), std::invalid_argument);
}

TEST_CASE("negative windings mirror positive ones for real actions") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXcd m(2, 2);
        do {
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    m(r, c) = Complex(static_cast<double>(entry(rng)), 0.0);
        } while (std::abs(m.determinant()) < 0.5);
        CohomologyAction a = make_action({m});
        for (long long k : {1LL, 2LL, 5LL}) {
            Complex pos, neg;
            try {
                pos = torsion_k(a, k);
                neg = torsion_k(a, -k);
            } catch (const std::domain_error&) {
                continue;  // defective draw on the unit circle: no clamp
            }
            CHECK(std::abs(pos - neg) < 1e-12 * (1.0 + std::abs(pos)));
        }
    }
}

TEST_CASE("suspension eta from the index datum") {
    CHECK(atiyah_bott_eta({0.0, 0.0}, 5) == Complex{0.0, 0.0});
    Complex v = atiyah_bott_eta({3.0, 0.0}, 2);
    CHECK(v == Complex{0.0, 3.0 / (2.0 * kPi)});
    Complex w = atiyah_bott_eta({2.0, 0.0}, -1);
    CHECK(w == Complex{0.0, -2.0 / kPi});
    CHECK_THROWS_AS(atiyah_bott_eta({1.0, 0.0}, 0), std::domain_error);
}

TEST_CASE("singular gluing maps are rejected") {
    Eigen::MatrixXcd sing(2, 2);
    sing << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(make_action({sing}), SchemaError);
}

TEST_SUITE_END();
