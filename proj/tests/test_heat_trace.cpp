#include <doctest.h>

#include <cmath>
#include <random>

#include "deloc/heat_trace.hpp"

using namespace deloc;
using namespace deloc::heat;

namespace {

LaurentEntry monomials(std::initializer_list<std::pair<std::vector<long long>, double>> terms) {
    LaurentEntry e;
    for (const auto& [expo, c] : terms) e.push_back({expo, Complex(c, 0.0)});
    return e;
}

// One vertex, one edge over the infinite cyclic cover: d = z - 1.
LaurentComplex circle_complex() {
    LaurentMatrix d;
    d.rows = 1;
    d.cols = 1;
    d.entries = {monomials({{{1}, 1.0}, {{0}, -1.0}})};
    return make_laurent_complex(1, {1, 1}, {d});
}

// Product of two circles: dims (1, 2, 1) over Z^2.
LaurentComplex torus_complex() {
    LaurentMatrix d0;
    d0.rows = 1;
    d0.cols = 2;
    d0.entries = {monomials({{{1, 0}, 1.0}, {{0, 0}, -1.0}}),
                  monomials({{{0, 1}, 1.0}, {{0, 0}, -1.0}})};
    LaurentMatrix d1;
    d1.rows = 2;
    d1.cols = 1;
    d1.entries = {monomials({{{0, 1}, -1.0}, {{0, 0}, 1.0}}),
                  monomials({{{1, 0}, 1.0}, {{0, 0}, -1.0}})};
    return make_laurent_complex(2, {1, 2, 1}, {d0, d1});
}

// Series oracle for the modified Bessel function of integer order.
double bessel_i(int m, double x) {
    double term = std::pow(x / 2.0, m);
    for (int s = 1; s <= m; ++s) term /= s;
    double sum = term;
    for (int s = 1; s < 400; ++s) {
        term *= (x / 2.0) * (x / 2.0) / (s * (s + m));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

TEST_SUITE_BEGIN("heat_trace");

TEST_CASE("complex validation catches broken differentials") {
    LaurentMatrix d0;
    d0.rows = 1;
    d0.cols = 1;
    d0.entries = {monomials({{{1}, 1.0}})};
    LaurentMatrix d1 = d0;
    // z * z != 0: the composition does not vanish.
    CHECK_THROWS_AS(make_laurent_complex(1, {1, 1, 1}, {d0, d1}), SchemaError);

    LaurentMatrix bad_shape;
    bad_shape.rows = 2;
    bad_shape.cols = 1;
    bad_shape.entries = {monomials({{{1}, 1.0}}), monomials({{{0}, 1.0}})};
    CHECK_THROWS_AS(make_laurent_complex(1, {1, 1}, {bad_shape}), SchemaError);
}

TEST_CASE("circle Laplacian is 2 - 2 cos(theta)") {
    LaurentComplex x = circle_complex();
    for (double theta : {0.0, 0.5, 2.0, kPi}) {
        Eigen::MatrixXcd lap = twisted_laplacian(x, 0, {theta});
        REQUIRE(lap.rows() == 1);
        CHECK(lap(0, 0).real() ==
              doctest::Approx(2.0 - 2.0 * std::cos(theta)).epsilon(1e-14));
        CHECK(std::abs(lap(0, 0).imag()) < 1e-15);
        // Both ends of the complex see the same spectrum here.
        Eigen::MatrixXcd lap1 = twisted_laplacian(x, 1, {theta});
        CHECK(std::abs(lap1(0, 0) - lap(0, 0)) < 1e-14);
    }
    // theta = 0 is the untwisted complex: the Laplacian vanishes.
    CHECK(std::abs(twisted_laplacian(x, 0, {0.0})(0, 0)) < 1e-15);
}

TEST_CASE("torus Laplacian spectrum is the sum of circle spectra") {
    LaurentComplex x = torus_complex();
    std::vector<double> theta{0.7, 2.1};
    double a = 2.0 - 2.0 * std::cos(theta[0]);
    double b = 2.0 - 2.0 * std::cos(theta[1]);
    Eigen::MatrixXcd lap0 = twisted_laplacian(x, 0, theta);
    CHECK(lap0(0, 0).real() == doctest::Approx(a + b).epsilon(1e-13));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        twisted_laplacian(x, 1, theta));
    CHECK(es.eigenvalues()(0) == doctest::Approx(a + b).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(a + b).epsilon(1e-12));
}

TEST_CASE("random one-differential complexes give Hermitian PSD Laplacians") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> expo(-2, 2);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 5; ++trial) {
        LaurentMatrix d;
        d.rows = 2;
        d.cols = 3;
        for (int i = 0; i < 6; ++i) {
            LaurentEntry e;
            for (int t = 0; t < 2; ++t)
                e.push_back({{expo(rng)}, Complex(coeff(rng), coeff(rng))});
            d.entries.push_back(e);
        }
        LaurentComplex x = make_laurent_complex(1, {2, 3}, {d});
        for (int p : {0, 1}) {
            Eigen::MatrixXcd lap = twisted_laplacian(x, p, {angle(rng)});
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lap);
            CHECK(es.eigenvalues().minCoeff() > -1e-10);
        }
    }
}

TEST_CASE("circle heat trace matches the Bessel closed form") {
    LaurentComplex x = circle_complex();
    for (int m : {0, 1}) {
        HeatTraceResult res = delocalized_heat_trace(x, 0, {m}, 1.0, 64);
        double expected = std::exp(-2.0) * bessel_i(m, 2.0);
        CHECK(std::abs(res.value - Complex{expected, 0.0}) < 1e-12);
    }
    CHECK(std::abs(delocalized_heat_trace(x, 0, {0}, 1.0, 64).value.real() -
                   0.3085083225) < 1e-9);
    CHECK(std::abs(delocalized_heat_trace(x, 0, {1}, 1.0, 64).value.real() -
                   0.2152692892) < 1e-9);
    CHECK_THROWS_AS(delocalized_heat_trace(x, 0, {1}, 1.0, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(delocalized_heat_trace(x, 0, {1, 0}, 1.0, 64), SchemaError);
    CHECK_THROWS_AS(delocalized_heat_trace(x, 5, {1}, 1.0, 64), std::domain_error);
}

TEST_CASE("small-time values stay bounded by the cell count") {
    LaurentComplex x = circle_complex();
    for (double t : {1e-6, 1e-3}) {
        Complex v = delocalized_heat_trace(x, 0, {1}, t, 64).value;
        CHECK(std::abs(v) <= 1.0 + 1e-9);
    }
}

TEST_CASE("conjugate symmetry between opposite classes is exact") {
    LaurentComplex x = torus_complex();
    for (int p : {0, 1, 2}) {
        Complex plus = delocalized_heat_trace(x, p, {1, 2}, 0.8, 64).value;
        Complex minus = delocalized_heat_trace(x, p, {-1, -2}, 0.8, 64).value;
        CHECK(std::abs(plus - std::conj(minus)) < 1e-15);
    }
}

TEST_CASE("grid doubling is stable for smooth integrands") {
    LaurentComplex x = circle_complex();
    for (double t : {1.0, 10.0, 100.0}) {
        Complex a = delocalized_heat_trace(x, 0, {1}, t, 64).value;
        Complex b = delocalized_heat_trace(x, 0, {1}, t, 128).value;
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("truncated Fourier mass respects the Parseval bound") {
    LaurentComplex x = circle_complex();
    const double t = 0.5;
    double lhs = 0.0;
    for (int m = -6; m <= 6; ++m)
        lhs += std::norm(delocalized_heat_trace(x, 0, {m}, t, 128).value);
    // Quadrature of |Tr e^{-t Lap}|^2 over the dual circle.
    const int grid = 512;
    double rhs = 0.0;
    for (int i = 0; i < grid; ++i) {
        double theta = 2.0 * kPi * i / grid;
        double tr = std::exp(-t * (2.0 - 2.0 * std::cos(theta)));
        rhs += tr * tr;
    }
    rhs /= grid;
    CHECK(lhs <= rhs + 1e-12);
}

TEST_CASE("large-time ladder extrapolates the vanishing limit") {
    LaurentComplex x = circle_complex();
    DecayReport rep = delocalized_betti(x, 0, {1}, 64.0, 64);
    CHECK(!rep.anomaly);
    CHECK(std::abs(rep.extrapolated_limit) < 1e-3);
    CHECK(rep.power_rate > 0.3);  // square-root decay regime
    CHECK(rep.power_rate < 0.7);
    CHECK_THROWS_AS(delocalized_betti(x, 0, {0}, 64.0, 64), std::invalid_argument);
}

TEST_CASE("gapped complexes decay exponentially fast") {
    // d = z - 2 keeps the Laplacian spectrum away from zero everywhere.
    LaurentMatrix d;
    d.rows = 1;
    d.cols = 1;
    d.entries = {monomials({{{1}, 1.0}, {{0}, -2.0}})};
    LaurentComplex x = make_laurent_complex(1, {1, 1}, {d});
    // min spectrum of |e^{i theta} - 2|^2 is (2-1)^2 = 1.
    DecayReport rep = delocalized_betti(x, 0, {1}, 32.0, 64);
    CHECK(!rep.anomaly);
    CHECK(rep.exponential_rate > 0.9);
    CHECK(std::abs(rep.extrapolated_limit) < 1e-8);
}

TEST_CASE("thread budget does not change the reduction") {
    LaurentComplex x = torus_complex();
    setenv("DELOC_THREADS", "1", 1);
    Complex serial = delocalized_heat_trace(x, 1, {1, -1}, 2.0, 64).value;
    setenv("DELOC_THREADS", "4", 1);
    Complex parallel = delocalized_heat_trace(x, 1, {1, -1}, 2.0, 64).value;
    unsetenv("DELOC_THREADS");
    CHECK(serial.real() == parallel.real());
    CHECK(serial.imag() == parallel.imag());
}

TEST_SUITE_END();
