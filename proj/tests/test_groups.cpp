#include <doctest.h>

#include <cmath>
#include <set>

#include "deloc/groups.hpp"
#include "deloc/nielsen.hpp"

using namespace deloc;
using namespace deloc::groups;

namespace {

// Inner automorphism x -> g x g^{-1}, always a valid automorphism.
Automorphism inner(const FiniteGroup& f, int g) {
    std::vector<int> perm(f.order);
    for (int x = 0; x < f.order; ++x) perm[x] = f.mul(f.mul(g, x), f.inv(g));
    return make_automorphism(f, std::move(perm));
}

Automorphism inversion(const FiniteGroup& f) {
    // x -> x^{-1} is an automorphism of abelian groups.
    std::vector<int> perm(f.order);
    for (int x = 0; x < f.order; ++x) perm[x] = f.inv(x);
    return make_automorphism(f, std::move(perm));
}

}  // namespace

TEST_SUITE_BEGIN("groups");

TEST_CASE("table validation catches broken structures") {
    // Constant rows are not cancellative.
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 0, 0, 0}), SchemaError);
    // Non-associative latin square of order 5 (a quasigroup).
    std::vector<int> q{0, 1, 2, 3, 4,
                       1, 0, 3, 4, 2,
                       2, 3, 4, 0, 1,
                       3, 4, 1, 2, 0,
                       4, 2, 0, 1, 3};
    CHECK_THROWS_AS(FiniteGroup::from_table(5, q), SchemaError);
    CHECK_THROWS_AS(FiniteGroup::from_table(3, {0, 1, 2}), SchemaError);
}

TEST_CASE("conjugacy classes of small groups") {
    FiniteGroup z2 = cyclic_group(2);
    ConjugacyClasses c2 = conjugacy_classes(z2);
    CHECK(c2.members.size() == 2);

    FiniteGroup z3 = cyclic_group(3);
    CHECK(conjugacy_classes(z3).members.size() == 3);

    FiniteGroup s3 = symmetric_group(3);
    ConjugacyClasses cs = conjugacy_classes(s3);
    std::multiset<std::size_t> sizes;
    for (const auto& m : cs.members) sizes.insert(m.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});

    // Brute-force oracle: class of x is exactly the set of all conjugates.
    for (int x = 0; x < s3.order; ++x) {
        std::set<int> orbit;
        for (int g = 0; g < s3.order; ++g)
            orbit.insert(s3.mul(s3.mul(g, x), s3.inv(g)));
        std::set<int> found(cs.members[cs.class_of[x]].begin(),
                            cs.members[cs.class_of[x]].end());
        CHECK(orbit == found);
    }
}

TEST_CASE("twisted classes reduce to ordinary conjugacy for the identity twist") {
    FiniteGroup s3 = symmetric_group(3);
    Automorphism id = Automorphism::identity(s3.order);
    ConjugacyClasses plain = conjugacy_classes(s3);
    for (long long k : {0LL, 1LL, 7LL}) {
        TwistedClassDecomposition tw = twisted_classes(s3, id, k);
        CHECK(tw.members.size() == plain.members.size());
        for (int x = 0; x < s3.order; ++x)
            CHECK(tw.members[tw.class_of[x]] == plain.members[plain.class_of[x]]);
    }
}

TEST_CASE("inversion twist on Z/3 merges everything") {
    FiniteGroup z3 = cyclic_group(3);
    TwistedClassDecomposition tw = twisted_classes(z3, inversion(z3), 1);
    REQUIRE(tw.members.size() == 1);
    CHECK(tw.sizes[0] == 3);
    CHECK(tw.stabilizer_orders[0] == 1);
}

TEST_CASE("identity twist on Z/2 keeps singleton classes for any power") {
    FiniteGroup z2 = cyclic_group(2);
    TwistedClassDecomposition tw =
        twisted_classes(z2, Automorphism::identity(2), 7);
    REQUIRE(tw.members.size() == 2);
    CHECK(tw.sizes == std::vector<int>{1, 1});
    CHECK(tw.stabilizer_orders == std::vector<int>{2, 2});
}

TEST_CASE("orbit-stabilizer products are exact across a group family") {
    std::vector<FiniteGroup> family{cyclic_group(6),    symmetric_group(3),
                                    dihedral_group(4),  quaternion_group(),
                                    dihedral_group(6),  symmetric_group(4),
                                    cyclic_group(48),   dihedral_group(24)};
    for (const FiniteGroup& g : family) {
        std::vector<Automorphism> autos{Automorphism::identity(g.order), inner(g, 1 % g.order)};
        for (const Automorphism& a : autos)
            for (long long k = 0; k <= 3; ++k) {
                TwistedClassDecomposition tw = twisted_classes(g, a, k);
                int total = 0;
                for (std::size_t c = 0; c < tw.members.size(); ++c) {
                    CHECK(tw.sizes[c] * tw.stabilizer_orders[c] == g.order);
                    total += tw.sizes[c];
                }
                CHECK(total == g.order);
            }
    }
}

TEST_CASE("induced character of the trivial group winds around the circle") {
    FiniteGroup triv = cyclic_group(1);
    Automorphism id = Automorphism::identity(1);
    const double theta = 0.83;
    InducedRepData rep;
    rep.j = 1;
    rep.mu = {Eigen::MatrixXcd::Identity(1, 1)};
    rep.U.resize(1, 1);
    rep.U(0, 0) = std::exp(Complex(0.0, theta));
    validate_rep(triv, id, rep);
    for (long long k = -3; k <= 3; ++k) {
        Complex expected = std::exp(Complex(0.0, theta * k));
        CHECK(std::abs(induced_character(triv, id, rep, 0, k) - expected) < 1e-12);
    }
}

TEST_CASE("induced character of the sign representation") {
    FiniteGroup z2 = cyclic_group(2);
    Automorphism id = Automorphism::identity(2);
    InducedRepData rep;
    rep.j = 1;
    rep.mu = {Eigen::MatrixXcd::Identity(1, 1), -Eigen::MatrixXcd::Identity(1, 1)};
    rep.U = Eigen::MatrixXcd::Identity(1, 1);
    validate_rep(z2, id, rep);
    for (long long k = 1; k <= 4; ++k) {
        CHECK(induced_character(z2, id, rep, 0, k) == Complex{1.0, 0.0});
        CHECK(induced_character(z2, id, rep, 1, k) == Complex{-1.0, 0.0});
    }
}

TEST_CASE("characters of period-2 data vanish off the period") {
    FiniteGroup triv = cyclic_group(1);
    Automorphism id = Automorphism::identity(1);
    InducedRepData rep;
    rep.j = 2;
    rep.mu = {Eigen::MatrixXcd::Identity(1, 1)};
    rep.U = -Eigen::MatrixXcd::Identity(1, 1);
    CHECK(induced_character(triv, id, rep, 0, 1) == Complex{0.0, 0.0});
    CHECK(induced_character(triv, id, rep, 0, 3) == Complex{0.0, 0.0});
    CHECK(induced_character(triv, id, rep, 0, 2) == Complex{-2.0, 0.0});
}

TEST_CASE("induced characters are twisted class functions") {
    std::vector<FiniteGroup> family{cyclic_group(6), symmetric_group(3),
                                    dihedral_group(4), cyclic_group(12)};
    for (const FiniteGroup& g : family) {
        for (const Automorphism& alpha :
             {Automorphism::identity(g.order), inner(g, g.order > 1 ? 1 : 0)}) {
            nielsen::ExactRep exact = nielsen::regular_rep(g, alpha);
            InducedRepData rep = nielsen::to_complex_rep(exact);
            validate_rep(g, alpha, rep);
            for (long long k = 1; k <= 3; ++k) {
                Automorphism ak = automorphism_power(alpha, k);
                for (int f = 0; f < g.order; ++f) {
                    Complex base = induced_character(g, alpha, rep, f, k);
                    for (int gamma = 0; gamma < g.order; ++gamma) {
                        int conj = g.mul(g.mul(gamma, f), ak.apply(g.inv(gamma)));
                        CHECK(std::abs(induced_character(g, alpha, rep, conj, k) -
                                       base) < 1e-9);
                    }
                }
            }
        }
    }
}

TEST_CASE("character table verification") {
    CharacterTable z2;
    z2.class_sizes = {1, 1};
    z2.representatives = {0, 1};
    z2.rows.resize(2, 2);
    z2.rows << 1, 1, 1, -1;
    CHECK(verify_character_table(z2).valid);

    CharacterTable s3;
    s3.class_sizes = {1, 3, 2};  // identity, transpositions, 3-cycles
    s3.representatives = {-1, -1, -1};
    s3.rows.resize(3, 3);
    s3.rows << 1, 1, 1, 1, -1, 1, 2, 0, -1;
    CHECK(verify_character_table(s3).valid);

    CharacterTable dup = s3;
    dup.rows.row(2) = dup.rows.row(0);
    TableReport rep = verify_character_table(dup);
    CHECK(!rep.valid);
    CHECK(rep.max_orthogonality_defect > 1e-8);
}

TEST_CASE("computed character tables are orthogonal with integer dimensions") {
    std::vector<FiniteGroup> family{cyclic_group(2),   cyclic_group(3),
                                    cyclic_group(4),   symmetric_group(3),
                                    dihedral_group(4), quaternion_group(),
                                    symmetric_group(4), dihedral_group(24)};
    for (const FiniteGroup& g : family) {
        CharacterTable t = character_table(g);
        TableReport rep = verify_character_table(t);
        CHECK(rep.valid);
        CHECK(rep.condition_number < 1e6);
        double dim_sq = 0.0;
        for (Eigen::Index r = 0; r < t.rows.rows(); ++r) {
            double dim = t.rows(r, 0).real();
            CHECK(std::abs(dim - std::round(dim)) < 1e-8);
            dim_sq += dim * dim;
        }
        CHECK(dim_sq == doctest::Approx(g.order).epsilon(1e-8));
    }
    CHECK_THROWS_AS(character_table(cyclic_group(49)), SchemaError);
}

TEST_CASE("the standard table of S3 comes out of the computation") {
    CharacterTable t = character_table(symmetric_group(3));
    // Dimensions sorted ascending by construction: 1, 1, 2.
    CHECK(t.rows(0, 0).real() == doctest::Approx(1.0));
    CHECK(t.rows(1, 0).real() == doctest::Approx(1.0));
    CHECK(t.rows(2, 0).real() == doctest::Approx(2.0));
    // The 2-dimensional character has a zero on the size-3 class.
    for (Eigen::Index c = 0; c < 3; ++c)
        if (t.class_sizes[c] == 3) CHECK(std::abs(t.rows(2, c)) < 1e-9);
}

TEST_SUITE_END();
