#ifndef DELOC_GROUPS_HPP
#define DELOC_GROUPS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "deloc/common.hpp"
#include "deloc/errors.hpp"

namespace deloc::groups {

/// A finite group given by its full multiplication table (element indices
/// 0..order-1). Construction validates the group laws exhaustively; the table
/// size is capped at 512.
struct FiniteGroup {
    int order = 0;
    std::vector<int> mul_table;  // row-major: mul_table[a * order + b] = a*b
    std::vector<int> inverse;
    int identity = 0;
    std::vector<std::string> labels;

    int mul(int a, int b) const { return mul_table[a * order + b]; }
    int inv(int a) const { return inverse[a]; }

    static FiniteGroup from_table(int order, std::vector<int> table,
                                  std::vector<std::string> labels = {});
};

/// Group automorphism stored as the permutation of element indices.
struct Automorphism {
    std::vector<int> map;

    int apply(int x) const { return map[x]; }
    static Automorphism identity(int order);
};

/// Check that `perm` respects the multiplication table and fixes the identity.
Automorphism make_automorphism(const FiniteGroup& g, std::vector<int> perm);

int automorphism_order(const Automorphism& a);

/// Permutation realizing alpha^k (k may be negative).
Automorphism automorphism_power(const Automorphism& a, long long k);

struct ConjugacyClasses {
    std::vector<int> class_of;                // element -> class index
    std::vector<std::vector<int>> members;    // class -> sorted member list
    std::vector<int> representatives;         // class -> smallest member
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

/// Partition of the group under f ~ gamma f alpha^k(gamma^{-1}), with class
/// sizes and stabilizer orders. k is reduced modulo the order of alpha.
struct TwistedClassDecomposition {
    long long k = 0;
    long long k_reduced = 0;
    std::vector<int> class_of;
    std::vector<std::vector<int>> members;
    std::vector<int> representatives;
    std::vector<int> sizes;
    std::vector<int> stabilizer_orders;
};

TwistedClassDecomposition twisted_classes(const FiniteGroup& g,
                                          const Automorphism& alpha,
                                          long long k);

/// Periodic-orbit datum (j, mu, U) inducing an irreducible representation of
/// the extension of the group by the integers: mu is unitary on each element
/// and U intertwines mu with alpha^j.
struct InducedRepData {
    int j = 1;
    std::vector<Eigen::MatrixXcd> mu;  // one unitary per group element
    Eigen::MatrixXcd U;
};

/// Throws SchemaError unless mu is a unitary representation, U is unitary and
/// mu(alpha^j(f)) = U mu(f) U^{-1}, all to `tol`.
void validate_rep(const FiniteGroup& g, const Automorphism& alpha,
                  const InducedRepData& rep, double tol = 1e-12);

/// Character of the induced representation at (f, k): zero unless j | k, else
/// Tr([mu(f) + mu(alpha^{-1} f) + ... + mu(alpha^{-(j-1)} f)] U^{k/j}).
Complex induced_character(const FiniteGroup& g, const Automorphism& alpha,
                          const InducedRepData& rep, int f, long long k);

struct CharacterTable {
    std::vector<int> class_sizes;
    std::vector<int> representatives;  // element index per class, -1 if unknown
    Eigen::MatrixXcd rows;             // one row per irreducible, one column per class
};

struct TableReport {
    bool valid = true;
    double max_orthogonality_defect = 0.0;
    int worst_row_a = -1;
    int worst_row_b = -1;
    double condition_number = 0.0;
    std::string message;
};

/// Row orthogonality against the class sizes, squareness and invertibility.
TableReport verify_character_table(const CharacterTable& t, double tol = 1e-8);

/// Numerical character table from the class-sum multiplication constants
/// (simultaneous diagonalization with a deterministic seed). Group order is
/// capped at 48; larger groups must supply their table.
CharacterTable character_table(const FiniteGroup& g);

// Constructors for common small groups, used by fixtures and tests.
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);   // order 2n
FiniteGroup symmetric_group(int n);  // n <= 5
FiniteGroup quaternion_group();      // order 8
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace deloc::groups

#endif
