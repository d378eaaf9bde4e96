#ifndef DELOC_FINITE_COVER_HPP
#define DELOC_FINITE_COVER_HPP

#include <vector>

#include "deloc/groups.hpp"
#include "deloc/invariants.hpp"

namespace deloc::cover {

/// One invariant value per conjugacy class, bound to the character table that
/// fixes the class order.
struct ClassValueVector {
    groups::CharacterTable table;
    std::vector<Complex> values;
    InvariantKind kind = InvariantKind::torsion;
};

struct SolveDiagnostics {
    double condition_number = 0.0;
    bool condition_warning = false;
};

/// Per-representation twisted invariants from per-class values: one value
/// sum_i chi_rho(g_i) v_i per irreducible row.
std::vector<Complex> twisted_from_delocalized(const ClassValueVector& v);

/// Inverse direction: solve the square character-table system. Works with
/// supplied (possibly reordered) tables; ill conditioning is reported through
/// the optional diagnostics, not as an error.
ClassValueVector delocalized_from_twisted(const groups::CharacterTable& table,
                                          const std::vector<Complex>& per_rep,
                                          InvariantKind kind,
                                          SolveDiagnostics* diagnostics = nullptr);

}  // namespace deloc::cover

#endif
