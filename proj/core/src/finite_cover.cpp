#include "deloc/finite_cover.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace deloc::cover {

std::vector<Complex> twisted_from_delocalized(const ClassValueVector& v) {
    const Eigen::Index c = v.table.rows.cols();
    if (v.table.rows.rows() != c)
        throw SchemaError("character table must be square");
    if (static_cast<Eigen::Index>(v.values.size()) != c)
        throw SchemaError("value vector length must equal the number of classes");
    std::vector<Complex> out(c);
    for (Eigen::Index rho = 0; rho < c; ++rho) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index i = 0; i < c; ++i) acc += v.table.rows(rho, i) * v.values[i];
        out[rho] = acc;
    }
    return out;
}

ClassValueVector delocalized_from_twisted(const groups::CharacterTable& table,
                                          const std::vector<Complex>& per_rep,
                                          InvariantKind kind,
                                          SolveDiagnostics* diagnostics) {
    const Eigen::Index c = table.rows.cols();
    if (table.rows.rows() != c) throw SchemaError("character table must be square");
    if (static_cast<Eigen::Index>(per_rep.size()) != c)
        throw SchemaError("per-representation vector length must equal the table size");

    Eigen::VectorXcd rhs(c);
    for (Eigen::Index i = 0; i < c; ++i) rhs(i) = per_rep[i];
    Eigen::VectorXcd sol = table.rows.fullPivLu().solve(rhs);

    if (diagnostics) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(table.rows);
        double smin = svd.singularValues()(c - 1);
        double smax = svd.singularValues()(0);
        diagnostics->condition_number =
            smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
        diagnostics->condition_warning = !(diagnostics->condition_number < 1e8);
    }

    ClassValueVector out;
    out.table = table;
    out.kind = kind;
    out.values.assign(sol.data(), sol.data() + c);
    return out;
}

}  // namespace deloc::cover
