#include "deloc/groups.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace deloc::groups {

namespace {

constexpr int kMaxOrder = 512;
constexpr int kMaxDixonOrder = 48;

std::vector<std::string> default_labels(int order) {
    std::vector<std::string> labels(order);
    for (int i = 0; i < order; ++i) labels[i] = "g" + std::to_string(i);
    return labels;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(int order, std::vector<int> table,
                                    std::vector<std::string> labels) {
    if (order <= 0) throw SchemaError("group order must be positive");
    if (order > kMaxOrder)
        throw SchemaError("group order " + std::to_string(order) +
                          " exceeds the supported cap of 512");
    if (static_cast<int>(table.size()) != order * order)
        throw SchemaError("multiplication table must have order^2 entries");
    for (int v : table)
        if (v < 0 || v >= order)
            throw SchemaError("multiplication table entry out of range");

    FiniteGroup g;
    g.order = order;
    g.mul_table = std::move(table);
    g.labels = labels.empty() ? default_labels(order) : std::move(labels);
    if (static_cast<int>(g.labels.size()) != order)
        throw SchemaError("label list length must equal the group order");

    // Rows and columns must be permutations (cancellation laws).
    std::vector<char> seen(order);
    for (int a = 0; a < order; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order; ++b) {
            int v = g.mul(a, b);
            if (seen[v]) throw SchemaError("row " + std::to_string(a) +
                                           " of the table is not a permutation");
            seen[v] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order; ++b) {
            int v = g.mul(b, a);
            if (seen[v]) throw SchemaError("column " + std::to_string(a) +
                                           " of the table is not a permutation");
            seen[v] = 1;
        }
    }

    // Two-sided identity.
    int e = -1;
    for (int cand = 0; cand < order; ++cand) {
        bool ok = true;
        for (int b = 0; b < order && ok; ++b)
            ok = g.mul(cand, b) == b && g.mul(b, cand) == b;
        if (ok) { e = cand; break; }
    }
    if (e < 0) throw SchemaError("multiplication table has no identity element");
    g.identity = e;

    // Inverses.
    g.inverse.assign(order, -1);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            if (g.mul(a, b) == e) {
                if (g.mul(b, a) != e)
                    throw SchemaError("one-sided inverse found; table is not a group");
                g.inverse[a] = b;
                break;
            }
        }
        if (g.inverse[a] < 0)
            throw SchemaError("element " + std::to_string(a) + " has no inverse");
    }

    // Associativity, exhaustive (order capped at 512 keeps this tractable).
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            int ab = g.mul(a, b);
            for (int c = 0; c < order; ++c)
                if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
                    throw SchemaError("multiplication table is not associative at (" +
                                      std::to_string(a) + "," + std::to_string(b) +
                                      "," + std::to_string(c) + ")");
        }
    return g;
}

Automorphism Automorphism::identity(int order) {
    Automorphism a;
    a.map.resize(order);
    std::iota(a.map.begin(), a.map.end(), 0);
    return a;
}

Automorphism make_automorphism(const FiniteGroup& g, std::vector<int> perm) {
    if (static_cast<int>(perm.size()) != g.order)
        throw SchemaError("automorphism permutation length must equal the group order");
    std::vector<char> seen(g.order, 0);
    for (int v : perm) {
        if (v < 0 || v >= g.order) throw SchemaError("automorphism image out of range");
        if (seen[v]) throw SchemaError("automorphism map is not a permutation");
        seen[v] = 1;
    }
    if (perm[g.identity] != g.identity)
        throw SchemaError("automorphism must fix the identity");
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (perm[g.mul(a, b)] != g.mul(perm[a], perm[b]))
                throw SchemaError("map is not multiplicative at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
    Automorphism out;
    out.map = std::move(perm);
    return out;
}

int automorphism_order(const Automorphism& a) {
    const int n = static_cast<int>(a.map.size());
    std::vector<char> visited(n, 0);
    long long ord = 1;
    for (int i = 0; i < n; ++i) {
        if (visited[i]) continue;
        int len = 0;
        int j = i;
        while (!visited[j]) {
            visited[j] = 1;
            j = a.map[j];
            ++len;
        }
        ord = std::lcm(ord, static_cast<long long>(len));
    }
    return static_cast<int>(ord);
}

Automorphism automorphism_power(const Automorphism& a, long long k) {
    const int n = static_cast<int>(a.map.size());
    const int ord = automorphism_order(a);
    long long r = ((k % ord) + ord) % ord;
    Automorphism out = Automorphism::identity(n);
    for (long long i = 0; i < r; ++i) {
        std::vector<int> next(n);
        for (int x = 0; x < n; ++x) next[x] = a.map[out.map[x]];
        out.map = std::move(next);
    }
    return out;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
    ConjugacyClasses out;
    out.class_of.assign(g.order, -1);
    for (int x = 0; x < g.order; ++x) {
        if (out.class_of[x] >= 0) continue;
        int cls = static_cast<int>(out.members.size());
        std::vector<int> orbit;
        for (int y = 0; y < g.order; ++y) {
            int conj = g.mul(g.mul(y, x), g.inv(y));
            if (out.class_of[conj] < 0) {
                out.class_of[conj] = cls;
                orbit.push_back(conj);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.representatives.push_back(orbit.front());
        out.members.push_back(std::move(orbit));
    }
    return out;
}

TwistedClassDecomposition twisted_classes(const FiniteGroup& g,
                                          const Automorphism& alpha,
                                          long long k) {
    if (static_cast<int>(alpha.map.size()) != g.order)
        throw SchemaError("automorphism size does not match the group");
    Automorphism ak = automorphism_power(alpha, k);

    TwistedClassDecomposition out;
    out.k = k;
    out.k_reduced = ((k % automorphism_order(alpha)) + automorphism_order(alpha)) %
                    automorphism_order(alpha);
    out.class_of.assign(g.order, -1);
    for (int f = 0; f < g.order; ++f) {
        if (out.class_of[f] >= 0) continue;
        int cls = static_cast<int>(out.members.size());
        std::vector<int> orbit;
        // Orbit of f under f -> gamma f alpha^k(gamma^{-1}).
        std::vector<int> stack{f};
        out.class_of[f] = cls;
        orbit.push_back(f);
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int gamma = 0; gamma < g.order; ++gamma) {
                int img = g.mul(g.mul(gamma, cur), ak.apply(g.inv(gamma)));
                if (out.class_of[img] < 0) {
                    out.class_of[img] = cls;
                    orbit.push_back(img);
                    stack.push_back(img);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.representatives.push_back(orbit.front());
        out.members.push_back(std::move(orbit));
    }
    for (const auto& m : out.members) {
        out.sizes.push_back(static_cast<int>(m.size()));
        int f = m.front();
        int stab = 0;
        for (int gamma = 0; gamma < g.order; ++gamma)
            if (g.mul(g.mul(gamma, f), ak.apply(g.inv(gamma))) == f) ++stab;
        out.stabilizer_orders.push_back(stab);
        if (stab * static_cast<int>(m.size()) != g.order)
            throw InternalError("orbit-stabilizer mismatch in twisted_classes");
    }
    return out;
}

void validate_rep(const FiniteGroup& g, const Automorphism& alpha,
                  const InducedRepData& rep, double tol) {
    if (rep.j < 1) throw SchemaError("representation period j must be >= 1");
    if (static_cast<int>(rep.mu.size()) != g.order)
        throw SchemaError("mu must provide one matrix per group element");
    const Eigen::Index n = rep.U.rows();
    if (rep.U.cols() != n) throw SchemaError("U must be square");
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    if ((rep.U * rep.U.adjoint() - id).cwiseAbs().maxCoeff() > tol)
        throw SchemaError("U is not unitary to the required tolerance");
    for (int f = 0; f < g.order; ++f) {
        const auto& m = rep.mu[f];
        if (m.rows() != n || m.cols() != n)
            throw SchemaError("mu(" + std::to_string(f) + ") has wrong shape");
        if ((m * m.adjoint() - id).cwiseAbs().maxCoeff() > tol)
            throw SchemaError("mu(" + std::to_string(f) + ") is not unitary");
    }
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if ((rep.mu[g.mul(a, b)] - rep.mu[a] * rep.mu[b]).cwiseAbs().maxCoeff() > tol)
                throw SchemaError("mu is not multiplicative at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
    Automorphism aj = automorphism_power(alpha, rep.j);
    for (int f = 0; f < g.order; ++f) {
        Eigen::MatrixXcd lhs = rep.mu[aj.apply(f)];
        Eigen::MatrixXcd rhs = rep.U * rep.mu[f] * rep.U.adjoint();
        if ((lhs - rhs).cwiseAbs().maxCoeff() > tol)
            throw SchemaError("U does not intertwine mu with alpha^j at f=" +
                              std::to_string(f));
    }
}

Complex induced_character(const FiniteGroup& g, const Automorphism& alpha,
                          const InducedRepData& rep, int f, long long k) {
    if (f < 0 || f >= g.order) throw SchemaError("element index out of range");
    if (k % rep.j != 0) return {0.0, 0.0};
    const long long r = k / rep.j;
    const Eigen::Index n = rep.U.rows();

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (int q = 0; q < rep.j; ++q) {
        Automorphism aq = automorphism_power(alpha, -q);
        sum += rep.mu[aq.apply(f)];
    }
    Eigen::MatrixXcd upow = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd base = rep.U;
    if (r < 0) base = rep.U.adjoint();
    for (long long i = 0; i < std::llabs(r); ++i) upow = upow * base;
    return (sum * upow).trace();
}

TableReport verify_character_table(const CharacterTable& t, double tol) {
    TableReport rep;
    const Eigen::Index c = t.rows.cols();
    if (t.rows.rows() != c) {
        rep.valid = false;
        rep.message = "table is not square";
        return rep;
    }
    if (static_cast<Eigen::Index>(t.class_sizes.size()) != c) {
        rep.valid = false;
        rep.message = "class size list does not match the table width";
        return rep;
    }
    long long order = 0;
    for (int s : t.class_sizes) order += s;

    for (Eigen::Index a = 0; a < c; ++a)
        for (Eigen::Index b = a; b < c; ++b) {
            Complex ip{0.0, 0.0};
            for (Eigen::Index i = 0; i < c; ++i)
                ip += static_cast<double>(t.class_sizes[i]) * t.rows(a, i) *
                      std::conj(t.rows(b, i));
            Complex expected = (a == b) ? Complex(static_cast<double>(order), 0.0)
                                        : Complex(0.0, 0.0);
            double defect = std::abs(ip - expected);
            if (defect > rep.max_orthogonality_defect) {
                rep.max_orthogonality_defect = defect;
                rep.worst_row_a = static_cast<int>(a);
                rep.worst_row_b = static_cast<int>(b);
            }
        }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t.rows);
    double smin = svd.singularValues()(c - 1);
    double smax = svd.singularValues()(0);
    rep.condition_number = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();

    if (rep.max_orthogonality_defect > tol) {
        rep.valid = false;
        rep.message = "row orthogonality fails for rows (" +
                      std::to_string(rep.worst_row_a) + "," +
                      std::to_string(rep.worst_row_b) + ") with defect " +
                      std::to_string(rep.max_orthogonality_defect);
    } else if (!std::isfinite(rep.condition_number)) {
        rep.valid = false;
        rep.message = "table is singular";
    }
    return rep;
}

CharacterTable character_table(const FiniteGroup& g) {
    if (g.order > kMaxDixonOrder)
        throw SchemaError("character tables are computed only for order <= 48; "
                          "supply the table explicitly for larger groups");
    ConjugacyClasses cls = conjugacy_classes(g);
    const int c = static_cast<int>(cls.members.size());

    // Class-sum multiplication constants: K_i K_j = sum_k a_{ijk} K_k, where
    // a_{ijk} = #{ x in C_i : x^{-1} z_k in C_j } for a fixed z_k.
    std::vector<Eigen::MatrixXd> m(c, Eigen::MatrixXd::Zero(c, c));
    for (int i = 0; i < c; ++i)
        for (int k = 0; k < c; ++k) {
            int zk = cls.representatives[k];
            for (int x : cls.members[i]) {
                int j = cls.class_of[g.mul(g.inv(x), zk)];
                m[i](k, j) += 1.0;
            }
        }

    // Common eigenvectors of the commuting family via a deterministic random
    // combination; distinct eigenvalues with probability one.
    std::mt19937 rng(0x5eedu);
    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(c, c);
    CharacterTable table;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::uniform_real_distribution<double> unif(0.25, 1.0);
        combo.setZero();
        for (int i = 0; i < c; ++i) combo += unif(rng) * m[i];
        Eigen::EigenSolver<Eigen::MatrixXd> es(combo);
        Eigen::MatrixXcd vecs = es.eigenvectors();

        Eigen::MatrixXcd rows(c, c);
        bool ok = true;
        for (int r = 0; r < c && ok; ++r) {
            Eigen::VectorXcd v = vecs.col(r);
            Eigen::Index pivot;
            v.cwiseAbs().maxCoeff(&pivot);
            // Central character on each class sum.
            Eigen::VectorXcd omega(c);
            for (int i = 0; i < c; ++i) {
                Eigen::VectorXcd w = m[i].cast<Complex>() * v;
                omega(i) = w(pivot) / v(pivot);
            }
            double inv_dim_sq = 0.0;
            for (int i = 0; i < c; ++i)
                inv_dim_sq += std::norm(omega(i)) / cls.members[i].size();
            double dim = std::sqrt(static_cast<double>(g.order) / inv_dim_sq);
            for (int i = 0; i < c; ++i)
                rows(r, i) = dim * omega(i) / static_cast<double>(cls.members[i].size());
            ok = std::abs(dim - std::round(dim)) < 1e-6;
        }
        if (!ok) continue;

        // Deterministic row order: by dimension, then lexicographically.
        std::vector<int> perm(c);
        std::iota(perm.begin(), perm.end(), 0);
        auto key = [&rows, c](int r) {
            std::vector<double> k;
            k.reserve(2 * c);
            for (int i = 0; i < c; ++i) {
                k.push_back(std::round(rows(r, i).real() * 1e8));
                k.push_back(std::round(rows(r, i).imag() * 1e8));
            }
            return k;
        };
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            double da = std::round(rows(a, 0).real());
            double db = std::round(rows(b, 0).real());
            if (da != db) return da < db;
            return key(a) < key(b);
        });

        table.class_sizes.clear();
        table.representatives = cls.representatives;
        for (int i = 0; i < c; ++i)
            table.class_sizes.push_back(static_cast<int>(cls.members[i].size()));
        table.rows.resize(c, c);
        for (int r = 0; r < c; ++r) table.rows.row(r) = rows.row(perm[r]);

        TableReport check = verify_character_table(table);
        if (check.valid) return table;
    }
    throw InternalError("character table computation failed to stabilize");
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw SchemaError("cyclic group order must be >= 1");
    std::vector<int> table(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
    return FiniteGroup::from_table(n, std::move(table));
}

FiniteGroup dihedral_group(int n) {
    if (n < 1) throw SchemaError("dihedral parameter must be >= 1");
    const int order = 2 * n;
    // Elements: r^a for a < n, then s r^a. Relations: s r s = r^{-1}.
    auto idx = [n](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
    std::vector<int> table(order * order);
    for (int f1 = 0; f1 < 2; ++f1)
        for (int a = 0; a < n; ++a)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int b = 0; b < n; ++b) {
                    int rot = f2 ? b - a : a + b;
                    table[idx(f1, a) * order + idx(f2, b)] = idx(f1 ^ f2, rot);
                }
    return FiniteGroup::from_table(order, std::move(table));
}

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 5) throw SchemaError("symmetric_group supports 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<int> p = base;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int order = static_cast<int>(perms.size());
    auto find = [&perms](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) -
                                perms.begin());
    };
    std::vector<int> table(order * order);
    std::vector<int> comp(n);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
            table[a * order + b] = find(comp);
        }
    return FiniteGroup::from_table(order, std::move(table));
}

FiniteGroup quaternion_group() {
    // Elements: 1, -1, i, -i, j, -j, k, -k.
    // Encode as sign bit + axis (0 = scalar, 1 = i, 2 = j, 3 = k).
    auto enc = [](int sign, int axis) { return axis * 2 + (sign < 0 ? 1 : 0); };
    struct Q { int sign, axis; };
    auto dec = [](int e) { return Q{e % 2 == 0 ? 1 : -1, e / 2}; };
    auto mul = [](Q a, Q b) {
        static const int axis_table[4][4] = {
            {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sign_table[4][4] = {
            {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        return Q{a.sign * b.sign * sign_table[a.axis][b.axis],
                 axis_table[a.axis][b.axis]};
    };
    std::vector<int> table(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            Q q = mul(dec(a), dec(b));
            table[a * 8 + b] = enc(q.sign, q.axis);
        }
    return FiniteGroup::from_table(8, std::move(table));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int order = a.order * b.order;
    if (order > kMaxOrder) throw SchemaError("direct product exceeds the order cap");
    auto idx = [&b](int x, int y) { return x * b.order + y; };
    std::vector<int> table(order * order);
    for (int x1 = 0; x1 < a.order; ++x1)
        for (int y1 = 0; y1 < b.order; ++y1)
            for (int x2 = 0; x2 < a.order; ++x2)
                for (int y2 = 0; y2 < b.order; ++y2)
                    table[idx(x1, y1) * order + idx(x2, y2)] =
                        idx(a.mul(x1, x2), b.mul(y1, y2));
    return FiniteGroup::from_table(order, std::move(table));
}

}  // namespace deloc::groups
