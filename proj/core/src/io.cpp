#include "deloc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace deloc::io {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError(what, path);
}

const json& member(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "/" + key, "missing required member");
    return *it;
}

long long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Complex get_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(path, "expected a number or an [re, im] pair");
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

Eigen::MatrixXcd get_complex_matrix(const json& j, const std::string& path) {
    get_array(j, path);
    const int rows = static_cast<int>(j.size());
    if (rows == 0) return Eigen::MatrixXcd(0, 0);
    int cols = -1;
    Eigen::MatrixXcd m;
    for (int r = 0; r < rows; ++r) {
        const std::string row_path = path + "/" + std::to_string(r);
        const json& row = get_array(j[r], row_path);
        if (cols < 0) {
            cols = static_cast<int>(row.size());
            m.resize(rows, cols);
        }
        if (static_cast<int>(row.size()) != cols)
            fail(row_path, "ragged matrix rows");
        for (int c = 0; c < cols; ++c)
            m(r, c) = get_complex(row[c], row_path + "/" + std::to_string(c));
    }
    return m;
}

Mat<long long> get_int_matrix(const json& j, const std::string& path, int rows,
                              int cols) {
    get_array(j, path);
    if (static_cast<int>(j.size()) != rows)
        fail(path, "expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(j.size()));
    Mat<long long> m(rows, std::vector<long long>(cols, 0));
    for (int r = 0; r < rows; ++r) {
        const std::string row_path = path + "/" + std::to_string(r);
        const json& row = get_array(j[r], row_path);
        if (static_cast<int>(row.size()) != cols)
            fail(row_path, "expected " + std::to_string(cols) + " columns, got " +
                               std::to_string(row.size()));
        for (int c = 0; c < cols; ++c)
            m[r][c] = get_int(row[c], row_path + "/" + std::to_string(c));
    }
    return m;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

groups::FiniteGroup parse_group(const std::string& text) {
    json j = parse_text(text);
    long long order = get_int(member(j, "", "order"), "/order");
    const json& table = get_array(member(j, "", "mul_table"), "/mul_table");
    std::vector<int> mul;
    mul.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        mul.push_back(static_cast<int>(
            get_int(table[i], "/mul_table/" + std::to_string(i))));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const json& l = get_array(j["labels"], "/labels");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_string()) fail("/labels/" + std::to_string(i), "expected a string");
            labels.push_back(l[i].get<std::string>());
        }
    }
    try {
        return groups::FiniteGroup::from_table(static_cast<int>(order),
                                               std::move(mul), std::move(labels));
    } catch (const SchemaError& e) {
        fail("/mul_table", e.what());
    }
}

groups::Automorphism parse_automorphism(const std::string& text,
                                        const groups::FiniteGroup& g) {
    json j = parse_text(text);
    const json* arr = nullptr;
    std::string path;
    if (j.is_array()) {
        arr = &j;
        path = "";
    } else {
        arr = &get_array(member(j, "", "perm"), "/perm");
        path = "/perm";
    }
    std::vector<int> perm;
    for (std::size_t i = 0; i < arr->size(); ++i)
        perm.push_back(static_cast<int>(
            get_int((*arr)[i], path + "/" + std::to_string(i))));
    try {
        return groups::make_automorphism(g, std::move(perm));
    } catch (const SchemaError& e) {
        fail(path.empty() ? "/" : path, e.what());
    }
}

groups::CharacterTable parse_character_table(const std::string& text) {
    json j = parse_text(text);
    groups::CharacterTable t;
    const json& classes = get_array(member(j, "", "classes"), "/classes");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const std::string p = "/classes/" + std::to_string(i);
        t.class_sizes.push_back(
            static_cast<int>(get_int(member(classes[i], p, "size"), p + "/size")));
        if (classes[i].contains("rep"))
            t.representatives.push_back(
                static_cast<int>(get_int(classes[i]["rep"], p + "/rep")));
        else
            t.representatives.push_back(-1);
    }
    t.rows = get_complex_matrix(member(j, "", "rows"), "/rows");
    if (t.rows.cols() != static_cast<Eigen::Index>(t.class_sizes.size()))
        fail("/rows", "row width must equal the number of classes");
    return t;
}

groups::InducedRepData parse_rep(const std::string& text) {
    json j = parse_text(text);
    groups::InducedRepData rep;
    rep.j = static_cast<int>(get_int(member(j, "", "j"), "/j"));
    const json& mu = get_array(member(j, "", "mu"), "/mu");
    for (std::size_t f = 0; f < mu.size(); ++f)
        rep.mu.push_back(get_complex_matrix(mu[f], "/mu/" + std::to_string(f)));
    rep.U = get_complex_matrix(member(j, "", "U"), "/U");
    return rep;
}

hyperbolic::GeodesicClass parse_geodesic(const std::string& text) {
    json j = parse_text(text);
    int n = static_cast<int>(get_int(member(j, "", "n"), "/n"));
    int k = static_cast<int>(get_int(member(j, "", "k"), "/k"));
    double l = get_number(member(j, "", "l"), "/l");
    const json& angles = get_array(member(j, "", "angles"), "/angles");
    std::vector<double> a;
    for (std::size_t i = 0; i < angles.size(); ++i)
        a.push_back(get_number(angles[i], "/angles/" + std::to_string(i)));
    try {
        return hyperbolic::make_geodesic_class(n, k, l, std::move(a));
    } catch (const SchemaError& e) {
        fail("", e.what());
    }
}

torus::CohomologyAction parse_action(const std::string& text) {
    json j = parse_text(text);
    const json& mats = get_array(member(j, "", "matrices"), "/matrices");
    std::vector<Eigen::MatrixXcd> matrices;
    for (std::size_t p = 0; p < mats.size(); ++p)
        matrices.push_back(
            get_complex_matrix(mats[p], "/matrices/" + std::to_string(p)));
    try {
        return torus::make_action(std::move(matrices));
    } catch (const SchemaError& e) {
        fail("/matrices", e.what());
    }
}

nielsen::EquivariantComplex parse_equivariant_complex(const std::string& text) {
    json j = parse_text(text);
    nielsen::EquivariantComplex x;
    x.group = parse_group(member(j, "", "group").dump());
    const json& alpha = member(j, "", "automorphism");
    x.alpha = parse_automorphism(alpha.dump(), x.group);

    const json& degrees = get_array(member(j, "", "degrees"), "/degrees");
    if (degrees.empty()) fail("/degrees", "complex needs at least one degree");
    std::vector<int> orbit_counts;
    for (std::size_t p = 0; p < degrees.size(); ++p) {
        const std::string dp = "/degrees/" + std::to_string(p);
        orbit_counts.push_back(static_cast<int>(
            get_int(member(degrees[p], dp, "orbits"), dp + "/orbits")));
    }
    for (std::size_t p = 0; p < degrees.size(); ++p) {
        const std::string dp = "/degrees/" + std::to_string(p);
        nielsen::DegreeData deg;
        deg.orbit_count = orbit_counts[p];
        const int dim = deg.orbit_count * x.group.order;
        deg.phi_hat = get_int_matrix(member(degrees[p], dp, "phi_hat"),
                                     dp + "/phi_hat", dim, dim);
        if (p + 1 < degrees.size()) {
            const int next = orbit_counts[p + 1] * x.group.order;
            deg.diff = get_int_matrix(member(degrees[p], dp, "diff"), dp + "/diff",
                                      dim, next);
        } else if (degrees[p].contains("diff") && !degrees[p]["diff"].empty()) {
            fail(dp + "/diff", "top degree must not carry a differential");
        }
        x.degrees.push_back(std::move(deg));
    }
    nielsen::ValidationReport rep = nielsen::validate_complex(x);
    if (!rep.valid) fail("/degrees/" + std::to_string(rep.degree), rep.message);
    return x;
}

heat::LaurentComplex parse_laurent_complex(const std::string& text) {
    json j = parse_text(text);
    int rank = static_cast<int>(get_int(member(j, "", "l"), "/l"));
    const json& dims_json = get_array(member(j, "", "dims"), "/dims");
    std::vector<int> dims;
    for (std::size_t i = 0; i < dims_json.size(); ++i)
        dims.push_back(static_cast<int>(
            get_int(dims_json[i], "/dims/" + std::to_string(i))));

    const json& diffs = get_array(member(j, "", "differentials"), "/differentials");
    std::vector<heat::LaurentMatrix> differentials;
    for (std::size_t p = 0; p < diffs.size(); ++p) {
        const std::string dp = "/differentials/" + std::to_string(p);
        heat::LaurentMatrix m;
        if (p + 1 < dims.size()) {
            m.rows = dims[p];
            m.cols = dims[p + 1];
        }
        m.entries.assign(static_cast<std::size_t>(m.rows) * m.cols, {});
        const json& entries = get_array(member(diffs[p], dp, "entries"),
                                        dp + "/entries");
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const std::string ep = dp + "/entries/" + std::to_string(e);
            int row = static_cast<int>(get_int(member(entries[e], ep, "row"), ep + "/row"));
            int col = static_cast<int>(get_int(member(entries[e], ep, "col"), ep + "/col"));
            if (row < 0 || row >= m.rows || col < 0 || col >= m.cols)
                fail(ep, "entry position outside the matrix shape");
            const json& terms = get_array(member(entries[e], ep, "terms"),
                                          ep + "/terms");
            heat::LaurentEntry entry;
            for (std::size_t ti = 0; ti < terms.size(); ++ti) {
                const std::string tp = ep + "/terms/" + std::to_string(ti);
                heat::LaurentTerm term;
                const json& expo = get_array(member(terms[ti], tp, "exponent"),
                                             tp + "/exponent");
                for (std::size_t a = 0; a < expo.size(); ++a)
                    term.exponents.push_back(
                        get_int(expo[a], tp + "/exponent/" + std::to_string(a)));
                term.coeff = get_complex(member(terms[ti], tp, "coeff"), tp + "/coeff");
                entry.push_back(std::move(term));
            }
            m.at(row, col) = std::move(entry);
        }
        differentials.push_back(std::move(m));
    }
    try {
        return heat::make_laurent_complex(rank, std::move(dims),
                                          std::move(differentials));
    } catch (const SchemaError& e) {
        fail("/differentials", e.what());
    }
}

ValueFile parse_values(const std::string& text) {
    json j = parse_text(text);
    ValueFile out;
    std::string kind = member(j, "", "kind").is_string()
                           ? j["kind"].get<std::string>()
                           : std::string();
    if (kind == "betti")
        out.kind = InvariantKind::betti;
    else if (kind == "torsion")
        out.kind = InvariantKind::torsion;
    else if (kind == "eta")
        out.kind = InvariantKind::eta;
    else
        fail("/kind", "expected one of betti|torsion|eta");
    const json& values = get_array(member(j, "", "values"), "/values");
    for (std::size_t i = 0; i < values.size(); ++i)
        out.values.push_back(get_complex(values[i], "/values/" + std::to_string(i)));
    return out;
}

}  // namespace deloc::io
