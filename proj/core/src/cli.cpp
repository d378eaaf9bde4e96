#include "deloc/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deloc/finite_cover.hpp"
#include "deloc/groups.hpp"
#include "deloc/heat_trace.hpp"
#include "deloc/hyperbolic.hpp"
#include "deloc/invariants.hpp"
#include "deloc/io.hpp"
#include "deloc/mapping_torus.hpp"
#include "deloc/nielsen.hpp"

namespace deloc::cli {

using nlohmann::json;

namespace {

json cjson(Complex v) { return json::array({v.real(), v.imag()}); }

Complex parse_complex_flag(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw SchemaError("expected a number in '" + s + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw SchemaError("expected 're' or 're,im' in '" + s + "'");
    }
    return {re, im};
}

template <class T>
std::vector<T> split_list(const std::string& s) {
    std::vector<T> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        std::istringstream conv(tok);
        T v;
        if (!(conv >> v)) throw SchemaError("cannot parse list entry '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << v;
    return ss.str();
}

struct Run {
    std::vector<std::string> argv;
    double tolerance = 1e-10;
    std::uint64_t digest = 0;
    std::vector<std::string> formulas;
    json diagnostics = json::object();
    json result;
    bool produced = false;

    std::string load(const std::string& path) {
        std::string text = io::read_file(path);
        digest ^= io::fnv1a(text);
        return text;
    }

    void finish(const json& r) {
        result = r;
        produced = true;
    }
};

void emit(std::ostream& out, Run& run) {
    std::string argv_joined;
    for (const auto& a : run.argv) argv_joined += a + '\n';
    json record{
        {"argv", run.argv},
        {"input_digest", hex64(run.digest ^ io::fnv1a(argv_joined))},
        {"tolerances", {{"tolerance", run.tolerance}}},
        {"formulas", run.formulas},
        {"outputs", run.result},
    };
    json doc{
        {"result", run.result},
        {"diagnostics", run.diagnostics},
        {"run_record", record},
    };
    out << doc.dump(2) << "\n";
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Run run;
    run.argv = args;

    CLI::App app{"per-conjugacy-class heat-trace invariants (torsion, eta, "
                 "Betti) of covers, with closed forms and oracle routes"};
    app.require_subcommand(1);

    // ---------------------------------------------------------------- core
    auto* core = app.add_subcommand("core", "shared transforms and combinators");
    core->require_subcommand(1);

    {
        auto* gm = core->add_subcommand("gaussian-moment",
                                        "closed form of the Gaussian dt/t moment");
        auto length = std::make_shared<double>(1.0);
        auto rate = std::make_shared<double>(0.0);
        auto oracle = std::make_shared<bool>(false);
        gm->add_option("--l", *length, "geodesic length")->required();
        gm->add_option("--c", *rate, "spectral offset")->required();
        gm->add_flag("--oracle", *oracle, "also run the quadrature route");
        gm->add_option("--tolerance", run.tolerance, "quadrature tolerance");
        gm->callback([&run, length, rate, oracle]() {
            run.formulas = {"gaussian-moment-closed-form"};
            double closed = gaussian_moment(*length, *rate);
            if (*oracle) {
                run.formulas.push_back("log-axis-quadrature-oracle");
                double quad = gaussian_moment_quadrature(*length, *rate, run.tolerance);
                run.diagnostics["oracle"] = {{"value", quad},
                                             {"difference", std::abs(closed - quad)}};
            }
            run.finish(closed);
        });
    }
    {
        auto* van = core->add_subcommand("vanishing", "parity vanishing rules");
        auto d = std::make_shared<int>(0);
        auto kind = std::make_shared<std::string>();
        van->add_option("--d", *d, "manifold dimension")->required();
        van->add_option("--kind", *kind, "torsion|signature-eta")->required();
        van->callback([&run, d, kind]() {
            run.formulas = {"parity-vanishing-rule"};
            VanishingKind vk;
            if (*kind == "torsion")
                vk = VanishingKind::torsion;
            else if (*kind == "signature-eta")
                vk = VanishingKind::signature_eta;
            else
                throw SchemaError("--kind must be torsion or signature-eta");
            auto forced = forced_vanishing(*d, vk);
            if (forced)
                run.finish(json{{"forced", true}, {"value", cjson(*forced)}});
            else
                run.finish(json{{"forced", false}});
        });
    }
    {
        auto* pt = core->add_subcommand("product-torsion",
                                        "torsion of a product space");
        auto chi1 = std::make_shared<long long>(0);
        auto chi2 = std::make_shared<long long>(0);
        auto t1 = std::make_shared<std::string>("0");
        auto t2 = std::make_shared<std::string>("0");
        auto g1 = std::make_shared<bool>(false);
        auto g2 = std::make_shared<bool>(false);
        pt->add_option("--chi1", *chi1)->required();
        pt->add_option("--chi2", *chi2)->required();
        pt->add_option("--t1", *t1)->required();
        pt->add_option("--t2", *t2)->required();
        pt->add_flag("--g1-trivial", *g1);
        pt->add_flag("--g2-trivial", *g2);
        pt->callback([&run, chi1, chi2, t1, t2, g1, g2]() {
            run.formulas = {"product-splitting-formula"};
            run.finish(cjson(product_torsion(*chi1, *chi2, parse_complex_flag(*t1),
                                             parse_complex_flag(*t2), *g1, *g2)));
        });
    }
    {
        auto* pe = core->add_subcommand("product-eta", "eta of a product space");
        auto a1 = std::make_shared<std::string>("0");
        auto a2 = std::make_shared<std::string>("0");
        auto e1 = std::make_shared<std::string>("0");
        auto e2 = std::make_shared<std::string>("0");
        auto g1 = std::make_shared<bool>(false);
        auto g2 = std::make_shared<bool>(false);
        pe->add_option("--a1", *a1, "index-density integral of factor one")->required();
        pe->add_option("--a2", *a2, "index-density integral of factor two")->required();
        pe->add_option("--eta1", *e1)->required();
        pe->add_option("--eta2", *e2)->required();
        pe->add_flag("--g1-trivial", *g1);
        pe->add_flag("--g2-trivial", *g2);
        pe->callback([&run, a1, a2, e1, e2, g1, g2]() {
            run.formulas = {"product-splitting-formula"};
            run.finish(cjson(product_eta(parse_complex_flag(*a1), parse_complex_flag(*a2),
                                         parse_complex_flag(*e1), parse_complex_flag(*e2),
                                         *g1, *g2)));
        });
    }
    {
        auto* dual = core->add_subcommand("dual", "inverse-class value");
        auto kind = std::make_shared<std::string>("torsion");
        auto value = std::make_shared<std::string>("0");
        dual->add_option("--kind", *kind, "betti|torsion|eta");
        dual->add_option("--value", *value)->required();
        dual->callback([&run, kind, value]() {
            run.formulas = {"conjugate-duality"};
            InvariantValue v;
            if (*kind == "betti")
                v.kind = InvariantKind::betti;
            else if (*kind == "torsion")
                v.kind = InvariantKind::torsion;
            else if (*kind == "eta")
                v.kind = InvariantKind::eta;
            else
                throw SchemaError("--kind must be betti, torsion or eta");
            v.value = parse_complex_flag(*value);
            run.finish(cjson(dual_class_value(v).value));
        });
    }

    // ---------------------------------------------------------- hyperbolic
    auto* hyp = app.add_subcommand("hyperbolic",
                                   "closed geodesic invariants of hyperbolic "
                                   "manifolds");
    hyp->require_subcommand(1);
    auto geo_n = std::make_shared<int>(1);
    auto geo_k = std::make_shared<int>(1);
    auto geo_l = std::make_shared<double>(1.0);
    auto geo_angles = std::make_shared<std::string>("0");
    auto add_geodesic_flags = [&](CLI::App* sub) {
        sub->add_option("--n", *geo_n, "dimension parameter (d = 2n+1)")->required();
        sub->add_option("--k", *geo_k, "geodesic multiplicity")->required();
        sub->add_option("--l", *geo_l, "geodesic length")->required();
        sub->add_option("--angles", *geo_angles, "comma-separated holonomy angles")
            ->required();
    };
    auto make_geodesic = [geo_n, geo_k, geo_l, geo_angles]() {
        return hyperbolic::make_geodesic_class(*geo_n, *geo_k, *geo_l,
                                               split_list<double>(*geo_angles));
    };

    {
        auto* sub = hyp->add_subcommand("torsion", "per-class analytic torsion");
        add_geodesic_flags(sub);
        auto oracle = std::make_shared<bool>(false);
        sub->add_flag("--oracle", *oracle, "validate with the heat-kernel quadrature");
        sub->add_option("--tolerance", run.tolerance, "quadrature tolerance");
        sub->callback([&run, make_geodesic, oracle]() {
            run.formulas = {"geodesic-torsion-closed-form"};
            hyperbolic::GeodesicClass g = make_geodesic();
            double closed = hyperbolic::torsion_closed(g);
            if (*oracle) {
                run.formulas.push_back("log-axis-quadrature-oracle");
                std::vector<HeatTraceSampler> samplers;
                for (int p = 0; p <= 2 * g.n + 1; ++p)
                    samplers.push_back(hyperbolic::selberg_heat_trace(g, p));
                TorsionSeries series =
                    assemble_torsion_series(samplers, Complex{0.0, 0.0});
                Complex quad = torsion_integral(series, run.tolerance);
                run.diagnostics["oracle"] = {
                    {"value", cjson(quad)},
                    {"difference", std::abs(quad - closed)}};
            }
            run.finish(closed);
        });
    }
    {
        auto* sub = hyp->add_subcommand("eta", "per-class eta invariant");
        add_geodesic_flags(sub);
        auto oracle = std::make_shared<bool>(false);
        sub->add_flag("--oracle", *oracle, "validate with the odd-kernel quadrature");
        sub->add_option("--tolerance", run.tolerance, "quadrature tolerance");
        sub->callback([&run, make_geodesic, oracle]() {
            run.formulas = {"geodesic-eta-closed-form"};
            hyperbolic::GeodesicClass g = make_geodesic();
            double closed = hyperbolic::eta_closed(g);
            if (*oracle) {
                if (g.n % 2 == 0) {
                    run.diagnostics["oracle"] =
                        "skipped: the invariant vanishes identically for even n";
                } else {
                    run.formulas.push_back("odd-kernel-quadrature-oracle");
                    Complex quad =
                        eta_integral(hyperbolic::millson_eta_sampler(g), run.tolerance);
                    run.diagnostics["oracle"] = {
                        {"value", cjson(quad)},
                        {"difference", std::abs(quad - closed)}};
                }
            }
            run.finish(closed);
        });
    }
    {
        auto* sub = hyp->add_subcommand(
            "length-spectrum", "recover the length from torsion power decay");
        add_geodesic_flags(sub);
        auto rmin = std::make_shared<int>(4);
        auto rmax = std::make_shared<int>(30);
        auto table = std::make_shared<bool>(false);
        sub->add_option("--r-min", *rmin, "first power");
        sub->add_option("--r-max", *rmax, "last power");
        sub->add_flag("--table", *table, "print an aligned text table to stderr");
        sub->callback([&run, make_geodesic, rmin, rmax, table, &err]() {
            run.formulas = {"torsion-power-decay-regression"};
            hyperbolic::GeodesicClass g = make_geodesic();
            std::vector<std::pair<int, Complex>> values;
            json records = json::array();
            for (int r = *rmin; r <= *rmax; ++r) {
                double v = hyperbolic::torsion_closed(hyperbolic::power_class(g, r));
                values.emplace_back(r, Complex{v, 0.0});
                records.push_back({{"r", r}, {"torsion", v}});
            }
            hyperbolic::LengthFit fit = hyperbolic::recover_length(values, g.n);
            if (*table) {
                err << std::setw(6) << "r" << std::setw(26) << "torsion" << "\n";
                for (const auto& [r, v] : values)
                    err << std::setw(6) << r << std::setw(26)
                        << std::setprecision(16) << v.real() << "\n";
            }
            run.diagnostics["records"] = records;
            run.finish(json{{"length", fit.length},
                            {"residual_rms", fit.residual_rms},
                            {"points_used", fit.points_used},
                            {"reliable", fit.reliable},
                            {"note", fit.note}});
        });
    }

    // ------------------------------------------------------- mapping-torus
    auto* mt = app.add_subcommand("mapping-torus",
                                  "invariants from the fiber cohomology action");
    mt->require_subcommand(1);
    {
        auto* sub = mt->add_subcommand("torsion", "per-winding-class torsion");
        auto k = std::make_shared<long long>(1);
        auto file = std::make_shared<std::string>();
        auto oracle = std::make_shared<bool>(false);
        auto grid = std::make_shared<long>(1024);
        sub->add_option("--k", *k, "winding class (nonzero)")->required();
        sub->add_option("--file", *file, "action JSON file")->required();
        sub->add_flag("--oracle", *oracle, "validate with the circle average");
        sub->add_option("--grid", *grid, "starting grid for the oracle");
        sub->callback([&run, k, file, oracle, grid]() {
            run.formulas = {"spectral-clamp-sum"};
            torus::CohomologyAction action = io::parse_action(run.load(*file));
            Complex value = torus::torsion_k(action, *k);
            if (*oracle) {
                run.formulas.push_back("circle-average-oracle");
                torus::FourierDiagnostics diag =
                    torus::fourier_torsion_oracle_info(action, *k, *grid);
                run.diagnostics["oracle"] = {
                    {"value", cjson(diag.value)},
                    {"difference", std::abs(diag.value - value)},
                    {"grid_used", diag.grid_used},
                    {"residual", diag.residual}};
            }
            run.finish(cjson(value));
        });
    }
    {
        auto* sub = mt->add_subcommand("zeta", "fixed-point zeta function");
        auto file = std::make_shared<std::string>();
        auto at = std::make_shared<std::string>();
        auto series = std::make_shared<int>(0);
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--file", *file, "action JSON file")->required();
        sub->add_option("--at", *at, "evaluation point 're[,im]'");
        sub->add_option("--series", *series, "report the first N log-series terms");
        sub->add_flag("--oracle", *oracle,
                      "check the log series against alternating traces");
        sub->callback([&run, file, at, series, oracle]() {
            run.formulas = {"characteristic-polynomial-product"};
            torus::CohomologyAction action = io::parse_action(run.load(*file));
            RationalZeta zeta = torus::zeta_rational(action);
            if (*oracle) {
                run.formulas.push_back("alternating-trace-series-oracle");
                std::vector<Complex> got = zeta.log_series(10);
                double worst = 0.0;
                for (int k = 1; k <= 10; ++k) {
                    Complex expect = torus::lefschetz_number(action, k) /
                                     static_cast<double>(k);
                    worst = std::max(worst, std::abs(got[k - 1] - expect));
                }
                run.diagnostics["oracle"] = {{"series_terms", 10},
                                             {"max_difference", worst}};
            }
            json factors{{"numerator", json::array()},
                         {"denominator", json::array()}};
            for (const Poly& p : zeta.numerator) {
                json c = json::array();
                for (Complex v : p.coeff) c.push_back(cjson(v));
                factors["numerator"].push_back(c);
            }
            for (const Poly& p : zeta.denominator) {
                json c = json::array();
                for (Complex v : p.coeff) c.push_back(cjson(v));
                factors["denominator"].push_back(c);
            }
            json result{{"factors", factors}};
            if (!at->empty()) {
                Complex z0 = parse_complex_flag(*at);
                int order = zeta.order_at(z0);
                if (order < 0)
                    result["at"] = json{{"pole", true}, {"order", -order}};
                else
                    result["at"] = json{{"pole", false},
                                        {"value", cjson(zeta.value_at(z0))},
                                        {"zero_order", order}};
            }
            if (*series > 0) {
                json s = json::array();
                for (Complex c : zeta.log_series(*series)) s.push_back(cjson(c));
                result["log_series"] = s;
            }
            run.finish(result);
        });
    }
    {
        auto* sub = mt->add_subcommand("eta", "suspension eta from the index datum");
        auto k = std::make_shared<long long>(1);
        auto st = std::make_shared<std::string>("0");
        sub->add_option("--k", *k, "winding class (nonzero)")->required();
        sub->add_option("--supertrace", *st, "kernel supertrace 're[,im]'")->required();
        sub->callback([&run, k, st]() {
            run.formulas = {"suspension-index-eta"};
            run.finish(cjson(torus::atiyah_bott_eta(parse_complex_flag(*st), *k)));
        });
    }

    // ------------------------------------------------------------- nielsen
    auto* ni = app.add_subcommand("nielsen",
                                  "equivariant fixed-point data of finite covers");
    ni->require_subcommand(1);
    {
        auto* sub = ni->add_subcommand("index", "twisted fixed point indices");
        auto file = std::make_shared<std::string>();
        auto k = std::make_shared<long long>(1);
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--file", *file, "equivariant complex JSON file")->required();
        sub->add_option("--k", *k, "twisting power")->required();
        sub->add_flag("--oracle", *oracle,
                      "note the built-in class-invariance verification");
        sub->callback([&run, file, k, oracle]() {
            run.formulas = {"twisted-fixed-point-index"};
            nielsen::EquivariantComplex x =
                io::parse_equivariant_complex(run.load(*file));
            groups::TwistedClassDecomposition dec =
                groups::twisted_classes(x.group, x.alpha, *k);
            json classes = json::array();
            for (std::size_t c = 0; c < dec.members.size(); ++c) {
                int f = dec.representatives[c];
                classes.push_back(
                    {{"representative", x.group.labels[f]},
                     {"size", dec.sizes[c]},
                     {"stabilizer_order", dec.stabilizer_orders[c]},
                     {"index", nielsen::nielsen_index(x, *k, f)}});
            }
            if (*oracle)
                run.diagnostics["oracle"] = {
                    {"class_invariance",
                     "index recomputed at every member of each twisted class"},
                    {"arithmetic", "exact rational"}};
            run.finish(json{{"k", *k}, {"classes", classes}});
        });
    }
    {
        auto* sub = ni->add_subcommand("zeta", "twisted zeta function");
        auto file = std::make_shared<std::string>();
        auto repfile = std::make_shared<std::string>();
        auto at = std::make_shared<std::string>();
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--file", *file, "equivariant complex JSON file")->required();
        sub->add_option("--rep", *repfile, "representation JSON file")->required();
        sub->add_option("--at", *at, "evaluation point 're[,im]'");
        sub->add_flag("--oracle", *oracle,
                      "report the series-vs-class-sum comparison");
        sub->callback([&run, file, repfile, at, oracle]() {
            run.formulas = {"twisted-determinant-product"};
            nielsen::EquivariantComplex x =
                io::parse_equivariant_complex(run.load(*file));
            groups::InducedRepData rep = io::parse_rep(run.load(*repfile));
            RationalZeta zeta = nielsen::zeta_rho(x, rep);
            if (*oracle) {
                run.formulas.push_back("class-sum-series-oracle");
                std::vector<Complex> got = zeta.log_series(10);
                std::vector<Complex> expect =
                    nielsen::defining_log_series(x, rep, 10);
                double worst = 0.0;
                for (int t = 0; t < 10; ++t)
                    worst = std::max(worst, std::abs(got[t] - expect[t]));
                run.diagnostics["oracle"] = {{"series_terms", 10},
                                             {"max_difference", worst}};
            }
            json result;
            json num = json::array(), den = json::array();
            for (const Poly& p : zeta.numerator) {
                json c = json::array();
                for (Complex v : p.coeff) c.push_back(cjson(v));
                num.push_back(c);
            }
            for (const Poly& p : zeta.denominator) {
                json c = json::array();
                for (Complex v : p.coeff) c.push_back(cjson(v));
                den.push_back(c);
            }
            result["factors"] = {{"numerator", num}, {"denominator", den}};
            if (!at->empty()) {
                Complex z0 = parse_complex_flag(*at);
                int order = zeta.order_at(z0);
                if (order < 0)
                    result["at"] = json{{"pole", true}, {"order", -order}};
                else
                    result["at"] = json{{"pole", false},
                                        {"value", cjson(zeta.value_at(z0))},
                                        {"zero_order", order}};
            }
            run.finish(result);
        });
    }
    {
        auto* sub = ni->add_subcommand("pairing",
                                       "character pairing ln|zeta(1)|^2");
        auto file = std::make_shared<std::string>();
        auto repfile = std::make_shared<std::string>();
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--file", *file, "equivariant complex JSON file")->required();
        sub->add_option("--rep", *repfile, "representation JSON file")->required();
        sub->add_flag("--oracle", *oracle,
                      "report the series-vs-class-sum comparison");
        sub->callback([&run, file, repfile, oracle]() {
            run.formulas = {"log-zeta-pairing"};
            nielsen::EquivariantComplex x =
                io::parse_equivariant_complex(run.load(*file));
            groups::InducedRepData rep = io::parse_rep(run.load(*repfile));
            double pairing = nielsen::eq8_pairing(x, rep);
            if (*oracle) {
                run.formulas.push_back("class-sum-series-oracle");
                RationalZeta zeta = nielsen::zeta_rho(x, rep);
                std::vector<Complex> got = zeta.log_series(10);
                std::vector<Complex> expect =
                    nielsen::defining_log_series(x, rep, 10);
                double worst = 0.0;
                for (int t = 0; t < 10; ++t)
                    worst = std::max(worst, std::abs(got[t] - expect[t]));
                run.diagnostics["oracle"] = {{"series_terms", 10},
                                             {"max_difference", worst}};
            }
            run.finish(pairing);
        });
    }

    // ---------------------------------------------------------- heat-trace
    {
        auto* sub = app.add_subcommand(
            "heat-trace", "per-class heat traces on free abelian covers");
        auto file = std::make_shared<std::string>();
        auto mflag = std::make_shared<std::string>("1");
        auto p = std::make_shared<int>(0);
        auto t = std::make_shared<double>(1.0);
        auto grid = std::make_shared<long>(64);
        auto betti = std::make_shared<bool>(false);
        auto tmax = std::make_shared<double>(64.0);
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--file", *file, "Laurent complex JSON file")->required();
        sub->add_option("--m", *mflag, "class vector, comma separated")->required();
        sub->add_option("--p", *p, "form degree")->required();
        sub->add_option("--t", *t, "diffusion time");
        sub->add_option("--grid", *grid, "grid per torus dimension (>= 64)");
        sub->add_flag("--betti", *betti, "run the large-time ladder instead");
        sub->add_option("--t-max", *tmax, "ladder endpoint for --betti");
        sub->add_flag("--oracle", *oracle, "report a doubled-grid check");
        sub->callback([&run, file, mflag, p, t, grid, betti, tmax, oracle]() {
            heat::LaurentComplex x = io::parse_laurent_complex(run.load(*file));
            std::vector<long long> m = split_list<long long>(*mflag);
            if (*betti) {
                run.formulas = {"heat-ladder-extrapolation"};
                heat::DecayReport rep =
                    heat::delocalized_betti(x, *p, m, *tmax, *grid);
                json ladder = json::array();
                for (const auto& [time, value] : rep.ladder)
                    ladder.push_back({{"t", time}, {"value", cjson(value)}});
                run.diagnostics["ladder"] = ladder;
                run.finish(json{{"extrapolated_limit", cjson(rep.extrapolated_limit)},
                                {"exponential_rate", rep.exponential_rate},
                                {"power_rate", rep.power_rate},
                                {"anomaly", rep.anomaly},
                                {"note", rep.note}});
            } else {
                run.formulas = {"dual-torus-fourier-trace"};
                heat::HeatTraceResult res =
                    heat::delocalized_heat_trace(x, *p, m, *t, *grid);
                run.diagnostics["grid_used"] = res.grid_used;
                run.diagnostics["refinement_residual"] = res.refinement_residual;
                if (*oracle) {
                    heat::HeatTraceResult twice = heat::delocalized_heat_trace(
                        x, *p, m, *t, std::max<long>(128, 2 * res.grid_used));
                    run.diagnostics["oracle"] = {
                        {"value", cjson(twice.value)},
                        {"difference", std::abs(twice.value - res.value)}};
                }
                run.finish(cjson(res.value));
            }
        });
    }

    // --------------------------------------------------------- finite-cover
    auto* fc = app.add_subcommand("finite-cover",
                                  "convert between per-class and twisted values");
    fc->require_subcommand(1);
    {
        auto* sub = fc->add_subcommand("to-twisted",
                                       "per-representation from per-class values");
        auto tablef = std::make_shared<std::string>();
        auto valuesf = std::make_shared<std::string>();
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--table", *tablef, "character table JSON file")->required();
        sub->add_option("--values", *valuesf, "per-class values JSON file")->required();
        sub->add_flag("--oracle", *oracle, "round-trip check");
        sub->callback([&run, tablef, valuesf, oracle]() {
            run.formulas = {"character-sum"};
            cover::ClassValueVector v;
            v.table = io::parse_character_table(run.load(*tablef));
            io::ValueFile vals = io::parse_values(run.load(*valuesf));
            v.kind = vals.kind;
            v.values = vals.values;
            std::vector<Complex> twisted = cover::twisted_from_delocalized(v);
            if (*oracle) {
                run.formulas.push_back("character-solve");
                cover::ClassValueVector back =
                    cover::delocalized_from_twisted(v.table, twisted, v.kind);
                double diff = 0.0;
                for (std::size_t i = 0; i < back.values.size(); ++i)
                    diff = std::max(diff, std::abs(back.values[i] - v.values[i]));
                run.diagnostics["oracle"] = {{"round_trip_difference", diff}};
            }
            json result = json::array();
            for (Complex c : twisted) result.push_back(cjson(c));
            run.finish(json{{"results", result}});
        });
    }
    {
        auto* sub = fc->add_subcommand("from-twisted",
                                       "per-class from per-representation values");
        auto tablef = std::make_shared<std::string>();
        auto valuesf = std::make_shared<std::string>();
        auto oracle = std::make_shared<bool>(false);
        sub->add_option("--table", *tablef, "character table JSON file")->required();
        sub->add_option("--values", *valuesf, "per-representation values JSON file")
            ->required();
        sub->add_flag("--oracle", *oracle, "round-trip check");
        sub->callback([&run, tablef, valuesf, oracle]() {
            run.formulas = {"character-solve"};
            groups::CharacterTable table =
                io::parse_character_table(run.load(*tablef));
            io::ValueFile vals = io::parse_values(run.load(*valuesf));
            cover::SolveDiagnostics diag;
            cover::ClassValueVector v =
                cover::delocalized_from_twisted(table, vals.values, vals.kind, &diag);
            run.diagnostics["condition_number"] = diag.condition_number;
            if (diag.condition_warning)
                run.diagnostics["condition_warning"] =
                    "character table is ill conditioned";
            if (*oracle) {
                run.formulas.push_back("character-sum");
                std::vector<Complex> forward = cover::twisted_from_delocalized(v);
                double diff = 0.0;
                for (std::size_t i = 0; i < forward.size(); ++i)
                    diff = std::max(diff, std::abs(forward[i] - vals.values[i]));
                run.diagnostics["oracle"] = {{"round_trip_difference", diff}};
            }
            json result = json::array();
            for (Complex c : v.values) result.push_back(cjson(c));
            run.finish(json{{"values", result}});
        });
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }

    if (!run.produced) {
        err << "error: no result produced\n";
        return 1;
    }
    emit(out, run);
    return 0;
}

}  // namespace deloc::cli
