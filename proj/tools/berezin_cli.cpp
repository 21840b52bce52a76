// berezin: batch front end for Berezin range / radius / numerical range
// computations and the inequality verification suites.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "berezin/documents.hpp"
#include "berezin/inequalities.hpp"
#include "berezin/matrix_lab.hpp"
#include "berezin/range_explorer.hpp"
#include "berezin/rkhs.hpp"

namespace {

using namespace berezin;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitStrictWitness = 4;
constexpr int kExitViolation = 5;

struct CommonOpts {
    std::string op_file;
    std::string matrix_file;
    std::string space;
    int grid_r = 200;
    int grid_theta = 256;
    double r_max = 0.999;
    double tol = -1.0;  // sentinel: each command supplies its own default
    std::uint64_t seed = 42;
    long trials = 1000;
    std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
    std::vector<double> nu = {0.25, 0.5, 0.75};
    std::string out;
    std::string format = "csv";
    bool strict = false;
};

std::ostream& open_sink(const std::string& out, std::ofstream& file) {
    if (out.empty()) return std::cout;
    file.open(out);
    if (!file) throw ParseError("cannot open output file: " + out);
    return file;
}

std::string complex_str(Complex c) {
    return format_double(c.real()) + (c.imag() < 0 ? "-" : "+") +
           format_double(std::abs(c.imag())) + "i";
}

RunManifest make_manifest(const std::string& command, const CommonOpts& o,
                          std::initializer_list<const char*> used) {
    RunManifest m;
    m.command = command;
    if (!o.op_file.empty()) m.inputs.push_back(o.op_file);
    if (!o.matrix_file.empty()) m.inputs.push_back(o.matrix_file);
    m.seed = o.seed;
    for (const char* key : used) {
        std::string k = key;
        if (k == "grid-r") m.parameters[k] = std::to_string(o.grid_r);
        else if (k == "grid-theta") m.parameters[k] = std::to_string(o.grid_theta);
        else if (k == "rmax") m.parameters[k] = format_double(o.r_max);
        else if (k == "tol") m.parameters[k] = format_double(o.tol);
        else if (k == "trials") m.parameters[k] = std::to_string(o.trials);
        else if (k == "format") m.parameters[k] = o.format;
        else if (k == "strict") m.parameters[k] = o.strict ? "true" : "false";
        else if (k == "dims") {
            std::string v;
            for (int d : o.dims) v += (v.empty() ? "" : ",") + std::to_string(d);
            m.parameters[k] = v;
        } else if (k == "nu") {
            std::string v;
            for (double x : o.nu) v += (v.empty() ? "" : ",") + format_double(x);
            m.parameters[k] = v;
        }
    }
    return m;
}

FiniteRankOperator load_operator(const CommonOpts& o) {
    if (o.op_file.empty()) throw ParseError("--op FILE is required");
    FiniteRankOperator op = parse_operator_document(load_json_file(o.op_file));
    if (!o.space.empty()) {
        if (o.space == "hardy") op.space = SpaceSpec::hardy();
        else if (o.space == "bergman") op.space = SpaceSpec::bergman();
        else throw ParseError("--space must be hardy or bergman");
    }
    return op;
}

ComplexMatrix load_matrix(const CommonOpts& o) {
    if (o.matrix_file.empty()) throw ParseError("--matrix FILE is required");
    return parse_matrix_document(load_json_file(o.matrix_file));
}

// Recognize the operators whose Berezin radius has a closed form, so the
// report can show the oracle value alongside the estimate.
struct FamilyTag {
    std::string tag;
    double oracle = 0.0;
};

std::optional<FamilyTag> detect_family(const FiniteRankOperator& op) {
    if (op.space.kind == SpaceKind::finite) return std::nullopt;
    const bool hardy = op.space.kind == SpaceKind::hardy;

    if (op.terms.size() == 1) {
        const auto& [g, h] = op.terms.front();
        int dg = g.degree(), dh = h.degree();
        if (dg < 0 || dh < 0) return std::nullopt;
        bool g_mono = g == AnalyticPolynomial::monomial(dg, g.coeff(dg));
        bool h_mono = h == AnalyticPolynomial::monomial(dh, h.coeff(dh));
        if (!g_mono || !h_mono) return std::nullopt;
        Complex cg = g.coeff(dg), ch = h.coeff(dh);
        if (std::abs(cg - 1.0) > 0 || std::abs(ch - 1.0) > 0) return std::nullopt;
        if (dg == dh && dg >= 1) {
            FamilyParams p;
            p.n = dg;
            auto fam = hardy ? RadiusFamily::hardy_monomial : RadiusFamily::bergman_monomial;
            std::string name = hardy ? "hardy_monomial" : "bergman_monomial";
            return FamilyTag{name + "(" + std::to_string(dg) + ")",
                             closed_form_radius(fam, p)};
        }
        if (dh > dg) {
            int n = dg, m = dh;
            if (n >= 1) {
                FamilyParams p;
                p.n = n;
                p.m = m;
                auto fam = hardy ? RadiusFamily::hardy_disc : RadiusFamily::bergman_disc;
                std::string name = hardy ? "hardy_disc" : "bergman_disc";
                return FamilyTag{name + "(" + std::to_string(m) + "," + std::to_string(n) + ")",
                                 closed_form_radius(fam, p)};
            }
            // g = 1, h = z^m: sup over x in (0,1) of x^m (1-x^2)^s directly.
            double s = op.space.kernel_exponent();
            double x = std::sqrt(static_cast<double>(m) / (m + 2.0 * s));
            double name_val = std::pow(x, m) * std::pow(1.0 - x * x, s);
            std::string name = hardy ? "hardy_shift" : "bergman_shift";
            return FamilyTag{name + "(" + std::to_string(m) + ")", name_val};
        }
        return std::nullopt;
    }

    // Equal-moduli diagonal family: terms (a_i z^i, a_i z^i), i = 1..n, |a_i| = a.
    if (!hardy) return std::nullopt;
    double a = -1.0;
    for (std::size_t i = 0; i < op.terms.size(); ++i) {
        const auto& [g, h] = op.terms[i];
        int d = static_cast<int>(i) + 1;
        if (g.degree() != d || h.degree() != d || !(g == h)) return std::nullopt;
        if (!(g == AnalyticPolynomial::monomial(d, g.coeff(d)))) return std::nullopt;
        double mod = std::abs(g.coeff(d));
        if (a < 0) a = mod;
        else if (std::abs(mod - a) > 1e-15 * a) return std::nullopt;
    }
    FamilyParams p;
    p.n = static_cast<int>(op.terms.size());
    p.a = a;
    return FamilyTag{"hardy_equal_moduli(" + std::to_string(p.n) + ")",
                     closed_form_radius(RadiusFamily::hardy_equal_moduli, p)};
}

int cmd_range(const CommonOpts& o) {
    FiniteRankOperator op = load_operator(o);
    DiscGrid grid{o.grid_r, o.grid_theta, o.r_max};
    RangeSample sample = sample_range(op, grid);
    RunManifest manifest = make_manifest("range", o, {"grid-r", "grid-theta", "rmax", "format"});

    std::ofstream file;
    std::ostream& sink = open_sink(o.out, file);
    if (o.format == "csv") {
        sink << "# " << manifest_json(manifest).dump() << "\n";
        sink << "lambda_re,lambda_im,value_re,value_im\n";
        for (const auto& [lambda, value] : sample.points) {
            sink << format_double(lambda.real()) << ',' << format_double(lambda.imag()) << ','
                 << format_double(value.real()) << ',' << format_double(value.imag()) << '\n';
        }
    } else {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& [lambda, value] : sample.points) {
            points.push_back({{"lambda", {lambda.real(), lambda.imag()}},
                              {"value", {value.real(), value.imag()}}});
        }
        nlohmann::json doc{{"manifest", manifest_json(manifest)}, {"points", points}};
        sink << doc.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_radius(const CommonOpts& o) {
    FiniteRankOperator op = load_operator(o);
    RadiusConfig cfg;
    cfg.grid = DiscGrid{o.grid_r, o.grid_theta, o.r_max};
    cfg.tol = o.tol > 0 ? o.tol : 1e-10;
    RadiusEstimate est = estimate_berezin_radius_detail(op, cfg);
    RunManifest manifest = make_manifest("radius", o, {"grid-r", "grid-theta", "rmax"});
    manifest.parameters["tol"] = format_double(cfg.tol);

    nlohmann::json doc{{"manifest", manifest_json(manifest)},
                       {"radius", est.value},
                       {"argmax", {est.argmax.real(), est.argmax.imag()}}};
    if (auto fam = detect_family(op)) {
        doc["family"] = fam->tag;
        doc["oracle"] = fam->oracle;
        doc["difference"] = est.value - fam->oracle;
    }
    std::ofstream file;
    open_sink(o.out, file) << doc.dump(2) << '\n';
    return kExitOk;
}

int cmd_convexity(const CommonOpts& o) {
    FiniteRankOperator op = load_operator(o);
    WitnessConfig cfg;
    cfg.grid = DiscGrid{o.grid_r, o.grid_theta, o.r_max};
    cfg.attain_tol = o.tol > 0 ? o.tol : 1e-3;
    auto witness = find_nonconvexity_witness(op, cfg);
    RunManifest manifest =
        make_manifest("convexity", o, {"grid-r", "grid-theta", "rmax", "strict"});
    manifest.parameters["tol"] = format_double(cfg.attain_tol);

    nlohmann::json doc{{"manifest", manifest_json(manifest)}};
    std::ofstream file;
    std::ostream& sink = open_sink(o.out, file);
    if (witness) {
        doc["witness"] = {{"w1", {witness->w1.real(), witness->w1.imag()}},
                          {"w2", {witness->w2.real(), witness->w2.imag()}},
                          {"pre1", {witness->pre1.real(), witness->pre1.imag()}},
                          {"pre2", {witness->pre2.real(), witness->pre2.imag()}},
                          {"midpoint", {witness->midpoint.real(), witness->midpoint.imag()}},
                          {"gap", witness->gap}};
        sink << doc.dump(2) << '\n';
        std::cerr << "witness: w1=" << complex_str(witness->w1)
                  << " w2=" << complex_str(witness->w2)
                  << " midpoint=" << complex_str(witness->midpoint)
                  << " gap=" << format_double(witness->gap) << '\n';
        return o.strict ? kExitStrictWitness : kExitOk;
    }
    doc["witness"] = nullptr;
    sink << doc.dump(2) << '\n';
    std::cerr << "no witness found at tolerance " << format_double(cfg.attain_tol) << '\n';
    return kExitOk;
}

int cmd_numrange(const CommonOpts& o) {
    ComplexMatrix A = load_matrix(o);
    if (!A.is_square()) throw std::domain_error("numrange needs a square matrix");
    int K = std::max(o.grid_theta, 8);
    HullPolygon w = numerical_range_boundary(A, K);
    FiniteBerezinQuantities q = berezin_quantities_finite(A);
    HullPolygon ber_hull = convex_hull(q.ber_set);
    double gap = hull_vs_numrange_gap(A, K);
    RunManifest manifest = make_manifest("numrange", o, {"grid-theta", "format"});

    auto vert_json = [](const HullPolygon& poly) {
        nlohmann::json arr = nlohmann::json::array();
        for (Complex v : poly.vertices) arr.push_back({v.real(), v.imag()});
        return arr;
    };
    std::ofstream file;
    std::ostream& sink = open_sink(o.out, file);
    if (o.format == "csv") {
        sink << "# " << manifest_json(manifest).dump() << "\n";
        sink << "set,vertex_re,vertex_im\n";
        for (Complex v : w.vertices) {
            sink << "numrange," << format_double(v.real()) << ',' << format_double(v.imag())
                 << '\n';
        }
        for (Complex v : q.ber_set) {
            sink << "berezin_set," << format_double(v.real()) << ',' << format_double(v.imag())
                 << '\n';
        }
        for (Complex v : ber_hull.vertices) {
            sink << "berezin_hull," << format_double(v.real()) << ',' << format_double(v.imag())
                 << '\n';
        }
        sink << "gap," << format_double(gap) << ",0\n";
    } else {
        nlohmann::json ber_set = nlohmann::json::array();
        for (Complex v : q.ber_set) ber_set.push_back({v.real(), v.imag()});
        nlohmann::json doc{{"manifest", manifest_json(manifest)},
                           {"numrange_vertices", vert_json(w)},
                           {"berezin_set", ber_set},
                           {"berezin_hull", vert_json(ber_hull)},
                           {"hausdorff_gap", gap}};
        sink << doc.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, const CommonOpts& o) {
    TrialConfig cfg;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.nu_list = o.nu;
    if (suite != "scalar" && suite != "kato" && suite != "refined-kato" &&
        suite != "radius-bound" && suite != "geomean" && suite != "all") {
        throw ParseError("unknown suite '" + suite +
                         "'; expected scalar, kato, refined-kato, radius-bound, geomean or all");
    }

    std::vector<InequalityReport> reports;
    if (suite == "scalar" || suite == "all") {
        auto scalar = verify_scalar_suite(cfg);
        reports.insert(reports.end(), scalar.begin(), scalar.end());
    }
    for (const char* name : {"kato", "refined-kato", "radius-bound", "geomean"}) {
        if (suite == name || suite == "all") {
            reports.push_back(run_matrix_suite(name, cfg, o.dims));
        }
    }

    RunManifest manifest = make_manifest("verify", o, {"trials", "dims", "nu"});
    manifest.parameters["suite"] = suite;
    nlohmann::json suites = nlohmann::json::array();
    long violations = 0;
    for (const auto& r : reports) {
        suites.push_back(report_json(r));
        violations += r.violations;
    }
    nlohmann::json doc{{"manifest", manifest_json(manifest)},
                       {"suites", suites},
                       {"total_violations", violations}};
    std::ofstream file;
    open_sink(o.out, file) << doc.dump(2) << '\n';
    for (const auto& r : reports) {
        std::cerr << r.name << ": " << r.trials << " checks, " << r.violations
                  << " violations, worst margin " << format_double(r.worst_margin) << '\n';
    }
    return violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berezin range, radius and numerical range toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string suite = "all";

    auto add_common = [&](CLI::App* sub, bool wants_op, bool wants_matrix) {
        if (wants_op) {
            sub->add_option("--op", o.op_file, "operator document (json)");
            sub->add_option("--space", o.space, "override the operator's space: hardy|bergman");
        }
        if (wants_matrix) sub->add_option("--matrix", o.matrix_file, "matrix document (json)");
        sub->add_option("--grid-r", o.grid_r, "radial grid points");
        sub->add_option("--grid-theta", o.grid_theta, "angular grid points / boundary angles");
        sub->add_option("--rmax", o.r_max, "outer grid radius < 1");
        sub->add_option("--tol", o.tol, "refinement / attainment tolerance");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--trials", o.trials, "number of random trials");
        sub->add_option("--dims", o.dims, "matrix dimensions to cycle through")->delimiter(',');
        sub->add_option("--nu", o.nu, "interpolation exponents")->delimiter(',');
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--format", o.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--strict", o.strict, "exit 4 when a nonconvexity witness is found");
    };

    auto* range = app.add_subcommand("range", "sample the Berezin range over a polar grid");
    add_common(range, true, false);
    auto* radius = app.add_subcommand("radius", "estimate the Berezin radius");
    add_common(radius, true, false);
    auto* convexity = app.add_subcommand("convexity", "search for a nonconvexity witness");
    add_common(convexity, true, false);
    auto* numrange = app.add_subcommand("numrange", "numerical range vs Berezin set");
    add_common(numrange, false, true);
    auto* verify = app.add_subcommand("verify", "run an inequality verification suite");
    verify->add_option("suite", suite, "scalar|kato|refined-kato|radius-bound|geomean|all");
    add_common(verify, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (range->parsed()) return cmd_range(o);
        if (radius->parsed()) return cmd_radius(o);
        if (convexity->parsed()) return cmd_convexity(o);
        if (numrange->parsed()) return cmd_numrange(o);
        if (verify->parsed()) return cmd_verify(suite, o);
    } catch (const berezin::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitParse;
}
