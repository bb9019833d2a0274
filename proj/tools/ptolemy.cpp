#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptolemy/avariety.hpp"
#include "ptolemy/groebner.hpp"
#include "ptolemy/holonomy.hpp"
#include "ptolemy/ideal.hpp"
#include "ptolemy/shapes.hpp"
#include "ptolemy/triangulation.hpp"

using namespace ptolemy;
using nlohmann::json;

// exit codes: 0 ok, 2 validation, 3 budget, 4 numeric failure
namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNumeric = 4;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<std::string> parse_fixes(const std::vector<std::string>& fixes) {
    std::vector<std::string> names;
    for (const auto& f : fixes) {
        auto eq = f.find('=');
        std::string name = eq == std::string::npos ? f : f.substr(0, eq);
        if (eq != std::string::npos && f.substr(eq + 1) != "1")
            throw std::invalid_argument("only VAR=1 fixes are supported, got '" + f + "'");
        names.push_back(name);
    }
    return names;
}

std::map<std::string, Complex> parse_pins(const std::vector<std::string>& pins) {
    std::map<std::string, Complex> out;
    for (const auto& p : pins) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("pin must be VAR=RE[,IM]");
        std::string name = p.substr(0, eq);
        std::string val = p.substr(eq + 1);
        double re = 0, im = 0;
        auto comma = val.find(',');
        if (comma == std::string::npos) {
            re = std::stod(val);
        } else {
            re = std::stod(val.substr(0, comma));
            im = std::stod(val.substr(comma + 1));
        }
        out[name] = Complex(re, im);
    }
    return out;
}

json header(const std::string& subcommand, const json& config) {
    json j;
    j["tool"] = "ptolemy";
    j["subcommand"] = subcommand;
    j["config"] = config;  // full reproducibility: every default printed
    return j;
}

ExportFormat format_from(const std::string& s) {
    if (s == "plain") return ExportFormat::Plain;
    if (s == "magma") return ExportFormat::Magma;
    if (s == "singular") return ExportFormat::Singular;
    if (s == "json") return ExportFormat::Json;
    throw std::invalid_argument("unknown format: " + s);
}

}  // namespace

namespace {

const char* kSchemaHelp = R"(
Triangulation JSON schema:
  { "name": str, "n": int, "tetrahedra": int,
    "cusps": [ { "index": int, "basis": [[a,b],[c,d]] } ],
    "vertex_cusp": [ [cusp index of each of the 4 vertices] per tet ],
    "gluings": [ { "label": str, "tet": int, "face": int, "to_tet": int,
                   "perm": [int,int,int,int],
                   "dressing": [ [e_mu, e_lambda] x 4 ] } ] }
Optional keys: "tree" (spanning-tree labels), "peripheral_words"
({"mu": .., "lambda": ..}; words are letters with uppercase = inverse, or
"g^-1 h ..." tokens), "representatives" ([{"tet": int, "point": [4 ints]}]).
The cusp basis encodes mu' = mu^a lam^b, lam' = mu^c lam^d.
Certificate JSON (dehn --certificates): [ { "tet": int, "s": [4 ints],
"z": monomial, "one_minus_z": monomial } ].
)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("Enhanced Ptolemy varieties, A-polynomials, Dehn invariants and "
                             "holonomy.\n") +
                 kSchemaHelp};
    app.require_subcommand(1);

    std::string input, out_path, format = "plain", mode = "enhanced", order = "elim";
    std::string point_path, certs_path, emit_dir, word;
    std::vector<std::string> fixes, pins;
    int rank = 0;
    std::uint64_t max_steps = 1'000'000, max_basis = 100'000;
    double tol = 1e-8;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "triangulation JSON file")->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--n", rank, "rank (default: the file's n)");
    };

    auto* generate = app.add_subcommand("generate", "emit the Ptolemy ideal");
    add_common(generate);
    generate->add_option("--mode", mode, "standard|enhanced");
    generate->add_option("--fix", fixes, "coordinate fixed to 1 (repeatable, VAR=1)");
    generate->add_option("--format", format, "plain|magma|singular|json");

    auto* validate = app.add_subcommand("validate", "parse and check cycle consistency");
    add_common(validate);

    auto* gb = app.add_subcommand("gb",
                                  "Groebner basis of the generated ideal (accepts a "
                                  "triangulation or an exported bundle JSON)");
    add_common(gb);
    gb->add_option("--mode", mode, "standard|enhanced");
    gb->add_option("--fix", fixes, "coordinate fixed to 1 (repeatable)");
    gb->add_option("--order", order, "lex|grevlex|elim|elim:VAR,VAR,...");
    gb->add_option("--max-steps", max_steps, "reduction step budget");
    gb->add_option("--max-basis", max_basis, "basis size budget");

    auto* apoly = app.add_subcommand("apoly", "A-polynomial / A-variety ideal by elimination");
    add_common(apoly);
    apoly->add_option("--fix", fixes, "coordinate fixed to 1 (repeatable)");
    apoly->add_option("--emit-scripts", emit_dir, "write magma/singular fallback scripts here");
    apoly->add_option("--max-steps", max_steps, "reduction step budget");
    apoly->add_option("--max-basis", max_basis, "basis size budget");

    auto* shapes = app.add_subcommand("shapes", "shape parameters at a numeric point");
    add_common(shapes);
    shapes->add_option("--pin", pins, "VAR=RE[,IM] (repeatable)");
    shapes->add_option("--point", point_path, "JSON of pinned values {\"m\": [re,im], ...}");
    shapes->add_option("--fix", fixes, "coordinate fixed to 1 (repeatable)");
    shapes->add_option("--tol", tol, "residual tolerance");

    auto* dehn = app.add_subcommand("dehn", "Dehn invariant, two-sided");
    add_common(dehn);
    dehn->add_option("--certificates", certs_path, "certificate JSON for the shape monomials");
    dehn->add_option("--fix", fixes, "coordinate fixed to 1 (repeatable)");

    auto* holo = app.add_subcommand("holonomy", "holonomy representation at a numeric point");
    add_common(holo);
    holo->add_option("--pin", pins, "VAR=RE[,IM] (repeatable)");
    holo->add_option("--fix", fixes, "coordinate fixed to 1 (repeatable)");
    holo->add_option("--word", word, "extra word to evaluate");
    holo->add_option("--tol", tol, "relator residual tolerance");
    holo->add_option("--seed", seed, "root-finding seed (reproducibility header)");

    CLI11_PARSE(app, argc, argv);

    try {
        std::string input_text;
        {
            std::ifstream in(input);
            if (!in) throw ValidationError("cannot open input file: " + input);
            std::stringstream ss;
            ss << in.rdbuf();
            input_text = ss.str();
        }
        bool input_is_bundle = false;
        try {
            input_is_bundle = json::parse(input_text).contains("generators");
        } catch (const json::exception&) {
        }

        if (app.got_subcommand(gb) && input_is_bundle) {
            IdealBundle bundle = import_bundle_json(input_text);
            std::vector<Polynomial> gens;
            for (const auto& g : bundle.generators) gens.push_back(g.without_monomial_content());
            MonomialOrder ord = bundle.elimination_order();
            if (order == "grevlex") {
                ord = bundle.default_order();
            } else if (order == "lex") {
                std::vector<VarId> vars;
                for (VarId v = 0; v < bundle.registry->size(); ++v) vars.push_back(v);
                ord = MonomialOrder::lex(vars);
            } else if (order.rfind("elim:", 0) == 0) {
                std::vector<VarId> first;
                std::stringstream names(order.substr(5));
                std::string name;
                while (std::getline(names, name, ','))
                    if (!name.empty()) first.push_back(bundle.registry->id(name));
                std::vector<VarId> rest;
                for (VarId v = 0; v < bundle.registry->size(); ++v)
                    if (std::find(first.begin(), first.end(), v) == first.end())
                        rest.push_back(v);
                ord = MonomialOrder::block({first, rest});
            }
            GroebnerBasis basis = buchberger(gens, ord, Budget{max_steps, max_basis});
            std::ostringstream os;
            for (const auto& g : basis.basis) os << g.str(ord) << "\n";
            write_output(out_path, os.str());
            return kExitOk;
        }

        Triangulation tri = parse_triangulation(input_text);
        int n = rank > 0 ? rank : tri.n;
        json cfg{{"input", input},
                 {"n", n},
                 {"mode", mode},
                 {"fixes", fixes},
                 {"pins", pins},
                 {"order", order},
                 {"tol", tol},
                 {"max_steps", max_steps},
                 {"max_basis", max_basis},
                 {"seed", seed}};

        if (app.got_subcommand(generate)) {
            IdealMode m = mode == "standard" ? IdealMode::Standard : IdealMode::Enhanced;
            IdealBundle bundle = build_ideal(tri, n, m);
            if (!fixes.empty()) bundle = reduce_and_saturate(bundle, parse_fixes(fixes));
            write_output(out_path, export_bundle(bundle, format_from(format)));
            return kExitOk;
        }

        if (app.got_subcommand(validate)) {
            auto classes = build_point_classes(tri, n);
            int edge_classes = 0;
            auto cls2 = build_point_classes(tri, 2);
            edge_classes = static_cast<int>(cls2.classes.size());
            json j = header("validate", cfg);
            j["name"] = tri.name;
            j["classes"] = classes.classes.size();
            j["edge_classes"] = edge_classes;
            j["cycle_products"] = "trivial";  // build_point_classes throws otherwise
            std::ostringstream os;
            os << j.dump(2) << "\n"
               << tri.name << ": " << edge_classes
               << " edge classes, cycle products trivial\n";
            write_output(out_path, os.str());
            return kExitOk;
        }

        if (app.got_subcommand(gb)) {
            IdealMode m = mode == "standard" ? IdealMode::Standard : IdealMode::Enhanced;
            IdealBundle bundle = build_ideal(tri, n, m);
            if (!fixes.empty()) bundle = reduce_and_saturate(bundle, parse_fixes(fixes));
            std::vector<Polynomial> gens;
            for (const auto& g : bundle.generators) gens.push_back(g.without_monomial_content());
            MonomialOrder ord =
                order == "grevlex" ? bundle.default_order() : bundle.elimination_order();
            GroebnerBasis basis = buchberger(gens, ord, Budget{max_steps, max_basis});
            std::ostringstream os;
            os << header("gb", cfg).dump(2) << "\n";
            for (const auto& g : basis.basis) os << g.str(ord) << "\n";
            write_output(out_path, os.str());
            return kExitOk;
        }

        if (app.got_subcommand(apoly)) {
            AVarietyOptions opt;
            opt.budget = Budget{max_steps, max_basis};
            AVarietyResult res = compute_avariety(tri, n, parse_fixes(fixes), opt);
            json j = header("apoly", cfg);
            if (!emit_dir.empty()) {
                write_output(emit_dir + "/" + tri.name + ".magma",
                             export_bundle(res.saturated, ExportFormat::Magma));
                write_output(emit_dir + "/" + tri.name + ".singular",
                             export_bundle(res.saturated, ExportFormat::Singular));
                j["scripts"] = {emit_dir + "/" + tri.name + ".magma",
                                emit_dir + "/" + tri.name + ".singular"};
            }
            if (res.budget_exceeded) {
                j["status"] = "budget";
                j["note"] = res.note;
                std::ostringstream os;
                os << j.dump(2) << "\nbudget exceeded: " << res.note << "\n";
                write_output(out_path, os.str());
                return kExitBudget;
            }
            MonomialOrder ord = res.saturated.elimination_order();
            j["status"] = "ok";
            json elim = json::array();
            for (const auto& g : res.eliminated) elim.push_back(g.str(ord));
            j["eliminated"] = elim;
            if (res.candidate) {
                j["candidate"] = res.candidate->str(ord);
                VarId mv = res.saturated.registry->id("m");
                VarId lv = res.saturated.registry->id("l");
                WeilReport wr = weil_symmetry_report(*res.candidate, mv, lv);
                j["weil_symmetry"] = wr.verdict == WeilSymmetry::Symmetric
                                         ? "symmetric"
                                         : (wr.verdict == WeilSymmetry::SymmetricUpToUnit
                                                ? "symmetric up to unit"
                                                : "asymmetric");
                // the l <-> 1/l convention flip, cleared
                std::map<VarId, Monomial> flip{{lv, Monomial::var(lv, -1)}};
                j["candidate_l_inverted"] =
                    res.candidate->substitute_monomials(flip).poly.str(ord);
            }
            j["note"] = res.note;
            std::ostringstream os;
            os << j.dump(2) << "\n";
            if (res.candidate) os << "A-polynomial candidate: " << res.candidate->str(ord) << "\n";
            write_output(out_path, os.str());
            return kExitOk;
        }

        if (app.got_subcommand(shapes)) {
            IdealBundle bundle = build_ideal(tri, n, IdealMode::Enhanced);
            IdealBundle sat = reduce_and_saturate(bundle, parse_fixes(fixes));
            auto pinned = parse_pins(pins);
            if (!point_path.empty()) {
                std::ifstream in(point_path);
                if (!in) throw std::runtime_error("cannot open " + point_path);
                json jp = json::parse(in);
                for (auto& [k, v] : jp.items())
                    pinned[k] = Complex(v.at(0).get<double>(),
                                        v.size() > 1 ? v.at(1).get<double>() : 0.0);
            }
            SolveOptions so;
            so.residual_tol = tol;
            auto points = solve_point(sat, pinned, so);
            if (points.empty()) throw NumericError("no numeric point for the given pins");
            auto classes = build_point_classes(tri, n, tri.representative_hint);
            json j = header("shapes", cfg);
            json jp = json::array();
            for (const auto& p : points) {
                PointEvaluator pe(sat, tri, classes, p.values);
                NumericShapes sh = shapes_from_point(pe);
                GluingReport rep = check_gluing_equations(sh, classes, n);
                json row;
                row["residual"] = p.residual;
                row["relation_residual"] = sh.max_relation_residual;
                row["gluing_residual"] = rep.max_residual;
                json zs = json::array();
                for (const auto& sub : sh.subs)
                    zs.push_back({{"tet", sub.tet},
                                  {"zA", {sub.zA.real(), sub.zA.imag()}},
                                  {"zB", {sub.zB.real(), sub.zB.imag()}},
                                  {"zC", {sub.zC.real(), sub.zC.imag()}}});
                row["shapes"] = zs;
                jp.push_back(row);
            }
            j["points"] = jp;
            write_output(out_path, j.dump(2) + "\n");
            return kExitOk;
        }

        if (app.got_subcommand(dehn)) {
            // LHS over the rectangle symbols from certificates, RHS from the
            // Cartan-inverse formula over the peripheral symbols
            BuildOptions bo;
            bo.basis = EigenBasis::Rectangle;
            IdealBundle rect = build_ideal(tri, n, IdealMode::Enhanced, bo);
            std::vector<std::string> fx = parse_fixes(fixes);
            IdealBundle sat = reduce_and_saturate(rect, fx);
            json j = header("dehn", cfg);

            auto classes = build_point_classes(tri, n, tri.representative_hint);
            RegistryPtr plain = std::make_shared<VariableRegistry>();
            int cc = static_cast<int>(tri.cusps.size());
            for (int i = 0; i < cc; ++i)
                for (int jj = 1; jj <= n - 1; ++jj) {
                    plain->add(eigen_symbol_name("m", i, jj, cc, n), VarRole::Eigenvalue);
                    plain->add(eigen_symbol_name("l", i, jj, cc, n), VarRole::Eigenvalue);
                }
            WedgeSum rhs = dehn_rhs(plain, n, cc);
            j["rhs"] = rhs.str(*plain);

            if (!certs_path.empty()) {
                std::ifstream in(certs_path);
                if (!in) throw std::runtime_error("cannot open " + certs_path);
                std::stringstream ss;
                ss << in.rdbuf();
                auto certs = parse_certificates(sat.registry, ss.str());
                std::vector<Polynomial> gens;
                for (const auto& g : sat.generators) gens.push_back(g.without_monomial_content());
                GroebnerBasis basis = buchberger(gens, sat.elimination_order());
                DehnLhsResult lhs = dehn_lhs_from_certificates(certs, sat, basis, &tri, &classes);
                j["lhs_rectangle"] = lhs.total.str(*sat.registry);
                // change to the peripheral basis
                std::map<VarId, Monomial> basis_map;
                for (int i = 0; i < cc; ++i) {
                    const CuspBasis& cb = tri.cusps[i];
                    for (int jj = 1; jj <= n - 1; ++jj) {
                        VarId pm = sat.registry->id(eigen_symbol_name("mp", i, jj, cc, n));
                        VarId pl = sat.registry->id(eigen_symbol_name("lp", i, jj, cc, n));
                        VarId mm = plain->id(eigen_symbol_name("m", i, jj, cc, n));
                        VarId ll = plain->id(eigen_symbol_name("l", i, jj, cc, n));
                        basis_map[pm] = Monomial::var(mm, cb.a) * Monomial::var(ll, cb.b);
                        basis_map[pl] = Monomial::var(mm, cb.c) * Monomial::var(ll, cb.d);
                    }
                }
                WedgeSum lhs_peripheral = lhs.total.substituted(basis_map);
                j["lhs_peripheral"] = lhs_peripheral.str(*plain);
                DehnVerdict v = verify_dehn_theorem(lhs_peripheral, rhs);
                j["verdict"] = v == DehnVerdict::Equal
                                   ? "equal"
                                   : (v == DehnVerdict::EqualUpToGlobalSign ? "equal-up-to-global-sign"
                                                                            : "different");
                j["orientation_note"] =
                    "both conventions logged: rectangle orientation <mu',lam'> = 1 vs knot "
                    "convention <mu,lam> = -1 flips the global sign";
            }
            write_output(out_path, j.dump(2) + "\n");
            return kExitOk;
        }

        if (app.got_subcommand(holo)) {
            IdealBundle bundle = build_ideal(tri, n, IdealMode::Enhanced);
            IdealBundle sat = reduce_and_saturate(bundle, parse_fixes(fixes));
            SolveOptions so;
            so.residual_tol = tol;
            auto points = solve_point(sat, parse_pins(pins), so);
            if (points.empty()) throw NumericError("no numeric point for the given pins");
            auto classes = build_point_classes(tri, n, tri.representative_hint);
            json j = header("holonomy", cfg);
            json jp = json::array();
            for (const auto& p : points) {
                PointEvaluator pe(sat, tri, classes, p.values);
                HolonomyMap hol = holonomy(pe, {}, tol);
                json row;
                row["residual"] = p.residual;
                row["relator_residual"] = hol.max_relator_residual;
                row["det_residual"] = hol.max_det_residual;
                json gens;
                for (const auto& [name, g] : hol.generator_images)
                    gens[name] = {{g.a.real(), g.a.imag()},
                                  {g.b.real(), g.b.imag()},
                                  {g.c.real(), g.c.imag()},
                                  {g.d.real(), g.d.imag()}};
                row["generators"] = gens;
                auto report_word = [&](const std::string& label, const std::string& wtext) {
                    if (wtext.empty()) return;
                    Mat2 img = hol.word(wtext);
                    auto ev = img.eigenvalues();
                    row[label] = {{"word", wtext},
                                  {"trace", {img.trace().real(), img.trace().imag()}},
                                  {"eigenvalues",
                                   {{ev[0].real(), ev[0].imag()}, {ev[1].real(), ev[1].imag()}}}};
                };
                auto it = tri.peripheral_words.find("mu");
                if (it != tri.peripheral_words.end()) report_word("mu", it->second);
                it = tri.peripheral_words.find("lambda");
                if (it != tri.peripheral_words.end()) report_word("lambda", it->second);
                report_word("word", word);
                jp.push_back(row);
            }
            j["points"] = jp;
            write_output(out_path, j.dump(2) + "\n");
            return kExitOk;
        }

        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
