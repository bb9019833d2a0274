#include "ptolemy/ideal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ptolemy {

using nlohmann::json;

std::vector<VarId> IdealBundle::coordinate_vars() const {
    return registry->vars_with_role(VarRole::PtolemyCoord);
}
std::vector<VarId> IdealBundle::eigenvalue_vars() const {
    return registry->vars_with_role(VarRole::Eigenvalue);
}
std::vector<VarId> IdealBundle::witness_vars() const {
    return registry->vars_with_role(VarRole::Witness);
}

MonomialOrder IdealBundle::default_order() const {
    std::vector<VarId> vars;
    for (VarId v = 0; v < registry->size(); ++v) vars.push_back(v);
    return MonomialOrder::grevlex(vars);
}

MonomialOrder IdealBundle::elimination_order() const {
    std::vector<VarId> first = coordinate_vars();
    for (VarId w : witness_vars()) first.push_back(w);
    std::sort(first.begin(), first.end());
    std::vector<VarId> second = eigenvalue_vars();
    if (second.empty()) return MonomialOrder::grevlex(first);
    return MonomialOrder::block({first, second});
}

std::vector<LatticePoint> relation_offsets(int n) {
    std::vector<LatticePoint> out;
    int m = n - 2;
    for (int s0 = 0; s0 <= m; ++s0)
        for (int s1 = 0; s1 + s0 <= m; ++s1)
            for (int s2 = 0; s2 + s1 + s0 <= m; ++s2)
                out.push_back({s0, s1, s2, m - s0 - s1 - s2});
    return out;
}

namespace {

std::string point_digits(const LatticePoint& t) {
    std::string s;
    for (int v : t) s += std::to_string(v);
    return s;
}

std::string coord_name(int n, int tet, const LatticePoint& t) {
    if (n == 2) {
        int i = 0, j = 0, c = 0;
        for (int v = 0; v < 4; ++v)
            if (t[v] == 1) (c++ == 0 ? i : j) = v;
        return "c" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(tet);
    }
    return "c" + point_digits(t) + "_" + std::to_string(tet);
}

struct EigenMap {
    // primed symbol id -> Laurent monomial in the bundle registry
    std::map<VarId, Monomial> subst;

    Monomial apply(const Monomial& primed_mono) const {
        Monomial out;
        for (const auto& [v, e] : primed_mono.entries()) {
            auto it = subst.find(v);
            if (it == subst.end()) continue;  // standard mode: symbol -> 1
            out = out * it->second.pow(e);
        }
        return out;
    }
};

EigenMap make_eigen_map(const Triangulation& tri, const RegistryPtr& primed,
                        const RegistryPtr& reg, IdealMode mode, EigenBasis basis) {
    EigenMap em;
    if (mode == IdealMode::Standard) return em;  // everything to 1
    int cc = static_cast<int>(tri.cusps.size());
    for (int i = 0; i < cc; ++i) {
        const CuspBasis& cb = tri.cusps.at(i);
        for (int j = 1; j <= tri.n - 1; ++j) {
            VarId pm = primed->id(eigen_symbol_name("mp", i, j, cc, tri.n));
            VarId pl = primed->id(eigen_symbol_name("lp", i, j, cc, tri.n));
            if (basis == EigenBasis::Rectangle) {
                em.subst[pm] = Monomial::var(reg->id(eigen_symbol_name("mp", i, j, cc, tri.n)));
                em.subst[pl] = Monomial::var(reg->id(eigen_symbol_name("lp", i, j, cc, tri.n)));
            } else {
                VarId mm = reg->id(eigen_symbol_name("m", i, j, cc, tri.n));
                VarId ll = reg->id(eigen_symbol_name("l", i, j, cc, tri.n));
                // m' = m^a l^b, l' = m^c l^d
                em.subst[pm] = Monomial::var(mm, cb.a) * Monomial::var(ll, cb.b);
                em.subst[pl] = Monomial::var(mm, cb.c) * Monomial::var(ll, cb.d);
            }
        }
    }
    return em;
}

}  // namespace

std::vector<Polynomial> ptolemy_relations(const IdealBundle& bundle, const Triangulation& tri,
                                          const PointClasses& classes, int tet) {
    std::vector<Polynomial> rels;
    EigenMap em = make_eigen_map(tri, classes.primed, bundle.registry, bundle.mode, bundle.basis);

    // coordinate lookup: class rep variable plus transfer factor
    auto resolve = [&](const LatticePoint& t) {
        const PointClass& pc = classes.class_of(tet, t);
        const SignedMonomial& f = classes.transfer_of(tet, t);
        VarId rep = bundle.registry->id(coord_name(bundle.n, pc.rep_tet, pc.rep_point));
        // c_{t,tet} = f * rep  (f in primed symbols)
        return std::tuple{f.sign, em.apply(f.mono), rep};
    };

    static const LatticePoint e1001{1, 0, 0, 1}, e0110{0, 1, 1, 0}, e1010{1, 0, 1, 0},
        e0101{0, 1, 0, 1}, e1100{1, 1, 0, 0}, e0011{0, 0, 1, 1};

    auto add = [](LatticePoint a, const LatticePoint& b) {
        for (int i = 0; i < 4; ++i) a[i] += b[i];
        return a;
    };

    for (const auto& s : relation_offsets(bundle.n)) {
        std::vector<Term> terms;
        auto pair_term = [&](const LatticePoint& ea, const LatticePoint& eb, int sign) {
            auto [sa, ma, va] = resolve(add(s, ea));
            auto [sb, mb, vb] = resolve(add(s, eb));
            Monomial mono = ma * mb * Monomial::var(va) * Monomial::var(vb);
            terms.push_back({mono, Rational(sign * sa * sb)});
        };
        pair_term(e1001, e0110, +1);
        pair_term(e1010, e0101, -1);
        pair_term(e1100, e0011, +1);
        Polynomial p = Polynomial::from_terms(bundle.registry, std::move(terms));
        // clear Laurent denominators introduced by transfers / basis change
        std::map<VarId, Monomial> id_map;
        auto cleared = p.substitute_monomials(id_map);
        rels.push_back(cleared.poly);
    }
    return rels;
}

IdealBundle build_ideal(const Triangulation& tri, int n, IdealMode mode,
                        const BuildOptions& options) {
    std::vector<std::pair<int, LatticePoint>> reps = options.representative_overrides;
    if (reps.empty() && options.use_fixture_representatives) reps = tri.representative_hint;
    Triangulation tri_n = tri;
    tri_n.n = n;
    PointClasses classes = build_point_classes(tri_n, n, reps);

    IdealBundle bundle;
    bundle.registry = std::make_shared<VariableRegistry>();
    bundle.n = n;
    bundle.cusp_count = static_cast<int>(tri.cusps.size());
    bundle.mode = mode;
    bundle.basis = options.basis;
    bundle.name = tri.name;

    for (const auto& pc : classes.classes)
        bundle.registry->add(coord_name(n, pc.rep_tet, pc.rep_point), VarRole::PtolemyCoord);

    if (mode == IdealMode::Enhanced) {
        int cc = bundle.cusp_count;
        for (int i = 0; i < cc; ++i)
            for (int j = 1; j <= n - 1; ++j) {
                const char* mb = options.basis == EigenBasis::Rectangle ? "mp" : "m";
                const char* lb = options.basis == EigenBasis::Rectangle ? "lp" : "l";
                bundle.registry->add(eigen_symbol_name(mb, i, j, cc, n), VarRole::Eigenvalue);
                bundle.registry->add(eigen_symbol_name(lb, i, j, cc, n), VarRole::Eigenvalue);
            }
    }

    for (int k = 0; k < tri.tet_count; ++k) {
        auto rels = ptolemy_relations(bundle, tri_n, classes, k);
        auto offsets = relation_offsets(n);
        for (std::size_t i = 0; i < rels.size(); ++i) {
            if (rels[i].is_zero())
                throw ValidationError("degenerate Ptolemy relation (tet " + std::to_string(k) +
                                      "): relation collapsed to zero");
            bundle.generators.push_back(rels[i]);
            bundle.info.push_back(
                {"ptolemy(s=" + point_digits(offsets[i]) + ",tet=" + std::to_string(k) + ")",
                 Monomial::one()});
        }
    }
    return bundle;
}

IdealBundle reduce_and_saturate(const IdealBundle& bundle, const std::vector<std::string>& fixes) {
    IdealBundle out = bundle;
    std::size_t cap = std::size_t(bundle.cusp_count) * (bundle.n - 1);
    if (fixes.size() > cap)
        throw std::invalid_argument("at most " + std::to_string(cap) +
                                    " coordinates may be fixed (one per torus factor of the "
                                    "diagonal action)");
    for (const auto& name : fixes) {
        VarId v = out.registry->id(name);
        if (out.registry->role(v) != VarRole::PtolemyCoord)
            throw std::invalid_argument("can only fix Ptolemy coordinates, got '" + name + "'");
        Polynomial p = Polynomial::variable(out.registry, v) -
                       Polynomial::constant(out.registry, Rational(1));
        out.generators.push_back(p);
        out.info.push_back({"reduction(" + name + "=1)", Monomial::one()});
    }
    VarId w = out.registry->add("w", VarRole::Witness);
    Monomial prod = Monomial::var(w);
    for (VarId v : out.coordinate_vars()) prod = prod * Monomial::var(v);
    for (VarId v : out.eigenvalue_vars()) prod = prod * Monomial::var(v);
    Polynomial sat = Polynomial::monomial(out.registry, prod) -
                     Polynomial::constant(out.registry, Rational(1));
    out.generators.push_back(sat);
    out.info.push_back({"saturation", Monomial::one()});
    return out;
}

Rational diagonal_multiplier(const Triangulation& tri, const DiagonalScaling& s, int tet,
                             const LatticePoint& t) {
    Rational mult(1);
    for (int v = 0; v < 4; ++v) {
        int cusp = tri.vertex_cusp[tet][v];
        for (int j = 0; j < t[v]; ++j) mult *= s.entries.at(cusp).at(j);
    }
    return mult;
}

std::vector<std::complex<double>> diagonal_action(const IdealBundle& bundle,
                                                  const Triangulation& tri,
                                                  const PointClasses& classes,
                                                  const DiagonalScaling& scaling,
                                                  const std::vector<std::complex<double>>& point) {
    for (const auto& c : scaling.entries) {
        Rational p(1);
        for (const auto& d : c) p *= d;
        if (!p.is_one()) throw std::invalid_argument("diagonal scaling must have determinant 1");
    }
    std::vector<std::complex<double>> out = point;
    for (const auto& pc : classes.classes) {
        VarId v = bundle.registry->id(coord_name(bundle.n, pc.rep_tet, pc.rep_point));
        Rational mult = diagonal_multiplier(tri, scaling, pc.rep_tet, pc.rep_point);
        out.at(v) = point.at(v) * mult.to_double();
    }
    return out;
}

namespace {

std::string role_str(VarRole r) {
    switch (r) {
        case VarRole::PtolemyCoord: return "ptolemy";
        case VarRole::Eigenvalue: return "eigenvalue";
        case VarRole::Witness: return "witness";
        default: return "generic";
    }
}

VarRole role_from(const std::string& s) {
    if (s == "ptolemy") return VarRole::PtolemyCoord;
    if (s == "eigenvalue") return VarRole::Eigenvalue;
    if (s == "witness") return VarRole::Witness;
    return VarRole::Generic;
}

}  // namespace

std::string export_bundle(const IdealBundle& bundle, ExportFormat fmt) {
    const auto& reg = *bundle.registry;
    MonomialOrder ord = bundle.default_order();
    std::vector<VarId> elim = bundle.coordinate_vars();
    for (VarId v : bundle.witness_vars()) elim.push_back(v);
    std::sort(elim.begin(), elim.end());
    std::vector<VarId> keep = bundle.eigenvalue_vars();

    // variable listing: eliminated block first
    std::vector<VarId> all = elim;
    all.insert(all.end(), keep.begin(), keep.end());

    std::ostringstream os;
    switch (fmt) {
        case ExportFormat::Plain: {
            for (std::size_t i = 0; i < bundle.generators.size(); ++i)
                os << bundle.generators[i].str(ord) << "\n";
            return os.str();
        }
        case ExportFormat::Magma: {
            os << "// " << bundle.name << ", n=" << bundle.n << ", "
               << (bundle.mode == IdealMode::Enhanced ? "enhanced" : "standard") << "\n";
            os << "R<";
            for (std::size_t i = 0; i < all.size(); ++i)
                os << (i ? ", " : "") << reg.name(all[i]);
            os << "> := PolynomialRing(RationalField(), " << all.size() << ", \"elim\", "
               << elim.size() << ");\n";
            os << "I := ideal<R |\n";
            for (std::size_t i = 0; i < bundle.generators.size(); ++i)
                os << "  " << bundle.generators[i].str(ord)
                   << (i + 1 < bundle.generators.size() ? "," : "") << "\n";
            os << ">;\n";
            os << "E := EliminationIdeal(I, " << elim.size() << ");\n";
            os << "E;\n";
            return os.str();
        }
        case ExportFormat::Singular: {
            os << "// " << bundle.name << ", n=" << bundle.n << "\n";
            os << "ring r = 0, (";
            for (std::size_t i = 0; i < all.size(); ++i)
                os << (i ? "," : "") << reg.name(all[i]);
            os << "), (dp(" << elim.size() << ")";
            if (!keep.empty()) os << ", dp(" << keep.size() << ")";
            os << ");\n";
            os << "ideal I =\n";
            for (std::size_t i = 0; i < bundle.generators.size(); ++i)
                os << "  " << bundle.generators[i].str(ord)
                   << (i + 1 < bundle.generators.size() ? "," : ";") << "\n";
            if (!elim.empty()) {
                os << "ideal E = eliminate(I, ";
                for (std::size_t i = 0; i < elim.size(); ++i)
                    os << (i ? "*" : "") << reg.name(elim[i]);
                os << ");\n";
                os << "E;\n";
            }
            return os.str();
        }
        case ExportFormat::Json: {
            json j;
            j["name"] = bundle.name;
            j["n"] = bundle.n;
            j["cusps"] = bundle.cusp_count;
            j["mode"] = bundle.mode == IdealMode::Enhanced ? "enhanced" : "standard";
            j["basis"] = bundle.basis == EigenBasis::Rectangle ? "rectangle" : "peripheral";
            json vars = json::array();
            for (VarId v = 0; v < reg.size(); ++v)
                vars.push_back({{"name", reg.name(v)}, {"role", role_str(reg.role(v))}});
            j["variables"] = vars;
            json gens = json::array();
            for (std::size_t i = 0; i < bundle.generators.size(); ++i)
                gens.push_back({{"poly", bundle.generators[i].str(ord)},
                                {"provenance", bundle.info[i].provenance}});
            j["generators"] = gens;
            return j.dump(2) + "\n";
        }
    }
    return "";
}

IdealBundle import_bundle_json(const std::string& text) {
    json j = json::parse(text);
    IdealBundle b;
    b.registry = std::make_shared<VariableRegistry>();
    b.name = j.at("name").get<std::string>();
    b.n = j.at("n").get<int>();
    b.cusp_count = j.at("cusps").get<int>();
    b.mode = j.at("mode").get<std::string>() == "enhanced" ? IdealMode::Enhanced : IdealMode::Standard;
    b.basis =
        j.at("basis").get<std::string>() == "rectangle" ? EigenBasis::Rectangle : EigenBasis::Peripheral;
    for (const auto& v : j.at("variables"))
        b.registry->add(v.at("name").get<std::string>(), role_from(v.at("role").get<std::string>()));
    for (const auto& g : j.at("generators")) {
        b.generators.push_back(Polynomial::parse(b.registry, g.at("poly").get<std::string>()));
        b.info.push_back({g.at("provenance").get<std::string>(), Monomial::one()});
    }
    return b;
}

}  // namespace ptolemy
