#include "ptolemy/avariety.hpp"

#include <algorithm>

namespace ptolemy {

AVarietyResult compute_avariety(const Triangulation& tri, int n,
                                const std::vector<std::string>& fixes,
                                const AVarietyOptions& options) {
    if (fixes.empty() && !options.allow_no_fixes)
        throw std::invalid_argument(
            "compute_avariety: no reduction fixes given; pass at least one --fix VAR=1 or consent "
            "to fiber dimension growth");

    BuildOptions bo = options.build;
    bo.basis = EigenBasis::Peripheral;
    IdealBundle bundle = build_ideal(tri, n, IdealMode::Enhanced, bo);
    IdealBundle sat = reduce_and_saturate(bundle, fixes);

    AVarietyResult res;
    res.saturated = sat;

    // monomial factors are units on the nonvanishing locus
    std::vector<Polynomial> gens;
    for (const auto& g : sat.generators) gens.push_back(g.without_monomial_content());

    MonomialOrder ord = sat.elimination_order();
    try {
        res.gb = buchberger(gens, ord, options.budget);
    } catch (const BudgetExceeded& e) {
        res.budget_exceeded = true;
        res.note = e.what();
        return res;
    }

    std::vector<VarId> keep = sat.eigenvalue_vars();
    res.eliminated = elimination_ideal(res.gb, keep);
    for (auto& g : res.eliminated) g = g.without_monomial_content().normalized_content(ord);

    for (const auto& g : res.gb.basis) {
        // report basis elements of the form coord * f(m,l) - g(m,l) * coord'
        int coord_vars = 0;
        bool linear = true;
        for (VarId v : g.support())
            if (sat.registry->role(v) == VarRole::PtolemyCoord) {
                ++coord_vars;
                if (g.degree_in(v) > 1) linear = false;
            }
        if (coord_vars >= 1 && coord_vars <= 2 && linear) res.back_substitutions.push_back(g);
    }

    for (const auto& g : res.eliminated) {
        std::vector<std::string> names;
        for (VarId v : g.support()) names.push_back(sat.registry->name(v));
        res.support.push_back(names);
    }

    if (n == 2 && sat.cusp_count == 1 && !res.eliminated.empty()) {
        // distinguished generator: smallest leading term among the
        // eigenvalue-only elements
        const Polynomial* best = &res.eliminated[0];
        for (const auto& g : res.eliminated)
            if (ord.less(g.leading_term(ord).mono, best->leading_term(ord).mono)) best = &g;
        if (best->is_constant())
            res.note = "eliminated ideal is the unit ideal: empty A-variety";
        else
            res.candidate = *best;
    }
    if (res.eliminated.empty())
        res.note = "no generator supported on the eigenvalues alone (image not a hypersurface)";
    return res;
}

WeilReport weil_symmetry_report(const Polynomial& candidate, VarId m, VarId l) {
    std::map<VarId, Monomial> inv;
    inv[m] = Monomial::var(m, -1);
    inv[l] = Monomial::var(l, -1);
    auto sub = candidate.substitute_monomials(inv);
    MonomialOrder ord = MonomialOrder::grevlex({m, l});
    Polynomial a = candidate.without_monomial_content();
    Polynomial b = sub.poly.without_monomial_content();
    WeilReport rep{WeilSymmetry::Asymmetric, b};
    if (a == b)
        rep.verdict = WeilSymmetry::Symmetric;
    else if (!a.is_zero() && !b.is_zero() && a.monic(ord) == b.monic(ord))
        rep.verdict = WeilSymmetry::SymmetricUpToUnit;
    return rep;
}

}  // namespace ptolemy
