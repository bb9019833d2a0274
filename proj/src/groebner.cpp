#include "ptolemy/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptolemy {

namespace {

struct OrderCmp {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->less(a, b); }
};

// polynomial as an order-keyed map, largest monomial last
using OrderedPoly = std::map<Monomial, Rational, OrderCmp>;

OrderedPoly to_ordered(const Polynomial& p, const MonomialOrder& ord) {
    OrderedPoly m{OrderCmp{&ord}};
    for (const auto& t : p.terms()) m.emplace(t.mono, t.coeff);
    return m;
}

Polynomial from_ordered(const RegistryPtr& reg, const OrderedPoly& m) {
    std::vector<Term> terms;
    terms.reserve(m.size());
    for (const auto& [mono, c] : m) terms.push_back({mono, c});
    return Polynomial::from_terms(reg, std::move(terms));
}

void add_scaled(OrderedPoly& acc, const Polynomial& p, const Monomial& shift, const Rational& c) {
    for (const auto& t : p.terms()) {
        Monomial m = t.mono * shift;
        auto [it, fresh] = acc.try_emplace(m, t.coeff * c);
        if (!fresh) {
            it->second += t.coeff * c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

void bump(std::uint64_t* counter, const Budget* budget) {
    if (!counter) return;
    ++*counter;
    if (budget && *counter > budget->max_reduction_steps)
        throw BudgetExceeded("reduction step budget exceeded");
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& G,
                       const MonomialOrder& ord, std::uint64_t* step_counter,
                       const Budget* budget) {
    if (p.is_zero()) return p;
    const RegistryPtr& reg = p.registry();
    for (const auto& g : G) require_same_registry(reg, g.registry());

    struct LT {
        const Polynomial* g;
        Monomial mono;
        Rational coeff;
    };
    std::vector<LT> lts;
    lts.reserve(G.size());
    for (const auto& g : G) {
        if (g.is_zero()) continue;
        const Term& lt = g.leading_term(ord);
        lts.push_back({&g, lt.mono, lt.coeff});
    }

    OrderedPoly work = to_ordered(p, ord);
    OrderedPoly remainder{OrderCmp{&ord}};

    while (!work.empty()) {
        auto top = std::prev(work.end());
        const Monomial& m = top->first;
        bool reduced = false;
        for (const auto& lt : lts) {
            if (!Monomial::divides(lt.mono, m)) continue;
            Monomial shift = m / lt.mono;
            Rational factor = top->second / lt.coeff;
            add_scaled(work, *lt.g, shift, -factor);
            bump(step_counter, budget);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.emplace(m, top->second);
            work.erase(top);
        }
    }
    return from_ordered(reg, remainder);
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    const Term& lf = f.leading_term(ord);
    const Term& lg = g.leading_term(ord);
    Monomial l = Monomial::lcm(lf.mono, lg.mono);
    Polynomial a = f.times_monomial(l / lf.mono, lf.coeff.inverse());
    Polynomial b = g.times_monomial(l / lg.mono, lg.coeff.inverse());
    return a - b;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                         const Budget& budget) {
    GroebnerBasis out{ord, {}, 0, 0};
    RegistryPtr reg;
    std::vector<Polynomial> basis;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!reg) reg = g.registry();
        require_same_registry(reg, g.registry());
        basis.push_back(g.normalized_content(ord));
    }
    if (basis.empty()) return out;

    auto lt = [&](std::size_t i) -> const Term& { return basis[i].leading_term(ord); };

    // pending S-pairs, normal strategy: smallest lcm total degree first,
    // then lowest index pair
    struct Pair {
        long deg;
        std::size_t i, j;
        bool operator<(const Pair& o) const { return std::tie(deg, i, j) < std::tie(o.deg, o.i, o.j); }
    };
    std::set<Pair> pairs;
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            // coprime criterion: lcm == product => S-pair reduces to zero
            Monomial l = Monomial::lcm(lt(i).mono, lt(j).mono);
            if (l == lt(i).mono * lt(j).mono) continue;
            pairs.insert({l.total_degree(), i, j});
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        ++out.spairs_processed;
        Polynomial s = s_polynomial(basis[i], basis[j], ord);
        Polynomial r = normal_form(s, basis, ord, &out.reduction_steps, &budget);
        if (r.is_zero()) continue;
        basis.push_back(r.normalized_content(ord));
        if (basis.size() > budget.max_basis_size)
            throw BudgetExceeded("basis size budget exceeded");
        push_pairs_for(basis.size() - 1);
    }

    // minimize: drop elements whose leading term is divisible by another's
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !keep[j]) continue;
            if (Monomial::divides(lt(j).mono, lt(i).mono) &&
                !(lt(i).mono == lt(j).mono && j > i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(basis[i]);

    // inter-reduce to the unique reduced basis
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = normal_form(minimal[i], others, ord, &out.reduction_steps, &budget);
        if (!r.is_zero()) reduced.push_back(r.normalized_content(ord));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.less(a.leading_term(ord).mono, b.leading_term(ord).mono);
    });
    out.basis = std::move(reduced);
    return out;
}

std::vector<Polynomial> elimination_ideal(const GroebnerBasis& G, const std::vector<VarId>& keep) {
    std::set<VarId> keepset(keep.begin(), keep.end());
    if (G.order.kind() == MonomialOrder::Kind::Block) {
        // the kept variables must be a union of complete trailing blocks
        std::set<VarId> tail;
        const auto& blocks = G.order.blocks();
        for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
            bool inside = true;
            for (VarId v : *it)
                if (!keepset.count(v)) inside = false;
            if (!inside) break;
            tail.insert(it->begin(), it->end());
        }
        for (VarId v : keepset)
            if (!tail.count(v))
                throw std::invalid_argument(
                    "elimination_ideal: order does not eliminate the complement of keep");
    } else if (G.order.kind() != MonomialOrder::Kind::Lex) {
        throw std::invalid_argument("elimination_ideal: need a lex or block elimination order");
    }
    std::vector<Polynomial> out;
    for (const auto& g : G.basis) {
        bool ok = true;
        for (VarId v : g.support())
            if (!keepset.count(v)) ok = false;
        if (ok) out.push_back(g);
    }
    return out;
}

bool ideal_membership(const Polynomial& p, const GroebnerBasis& G) {
    return normal_form(p, G.basis, G.order).is_zero();
}

bool audit_spairs_reduce_to_zero(const GroebnerBasis& G) {
    for (std::size_t i = 0; i < G.basis.size(); ++i)
        for (std::size_t j = i + 1; j < G.basis.size(); ++j) {
            Polynomial s = s_polynomial(G.basis[i], G.basis[j], G.order);
            if (!normal_form(s, G.basis, G.order).is_zero()) return false;
        }
    return true;
}

}  // namespace ptolemy
