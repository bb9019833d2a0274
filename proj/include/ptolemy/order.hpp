#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ptolemy/monomial.hpp"

namespace ptolemy {

enum class Cmp { Less = -1, Equal = 0, Greater = 1 };

/// Total multiplicative well-order on monomials with nonnegative exponents.
/// Three kinds:
///   lex      - lexicographic, priority given by the `vars` listing
///   grevlex  - graded reverse lexicographic over `vars`
///   block    - elimination order: ordered blocks, grevlex inside each block,
///              earlier blocks dominate (eliminated block first)
class MonomialOrder {
public:
    enum class Kind { Lex, GrevLex, Block };

    MonomialOrder() : kind_(Kind::GrevLex), blocks_{{}} {}  // placeholder over no variables

    static MonomialOrder lex(std::vector<VarId> vars) {
        return MonomialOrder(Kind::Lex, {std::move(vars)});
    }
    static MonomialOrder grevlex(std::vector<VarId> vars) {
        return MonomialOrder(Kind::GrevLex, {std::move(vars)});
    }
    static MonomialOrder block(std::vector<std::vector<VarId>> blocks) {
        if (blocks.empty()) throw std::invalid_argument("block order needs at least one block");
        return MonomialOrder(Kind::Block, std::move(blocks));
    }

    Kind kind() const { return kind_; }

    const std::vector<std::vector<VarId>>& blocks() const { return blocks_; }

    std::vector<VarId> all_vars() const {
        std::vector<VarId> v;
        for (const auto& b : blocks_) v.insert(v.end(), b.begin(), b.end());
        return v;
    }

    Cmp compare(const Monomial& u, const Monomial& v) const {
        switch (kind_) {
            case Kind::Lex:
                return lex_cmp(blocks_[0], u, v);
            case Kind::GrevLex:
                return grevlex_cmp(blocks_[0], u, v);
            case Kind::Block:
                for (const auto& blk : blocks_) {
                    Cmp c = grevlex_cmp(blk, u, v);
                    if (c != Cmp::Equal) return c;
                }
                return Cmp::Equal;
        }
        return Cmp::Equal;
    }

    bool less(const Monomial& u, const Monomial& v) const { return compare(u, v) == Cmp::Less; }
    bool greater(const Monomial& u, const Monomial& v) const { return compare(u, v) == Cmp::Greater; }

private:
    MonomialOrder(Kind k, std::vector<std::vector<VarId>> blocks)
        : kind_(k), blocks_(std::move(blocks)) {}

    static Cmp lex_cmp(const std::vector<VarId>& vars, const Monomial& u, const Monomial& v) {
        for (VarId x : vars) {
            int a = u.exponent(x), b = v.exponent(x);
            if (a != b) return a > b ? Cmp::Greater : Cmp::Less;
        }
        return Cmp::Equal;
    }

    static Cmp grevlex_cmp(const std::vector<VarId>& vars, const Monomial& u, const Monomial& v) {
        long du = 0, dv = 0;
        for (VarId x : vars) du += u.exponent(x), dv += v.exponent(x);
        if (du != dv) return du > dv ? Cmp::Greater : Cmp::Less;
        // equal degree: the monomial with the SMALLER exponent in the last
        // differing variable is the larger one
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            int a = u.exponent(*it), b = v.exponent(*it);
            if (a != b) return a < b ? Cmp::Greater : Cmp::Less;
        }
        return Cmp::Equal;
    }

    Kind kind_;
    std::vector<std::vector<VarId>> blocks_;
};

}  // namespace ptolemy
