#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/polynomial.hpp"

namespace ptolemy {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lattice point of the dilated simplex; entries sum to the rank n.
using LatticePoint = std::array<int, 4>;
using Perm4 = std::array<int, 4>;

inline Perm4 inverse_perm(const Perm4& p) {
    Perm4 q{};
    for (int i = 0; i < 4; ++i) q[p[i]] = i;
    return q;
}

inline LatticePoint apply_perm(const Perm4& p, const LatticePoint& t) {
    LatticePoint u{};
    for (int v = 0; v < 4; ++v) u[p[v]] = t[v];
    return u;
}

/// One face gluing, stored in the direction in which the dressing is given.
/// `face` is the vertex opposite the glued face of the source tetrahedron.
struct FacePairingRule {
    std::string label;
    int tet = 0;
    int face = 0;
    int to_tet = 0;
    Perm4 perm{};                                  // source vertex -> target vertex
    std::array<std::array<int, 2>, 4> dressing{};  // per source vertex: (e_mu, e_lambda)
};

struct CuspBasis {
    int index = 0;
    // mu' = mu^a lam^b, lam' = mu^c lam^d
    int a = 1, b = 0, c = 0, d = 1;
};

struct Triangulation {
    std::string name;
    int n = 2;
    int tet_count = 0;
    std::vector<FacePairingRule> rules;
    std::vector<CuspBasis> cusps;
    std::vector<std::array<int, 4>> vertex_cusp;  // cusp index of each vertex per tet
    std::vector<std::string> tree_hint;           // optional preferred spanning-tree labels
    std::map<std::string, std::string> peripheral_words;  // optional, e.g. {"mu": "c", ...}
    std::vector<std::pair<int, LatticePoint>> representative_hint;  // optional class reps

    const FacePairingRule& rule(const std::string& label) const;
};

Triangulation parse_triangulation(const std::string& json_text);
Triangulation load_triangulation(const std::string& path);

/// All t with sum = n, 0 <= t_i <= n, excluding the four vertex points.
/// Count is C(n+3,3) - 4.
std::vector<LatticePoint> integral_points(int n);

/// Points lying on the face opposite `face` (t[face] == 0), vertex points
/// excluded.
std::vector<LatticePoint> face_points(int n, int face);

/// det of the block-permuted identity I_{sigma,t}:
/// (-1)^{sum_{p<q, sigma(p)>sigma(q)} t_{sigma(p)} t_{sigma(q)}}
int sign_multiplier(const Perm4& sigma, const LatticePoint& t);

/// Variable registry holding the rectangle eigenvalue symbols m'_{i,j},
/// l'_{i,j} (named mp/lp) in which transfer factors are expressed.
RegistryPtr primed_symbol_registry(const Triangulation& tri);

/// Names follow the cusp/rank layout: single cusp n=2 gives "mp","lp";
/// single cusp n>2 gives "mp1","lp1",...; multiple cusps "mp<i>_<j>".
std::string eigen_symbol_name(const std::string& base, int cusp, int j, int cusp_count, int n);

/// Peripheral multiplier of one rule at a source point, as exponents on the
/// primed symbols: the product over vertices v of the first t_v diagonal
/// entries of M_{alpha v}.
Monomial peripheral_multiplier(const Triangulation& tri, const RegistryPtr& primed,
                               const FacePairingRule& rule, const LatticePoint& t);

/// Transfer factor of applying `rule` at source point t:
///   c_{sigma.t, to_tet} = factor * c_{t, tet}
SignedMonomial rule_transfer(const Triangulation& tri, const RegistryPtr& primed,
                             const FacePairingRule& rule, const LatticePoint& t);

/// The same rule read backwards (dressings negated and re-indexed through
/// the inverse permutation).
FacePairingRule reverse_rule(const FacePairingRule& rule);

struct PointClass {
    struct Member {
        int tet;
        LatticePoint point;
        SignedMonomial transfer;  // c_member = transfer * c_representative
    };
    int rep_tet = 0;
    LatticePoint rep_point{};
    std::vector<Member> members;  // sorted by (tet, point)
};

struct PointClasses {
    RegistryPtr primed;  // symbol space of the transfer monomials
    std::vector<PointClass> classes;

    const PointClass& class_of(int tet, const LatticePoint& t) const;
    const SignedMonomial& transfer_of(int tet, const LatticePoint& t) const;
};

/// Union-find over the face lattice points of all tetrahedra with
/// group-valued edge weights. Throws ValidationError if some closed loop
/// composes to a nontrivial factor. The default representative of a class is
/// its lowest (tet, lex point) member; `rep_overrides` promotes the named
/// members instead (entries not present at this rank are ignored).
PointClasses build_point_classes(const Triangulation& tri, int n,
                                 const std::vector<std::pair<int, LatticePoint>>& rep_overrides = {});

struct Presentation {
    std::vector<std::string> generators;            // non-tree rule labels
    std::vector<std::string> tree;                  // tree rule labels
    std::vector<std::vector<int>> relators;         // +-(i+1) indexing generators
    std::string relator_str(std::size_t i) const;
};

/// Generator per face pairing, relator per 1-cell (edge class at n=2); tree
/// generators are set to the empty word. `tree_labels` overrides the
/// default breadth-first tree choice.
Presentation face_pairing_presentation(const Triangulation& tri,
                                       std::vector<std::string> tree_labels = {});

/// Exponent matrix of the relators (rows: relators, cols: generators).
std::vector<std::vector<long>> relator_exponent_matrix(const Presentation& pres);

}  // namespace ptolemy
