#include "ptolemy/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ptolemy {

using nlohmann::json;

const FacePairingRule& Triangulation::rule(const std::string& label) const {
    for (const auto& r : rules)
        if (r.label == label) return r;
    throw std::out_of_range("no face pairing labeled '" + label + "'");
}

namespace {

void validate(const Triangulation& tri) {
    if (tri.tet_count <= 0) throw ValidationError("tetrahedra count must be positive");
    if (tri.n < 2) throw ValidationError("rank n must be at least 2");
    // every face glued exactly once
    std::set<std::pair<int, int>> seen;
    auto claim = [&](int tet, int face, const std::string& label) {
        if (tet < 0 || tet >= tri.tet_count)
            throw ValidationError("rule '" + label + "': tetrahedron index out of range");
        if (face < 0 || face > 3)
            throw ValidationError("rule '" + label + "': face index out of range");
        if (!seen.emplace(tet, face).second)
            throw ValidationError("duplicate gluing of face (" + std::to_string(tet) + "," +
                                  std::to_string(face) + ") in rule '" + label + "'");
    };
    for (const auto& r : tri.rules) {
        Perm4 sorted = r.perm;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != Perm4{0, 1, 2, 3})
            throw ValidationError("rule '" + r.label + "': permutation is not a bijection");
        claim(r.tet, r.face, r.label);
        claim(r.to_tet, r.perm[r.face], r.label);
        if (r.dressing[r.face][0] != 0 || r.dressing[r.face][1] != 0)
            throw ValidationError("rule '" + r.label +
                                  "': dressing on the vertex opposite the glued face must be zero");
    }
    for (int k = 0; k < tri.tet_count; ++k)
        for (int f = 0; f < 4; ++f)
            if (!seen.count({k, f}))
                throw ValidationError("unglued face (" + std::to_string(k) + "," +
                                      std::to_string(f) + ")");
    for (const auto& cb : tri.cusps) {
        int det = cb.a * cb.d - cb.b * cb.c;
        if (det != 1 && det != -1)
            throw ValidationError("cusp " + std::to_string(cb.index) +
                                  ": basis determinant must be +-1");
    }
    if (static_cast<int>(tri.vertex_cusp.size()) != tri.tet_count)
        throw ValidationError("vertex_cusp must have one row per tetrahedron");
    int cusp_count = static_cast<int>(tri.cusps.size());
    for (const auto& row : tri.vertex_cusp)
        for (int ci : row)
            if (ci < 0 || ci >= cusp_count)
                throw ValidationError("vertex_cusp entry out of range");
    // identified vertices must agree on their cusp
    for (const auto& r : tri.rules)
        for (int v = 0; v < 4; ++v) {
            if (v == r.face) continue;
            if (tri.vertex_cusp[r.tet][v] != tri.vertex_cusp[r.to_tet][r.perm[v]])
                throw ValidationError("rule '" + r.label +
                                      "': identified vertices lie on different cusps");
        }
}

}  // namespace

Triangulation parse_triangulation(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    Triangulation tri;
    try {
        tri.name = j.at("name").get<std::string>();
        tri.n = j.at("n").get<int>();
        tri.tet_count = j.at("tetrahedra").get<int>();
        for (const auto& c : j.at("cusps")) {
            CuspBasis cb;
            cb.index = c.at("index").get<int>();
            const auto& m = c.at("basis");
            cb.a = m.at(0).at(0).get<int>();
            cb.b = m.at(0).at(1).get<int>();
            cb.c = m.at(1).at(0).get<int>();
            cb.d = m.at(1).at(1).get<int>();
            tri.cusps.push_back(cb);
        }
        for (const auto& row : j.at("vertex_cusp")) {
            std::array<int, 4> r{};
            for (int v = 0; v < 4; ++v) r[v] = row.at(v).get<int>();
            tri.vertex_cusp.push_back(r);
        }
        for (const auto& g : j.at("gluings")) {
            FacePairingRule r;
            r.label = g.at("label").get<std::string>();
            r.tet = g.at("tet").get<int>();
            r.face = g.at("face").get<int>();
            r.to_tet = g.at("to_tet").get<int>();
            for (int v = 0; v < 4; ++v) r.perm[v] = g.at("perm").at(v).get<int>();
            for (int v = 0; v < 4; ++v) {
                r.dressing[v][0] = g.at("dressing").at(v).at(0).get<int>();
                r.dressing[v][1] = g.at("dressing").at(v).at(1).get<int>();
            }
            tri.rules.push_back(r);
        }
        if (j.contains("tree"))
            for (const auto& t : j.at("tree")) tri.tree_hint.push_back(t.get<std::string>());
        if (j.contains("peripheral_words"))
            for (auto& [k, v] : j.at("peripheral_words").items())
                tri.peripheral_words[k] = v.get<std::string>();
        if (j.contains("representatives"))
            for (const auto& r : j.at("representatives")) {
                LatticePoint p{};
                for (int v = 0; v < 4; ++v) p[v] = r.at("point").at(v).get<int>();
                tri.representative_hint.emplace_back(r.at("tet").get<int>(), p);
            }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("schema error: ") + e.what());
    }
    validate(tri);
    return tri;
}

Triangulation load_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open triangulation file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_triangulation(ss.str());
}

std::vector<LatticePoint> integral_points(int n) {
    if (n < 2) throw std::invalid_argument("integral_points: n must be >= 2");
    std::vector<LatticePoint> pts;
    for (int t0 = 0; t0 <= n; ++t0)
        for (int t1 = 0; t1 + t0 <= n; ++t1)
            for (int t2 = 0; t2 + t1 + t0 <= n; ++t2) {
                int t3 = n - t0 - t1 - t2;
                LatticePoint t{t0, t1, t2, t3};
                if (*std::max_element(t.begin(), t.end()) == n) continue;
                pts.push_back(t);
            }
    return pts;
}

std::vector<LatticePoint> face_points(int n, int face) {
    std::vector<LatticePoint> pts;
    for (const auto& t : integral_points(n))
        if (t[face] == 0) pts.push_back(t);
    return pts;
}

int sign_multiplier(const Perm4& sigma, const LatticePoint& t) {
    long e = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q)
            if (sigma[p] > sigma[q]) e += long(t[sigma[p]]) * t[sigma[q]];
    return (e % 2) ? -1 : 1;
}

std::string eigen_symbol_name(const std::string& base, int cusp, int j, int cusp_count, int n) {
    if (cusp_count == 1) {
        if (n == 2) return base;
        return base + std::to_string(j);
    }
    return base + std::to_string(cusp) + "_" + std::to_string(j);
}

RegistryPtr primed_symbol_registry(const Triangulation& tri) {
    auto reg = std::make_shared<VariableRegistry>();
    int cc = static_cast<int>(tri.cusps.size());
    for (int i = 0; i < cc; ++i)
        for (int j = 1; j <= tri.n - 1; ++j) {
            reg->add(eigen_symbol_name("mp", i, j, cc, tri.n), VarRole::Eigenvalue);
            reg->add(eigen_symbol_name("lp", i, j, cc, tri.n), VarRole::Eigenvalue);
        }
    return reg;
}

Monomial peripheral_multiplier(const Triangulation& tri, const RegistryPtr& primed,
                               const FacePairingRule& rule, const LatticePoint& t) {
    int n = tri.n;
    int cc = static_cast<int>(tri.cusps.size());
    Monomial m;
    for (int v = 0; v < 4; ++v) {
        int k = t[v];
        if (k == 0 || k == n) continue;  // first n entries multiply to 1
        int cusp = tri.vertex_cusp[rule.tet][v];
        auto [emu, ela] = std::pair{rule.dressing[v][0], rule.dressing[v][1]};
        for (int j = 1; j <= k; ++j) {
            if (emu != 0)
                m = m * Monomial::var(primed->id(eigen_symbol_name("mp", cusp, j, cc, n)), emu);
            if (ela != 0)
                m = m * Monomial::var(primed->id(eigen_symbol_name("lp", cusp, j, cc, n)), ela);
        }
    }
    return m;
}

SignedMonomial rule_transfer(const Triangulation& tri, const RegistryPtr& primed,
                             const FacePairingRule& rule, const LatticePoint& t) {
    // the determinant convention takes the target->source vertex map,
    // which is the inverse of the stored source->target permutation
    int sgn = sign_multiplier(inverse_perm(rule.perm), t);
    return {sgn, peripheral_multiplier(tri, primed, rule, t)};
}

FacePairingRule reverse_rule(const FacePairingRule& rule) {
    FacePairingRule r;
    r.label = rule.label;
    r.tet = rule.to_tet;
    r.face = rule.perm[rule.face];
    r.to_tet = rule.tet;
    r.perm = inverse_perm(rule.perm);
    for (int w = 0; w < 4; ++w) {
        int v = r.perm[w];  // sigma^{-1}(w)
        r.dressing[w][0] = -rule.dressing[v][0];
        r.dressing[w][1] = -rule.dressing[v][1];
    }
    return r;
}

const PointClass& PointClasses::class_of(int tet, const LatticePoint& t) const {
    for (const auto& c : classes)
        for (const auto& m : c.members)
            if (m.tet == tet && m.point == t) return c;
    throw std::out_of_range("no class contains the requested point");
}

const SignedMonomial& PointClasses::transfer_of(int tet, const LatticePoint& t) const {
    for (const auto& c : classes)
        for (const auto& m : c.members)
            if (m.tet == tet && m.point == t) return m.transfer;
    throw std::out_of_range("no class contains the requested point");
}

namespace {

struct Node {
    int parent;
    SignedMonomial to_parent;  // value(this) = to_parent * value(parent)
};

struct WeightedUnionFind {
    std::vector<Node> nodes;

    explicit WeightedUnionFind(std::size_t n) {
        nodes.resize(n);
        for (std::size_t i = 0; i < n; ++i) nodes[i] = {static_cast<int>(i), SignedMonomial::one()};
    }

    // returns (root, factor) with value(i) = factor * value(root)
    std::pair<int, SignedMonomial> find(int i) {
        if (nodes[i].parent == i) return {i, SignedMonomial::one()};
        auto [root, f] = find(nodes[i].parent);
        nodes[i].parent = root;
        nodes[i].to_parent = nodes[i].to_parent * f;
        return {root, nodes[i].to_parent};
    }

    // merge with constraint value(v) = f * value(u); on an inconsistent
    // cycle the nontrivial product is reported through `bad`
    bool unite(int u, int v, const SignedMonomial& f, SignedMonomial* bad) {
        auto [ru, wu] = find(u);
        auto [rv, wv] = find(v);
        SignedMonomial g = wv.inverse() * f * wu;  // value(rv) = g * value(ru)
        if (ru == rv) {
            if (g == SignedMonomial::one()) return true;
            *bad = g;
            return false;
        }
        nodes[rv] = {ru, g};
        return true;
    }
};

}  // namespace

PointClasses build_point_classes(const Triangulation& tri, int n,
                                 const std::vector<std::pair<int, LatticePoint>>& rep_overrides) {
    auto pts = integral_points(n);
    auto primed = primed_symbol_registry(tri);

    std::map<std::pair<int, LatticePoint>, int> index;
    std::vector<std::pair<int, LatticePoint>> flat;
    for (int k = 0; k < tri.tet_count; ++k)
        for (const auto& t : pts) {
            index[{k, t}] = static_cast<int>(flat.size());
            flat.emplace_back(k, t);
        }

    WeightedUnionFind uf(flat.size());
    for (const auto& rule : tri.rules)
        for (const auto& t : face_points(n, rule.face)) {
            LatticePoint u = apply_perm(rule.perm, t);
            SignedMonomial f = rule_transfer(tri, primed, rule, t);
            // c_{u, to_tet} = f * c_{t, tet}
            SignedMonomial bad;
            if (!uf.unite(index[{rule.tet, t}], index[{rule.to_tet, u}], f, &bad)) {
                std::ostringstream os;
                os << "inconsistent transfer cycle through rule '" << rule.label << "' at point ("
                   << t[0] << t[1] << t[2] << t[3] << "," << rule.tet
                   << "): composed factor " << bad.str(*primed);
                throw ValidationError(os.str());
            }
        }

    // group members by root
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(flat.size()); ++i) groups[uf.find(i).first].push_back(i);

    PointClasses out;
    out.primed = primed;
    for (auto& [root, ids] : groups) {
        PointClass pc;
        std::sort(ids.begin(), ids.end(), [&](int a, int b) { return flat[a] < flat[b]; });
        int rep = ids.front();  // lowest (tet, lex point)
        for (const auto& [otet, opt] : rep_overrides)
            for (int id : ids)
                if (flat[id].first == otet && flat[id].second == opt) rep = id;
        SignedMonomial wrep = uf.find(rep).second;
        pc.rep_tet = flat[rep].first;
        pc.rep_point = flat[rep].second;
        for (int id : ids) {
            SignedMonomial w = uf.find(id).second;  // value(id) = w * value(root)
            pc.members.push_back({flat[id].first, flat[id].second, w * wrep.inverse()});
        }
        out.classes.push_back(std::move(pc));
    }
    std::sort(out.classes.begin(), out.classes.end(), [](const PointClass& a, const PointClass& b) {
        return std::pair(a.rep_tet, a.rep_point) < std::pair(b.rep_tet, b.rep_point);
    });
    return out;
}

namespace {

// free reduction of a word in generator indices (+-(i+1))
std::vector<int> free_reduce(const std::vector<int>& w) {
    std::vector<int> out;
    for (int g : w) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

}  // namespace

std::string Presentation::relator_str(std::size_t i) const {
    std::ostringstream os;
    for (int g : relators.at(i)) {
        std::string name = generators.at(std::abs(g) - 1);
        os << name;
        if (g < 0) os << "^-1";
        os << " ";
    }
    std::string s = os.str();
    if (!s.empty()) s.pop_back();
    return s;
}

Presentation face_pairing_presentation(const Triangulation& tri,
                                       std::vector<std::string> tree_labels) {
    if (tree_labels.empty()) tree_labels = tri.tree_hint;

    // choose spanning tree of the dual graph
    std::set<std::string> tree(tree_labels.begin(), tree_labels.end());
    for (const auto& lbl : tree)
        (void)tri.rule(lbl);  // must exist
    if (tree.empty()) {
        std::vector<bool> reached(tri.tet_count, false);
        reached[0] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& r : tri.rules) {
                if (tree.count(r.label)) continue;
                if (reached[r.tet] != reached[r.to_tet]) {
                    tree.insert(r.label);
                    reached[r.tet] = reached[r.to_tet] = true;
                    grew = true;
                }
            }
        }
        for (bool b : reached)
            if (!b) throw ValidationError("disconnected dual graph");
    } else {
        // verify the provided tree spans
        std::vector<bool> reached(tri.tet_count, false);
        reached[0] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& r : tri.rules)
                if (tree.count(r.label) && (reached[r.tet] != reached[r.to_tet])) {
                    reached[r.tet] = reached[r.to_tet] = true;
                    grew = true;
                }
        }
        for (bool b : reached)
            if (!b) throw ValidationError("provided tree labels do not span the dual graph");
    }

    Presentation pres;
    std::map<std::string, int> gen_index;  // 1-based
    for (const auto& r : tri.rules) {
        if (tree.count(r.label)) {
            pres.tree.push_back(r.label);
        } else {
            gen_index[r.label] = static_cast<int>(pres.generators.size()) + 1;
            pres.generators.push_back(r.label);
        }
    }

    // one relator per edge class: walk the edge link
    auto classes = build_point_classes(tri, 2);
    for (const auto& pc : classes.classes) {
        // edge classes are exactly the n=2 classes
        int k = pc.rep_tet;
        LatticePoint t = pc.rep_point;
        std::array<int, 2> ev{};
        int c = 0;
        for (int v = 0; v < 4; ++v)
            if (t[v] == 1) ev[c++] = v;
        // entry face: the lower vertex not on the edge
        int f_in = 0;
        while (f_in == ev[0] || f_in == ev[1]) ++f_in;

        std::vector<int> word;
        int cur_tet = k;
        LatticePoint cur_t = t;
        int cur_in = f_in;
        do {
            int f_out = 0;
            for (int v = 0; v < 4; ++v)
                if (v != cur_in && cur_t[v] == 0) f_out = v;
            // find the rule gluing face (cur_tet, f_out) in either direction
            const FacePairingRule* fwd = nullptr;
            const FacePairingRule* bwd = nullptr;
            for (const auto& r : tri.rules) {
                if (r.tet == cur_tet && r.face == f_out) fwd = &r;
                if (r.to_tet == cur_tet && r.perm[r.face] == f_out) bwd = &r;
            }
            const FacePairingRule* r = fwd ? fwd : bwd;
            if (fwd && bwd && fwd != bwd)
                r = fwd;  // self-gluing: both directions exist, prefer forward
            int dir = (r == fwd) ? +1 : -1;
            FacePairingRule applied = (dir > 0) ? *r : reverse_rule(*r);
            if (!tree.count(r->label)) word.push_back(dir * gen_index[r->label]);
            cur_tet = applied.to_tet;
            cur_t = apply_perm(applied.perm, cur_t);
            cur_in = applied.perm[f_out];
        } while (!(cur_tet == k && cur_t == t && cur_in == f_in));

        // the loop of a face pairing passes the face against the pairing's
        // direction, so the relator reads the crossings in reverse order
        std::reverse(word.begin(), word.end());
        word = free_reduce(word);
        if (!word.empty()) pres.relators.push_back(std::move(word));
    }
    return pres;
}

std::vector<std::vector<long>> relator_exponent_matrix(const Presentation& pres) {
    std::vector<std::vector<long>> m;
    for (const auto& rel : pres.relators) {
        std::vector<long> row(pres.generators.size(), 0);
        for (int g : rel) row[std::abs(g) - 1] += (g > 0) ? 1 : -1;
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace ptolemy
