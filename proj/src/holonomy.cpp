#include "ptolemy/holonomy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace ptolemy {

Mat2 Mat2::inverse() const {
    Complex dt = det();
    if (std::abs(dt) < 1e-300) throw NumericError("singular 2x2 matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

std::array<Complex, 2> Mat2::eigenvalues() const {
    Complex t = trace(), dt = det();
    Complex disc = std::sqrt(t * t - 4.0 * dt);
    return {(t + disc) / 2.0, (t - disc) / 2.0};
}

double dist_to_identity(const Mat2& m) { return (m - Mat2::identity()).norm(); }

namespace {

using Poly1 = std::vector<Complex>;  // univariate, coeffs[k] * x^k

Complex eval1(const Poly1& p, Complex x) {
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly1 derivative(const Poly1& p) {
    Poly1 d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * double(k));
    return d;
}

std::vector<Complex> durand_kerner(Poly1 p, int max_iter) {
    while (!p.empty() && std::abs(p.back()) < 1e-300) p.pop_back();
    if (p.size() <= 1) return {};
    int deg = static_cast<int>(p.size()) - 1;
    for (auto& c : p) c /= p.back() * 1.0;  // monic-ish scaling, keeps values small
    Complex lead = p.back();
    std::vector<Complex> roots(deg);
    Complex seed(0.4, 0.9);
    Complex acc(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        acc *= seed;
        roots[i] = acc;
    }
    for (int it = 0; it < max_iter; ++it) {
        double moved = 0.0;
        for (int i = 0; i < deg; ++i) {
            Complex denom = lead;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            Complex delta = eval1(p, roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return roots;
}

}  // namespace

std::vector<NumericPoint> solve_point(const IdealBundle& bundle,
                                      const std::map<std::string, Complex>& pins,
                                      const SolveOptions& options) {
    const RegistryPtr& reg = bundle.registry;
    std::vector<std::optional<Complex>> fixed(reg->size());
    for (const auto& [name, v] : pins) fixed[reg->id(name)] = v;

    // witness variables are determined afterwards, not solved for
    std::set<VarId> witness;
    for (VarId v : bundle.witness_vars()) witness.insert(v);

    std::vector<const Polynomial*> gens;
    for (const auto& g : bundle.generators) {
        bool has_witness = false;
        for (VarId v : g.support())
            if (witness.count(v)) has_witness = true;
        if (!has_witness) gens.push_back(&g);
    }

    auto remaining_vars = [&](const Polynomial& g) {
        std::vector<VarId> out;
        for (VarId v : g.support())
            if (!fixed[v] && !witness.count(v)) out.push_back(v);
        return out;
    };

    // substitute current pins, producing a univariate polynomial in `var`
    auto specialize = [&](const Polynomial& g, VarId var) {
        Poly1 p;
        for (const auto& t : g.terms()) {
            Complex c = t.coeff.to_double();
            int deg = 0;
            for (const auto& [v, e] : t.mono.entries()) {
                if (v == var)
                    deg = e;
                else
                    c *= std::pow(*fixed[v], e);
            }
            if (static_cast<int>(p.size()) <= deg) p.resize(deg + 1, Complex(0));
            p[deg] += c;
        }
        return p;
    };

    // propagate generators that became linear in one variable
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Polynomial* g : gens) {
            auto rv = remaining_vars(*g);
            if (rv.size() != 1 || g->degree_in(rv[0]) != 1) continue;
            Poly1 p = specialize(*g, rv[0]);
            if (p.size() == 2 && std::abs(p[1]) > 1e-12) {
                fixed[rv[0]] = -p[0] / p[1];
                changed = true;
            }
        }
    }

    std::set<VarId> open;
    for (const Polynomial* g : gens)
        for (VarId v : remaining_vars(*g)) open.insert(v);

    std::vector<NumericPoint> points;
    auto finish_point = [&](std::vector<std::optional<Complex>> vals) -> std::optional<NumericPoint> {
        // witness: inverse of the coordinate/eigenvalue product
        Complex prod = 1.0;
        for (VarId v = 0; v < reg->size(); ++v) {
            if (witness.count(v)) continue;
            if (!vals[v]) return std::nullopt;
            if (reg->role(v) == VarRole::PtolemyCoord || reg->role(v) == VarRole::Eigenvalue)
                prod *= *vals[v];
        }
        if (std::abs(prod) < 1e-12) return std::nullopt;  // some coordinate vanishes
        for (VarId v : witness) vals[v] = 1.0 / prod;
        NumericPoint np;
        for (VarId v = 0; v < reg->size(); ++v) {
            if (std::abs(*vals[v]) < 1e-12 && reg->role(v) != VarRole::Generic)
                return std::nullopt;
            np.values.push_back(*vals[v]);
        }
        for (const auto& g : bundle.generators)
            np.residual = std::max(np.residual, std::abs(g.evaluate(np.values)));
        if (np.residual > options.residual_tol) return std::nullopt;
        return np;
    };

    if (open.empty()) {
        auto np = finish_point(fixed);
        if (np) points.push_back(*np);
        return points;
    }
    if (open.size() > 1)
        throw NumericError(
            "solve_point: system is not univariate after pinning (positive-dimensional or "
            "unsupported shape); pin more variables");

    VarId var = *open.begin();
    // lowest positive-degree specialized generator drives the root search
    const Polynomial* driver = nullptr;
    int best_deg = INT32_MAX;
    for (const Polynomial* g : gens) {
        auto rv = remaining_vars(*g);
        if (rv.size() != 1 || rv[0] != var) continue;
        int d = g->degree_in(var);
        if (d > 0 && d < best_deg) best_deg = d, driver = g;
    }
    if (!driver) throw NumericError("solve_point: no generator constrains the open variable");

    Poly1 p = specialize(*driver, var);
    Poly1 dp = derivative(p);
    for (Complex root : durand_kerner(p, options.max_iterations)) {
        // one Newton pass on the driving polynomial
        Complex fp = eval1(dp, root);
        if (std::abs(fp) > 1e-300) root -= eval1(p, root) / fp;
        // cross-check every generator
        auto vals = fixed;
        vals[var] = root;
        bool ok = true;
        for (const Polynomial* g : gens) {
            auto rv = remaining_vars(*g);
            bool covered = true;
            for (VarId v : rv)
                if (v != var) covered = false;
            if (!covered) continue;
            Poly1 q = specialize(*g, var);
            if (std::abs(eval1(q, root)) > options.filter_tol) ok = false;
        }
        if (!ok) continue;
        auto np = finish_point(vals);
        if (np) points.push_back(*np);
    }
    // deterministic output order
    std::sort(points.begin(), points.end(), [&](const NumericPoint& a, const NumericPoint& b) {
        Complex x = a.values[var], y = b.values[var];
        return std::pair(x.real(), x.imag()) < std::pair(y.real(), y.imag());
    });
    return points;
}

namespace {

Complex det2(const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
    return u[0] * v[1] - u[1] * v[0];
}

Complex dressing_value(const PointEvaluator& pt, const FacePairingRule& rule, int v) {
    const Triangulation& tri = pt.triangulation();
    const PointClasses& classes = pt.classes();
    int cc = static_cast<int>(tri.cusps.size());
    int cusp = tri.vertex_cusp[rule.tet][v];
    auto [emu, ela] = std::pair{rule.dressing[v][0], rule.dressing[v][1]};
    Complex d = 1.0;
    if (emu != 0)
        d *= std::pow(
            pt.primed_symbol(classes.primed->id(eigen_symbol_name("mp", cusp, 1, cc, pt.bundle().n))),
            emu);
    if (ela != 0)
        d *= std::pow(
            pt.primed_symbol(classes.primed->id(eigen_symbol_name("lp", cusp, 1, cc, pt.bundle().n))),
            ela);
    return d;
}

}  // namespace

FlagSystem develop_flags(const PointEvaluator& pt, const std::vector<std::string>& tree_labels) {
    const Triangulation& tri = pt.triangulation();
    if (pt.bundle().n != 2) throw NumericError("flag development is implemented for n=2 only");

    Presentation pres = face_pairing_presentation(tri, tree_labels);
    std::set<std::string> tree(pres.tree.begin(), pres.tree.end());

    FlagSystem fs;
    fs.flags.resize(tri.tet_count);
    std::vector<bool> placed(tri.tet_count, false);

    auto c = [&](int tet, int i, int j) -> Complex {
        LatticePoint t{};
        t[i] += 1;
        t[j] += 1;
        Complex val = pt.coordinate(tet, t);
        return i < j ? val : -val;
    };

    // root tetrahedron: explicit flags matching the local coordinates
    {
        int k = 0;
        Complex c01 = c(k, 0, 1), c02 = c(k, 0, 2), c03 = c(k, 0, 3);
        Complex c12 = c(k, 1, 2), c13 = c(k, 1, 3);
        fs.flags[k][0] = {1.0, 0.0};
        fs.flags[k][1] = {0.0, c01};
        fs.flags[k][2] = {-c12 / c01, c02};
        fs.flags[k][3] = {-c13 / c01, c03};
        placed[k] = true;
    }

    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& r0 : tri.rules) {
            if (!tree.count(r0.label)) continue;
            for (const FacePairingRule& r : {r0, reverse_rule(r0)}) {
                if (!placed[r.tet] || placed[r.to_tet]) continue;
                // transport the three face flags (tree generator acts as I)
                int miss = r.perm[r.face];
                for (int v = 0; v < 4; ++v) {
                    if (v == r.face) continue;
                    Complex d = dressing_value(pt, r, v);
                    fs.flags[r.to_tet][r.perm[v]] = {fs.flags[r.tet][v][0] * d,
                                                     fs.flags[r.tet][v][1] * d};
                }
                // solve the missing flag from two determinant equations
                std::array<int, 3> known{};
                int kn = 0;
                for (int v = 0; v < 4; ++v)
                    if (v != miss) known[kn++] = v;
                auto& a = fs.flags[r.to_tet][known[0]];
                auto& b = fs.flags[r.to_tet][known[1]];
                Complex r1 = c(r.to_tet, known[0], miss);
                Complex r2 = c(r.to_tet, known[1], miss);
                // det(a, x) = r1, det(b, x) = r2
                Complex D = det2(a, b);
                if (std::abs(D) < 1e-300) throw NumericError("degenerate flags while developing");
                // det(a, x) = r1 and det(b, x) = r2:
                // a0 x1 - a1 x0 = r1 ; b0 x1 - b1 x0 = r2
                Complex x0 = (r1 * b[0] - r2 * a[0]) / D;
                Complex x1 = (r1 * b[1] - r2 * a[1]) / D;
                fs.flags[r.to_tet][miss] = {x0, x1};
                placed[r.to_tet] = true;
                grew = true;
            }
        }
    }
    for (bool b : placed)
        if (!b) throw NumericError("tree does not reach every tetrahedron");

    for (int k = 0; k < tri.tet_count; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double resid = std::abs(det2(fs.flags[k][i], fs.flags[k][j]) - c(k, i, j));
                fs.max_det_residual = std::max(fs.max_det_residual, resid);
            }
    return fs;
}

CocycleLabeling natural_cocycle(const PointEvaluator& pt) {
    const Triangulation& tri = pt.triangulation();
    if (pt.bundle().n != 2) throw NumericError("natural cocycles are implemented for n=2 only");
    CocycleLabeling lab;

    auto c = [&](int tet, int i, int j) -> Complex {
        LatticePoint t{};
        t[i] += 1;
        t[j] += 1;
        Complex val = pt.coordinate(tet, t);
        return i < j ? val : -val;
    };

    for (int k = 0; k < tri.tet_count; ++k) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                Complex cij = c(k, i, j);
                lab.long_edges[{k, i, j}] = Mat2{0.0, -1.0 / cij, cij, 0.0};
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l) {
                    if (i == j || i == l || j == l) continue;
                    Complex u = c(k, l, j) / (c(k, i, j) * c(k, i, l));
                    lab.short_edges[{k, i, j, l}] = Mat2{1.0, u, 0.0, 1.0};
                }
        // hexagonal faces: product telescopes to the identity
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int l = j + 1; l < 4; ++l) {
                    Mat2 P = lab.long_edges[{k, i, j}] * lab.short_edges[{k, j, i, l}] *
                             lab.long_edges[{k, j, l}] * lab.short_edges[{k, l, j, i}] *
                             lab.long_edges[{k, l, i}] * lab.short_edges[{k, i, l, j}];
                    lab.max_hexagon_residual =
                        std::max(lab.max_hexagon_residual, dist_to_identity(P));
                }
    }

    // face-pairing edges and the two square types
    for (const auto& rule : tri.rules) {
        std::array<Mat2, 4> D;
        for (int v = 0; v < 4; ++v) {
            Complex d = dressing_value(pt, rule, v);
            D[v] = Mat2::diag(d, 1.0 / d);
            lab.face_pairing_edges[{rule.label, v}] = D[v];
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j || i == rule.face || j == rule.face) continue;
                // long-edge square: alpha'_{sigma(i) sigma(j)} = D_i^{-1} alpha_{ij} D_j
                Mat2 lhs = lab.long_edges[{rule.to_tet, rule.perm[i], rule.perm[j]}];
                Mat2 rhs = D[i].inverse() * lab.long_edges[{rule.tet, i, j}] * D[j];
                lab.max_long_square_residual =
                    std::max(lab.max_long_square_residual, (lhs - rhs).norm());
                for (int l = 0; l < 4; ++l) {
                    if (l == i || l == j || l == rule.face) continue;
                    // short-edge square: beta' = D_i^{-1} beta D_i
                    Mat2 ls = lab.short_edges[{rule.to_tet, rule.perm[i], rule.perm[j], rule.perm[l]}];
                    Mat2 rs = D[i].inverse() * lab.short_edges[{rule.tet, i, j, l}] * D[i];
                    lab.max_short_square_residual =
                        std::max(lab.max_short_square_residual, (ls - rs).norm());
                }
            }
    }

    // multiplier polygons: composed transfer factor around each class is 1
    const PointClasses& classes = pt.classes();
    for (const auto& pc : classes.classes)
        for (const auto& mem : pc.members) {
            Complex f = double(mem.transfer.sign);
            for (const auto& [v, e] : mem.transfer.mono.entries())
                f *= std::pow(pt.primed_symbol(v), e);
            Complex g = pt.coordinate(mem.tet, mem.point) / pt.coordinate(pc.rep_tet, pc.rep_point);
            lab.max_polygon_residual = std::max(lab.max_polygon_residual, std::abs(f - g));
        }
    return lab;
}

std::vector<int> parse_word(const std::vector<std::string>& labels, const std::string& text) {
    auto index_of = [&](const std::string& s) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return static_cast<int>(i) + 1;
        throw std::invalid_argument("unknown generator '" + s + "' in word");
    };
    std::vector<int> word;
    if (text.find(' ') == std::string::npos && text.find('^') == std::string::npos &&
        text.find(',') == std::string::npos) {
        // compact letters: lowercase generator, uppercase inverse
        for (char ch : text) {
            if (std::isspace(static_cast<unsigned char>(ch))) continue;
            bool inv = std::isupper(static_cast<unsigned char>(ch));
            std::string name(1, std::tolower(static_cast<unsigned char>(ch)));
            int g = index_of(name);
            word.push_back(inv ? -g : g);
        }
        return word;
    }
    std::string token;
    std::istringstream is(text);
    while (is >> token) {
        while (!token.empty() && token.back() == ',') token.pop_back();
        if (token.empty()) continue;
        bool inv = false;
        auto pos = token.find("^-1");
        if (pos != std::string::npos) {
            inv = true;
            token = token.substr(0, pos);
        }
        int g = index_of(token);
        word.push_back(inv ? -g : g);
    }
    return word;
}

Mat2 HolonomyMap::word(const std::string& w) const {
    std::vector<std::string> labels;
    for (const auto& [name, img] : generator_images) labels.push_back(name);
    Mat2 acc = Mat2::identity();
    for (int g : parse_word(labels, w)) {
        const Mat2& img = generator_images.at(labels[std::abs(g) - 1]);
        acc = acc * (g > 0 ? img : img.inverse());
    }
    return acc;
}

HolonomyMap holonomy(const PointEvaluator& pt, const std::vector<std::string>& tree_labels,
                     double relator_tol) {
    const Triangulation& tri = pt.triangulation();
    HolonomyMap hol;
    hol.presentation = face_pairing_presentation(tri, tree_labels);
    FlagSystem fs = develop_flags(pt, tree_labels);
    hol.max_gluing_residual = fs.max_det_residual;

    std::set<std::string> tree(hol.presentation.tree.begin(), hol.presentation.tree.end());
    for (const auto& rule : tri.rules) {
        if (tree.count(rule.label)) {
            hol.generator_images[rule.label] = Mat2::identity();
            continue;
        }
        // rho(alpha) * (dressed source flag) = target flag, on the glued face
        std::array<int, 3> vs{};
        int c = 0;
        for (int v = 0; v < 4; ++v)
            if (v != rule.face) vs[c++] = v;
        std::array<std::array<Complex, 2>, 3> src{}, tgt{};
        for (int idx = 0; idx < 3; ++idx) {
            int v = vs[idx];
            Complex d = dressing_value(pt, rule, v);
            src[idx] = {fs.flags[rule.tet][v][0] * d, fs.flags[rule.tet][v][1] * d};
            tgt[idx] = fs.flags[rule.to_tet][rule.perm[v]];
        }
        Complex D = det2(src[0], src[1]);
        if (std::abs(D) < 1e-300) throw NumericError("degenerate face flags");
        // g = [tgt0 tgt1] * [src0 src1]^{-1}
        Mat2 T{tgt[0][0], tgt[1][0], tgt[0][1], tgt[1][1]};
        Mat2 S{src[0][0], src[1][0], src[0][1], src[1][1]};
        Mat2 g = T * S.inverse();
        // third-vertex consistency
        std::array<Complex, 2> gx{g.a * src[2][0] + g.b * src[2][1],
                                  g.c * src[2][0] + g.d * src[2][1]};
        double resid = std::sqrt(std::norm(gx[0] - tgt[2][0]) + std::norm(gx[1] - tgt[2][1]));
        hol.max_gluing_residual = std::max(hol.max_gluing_residual, resid);
        hol.max_det_residual = std::max(hol.max_det_residual, std::abs(g.det() - 1.0));
        hol.generator_images[rule.label] = g;
    }

    for (std::size_t i = 0; i < hol.presentation.relators.size(); ++i) {
        Mat2 acc = Mat2::identity();
        for (int g : hol.presentation.relators[i]) {
            const Mat2& img = hol.generator_images.at(hol.presentation.generators[std::abs(g) - 1]);
            acc = acc * (g > 0 ? img : img.inverse());
        }
        hol.max_relator_residual = std::max(hol.max_relator_residual, dist_to_identity(acc));
    }
    if (hol.max_relator_residual > relator_tol)
        throw NumericError("cocycle/path bookkeeping error: relator residual " +
                           std::to_string(hol.max_relator_residual));
    return hol;
}

TwoBridgeRepReport verify_two_bridge_rep(Complex m, Complex l, const HolonomyMap* hol) {
    if (std::abs(std::pow(m, 4) - 1.0) < 1e-10 ||
        std::abs(std::pow(m, 6) - std::pow(m, 2)) < 1e-10)
        throw NumericError("excluded locus: m^4 = 1 or m^6 = m^2");
    Complex m2 = m * m, m4 = m2 * m2, m6 = m4 * m2, m8 = m4 * m4;
    Complex lp = m2 * l;  // the mu^2-shifted longitude eigenvalue convention
    Mat2 x1{1.0 / m, (m4 * lp - m2 * lp - m2 - lp) / (m4 - 1.0), 0.0, m};
    Mat2 x2{0.0, (m2 * lp + m2) / (m4 - 1.0),
            (-m8 + m6 + 2.0 * m4 + m2 * lp - 1.0) / (m6 - m2), (m2 + 1.0) / m};
    Mat2 w = x2 * x1.inverse() * x2.inverse() * x1;
    TwoBridgeRepReport rep{x1, x2, 0.0, 0.0, 0.0};
    rep.relation_residual = (x1 * w - w * x2).norm();
    rep.det_residual = std::max(std::abs(x1.det() - 1.0), std::abs(x2.det() - 1.0));
    if (hol) {
        Mat2 h1 = hol->word("c");
        Mat2 h2 = hol->word("Bc");
        double t = 0.0;
        t = std::max(t, std::abs(x1.trace() - h1.trace()));
        t = std::max(t, std::abs(x2.trace() - h2.trace()));
        t = std::max(t, std::abs((x1 * x2).trace() - (h1 * h2).trace()));
        t = std::max(t, std::abs((x1 * x2.inverse()).trace() - (h1 * h2.inverse()).trace()));
        rep.trace_match_residual = t;
    }
    return rep;
}

}  // namespace ptolemy
