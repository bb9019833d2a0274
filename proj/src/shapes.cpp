#include "ptolemy/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace ptolemy {

using nlohmann::json;

CartanData cartan_inverse(int n) {
    if (n < 2) throw std::invalid_argument("cartan_inverse: n must be >= 2");
    CartanData cd;
    cd.n = n;
    int r = n - 1;
    cd.A.assign(r, std::vector<Integer>(r, 0));
    cd.Ainv.assign(r, std::vector<Rational>(r, Rational(0)));
    for (int i = 0; i < r; ++i) {
        cd.A[i][i] = 2;
        if (i + 1 < r) cd.A[i][i + 1] = -1;
        if (i > 0) cd.A[i][i - 1] = -1;
    }
    for (int j = 1; j <= r; ++j)
        for (int k = 1; k <= r; ++k) {
            int lo = std::min(j, k), hi = std::max(j, k);
            cd.Ainv[j - 1][k - 1] = Rational(lo * (n - hi), n);
        }
    // A * Ainv = I, exactly
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rational acc(0);
            for (int k = 0; k < r; ++k) acc += Rational(cd.A[i][k]) * cd.Ainv[k][j];
            if (acc != Rational(i == j ? 1 : 0))
                throw std::logic_error("cartan_inverse: inverse check failed");
        }
    return cd;
}

void WedgeSum::add(VarId u, VarId v, const Rational& c) {
    if (u == v || c.is_zero()) return;
    std::pair<VarId, VarId> key{u, v};
    Rational val = c;
    if (u > v) {
        key = {v, u};
        val = -val;
    }
    auto [it, fresh] = terms_.try_emplace(key, val);
    if (!fresh) {
        it->second += val;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WedgeSum WedgeSum::of_monomials(const Monomial& u, const Monomial& v, const Rational& coeff) {
    WedgeSum w;
    for (const auto& [p, e] : u.entries())
        for (const auto& [q, f] : v.entries()) w.add(p, q, coeff * Rational(long(e) * f));
    return w;
}

WedgeSum& WedgeSum::operator+=(const WedgeSum& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

WedgeSum WedgeSum::operator-() const { return scaled(Rational(-1)); }

WedgeSum WedgeSum::scaled(const Rational& c) const {
    WedgeSum w;
    if (c.is_zero()) return w;
    for (const auto& [k, v] : terms_) w.terms_.emplace(k, v * c);
    return w;
}

bool WedgeSum::supported_on(const std::vector<VarId>& allowed) const {
    auto ok = [&](VarId v) { return std::find(allowed.begin(), allowed.end(), v) != allowed.end(); };
    for (const auto& [k, c] : terms_)
        if (!ok(k.first) || !ok(k.second)) return false;
    return true;
}

WedgeSum WedgeSum::substituted(const std::map<VarId, Monomial>& map) const {
    WedgeSum out;
    auto image = [&](VarId v) {
        auto it = map.find(v);
        return it == map.end() ? Monomial::var(v) : it->second;
    };
    for (const auto& [k, c] : terms_) out += of_monomials(image(k.first), image(k.second), c);
    return out;
}

std::string WedgeSum::str(const VariableRegistry& reg) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational v = c;
        if (first) {
            if (v.sign() < 0) os << "-", v = -v;
        } else {
            os << (v.sign() < 0 ? " - " : " + ");
            if (v.sign() < 0) v = -v;
        }
        first = false;
        if (!v.is_one()) os << v.str() << "*";
        os << "(" << reg.name(k.first) << "^" << reg.name(k.second) << ")";
    }
    return os.str();
}

WedgeSum dehn_rhs(const RegistryPtr& reg, int n, int cusp_count, const std::string& m_base,
                  const std::string& l_base) {
    CartanData cd = cartan_inverse(n);
    auto bar = [&](const std::string& base, int cusp, int j) {
        // x_j / x_{j+1}; for j = n-1 the last entry is (x_1...x_{n-1})^{-1}
        Monomial m = Monomial::var(reg->id(eigen_symbol_name(base, cusp, j, cusp_count, n)));
        if (j + 1 <= n - 1) {
            m = m * Monomial::var(reg->id(eigen_symbol_name(base, cusp, j + 1, cusp_count, n)), -1);
        } else {
            for (int k = 1; k <= n - 1; ++k)
                m = m * Monomial::var(reg->id(eigen_symbol_name(base, cusp, k, cusp_count, n)));
        }
        return m;
    };
    WedgeSum acc;
    for (int i = 0; i < cusp_count; ++i)
        for (int j = 1; j <= n - 1; ++j)
            for (int k = 1; k <= n - 1; ++k)
                acc += WedgeSum::of_monomials(bar(m_base, i, j), bar(l_base, i, k),
                                              -cd.Ainv[j - 1][k - 1]);
    return acc;
}

EdgeKind edge_kind(const LatticePoint& e) {
    if (e == LatticePoint{1, 1, 0, 0} || e == LatticePoint{0, 0, 1, 1}) return EdgeKind::A;
    if (e == LatticePoint{0, 1, 1, 0} || e == LatticePoint{1, 0, 0, 1}) return EdgeKind::B;
    if (e == LatticePoint{1, 0, 1, 0} || e == LatticePoint{0, 1, 0, 1}) return EdgeKind::C;
    throw std::invalid_argument("not an edge point");
}

Complex NumericShapes::value(int tet, const LatticePoint& s, EdgeKind k) const {
    for (const auto& sub : subs)
        if (sub.tet == tet && sub.s == s)
            return k == EdgeKind::A ? sub.zA : (k == EdgeKind::B ? sub.zB : sub.zC);
    throw std::out_of_range("no shapes for requested subsimplex");
}

SignedMonomial SymbolicShapes::value(int tet, const LatticePoint& s, EdgeKind k) const {
    for (const auto& sub : subs)
        if (sub.tet == tet && sub.s == s)
            return k == EdgeKind::A ? sub.zA : (k == EdgeKind::B ? sub.zB : sub.zC);
    throw std::out_of_range("no shapes for requested subsimplex");
}

PointEvaluator::PointEvaluator(const IdealBundle& bundle, const Triangulation& tri,
                               const PointClasses& classes, std::vector<Complex> values)
    : bundle_(&bundle), tri_(&tri), classes_(&classes), values_(std::move(values)) {
    if (values_.size() != bundle.registry->size())
        throw std::invalid_argument("point has wrong number of values");
    // evaluate every primed symbol through the cusp basis (or directly when
    // the bundle is already in the rectangle basis)
    int cc = static_cast<int>(tri.cusps.size());
    int n = bundle.n;
    for (int i = 0; i < cc; ++i) {
        const CuspBasis& cb = tri.cusps[i];
        for (int j = 1; j <= n - 1; ++j) {
            VarId pm = classes.primed->id(eigen_symbol_name("mp", i, j, cc, n));
            VarId pl = classes.primed->id(eigen_symbol_name("lp", i, j, cc, n));
            if (bundle.mode == IdealMode::Standard) {
                primed_cache_[pm] = 1.0;
                primed_cache_[pl] = 1.0;
            } else if (bundle.basis == EigenBasis::Rectangle) {
                primed_cache_[pm] = values_.at(bundle.registry->id(eigen_symbol_name("mp", i, j, cc, n)));
                primed_cache_[pl] = values_.at(bundle.registry->id(eigen_symbol_name("lp", i, j, cc, n)));
            } else {
                Complex m = values_.at(bundle.registry->id(eigen_symbol_name("m", i, j, cc, n)));
                Complex l = values_.at(bundle.registry->id(eigen_symbol_name("l", i, j, cc, n)));
                primed_cache_[pm] = std::pow(m, cb.a) * std::pow(l, cb.b);
                primed_cache_[pl] = std::pow(m, cb.c) * std::pow(l, cb.d);
            }
        }
    }
}

Complex PointEvaluator::primed_symbol(VarId primed_id) const {
    return primed_cache_.at(primed_id);
}

Complex PointEvaluator::coordinate(int tet, const LatticePoint& t) const {
    const PointClass& pc = classes_->class_of(tet, t);
    const SignedMonomial& f = classes_->transfer_of(tet, t);
    std::string rep;
    {
        // representative variable name (mirrors ideal.cpp's naming)
        if (bundle_->n == 2) {
            int i = 0, j = 0, c = 0;
            for (int v = 0; v < 4; ++v)
                if (pc.rep_point[v] == 1) (c++ == 0 ? i : j) = v;
            rep = "c" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(pc.rep_tet);
        } else {
            rep = "c";
            for (int v : pc.rep_point) rep += std::to_string(v);
            rep += "_" + std::to_string(pc.rep_tet);
        }
    }
    Complex val = values_.at(bundle_->registry->id(rep));
    Complex factor = double(f.sign);
    for (const auto& [v, e] : f.mono.entries()) factor *= std::pow(primed_cache_.at(v), e);
    return factor * val;
}

namespace {

LatticePoint add(LatticePoint a, const LatticePoint& b) {
    for (int i = 0; i < 4; ++i) a[i] += b[i];
    return a;
}

const LatticePoint E1001{1, 0, 0, 1}, E0110{0, 1, 1, 0}, E1010{1, 0, 1, 0}, E0101{0, 1, 0, 1},
    E1100{1, 1, 0, 0}, E0011{0, 0, 1, 1};

}  // namespace

NumericShapes shapes_from_point(const PointEvaluator& pt) {
    const IdealBundle& bundle = pt.bundle();
    const Triangulation& tri = pt.triangulation();
    NumericShapes out;
    for (int k = 0; k < tri.tet_count; ++k)
        for (const auto& s : relation_offsets(bundle.n)) {
            Complex A = pt.coordinate(k, add(s, E1001)) * pt.coordinate(k, add(s, E0110));
            Complex B = pt.coordinate(k, add(s, E1010)) * pt.coordinate(k, add(s, E0101));
            Complex C = pt.coordinate(k, add(s, E1100)) * pt.coordinate(k, add(s, E0011));
            if (std::abs(B) < 1e-300 || std::abs(C) < 1e-300 || std::abs(A) < 1e-300)
                throw std::domain_error("degenerate simplex: vanishing Ptolemy product");
            NumericShapes::Sub sub{k, s, A / B, B / C, -C / A};
            for (Complex z : {sub.zA, sub.zB, sub.zC})
                if (std::abs(z) < 1e-12 || std::abs(z - 1.0) < 1e-12)
                    throw std::domain_error("degenerate simplex: shape in {0,1}");
            double r1 = std::abs(sub.zB - 1.0 / (1.0 - sub.zA));
            double r2 = std::abs(sub.zC - 1.0 / (1.0 - sub.zB));
            double r3 = std::abs(sub.zA - 1.0 / (1.0 - sub.zC));
            double r4 = std::abs(sub.zA * sub.zB * sub.zC + 1.0);
            out.max_relation_residual =
                std::max({out.max_relation_residual, r1, r2, r3, r4});
            out.subs.push_back(sub);
        }
    return out;
}

SymbolicShapes shapes_symbolic(const IdealBundle& bundle, const Triangulation& tri,
                               const PointClasses& classes) {
    // every coordinate is transfer * representative; the cross-ratios are
    // signed Laurent monomials in the bundle variables
    auto resolve = [&](int tet, const LatticePoint& t) {
        const PointClass& pc = classes.class_of(tet, t);
        const SignedMonomial& f = classes.transfer_of(tet, t);
        std::string rep;
        if (bundle.n == 2) {
            int i = 0, j = 0, c = 0;
            for (int v = 0; v < 4; ++v)
                if (pc.rep_point[v] == 1) (c++ == 0 ? i : j) = v;
            rep = "c" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(pc.rep_tet);
        } else {
            rep = "c";
            for (int v : pc.rep_point) rep += std::to_string(v);
            rep += "_" + std::to_string(pc.rep_tet);
        }
        // map the primed transfer monomial into bundle symbols
        Monomial m;
        int cc = static_cast<int>(tri.cusps.size());
        for (const auto& [v, e] : f.mono.entries()) {
            const std::string& pname = classes.primed->name(v);
            if (bundle.mode == IdealMode::Standard) continue;
            if (bundle.basis == EigenBasis::Rectangle) {
                m = m * Monomial::var(bundle.registry->id(pname), e);
            } else {
                // pname is mp.. or lp..; translate through the cusp basis
                bool is_m = pname.rfind("mp", 0) == 0;
                // recover (cusp, j) by name lookup
                for (int i = 0; i < cc; ++i)
                    for (int j = 1; j <= bundle.n - 1; ++j)
                        if (eigen_symbol_name(is_m ? "mp" : "lp", i, j, cc, bundle.n) == pname) {
                            const CuspBasis& cb = tri.cusps[i];
                            VarId mm = bundle.registry->id(eigen_symbol_name("m", i, j, cc, bundle.n));
                            VarId ll = bundle.registry->id(eigen_symbol_name("l", i, j, cc, bundle.n));
                            int ea = is_m ? cb.a : cb.c;
                            int eb = is_m ? cb.b : cb.d;
                            m = m * Monomial::var(mm, ea * e) * Monomial::var(ll, eb * e);
                        }
            }
        }
        return SignedMonomial{f.sign, m * Monomial::var(bundle.registry->id(rep))};
    };

    SymbolicShapes out;
    for (int k = 0; k < tri.tet_count; ++k)
        for (const auto& s : relation_offsets(bundle.n)) {
            SignedMonomial A = resolve(k, add(s, E1001)) * resolve(k, add(s, E0110));
            SignedMonomial B = resolve(k, add(s, E1010)) * resolve(k, add(s, E0101));
            SignedMonomial C = resolve(k, add(s, E1100)) * resolve(k, add(s, E0011));
            SymbolicShapes::Sub sub{k, s, A * B.inverse(), B * C.inverse(),
                                    SignedMonomial{-1, Monomial::one()} * C * A.inverse()};
            out.subs.push_back(sub);
        }
    return out;
}

GluingReport check_gluing_equations(const NumericShapes& shapes, const PointClasses& classes,
                                    int n) {
    GluingReport rep;
    int idx = 0;
    for (const auto& pc : classes.classes) {
        Complex prod = 1.0;
        for (const auto& mem : pc.members) {
            // all decompositions t = s + e
            for (const auto& s : relation_offsets(n))
                for (const auto& e : {E1100, E0011, E0110, E1001, E1010, E0101}) {
                    if (add(s, e) == mem.point) prod *= shapes.value(mem.tet, s, edge_kind(e));
                }
        }
        double resid = std::abs(prod - 1.0);
        rep.rows.push_back({idx++, prod, resid});
        rep.max_residual = std::max(rep.max_residual, resid);
    }
    return rep;
}

std::vector<ShapeCertificate> parse_certificates(const RegistryPtr& reg,
                                                 const std::string& json_text) {
    json j = json::parse(json_text);
    std::vector<ShapeCertificate> out;
    for (const auto& c : j) {
        ShapeCertificate sc;
        sc.tet = c.at("tet").get<int>();
        for (int v = 0; v < 4; ++v) sc.s[v] = c.at("s").at(v).get<int>();
        sc.z = SignedMonomial::parse(reg, c.at("z").get<std::string>());
        sc.one_minus_z = SignedMonomial::parse(reg, c.at("one_minus_z").get<std::string>());
        out.push_back(sc);
    }
    return out;
}

DehnLhsResult dehn_lhs_from_certificates(const std::vector<ShapeCertificate>& certs,
                                         const IdealBundle& bundle, const GroebnerBasis& gb,
                                         const Triangulation* tri, const PointClasses* classes) {
    const RegistryPtr& reg = bundle.registry;
    std::optional<SymbolicShapes> shapes;
    if (tri && classes) shapes = shapes_symbolic(bundle, *tri, *classes);

    DehnLhsResult res;
    res.coordinates_cancelled = false;
    for (const auto& cert : certs) {
        if (cert.z == cert.one_minus_z)
            throw std::invalid_argument("certificate rejected: z and 1-z are identical monomials");
        if (shapes) {
            SignedMonomial expect = shapes->value(cert.tet, cert.s, EdgeKind::A);
            if (!(expect == cert.z))
                throw std::invalid_argument("certificate rejected: z does not match the cross-ratio");
        }
        // membership of the cleared identity 1 - z - (1 - z)
        auto denom_of = [](const Monomial& m) {
            std::vector<Monomial::Entry> neg;
            for (const auto& [v, e] : m.entries())
                if (e < 0) neg.emplace_back(v, -e);
            return Monomial(std::move(neg));
        };
        Monomial D = Monomial::lcm(denom_of(cert.z.mono), denom_of(cert.one_minus_z.mono));
        Polynomial identity =
            Polynomial::monomial(reg, D) -
            Polynomial::monomial(reg, cert.z.mono * D, Rational(cert.z.sign)) -
            Polynomial::monomial(reg, cert.one_minus_z.mono * D, Rational(cert.one_minus_z.sign));
        if (!ideal_membership(identity, gb))
            throw std::invalid_argument(
                "certificate rejected: 1 - z identity fails ideal membership");
        res.raw += WedgeSum::of_monomials(cert.z.mono, cert.one_minus_z.mono);
    }
    std::vector<VarId> eigen = bundle.eigenvalue_vars();
    res.coordinates_cancelled = res.raw.supported_on(eigen);
    if (!res.coordinates_cancelled)
        throw std::invalid_argument(
            "residual coordinate symbols in the Dehn invariant after canonicalization");
    res.total = res.raw;
    return res;
}

std::vector<SignedMonomial> symbolic_gluing_products(const std::vector<ShapeCertificate>& certs,
                                                     const PointClasses& classes, int n) {
    auto find_cert = [&](int tet, const LatticePoint& s) -> const ShapeCertificate& {
        for (const auto& c : certs)
            if (c.tet == tet && c.s == s) return c;
        throw std::out_of_range("missing certificate for subsimplex");
    };
    std::vector<SignedMonomial> out;
    for (const auto& pc : classes.classes) {
        SignedMonomial prod = SignedMonomial::one();
        for (const auto& mem : pc.members)
            for (const auto& s : relation_offsets(n))
                for (const auto& e : {E1100, E0011, E0110, E1001, E1010, E0101}) {
                    if (add(s, e) != mem.point) continue;
                    const ShapeCertificate& c = find_cert(mem.tet, s);
                    SignedMonomial z = c.z, omz = c.one_minus_z;
                    switch (edge_kind(e)) {
                        case EdgeKind::A:
                            prod = prod * z;
                            break;
                        case EdgeKind::B:
                            prod = prod * omz.inverse();  // zB = 1/(1-zA)
                            break;
                        case EdgeKind::C:
                            // zC = -(1-zA)/zA
                            prod = prod * SignedMonomial{-1, Monomial::one()} * omz * z.inverse();
                            break;
                    }
                }
        out.push_back(prod);
    }
    return out;
}

DehnVerdict verify_dehn_theorem(const WedgeSum& lhs, const WedgeSum& rhs) {
    if (lhs == rhs) return DehnVerdict::Equal;
    if (lhs == -rhs) return DehnVerdict::EqualUpToGlobalSign;
    return DehnVerdict::Different;
}

}  // namespace ptolemy
