#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/groebner.hpp"
#include "ptolemy/ideal.hpp"

namespace ptolemy {

using Complex = std::complex<double>;

struct CartanData {
    int n;
    std::vector<std::vector<Integer>> A;
    std::vector<std::vector<Rational>> Ainv;  // (A^{-1})_{jk} = j(n-k)/n for j <= k
};

CartanData cartan_inverse(int n);

/// Rational-coefficient formal sum of wedges u ^ v of symbols, canonicalized
/// with u < v by variable id; torsion (signs, exponent-zero symbols) is
/// dropped on entry.
class WedgeSum {
public:
    WedgeSum() = default;

    static WedgeSum of_monomials(const Monomial& u, const Monomial& v,
                                 const Rational& coeff = Rational(1));

    WedgeSum& operator+=(const WedgeSum& o);
    WedgeSum operator-() const;
    WedgeSum scaled(const Rational& c) const;
    friend WedgeSum operator+(WedgeSum a, const WedgeSum& b) { return a += b; }

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<VarId, VarId>, Rational>& terms() const { return terms_; }

    /// Support restricted to the given variables? (true if every symbol that
    /// appears is in `allowed`).
    bool supported_on(const std::vector<VarId>& allowed) const;

    /// Bilinear substitution symbol -> Laurent monomial (in a possibly
    /// different symbol space).
    WedgeSum substituted(const std::map<VarId, Monomial>& map) const;

    friend bool operator==(const WedgeSum& a, const WedgeSum& b) { return a.terms_ == b.terms_; }

    std::string str(const VariableRegistry& reg) const;

private:
    void add(VarId u, VarId v, const Rational& c);
    std::map<std::pair<VarId, VarId>, Rational> terms_;
};

/// -sum_{i,j,k} A^{-1}_{jk} (m_{i,j}/m_{i,j+1}) ^ (l_{i,k}/l_{i,k+1}), with
/// the index-n entries the inverse products. Symbols named via `m_base` and
/// `l_base` must exist in `reg`.
WedgeSum dehn_rhs(const RegistryPtr& reg, int n, int cusp_count, const std::string& m_base = "m",
                  const std::string& l_base = "l");

/// Shape parameters of one subsimplex: zA = z^{1100} = z^{0011},
/// zB = z^{0110} = z^{1001}, zC = z^{1010} = z^{0101}.
enum class EdgeKind { A, B, C };
EdgeKind edge_kind(const LatticePoint& edge);

struct NumericShapes {
    struct Sub {
        int tet;
        LatticePoint s;
        Complex zA, zB, zC;
    };
    std::vector<Sub> subs;
    double max_relation_residual = 0.0;  // over the cycle relations and zA zB zC = -1

    Complex value(int tet, const LatticePoint& s, EdgeKind k) const;
};

struct SymbolicShapes {
    struct Sub {
        int tet;
        LatticePoint s;
        SignedMonomial zA, zB, zC;  // Laurent in bundle variables
    };
    std::vector<Sub> subs;
    SignedMonomial value(int tet, const LatticePoint& s, EdgeKind k) const;
};

/// Access to coordinate values c_{t,k} of a numeric point through the class
/// transfers; primed symbols are evaluated through the cusp bases.
class PointEvaluator {
public:
    PointEvaluator(const IdealBundle& bundle, const Triangulation& tri, const PointClasses& classes,
                   std::vector<Complex> values);

    Complex coordinate(int tet, const LatticePoint& t) const;
    Complex primed_symbol(VarId primed_id) const;
    const std::vector<Complex>& values() const { return values_; }
    const IdealBundle& bundle() const { return *bundle_; }
    const PointClasses& classes() const { return *classes_; }
    const Triangulation& triangulation() const { return *tri_; }

private:
    const IdealBundle* bundle_;
    const Triangulation* tri_;
    const PointClasses* classes_;
    std::vector<Complex> values_;
    std::map<VarId, Complex> primed_cache_;
};

/// Shapes from the cross-ratios A/B, B/C, -C/A of the three Ptolemy products;
/// throws on a degenerate simplex (zero denominator or z in {0,1}).
NumericShapes shapes_from_point(const PointEvaluator& pt);

/// Symbolic shapes when every coordinate is a signed monomial times a class
/// representative (always the case after transfer resolution).
SymbolicShapes shapes_symbolic(const IdealBundle& bundle, const Triangulation& tri,
                               const PointClasses& classes);

struct GluingReport {
    struct Row {
        int class_index;
        Complex product;
        double residual;
    };
    std::vector<Row> rows;
    double max_residual = 0.0;
};

GluingReport check_gluing_equations(const NumericShapes& shapes, const PointClasses& classes,
                                    int n);

/// Certificate for one subsimplex: monomial forms of z and 1-z valid modulo
/// the saturated ideal.
struct ShapeCertificate {
    int tet;
    LatticePoint s;
    SignedMonomial z;
    SignedMonomial one_minus_z;
};

std::vector<ShapeCertificate> parse_certificates(const RegistryPtr& reg, const std::string& json_text);

struct DehnLhsResult {
    WedgeSum total;          // over eigenvalue symbols only
    WedgeSum raw;            // before the support check, over all symbols
    bool coordinates_cancelled;
};

/// Verifies each certificate (exact cross-ratio match for z, ideal
/// membership for the 1-z identity) and sums z ^ (1-z). Throws on a failed
/// certificate; reports whether coordinate symbols cancelled.
DehnLhsResult dehn_lhs_from_certificates(const std::vector<ShapeCertificate>& certs,
                                         const IdealBundle& bundle, const GroebnerBasis& gb,
                                         const Triangulation* tri = nullptr,
                                         const PointClasses* classes = nullptr);

/// Exact product of the certified edge parameters around each point class;
/// all products must be the monomial +1.
std::vector<SignedMonomial> symbolic_gluing_products(const std::vector<ShapeCertificate>& certs,
                                                     const PointClasses& classes, int n);

enum class DehnVerdict { Equal, EqualUpToGlobalSign, Different };

DehnVerdict verify_dehn_theorem(const WedgeSum& lhs, const WedgeSum& rhs);

}  // namespace ptolemy
