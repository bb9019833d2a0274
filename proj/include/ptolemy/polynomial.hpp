#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/monomial.hpp"
#include "ptolemy/order.hpp"
#include "ptolemy/rational.hpp"
#include "ptolemy/registry.hpp"

namespace ptolemy {

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// shared variable registry. Terms are kept in a fixed canonical (structural)
/// order so equal polynomials compare equal memberwise; order-dependent views
/// (leading term, printing) take the MonomialOrder as an argument.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RegistryPtr reg) : reg_(std::move(reg)) {}

    static Polynomial zero(RegistryPtr reg) { return Polynomial(std::move(reg)); }

    static Polynomial constant(RegistryPtr reg, const Rational& c) {
        Polynomial p(std::move(reg));
        if (!c.is_zero()) p.terms_.push_back({Monomial::one(), c});
        return p;
    }

    static Polynomial monomial(RegistryPtr reg, Monomial m, const Rational& c = Rational(1)) {
        Polynomial p(std::move(reg));
        if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
        return p;
    }

    static Polynomial variable(const RegistryPtr& reg, VarId v) {
        return monomial(reg, Monomial::var(v));
    }

    static Polynomial from_terms(RegistryPtr reg, std::vector<Term> terms);

    const RegistryPtr& registry() const { return reg_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
    }

    long total_degree() const {
        long d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    int degree_in(VarId v) const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
        return d;
    }

    std::vector<VarId> support() const;
    bool has_negative_exponent() const;

    Rational coefficient(const Monomial& m) const;

    const Term& leading_term(const MonomialOrder& ord) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const Rational& c) const;
    Polynomial times_monomial(const Monomial& m, const Rational& c = Rational(1)) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Substitutes Laurent monomials for variables, then clears denominators
    /// by the least monomial multiple. Returns the cleared polynomial and the
    /// clearing monomial that was multiplied in.
    struct Substituted;
    Substituted substitute_monomials(const std::map<VarId, Monomial>& map) const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;
    Rational evaluate_rational(const std::vector<Rational>& values) const;

    /// Divides out integer content and fixes the sign so the leading
    /// coefficient under `ord` is positive. Result has coprime integer
    /// coefficients.
    Polynomial normalized_content(const MonomialOrder& ord) const;

    /// Greatest common monomial factor of all terms (trivial for the zero
    /// polynomial).
    Monomial monomial_content() const;
    Polynomial without_monomial_content() const;

    /// Monic under `ord` (leading coefficient 1 over the rationals).
    Polynomial monic(const MonomialOrder& ord) const;

    std::string str(const MonomialOrder& ord) const;
    std::string str() const;  // grevlex over the support, registry id order

    /// Parses "3/2*x^2*y - m^4 + 1" style text against an existing registry.
    static Polynomial parse(const RegistryPtr& reg, const std::string& text);

private:
    RegistryPtr reg_;
    std::vector<Term> terms_;  // sorted by structural_less, nonzero coeffs
};

struct Polynomial::Substituted {
    Polynomial poly;
    Monomial clearing;
};

/// A monomial with a sign, e.g. "-mp^2*lp*y*x^-1". The value carrier for
/// shape certificates and transfer factors.
struct SignedMonomial {
    int sign = 1;  // +1 or -1
    Monomial mono;

    SignedMonomial() = default;
    SignedMonomial(int s, Monomial m) : sign(s), mono(std::move(m)) {}

    SignedMonomial operator*(const SignedMonomial& o) const {
        return {sign * o.sign, mono * o.mono};
    }
    SignedMonomial inverse() const { return {sign, mono.inverse()}; }
    SignedMonomial pow(int k) const {
        return {(k % 2 == 0) ? 1 : sign, mono.pow(k)};
    }
    bool operator==(const SignedMonomial& o) const { return sign == o.sign && mono == o.mono; }

    static SignedMonomial one() { return {1, Monomial::one()}; }

    std::string str(const VariableRegistry& reg) const;
    static SignedMonomial parse(const RegistryPtr& reg, const std::string& text);

    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;
};

std::string monomial_str(const Monomial& m, const VariableRegistry& reg);

}  // namespace ptolemy
