#include "ptolemy/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace ptolemy {

Polynomial Polynomial::from_terms(RegistryPtr reg, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return structural_less(a.mono, b.mono); });
    Polynomial p(std::move(reg));
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

std::vector<VarId> Polynomial::support() const {
    std::vector<VarId> vars;
    for (const auto& t : terms_)
        for (const auto& [v, e] : t.mono.entries()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool Polynomial::has_negative_exponent() const {
    for (const auto& t : terms_)
        if (t.mono.has_negative_exponent()) return true;
    return false;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return Rational(0);
}

const Term& Polynomial::leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    const Term* best = &terms_[0];
    for (const auto& t : terms_)
        if (ord.greater(t.mono, best->mono)) best = &t;
    return *best;
}

Polynomial Polynomial::operator-() const {
    Polynomial p(reg_);
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    require_same_registry(a.reg_, b.reg_);
    Polynomial p(a.reg_);
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() ||
            (ia != a.terms_.end() && structural_less(ia->mono, ib->mono))) {
            p.terms_.push_back(*ia++);
        } else if (ia == a.terms_.end() || structural_less(ib->mono, ia->mono)) {
            p.terms_.push_back(*ib++);
        } else {
            Rational c = ia->coeff + ib->coeff;
            if (!c.is_zero()) p.terms_.push_back({ia->mono, c});
            ++ia, ++ib;
        }
    }
    return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_registry(a.reg_, b.reg_);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            out.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
    return Polynomial::from_terms(a.reg_, std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial p(reg_);
    if (c.is_zero()) return p;
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
    if (c.is_zero()) return Polynomial(reg_);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono * m, t.coeff * c});
    return from_terms(reg_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono && a.terms_[i].coeff == b.terms_[i].coeff))
            return false;
    return true;
}

Polynomial::Substituted Polynomial::substitute_monomials(const std::map<VarId, Monomial>& map) const {
    // substitute term by term in Laurent land, then clear by the least
    // monomial multiple of all denominators
    std::vector<Term> lterms;
    lterms.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = Monomial::one();
        for (const auto& [v, e] : t.mono.entries()) {
            auto it = map.find(v);
            if (it == map.end())
                m = m * Monomial::var(v, e);
            else
                m = m * it->second.pow(e);
        }
        lterms.push_back({std::move(m), t.coeff});
    }
    Monomial clear = Monomial::one();
    for (const auto& t : lterms) {
        std::vector<Monomial::Entry> neg;
        for (const auto& [v, e] : t.mono.entries())
            if (e < 0) neg.emplace_back(v, -e);
        clear = Monomial::lcm(clear, Monomial(std::move(neg)));
    }
    for (auto& t : lterms) t.mono = t.mono * clear;
    Substituted s{from_terms(reg_, std::move(lterms)), clear};
    return s;
}

std::complex<double> Polynomial::evaluate(const std::vector<std::complex<double>>& values) const {
    std::complex<double> acc = 0.0;
    for (const auto& t : terms_) {
        std::complex<double> m = t.coeff.to_double();
        for (const auto& [v, e] : t.mono.entries())
            m *= std::pow(values.at(v), e);
        acc += m;
    }
    return acc;
}

Rational Polynomial::evaluate_rational(const std::vector<Rational>& values) const {
    Rational acc(0);
    for (const auto& t : terms_) {
        Rational m = t.coeff;
        for (const auto& [v, e] : t.mono.entries()) {
            const Rational& x = values.at(v);
            Rational p = e >= 0 ? x : x.inverse();
            for (int i = 0; i < std::abs(e); ++i) m *= p;
        }
        acc += m;
    }
    return acc;
}

Polynomial Polynomial::normalized_content(const MonomialOrder& ord) const {
    if (terms_.empty()) return *this;
    // lcm of denominators, gcd of numerators
    Integer den(1), num(0);
    for (const auto& t : terms_) den = lcm(den, t.coeff.denominator());
    for (const auto& t : terms_) num = gcd(num, t.coeff.numerator() * (den / t.coeff.denominator()));
    Rational scale(den, num);
    Polynomial p = scaled(scale.abs());
    if (p.leading_term(ord).coeff.sign() < 0) p = -p;
    return p;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return Monomial::one();
    Monomial g = terms_[0].mono;
    for (const auto& t : terms_) g = Monomial::gcd(g, t.mono);
    return g;
}

Polynomial Polynomial::without_monomial_content() const {
    Monomial g = monomial_content();
    if (g.is_one()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono / g, t.coeff});
    return from_terms(reg_, std::move(out));
}

Polynomial Polynomial::monic(const MonomialOrder& ord) const {
    if (terms_.empty()) return *this;
    return scaled(leading_term(ord).coeff.inverse());
}

std::string monomial_str(const Monomial& m, const VariableRegistry& reg) {
    if (m.is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, e] : m.entries()) {
        if (!first) os << "*";
        first = false;
        os << reg.name(v);
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::string Polynomial::str(const MonomialOrder& ord) const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> sorted;
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [&](const Term* a, const Term* b) { return ord.greater(a->mono, b->mono); });
    std::ostringstream os;
    bool first = true;
    for (const Term* t : sorted) {
        Rational c = t->coeff;
        if (first) {
            if (c.sign() < 0) os << "-", c = -c;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        if (t->mono.is_one())
            os << c.str();
        else if (c.is_one())
            os << monomial_str(t->mono, *reg_);
        else
            os << c.str() << "*" << monomial_str(t->mono, *reg_);
    }
    return os.str();
}

std::string Polynomial::str() const {
    std::vector<VarId> vars;
    for (VarId v = 0; v < reg_->size(); ++v) vars.push_back(v);
    return str(MonomialOrder::grevlex(vars));
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip();
        return s[i++];
    }
};

int parse_int(Lexer& lx) {
    int sign = 1;
    if (lx.peek() == '-') {
        lx.take();
        sign = -1;
    } else if (lx.peek() == '+') {
        lx.take();
    }
    std::string digits;
    while (!lx.eof() && std::isdigit(static_cast<unsigned char>(lx.peek()))) digits += lx.take();
    if (digits.empty()) throw std::invalid_argument("expected integer in polynomial text");
    return sign * std::stoi(digits);
}

// factor := name['^'int] | unsigned-rational
// term   := ['-'|'+'] factor ('*' factor)*
bool parse_term(Lexer& lx, const RegistryPtr& reg, int outer_sign, Term& out) {
    if (lx.eof()) return false;
    Rational coeff(outer_sign);
    Monomial mono;
    bool expect_factor = true;
    while (expect_factor) {
        if (lx.eof()) throw std::invalid_argument("dangling '*' in polynomial text");
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (!lx.eof() &&
                   (std::isdigit(static_cast<unsigned char>(lx.peek())) || lx.peek() == '/'))
                num += lx.take();
            coeff *= Rational::parse(num);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (!lx.eof() && (std::isalnum(static_cast<unsigned char>(lx.peek())) ||
                                 lx.peek() == '_' || lx.peek() == '\''))
                name += lx.take();
            int e = 1;
            if (!lx.eof() && lx.peek() == '^') {
                lx.take();
                e = parse_int(lx);
            }
            mono = mono * Monomial::var(reg->id(name), e);
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + c +
                                        "' in polynomial text");
        }
        expect_factor = false;
        if (!lx.eof() && lx.peek() == '*') {
            lx.take();
            expect_factor = true;
        }
    }
    out = {std::move(mono), coeff};
    return true;
}

}  // namespace

Polynomial Polynomial::parse(const RegistryPtr& reg, const std::string& text) {
    Lexer lx(text);
    std::vector<Term> terms;
    int sign = 1;
    if (lx.peek() == '-') {
        lx.take();
        sign = -1;
    } else if (lx.peek() == '+') {
        lx.take();
    }
    while (true) {
        Term t;
        if (!parse_term(lx, reg, sign, t)) break;
        terms.push_back(std::move(t));
        if (lx.eof()) break;
        char c = lx.take();
        if (c == '+')
            sign = 1;
        else if (c == '-')
            sign = -1;
        else
            throw std::invalid_argument("expected '+' or '-' between terms");
    }
    return from_terms(reg, std::move(terms));
}

std::string SignedMonomial::str(const VariableRegistry& reg) const {
    std::string body = monomial_str(mono, reg);
    return sign < 0 ? "-" + body : body;
}

SignedMonomial SignedMonomial::parse(const RegistryPtr& reg, const std::string& text) {
    Lexer lx(text);
    int sign = 1;
    while (lx.peek() == '-' || lx.peek() == '+') {
        if (lx.take() == '-') sign = -sign;
    }
    Monomial mono;
    bool expect = true;
    while (expect) {
        char c = lx.peek();
        if (c == '1' ) {
            lx.take();
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (!lx.eof() && (std::isalnum(static_cast<unsigned char>(lx.peek())) ||
                                 lx.peek() == '_' || lx.peek() == '\''))
                name += lx.take();
            int e = 1;
            if (!lx.eof() && lx.peek() == '^') {
                lx.take();
                e = parse_int(lx);
            }
            mono = mono * Monomial::var(reg->id(name), e);
        } else {
            throw std::invalid_argument("bad monomial text: " + text);
        }
        expect = false;
        if (!lx.eof() && lx.peek() == '*') {
            lx.take();
            expect = true;
        }
    }
    if (!lx.eof()) throw std::invalid_argument("trailing junk in monomial text: " + text);
    return {sign, mono};
}

std::complex<double> SignedMonomial::evaluate(const std::vector<std::complex<double>>& values) const {
    std::complex<double> acc = sign;
    for (const auto& [v, e] : mono.entries()) acc *= std::pow(values.at(v), e);
    return acc;
}

}  // namespace ptolemy
