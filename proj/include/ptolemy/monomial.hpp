#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ptolemy/registry.hpp"

namespace ptolemy {

/// Sparse exponent vector. Exponents may be negative (Laurent context);
/// zero exponents are never stored, so equality is plain memberwise equality.
class Monomial {
public:
    using Entry = std::pair<VarId, int>;

    Monomial() = default;

    explicit Monomial(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end());
        for (const auto& [v, e] : entries) {
            if (e == 0) continue;
            if (!exps_.empty() && exps_.back().first == v)
                throw std::invalid_argument("Monomial: duplicate variable in entry list");
            exps_.emplace_back(v, e);
        }
    }

    static Monomial one() { return Monomial(); }

    static Monomial var(VarId v, int e = 1) {
        Monomial m;
        if (e != 0) m.exps_.emplace_back(v, e);
        return m;
    }

    bool is_one() const { return exps_.empty(); }

    int exponent(VarId v) const {
        for (const auto& [w, e] : exps_)
            if (w == v) return e;
        return 0;
    }

    const std::vector<Entry>& entries() const { return exps_; }

    long total_degree() const {
        long d = 0;
        for (const auto& [v, e] : exps_) d += e;
        return d;
    }

    bool has_negative_exponent() const {
        for (const auto& [v, e] : exps_)
            if (e < 0) return true;
        return false;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) { return merge(a, b, +1); }
    friend Monomial operator/(const Monomial& a, const Monomial& b) { return merge(a, b, -1); }

    Monomial pow(int k) const {
        Monomial m;
        if (k == 0) return m;
        m.exps_ = exps_;
        for (auto& [v, e] : m.exps_) e *= k;
        return m;
    }

    Monomial inverse() const { return pow(-1); }

    /// True iff b | a in the polynomial ring sense (a/b has no negative exponents).
    static bool divides(const Monomial& b, const Monomial& a) {
        auto it = a.exps_.begin();
        for (const auto& [v, e] : b.exps_) {
            while (it != a.exps_.end() && it->first < v) ++it;
            if (it == a.exps_.end() || it->first != v || it->second < e) return false;
        }
        return true;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial m;
        auto ia = a.exps_.begin(), ib = b.exps_.begin();
        while (ia != a.exps_.end() || ib != b.exps_.end()) {
            if (ib == b.exps_.end() || (ia != a.exps_.end() && ia->first < ib->first))
                m.exps_.push_back(*ia++);
            else if (ia == a.exps_.end() || ib->first < ia->first)
                m.exps_.push_back(*ib++);
            else {
                m.exps_.emplace_back(ia->first, std::max(ia->second, ib->second));
                ++ia, ++ib;
            }
        }
        return m;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial m;
        auto ia = a.exps_.begin();
        for (const auto& [v, e] : b.exps_) {
            while (ia != a.exps_.end() && ia->first < v) ++ia;
            if (ia != a.exps_.end() && ia->first == v) {
                int g = std::min(ia->second, e);
                if (g != 0) m.exps_.emplace_back(v, g);
            }
        }
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    /// Structural order used only for canonical term storage; unrelated to
    /// any MonomialOrder.
    friend bool structural_less(const Monomial& a, const Monomial& b) {
        return a.exps_ < b.exps_;
    }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& [v, e] : exps_) {
            h ^= std::hash<std::uint64_t>{}((std::uint64_t(v) << 32) ^ std::uint64_t(std::uint32_t(e)));
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    static Monomial merge(const Monomial& a, const Monomial& b, int s) {
        Monomial m;
        auto ia = a.exps_.begin(), ib = b.exps_.begin();
        while (ia != a.exps_.end() || ib != b.exps_.end()) {
            if (ib == b.exps_.end() || (ia != a.exps_.end() && ia->first < ib->first))
                m.exps_.push_back(*ia++);
            else if (ia == a.exps_.end() || ib->first < ia->first) {
                m.exps_.emplace_back(ib->first, s * ib->second);
                ++ib;
            } else {
                int e = ia->second + s * ib->second;
                if (e != 0) m.exps_.emplace_back(ia->first, e);
                ++ia, ++ib;
            }
        }
        return m;
    }

    std::vector<Entry> exps_;
};

}  // namespace ptolemy
