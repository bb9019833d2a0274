#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptolemy/polynomial.hpp"

namespace ptolemy {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Budget {
    std::uint64_t max_reduction_steps = 1'000'000;
    std::uint64_t max_basis_size = 100'000;

    static Budget unlimited() {
        return Budget{UINT64_MAX, UINT64_MAX};
    }
};

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<Polynomial> basis;  // reduced, integer-content normalized
    std::uint64_t reduction_steps = 0;
    std::uint64_t spairs_processed = 0;
};

/// Remainder of p on division by G: no term of the result is divisible by a
/// leading term of G. Deterministic (first divisor in listing order wins).
/// `step_counter`, when given, is advanced once per cancelled leading term
/// and checked against `budget`.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& G,
                       const MonomialOrder& ord, std::uint64_t* step_counter = nullptr,
                       const Budget* budget = nullptr);

/// Buchberger with the coprime-leading-term criterion and normal pair
/// selection (minimal lcm degree, index tiebreak). Returns the unique
/// reduced basis, throws BudgetExceeded on resource exhaustion.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                         const Budget& budget = {});

/// Basis elements supported entirely on `keep` (order must be a block order
/// eliminating the complement).
std::vector<Polynomial> elimination_ideal(const GroebnerBasis& G, const std::vector<VarId>& keep);

bool ideal_membership(const Polynomial& p, const GroebnerBasis& G);

/// Post-hoc audit: every S-pair of the basis reduces to zero.
bool audit_spairs_reduce_to_zero(const GroebnerBasis& G);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord);

}  // namespace ptolemy
