#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptolemy/groebner.hpp"
#include "ptolemy/ideal.hpp"

namespace ptolemy {

struct AVarietyResult {
    IdealBundle saturated;                     // reduced + saturated bundle fed to the engine
    GroebnerBasis gb;                          // block-order basis of the full ideal
    std::vector<Polynomial> eliminated;        // generators supported on eigenvalues only
    std::optional<Polynomial> candidate;       // n=2 single cusp: the distinguished generator
    std::vector<Polynomial> back_substitutions;  // basis elements linear in one coordinate
    std::vector<std::vector<std::string>> support;  // per eliminated generator
    bool budget_exceeded = false;
    std::string note;
};

struct AVarietyOptions {
    Budget budget{};
    bool allow_no_fixes = false;
    BuildOptions build{};
};

/// build -> substitute basis -> reduce -> saturate -> eliminate. Eliminated
/// generators are stripped of monomial factors and sign-normalized. On
/// budget exhaustion the result carries the saturated bundle (for script
/// emission) and budget_exceeded = true.
AVarietyResult compute_avariety(const Triangulation& tri, int n, const std::vector<std::string>& fixes,
                                const AVarietyOptions& options = {});

enum class WeilSymmetry { Symmetric, SymmetricUpToUnit, Asymmetric };

struct WeilReport {
    WeilSymmetry verdict;
    Polynomial inverted;  // cleared form of candidate(m^-1, l^-1)
};

/// Tests invariance of a 2-variable candidate under (m,l) -> (1/m, 1/l)
/// after clearing by the least monomial.
WeilReport weil_symmetry_report(const Polynomial& candidate, VarId m, VarId l);

}  // namespace ptolemy
