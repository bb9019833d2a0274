#pragma once

#include <string>
#include <vector>

#include "ptolemy/polynomial.hpp"
#include "ptolemy/triangulation.hpp"

namespace ptolemy {

enum class IdealMode { Standard, Enhanced };

/// Which eigenvalue symbols the generators are written in: the rectangle
/// sides (mp/lp, as the transfer factors are given) or the chosen peripheral
/// basis (m/l, after the cusp-basis substitution).
enum class EigenBasis { Rectangle, Peripheral };

struct GeneratorInfo {
    std::string provenance;  // "ptolemy(s=...,tet=k)" | "reduction(v=1)" | "saturation"
    Monomial clearing;       // monomial cleared after the basis substitution
};

struct IdealBundle {
    RegistryPtr registry;
    std::vector<Polynomial> generators;
    std::vector<GeneratorInfo> info;
    int n = 2;
    int cusp_count = 1;
    IdealMode mode = IdealMode::Enhanced;
    EigenBasis basis = EigenBasis::Peripheral;
    std::string name;

    std::vector<VarId> coordinate_vars() const;
    std::vector<VarId> eigenvalue_vars() const;
    std::vector<VarId> witness_vars() const;
    MonomialOrder default_order() const;       // grevlex over all variables
    MonomialOrder elimination_order() const;   // coords+witness block, then eigens
};

struct BuildOptions {
    EigenBasis basis = EigenBasis::Peripheral;
    std::vector<std::pair<int, LatticePoint>> representative_overrides;
    bool use_fixture_representatives = true;  // honor the file's hint if present
};

/// The subsimplex translates s indexing the Ptolemy relations of one
/// tetrahedron at rank n (points of the (n-2)-dilated simplex, vertices
/// included; |.| = C(n+1,3)).
std::vector<LatticePoint> relation_offsets(int n);

/// The three-term Ptolemy relations of one tetrahedron, written in class
/// representatives with transfer signs and peripheral multipliers applied.
/// Relations are in the bundle's variable space. (Exposed for tests; most
/// callers want build_ideal.)
std::vector<Polynomial> ptolemy_relations(const IdealBundle& bundle, const Triangulation& tri,
                                          const PointClasses& classes, int tet);

/// Assembles the standard or enhanced Ptolemy ideal of a triangulation.
/// Standard mode sets every dressing multiplier's eigenvalue content to 1
/// (signs are kept). Laurent multipliers are cleared generator by generator.
IdealBundle build_ideal(const Triangulation& tri, int n, IdealMode mode,
                        const BuildOptions& options = {});

/// Appends (v - 1) for each fixed coordinate plus one Rabinowitsch witness
/// w * (prod of all coordinates and eigenvalues) - 1.
IdealBundle reduce_and_saturate(const IdealBundle& bundle, const std::vector<std::string>& fixes);

struct DiagonalScaling {
    // per cusp: n diagonal entries with product 1
    std::vector<std::vector<Rational>> entries;
};

/// Multiplier picked up by coordinate c_{t,k} under the diagonal action.
Rational diagonal_multiplier(const Triangulation& tri, const DiagonalScaling& s, int tet,
                             const LatticePoint& t);

/// Applies the diagonal action to a numeric point given as values for the
/// bundle's variables (class representatives); eigenvalues are untouched.
std::vector<std::complex<double>> diagonal_action(const IdealBundle& bundle,
                                                  const Triangulation& tri,
                                                  const PointClasses& classes,
                                                  const DiagonalScaling& scaling,
                                                  const std::vector<std::complex<double>>& point);

enum class ExportFormat { Plain, Magma, Singular, Json };

std::string export_bundle(const IdealBundle& bundle, ExportFormat fmt);
IdealBundle import_bundle_json(const std::string& text);

}  // namespace ptolemy
