#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/ideal.hpp"
#include "ptolemy/shapes.hpp"

namespace ptolemy {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Mat2 {
    Complex a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

    static Mat2 identity() { return {}; }
    static Mat2 diag(Complex x, Complex y) { return {x, 0, 0, y}; }

    Complex det() const { return a * d - b * c; }
    Complex trace() const { return a + d; }
    Mat2 inverse() const;
    std::array<Complex, 2> eigenvalues() const;

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

double dist_to_identity(const Mat2& m);

struct NumericPoint {
    std::vector<Complex> values;  // aligned with the bundle registry
    double residual = 0.0;
};

struct SolveOptions {
    double filter_tol = 1e-6;
    double residual_tol = 1e-10;
    int max_iterations = 400;
};

/// Roots of the pinned system. Pins are variable-name -> value; generators
/// linear in a single remaining variable are propagated first, then the
/// system must be univariate (desk-scale contract). Durand-Kerner on the
/// lowest-degree generator, cross-filtered on the others, one Newton pass.
std::vector<NumericPoint> solve_point(const IdealBundle& bundle,
                                      const std::map<std::string, Complex>& pins,
                                      const SolveOptions& options = {});

/// Per-tetrahedron flag vectors of the developing map, positioned by gluing
/// along a spanning tree (tree generators map to the identity).
struct FlagSystem {
    std::vector<std::array<std::array<Complex, 2>, 4>> flags;  // [tet][vertex]
    double max_det_residual = 0.0;  // | det(flag_i, flag_j) - c_{ij,k} |
};

FlagSystem develop_flags(const PointEvaluator& pt, const std::vector<std::string>& tree_labels);

struct CocycleLabeling {
    // long edge i->j of tet k: counter-diagonal [[0, -1/c_ij],[c_ij, 0]]
    // short edge at vertex i from edge (i,j) to (i,k): upper unipotent
    // face-pairing edge at source vertex v of a rule: the dressing diagonal
    std::map<std::tuple<int, int, int>, Mat2> long_edges;            // (tet, i, j)
    std::map<std::tuple<int, int, int, int>, Mat2> short_edges;      // (tet, i, j, k)
    std::map<std::pair<std::string, int>, Mat2> face_pairing_edges;  // (label, src vertex)

    double max_hexagon_residual = 0.0;
    double max_long_square_residual = 0.0;
    double max_short_square_residual = 0.0;
    double max_polygon_residual = 0.0;  // multiplier polygons around 1-cells
};

CocycleLabeling natural_cocycle(const PointEvaluator& pt);

struct HolonomyMap {
    Presentation presentation;
    std::map<std::string, Mat2> generator_images;  // tree labels map to I
    double max_relator_residual = 0.0;
    double max_det_residual = 0.0;
    double max_gluing_residual = 0.0;  // third-vertex consistency

    Mat2 word(const std::string& w) const;  // "c", "BCbcbCBc", or "b^-1 c ..."
};

/// Generator images from the developed flags; relators are checked and a
/// residual above tolerance is a fatal bookkeeping error.
HolonomyMap holonomy(const PointEvaluator& pt, const std::vector<std::string>& tree_labels = {},
                     double relator_tol = 1e-8);

std::vector<int> parse_word(const std::vector<std::string>& labels, const std::string& text);

struct TwoBridgeRepReport {
    Mat2 x1, x2;
    double relation_residual;    // || x1 w - w x2 ||
    double det_residual;         // max |det - 1|
    double trace_match_residual; // vs supplied holonomy words, when given
};

/// Instantiates the reference two-bridge matrices of the figure-eight
/// example at a point (m, l) of the A-polynomial curve. Their classical form
/// carries the longitude eigenvalue in the mu^2-shifted basis, so they are
/// evaluated at l'' = m^2 l; see the README notes. When `hol` is given the
/// traces of x1, x2, x1 x2, x1 x2^-1 are matched against the face-pairing
/// holonomy through the dictionary x1 = c, x2 = b^-1 c.
TwoBridgeRepReport verify_two_bridge_rep(Complex m, Complex l, const HolonomyMap* hol = nullptr);

}  // namespace ptolemy
