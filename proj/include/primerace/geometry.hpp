#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "primerace/characters.hpp"
#include "primerace/linalg.hpp"

namespace primerace {

// Open region in R^r.  Wedge membership uses exact strict float comparisons
// (boundary points are genuinely excluded); ball/cylinder are open Euclidean
// tests; the cylinder axis is parallel to (1,...,1).
struct RegionSpec {
    enum class Kind { wedge, ball, cylinder, halfspace, hyperplane_sum_zero };
    Kind kind = Kind::wedge;
    std::vector<std::size_t> sigma;  // wedge: x[sigma[0]] > x[sigma[1]] > ...
    std::vector<double> center;      // ball/cylinder center; halfspace normal
    double radius = 0.0;             // ball/cylinder rho; halfspace threshold

    static RegionSpec wedge(std::vector<std::size_t> sigma);
    static RegionSpec ball(std::vector<double> center, double rho);
    static RegionSpec cylinder(std::vector<double> center, double rho);
    static RegionSpec halfspace(std::vector<double> normal, double threshold);
    static RegionSpec sum_zero_hyperplane(std::size_t r);
};

bool region_contains(const RegionSpec& region, const std::vector<double>& x);

enum class SpanTarget { full_space, sum_zero_hyperplane };

struct SpanCheck {
    bool spans = false;
    std::size_t rank = 0;
    std::size_t dim_target = 0;
};

// Rank via elimination with a 1e-10 pivot threshold; for the sum-zero target
// the vectors must also lie in the hyperplane.
SpanCheck span_check(const std::vector<std::vector<double>>& vectors, std::size_t r,
                     SpanTarget target);

struct SubspaceSpec {
    std::size_t ambient = 0;
    std::vector<std::vector<double>> basis;  // independent generators
    Mat orthonormal;                          // cached ON basis (rows)

    std::size_t dim() const { return orthonormal.rows; }
};

SubspaceSpec make_subspace(std::size_t ambient, std::vector<std::vector<double>> basis);

// Smallest c with ||x||^2 <= c sum_j |v_j . x|^2 on the subspace: the
// reciprocal least eigenvalue of the restricted Gram operator
// sum (Re v)(Re v)^T + (Im v)(Im v)^T.  Throws when a subspace direction is
// uncovered (the constant would be infinite).  Cross-validated internally on
// 1e3 random subspace points.
double quadform_constant(const std::vector<std::vector<std::complex<double>>>& vectors,
                         const SubspaceSpec& subspace);

struct BoundedSolve {
    std::vector<double> y;
    double c_A = 0.0;          // r * ||U||_inf from the row-reduction transform
    double residual_inf = 0.0;
};

// Solves A y = t through the reduced row echelon form of A, zeroing every
// non-pivot coordinate, with ||y||_inf <= c_A ||t||_inf.  Throws when t is
// outside the column space (residual above 1e-10 * ||t||_inf).
BoundedSolve bounded_solve(const Mat& A, const std::vector<double>& t);

// Unimodular angles theta with |sum_n lambda_n e^{i theta_n} - z| < 1e-9.
// Feasible iff max(0, 2 max lambda - sum lambda) <= |z| <= sum lambda; the
// solver groups the arms into three segments (largest arm alone, the rest
// split evenly), bisects the first segment's angle, then closes the
// remaining two analytically.
std::vector<double> robot_arm_solve(const std::vector<double>& lambda,
                                    std::complex<double> z);

// W(Q, V) = max(8, c_A V sqrt 2) + (1/4) sum_{gamma in gamma_s} gamma^-3,
// with c_A from bounded_solve on the matrix whose columns are (1,...,1) and
// the x_chi, y_chi of the selected characters.
double w_threshold(const RaceVectors& vectors, const std::vector<std::size_t>& char_rows,
                   double V, const std::vector<double>& gamma_s);

struct WedgeCoverage {
    bool covers_all_wedges = false;
    bool dim_is_r_minus_1 = false;
    std::vector<std::size_t> witness;  // a permutation whose wedge is missed
    std::size_t checked = 0;
};

// Strict feasibility of V intersect S_sigma for all r! wedges, decided by an
// exact rational LP per permutation (inputs converted to their exact binary
// rationals).  Envelope r <= 6; requires (1,...,1) not in V.
WedgeCoverage wedge_coverage_check(const SubspaceSpec& V, std::size_t r);

}  // namespace primerace
