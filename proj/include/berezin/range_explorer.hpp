#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "berezin/rkhs.hpp"

namespace berezin {

/// Polar sampling grid: lambda = r_j e^{i theta_k} with
/// r_j = (j/(n_radial-1)) r_max and theta_k = 2 pi k / n_angular.
struct DiscGrid {
    int n_radial = 200;
    int n_angular = 256;
    double r_max = 0.999;
};

std::vector<Complex> grid_points(const DiscGrid& grid);

struct RangeSample {
    std::vector<std::pair<Complex, Complex>> points;  // (lambda, value)
};

struct NonconvexityWitness {
    Complex w1, w2;      // attained values
    Complex pre1, pre2;  // their preimages
    Complex midpoint;
    double gap = 0.0;    // distance from midpoint to the nearest attainable value found
};

RangeSample sample_range(const FiniteRankOperator& op, const DiscGrid& grid);

struct RadiusConfig {
    DiscGrid grid;
    int refine_iters = 200;
    double tol = 1e-10;
};

struct RadiusEstimate {
    double value = 0.0;
    Complex argmax;
};

RadiusEstimate estimate_berezin_radius_detail(const FiniteRankOperator& op,
                                              const RadiusConfig& cfg = {});
double estimate_berezin_radius(const FiniteRankOperator& op, const RadiusConfig& cfg = {});

enum class RadiusFamily {
    hardy_monomial,          // g = h = z^n
    hardy_equal_moduli,      // sum_i <f, a_i z^i> a_i z^i, |a_i| = a
    hardy_compact_diagonal,  // sup only, not attained
    hardy_disc,              // g = z^n, h = z^m, m > n
    bergman_monomial,
    bergman_disc,
};

struct FamilyParams {
    int n = 1;
    int m = 1;      // disc families only
    double a = 1.0; // modulus, equal-moduli / compact-diagonal families
};

double closed_form_radius(RadiusFamily family, const FamilyParams& params);

/// max over the grid of |A~(conj lambda) - conj(A~(lambda))|.
double symmetry_defect(const FiniteRankOperator& op, const DiscGrid& grid);

struct WitnessConfig {
    DiscGrid grid;
    double attain_tol = 1e-3;
    int pair_budget = 2000;
};

/// Certificate-based nonconvexity test. A returned witness certifies
/// numerical nonconvexity at attain_tol; nullopt is not a convexity proof.
std::optional<NonconvexityWitness> find_nonconvexity_witness(const FiniteRankOperator& op,
                                                             const WitnessConfig& cfg = {});

struct RealInterval {
    double min = 0.0;
    double max = 0.0;
};

std::optional<RealInterval> real_interval_summary(const RangeSample& sample, double imag_tol);

double real_part_value(const FiniteRankOperator& op, Complex lambda);

}  // namespace berezin
