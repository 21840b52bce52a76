#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/matrix_lab.hpp"

namespace berezin {

/// Mean of |s e^{i theta} + (1-s) e^{-i theta}| over s in [0,1], in closed
/// form. The removable singularities at theta = n pi take the limit value 1.
double mu(double theta);

/// Reverse Cauchy-Schwarz factor 1 - (1 - sqrt(cos^2 + (2t-1)^2 sin^2)) / (2 tau_t)
/// with tau_t = min(t, 1-t); requires t in (0,1).
double gamma(double t, double theta);

/// Integral of |s c + (1-s) d| over s in [0,1] by adaptive Gauss-Legendre
/// quadrature, split at the closest approach of the segment to the origin.
double segment_mean_integral(Complex c, Complex d);

/// Angle acos(|<x,y>| / (||x|| ||y||)) in [0, pi/2].
double angle_between(std::span<const Complex> x, std::span<const Complex> y);

struct TrialConfig {
    int dim = 4;
    long trials = 1000;
    std::uint64_t seed = 42;
    std::vector<double> nu_list = {0.25, 0.5, 0.75};
    double invertibility_floor = 0.05;
};

// Margins below this threshold count as genuine violations rather than
// roundoff.
inline constexpr double kViolationThreshold = -1e-9;

struct InequalityReport {
    std::string name;
    long trials = 0;  // number of checks executed
    long violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();  // min of RHS - LHS
    std::optional<ComplexMatrix> witness;

    void record(double margin) {
        ++trials;
        if (margin < kViolationThreshold) ++violations;
        if (margin < worst_margin) worst_margin = margin;
    }
    void merge(const InequalityReport& other);
};

/// Kato mixed Cauchy-Schwarz over all standard-kernel pairs of C^n.
InequalityReport verify_kato(const ComplexMatrix& T, double nu);

/// mu(theta)-refined Kato bound from the polar decomposition; also checks
/// that the refinement never exceeds plain Kato (mu <= 1).
InequalityReport verify_refined_kato(const ComplexMatrix& T, double nu);

/// Pointwise chain |T_ll| <= mu(theta_l) sqrt(a_l b_l) <= (mu/2)(a_l + b_l)
/// plus the aggregate Berezin radius bound.
InequalityReport verify_radius_bound(const ComplexMatrix& T, double nu);

/// Geometric-mean Cauchy-Schwarz step and the cos(theta) lower bound on the
/// Berezin radius.
InequalityReport verify_geomean_bounds(const ComplexMatrix& T, double nu);

/// Scalar inequality suite: the two-sided segment-mean bounds, the reverse
/// triangle inequality, the mu / gamma bounds and their monotonicity.
std::vector<InequalityReport> verify_scalar_suite(const TrialConfig& cfg);

/// Seeded random complex matrix with singular values >= floor.
ComplexMatrix random_trial_matrix(int dim, std::uint64_t seed, long trial, double floor);

/// Aggregate a matrix suite over cfg.trials seeded matrices, cycling through
/// the given dimensions; suite is one of kato, refined-kato, radius-bound,
/// geomean.
InequalityReport run_matrix_suite(std::string_view suite, const TrialConfig& cfg,
                                  std::span<const int> dims);

}  // namespace berezin
