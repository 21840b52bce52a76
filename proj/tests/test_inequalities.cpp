#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "berezin/inequalities.hpp"

using namespace berezin;

namespace {

const double kPi = std::numbers::pi;

ComplexMatrix shift_plus(double eps) {
    ComplexMatrix T(2, 2);
    T(0, 0) = eps;
    T(1, 1) = eps;
    T(1, 0) = 1.0;
    return T;
}

}  // namespace

TEST_CASE("mu closed form") {
    CHECK(std::abs(mu(kPi / 2.0) - 0.5) < 1e-15);
    CHECK(mu(0.0) == 1.0);
    CHECK(mu(kPi) == 1.0);
    CHECK(mu(-kPi) == 1.0);

    // Quadrature oracle on the defining integral.
    for (double theta : {1e-6, 0.1, kPi / 4.0, 1.0, kPi / 2.0, 2.0, kPi - 0.1, kPi - 1e-6}) {
        double integral = segment_mean_integral(std::polar(1.0, theta), std::polar(1.0, -theta));
        CHECK(std::abs(mu(theta) - integral) < 1e-10);
    }

    // Symmetries: even and pi-periodic up to reflection.
    CHECK(std::abs(mu(0.7) - mu(-0.7)) < 1e-15);
    CHECK(std::abs(mu(0.7) - mu(kPi - 0.7)) < 1e-12);
}

TEST_CASE("gamma closed form") {
    CHECK(std::abs(gamma(0.5, 1.234) - std::abs(std::cos(1.234))) < 1e-14);
    CHECK(std::abs(gamma(0.3, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(gamma(0.25, kPi / 2.0)) < 1e-15);
    CHECK_THROWS_AS(gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gamma(1.0, 1.0), std::domain_error);
}

TEST_CASE("segment mean integral") {
    CHECK(std::abs(segment_mean_integral(1.0, 1.0) - 1.0) < 1e-12);
    // Piecewise oracle: integral of |2s-1| over [0,1] is 1/2.
    CHECK(std::abs(segment_mean_integral(1.0, -1.0) - 0.5) < 1e-12);
    CHECK(std::abs(segment_mean_integral(Complex{0.0, 2.0}, Complex{0.0, 2.0}) - 2.0) < 1e-12);
    // Linear modulus when the segment stays on one ray.
    CHECK(std::abs(segment_mean_integral(3.0, 1.0) - 2.0) < 1e-12);
}

TEST_CASE("angles between vectors") {
    std::vector<Complex> e1{1.0, 0.0}, e2{0.0, 1.0};
    std::vector<Complex> diag{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(std::abs(angle_between(e1, e1)) < 1e-12);
    CHECK(std::abs(angle_between(e1, e2) - kPi / 2.0) < 1e-12);
    CHECK(std::abs(angle_between(e1, diag) - kPi / 4.0) < 1e-12);
    // Phases do not change the angle (modulus in the definition).
    std::vector<Complex> phased{Complex{0.0, 1.0}, 0.0};
    CHECK(std::abs(angle_between(phased, e1)) < 1e-12);
    std::vector<Complex> zero{0.0, 0.0};
    CHECK_THROWS_AS(angle_between(zero, e1), std::invalid_argument);
}

TEST_CASE("scalar suite is violation free") {
    TrialConfig cfg;
    cfg.trials = 1000;
    cfg.seed = 42;
    auto reports = verify_scalar_suite(cfg);
    CHECK(reports.size() >= 7);
    for (const auto& r : reports) {
        INFO(r.name);
        CHECK(r.violations == 0);
        CHECK(r.trials > 0);
        CHECK(r.worst_margin > kViolationThreshold);
    }
}

TEST_CASE("Kato inequality on structured matrices") {
    auto zero_like = verify_kato(Complex{0.0, 0.0} * ComplexMatrix::identity(3), 0.5);
    CHECK(zero_like.violations == 0);
    CHECK(std::abs(zero_like.worst_margin) < 1e-12);

    ComplexMatrix rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    auto unitary = verify_kato(rot, 0.5);
    CHECK(unitary.violations == 0);

    for (long trial = 0; trial < 50; ++trial) {
        auto T = random_trial_matrix(4, 7, trial, 0.0);
        for (double nu : {0.3, 0.5, 0.7}) {
            CHECK(verify_kato(T, nu).violations == 0);
        }
    }
}

TEST_CASE("refined Kato with diagonal equality") {
    auto D = ComplexMatrix::diagonal({1.0, 2.0, 0.5});
    for (double nu : {0.25, 0.5, 0.75}) {
        auto r = verify_refined_kato(D, nu);
        CHECK(r.violations == 0);
        // Diagonal pairs: theta = 0, mu = 1, exact equality.
        CHECK(r.worst_margin >= -1e-12);
        CHECK(r.worst_margin <= 1e-10);
    }
    CHECK_THROWS_AS(verify_refined_kato(D, 0.0), std::domain_error);
}

TEST_CASE("radius bound with AM-GM equality cases") {
    auto eps = Complex{0.3, 0.0} * ComplexMatrix::identity(2);
    auto r = verify_radius_bound(eps, 0.5);
    CHECK(r.violations == 0);
    CHECK(std::abs(r.worst_margin) <= 1e-10);

    auto D = ComplexMatrix::diagonal({0.7, 1.9});
    for (double nu : {0.25, 0.5, 0.75}) {
        auto rd = verify_radius_bound(D, nu);
        CHECK(rd.violations == 0);
        CHECK(rd.worst_margin >= -1e-12);
    }
}

TEST_CASE("geometric mean bounds, diagonal equality") {
    auto D = ComplexMatrix::diagonal({0.5, 1.5, 2.5});
    auto r = verify_geomean_bounds(D, 0.5);
    CHECK(r.violations == 0);
    CHECK(std::abs(r.worst_margin) <= 1e-10);

    auto mixed = shift_plus(0.4);
    for (double nu : {0.25, 0.5, 0.75}) {
        CHECK(verify_geomean_bounds(mixed, nu).violations == 0);
    }
}

TEST_CASE("random trial matrices are reproducible and invertible") {
    auto a = random_trial_matrix(4, 42, 17, 0.05);
    auto b = random_trial_matrix(4, 42, 17, 0.05);
    CHECK((a - b).max_abs() == 0.0);
    auto c = random_trial_matrix(4, 42, 18, 0.05);
    CHECK((a - c).max_abs() > 0.0);

    auto eig = hermitian_eig(a.adjoint() * a);
    CHECK(std::sqrt(std::max(eig.eigenvalues.front(), 0.0)) >= 0.05 - 1e-9);
}

TEST_CASE("matrix suites over short runs") {
    TrialConfig cfg;
    cfg.trials = 40;
    cfg.seed = 42;
    const std::vector<int> dims{2, 3, 4};
    for (const char* suite : {"kato", "refined-kato", "radius-bound", "geomean"}) {
        auto report = run_matrix_suite(suite, cfg, dims);
        INFO(suite);
        CHECK(report.violations == 0);
        CHECK(report.trials == 40);
        CHECK(report.worst_margin > kViolationThreshold);
    }
    CHECK_THROWS_AS(run_matrix_suite("bogus", cfg, dims), std::invalid_argument);
}
