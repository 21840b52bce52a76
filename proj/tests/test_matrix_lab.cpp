#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "berezin/matrix_lab.hpp"
#include "berezin/range_explorer.hpp"

using namespace berezin;

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double pm1(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Complex{pm1(rng), pm1(rng)};
    }
    return m;
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    auto m = random_matrix(n, rng);
    auto adj = m.adjoint();
    return Complex{0.5, 0.0} * (m + adj);
}

ComplexMatrix random_positive(int n, std::mt19937_64& rng) {
    auto m = random_matrix(n, rng);
    auto gram = m.adjoint() * m;
    return gram + Complex{0.5, 0.0} * ComplexMatrix::identity(n);
}

double reconstruction_residual(const ComplexMatrix& H, const HermitianEig& eig) {
    int n = H.rows();
    ComplexMatrix rebuilt(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex acc{};
            for (int k = 0; k < n; ++k) {
                acc += eig.vectors(i, k) * eig.eigenvalues[static_cast<std::size_t>(k)] *
                       std::conj(eig.vectors(j, k));
            }
            rebuilt(i, j) = acc;
        }
    }
    return (H - rebuilt).max_abs();
}

// Point-in-convex-polygon test with an expansion margin.
bool inside_hull(Complex p, const HullPolygon& poly, double margin) {
    const auto& v = poly.vertices;
    if (v.size() <= 2) return point_to_polygon(p, poly) <= margin;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Complex a = v[i], b = v[(i + 1) % v.size()];
        double cross = (b.real() - a.real()) * (p.imag() - a.imag()) -
                       (b.imag() - a.imag()) * (p.real() - a.real());
        if (cross < -margin * std::abs(b - a)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("hermitian eigendecomposition basics") {
    auto d = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0}));
    CHECK(std::abs(d.eigenvalues[0] - 1.0) < 1e-14);
    CHECK(std::abs(d.eigenvalues[1] - 3.0) < 1e-14);

    ComplexMatrix flip(2, 2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    auto f = hermitian_eig(flip);
    CHECK(std::abs(f.eigenvalues[0] + 1.0) < 1e-14);
    CHECK(std::abs(f.eigenvalues[1] - 1.0) < 1e-14);

    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(bad), std::invalid_argument);
}

TEST_CASE("eigen reconstruction and unitarity on random input") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + static_cast<int>(rng() % 15);
        auto H = random_hermitian(n, rng);
        auto eig = hermitian_eig(H);
        CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
        CHECK(reconstruction_residual(H, eig) <= 1e-10 * std::max(1.0, H.max_abs()));
        auto gram = eig.vectors.adjoint() * eig.vectors;
        CHECK((gram - ComplexMatrix::identity(n)).max_abs() <= 1e-10);
    }
}

TEST_CASE("psd powers") {
    auto I = ComplexMatrix::identity(3);
    CHECK((psd_power(I, 0.37) - I).max_abs() < 1e-12);

    auto root = psd_power(ComplexMatrix::diagonal({4.0, 9.0}), 0.5);
    CHECK(std::abs(root(0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(root(1, 1) - 3.0) < 1e-12);

    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        auto A = random_positive(4, rng);
        auto half = psd_power(A, 0.5);
        CHECK((half * half - A).max_abs() < 1e-9);
        CHECK((psd_power(A, 1.0) - A).max_abs() < 1e-10);
    }

    // Rank-deficient input: t = 0 gives the range projection.
    auto proj = psd_power(ComplexMatrix::diagonal({2.0, 0.0}), 0.0);
    CHECK(std::abs(proj(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(proj(1, 1)) < 1e-12);

    CHECK_THROWS_AS(psd_power(ComplexMatrix::diagonal({1.0, -1.0}), 0.5), std::invalid_argument);
}

TEST_CASE("polar decomposition") {
    ComplexMatrix rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    auto pr = polar_decompose(rot);
    CHECK((pr.unitary - rot).max_abs() < 1e-12);
    CHECK((pr.positive - ComplexMatrix::identity(2)).max_abs() < 1e-12);

    auto psd = ComplexMatrix::diagonal({2.0, 3.0});
    auto pp = polar_decompose(psd);
    CHECK((pp.positive - psd).max_abs() < 1e-12);

    ComplexMatrix shift(2, 2);
    shift(1, 0) = 1.0;
    auto ps = polar_decompose(shift);
    CHECK(std::abs(ps.positive(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(ps.positive(1, 1)) < 1e-12);
    CHECK((ps.unitary * ps.positive - shift).max_abs() < 1e-10);

    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + static_cast<int>(rng() % 15);
        auto T = random_matrix(n, rng);
        auto p = polar_decompose(T);
        CHECK((p.unitary * p.positive - T).max_abs() <= 1e-9 * std::max(1.0, T.max_abs()));
        CHECK(p.positive.is_hermitian(1e-10));
        for (double e : hermitian_eig(p.positive).eigenvalues) CHECK(e >= -1e-10);
    }
}

TEST_CASE("geometric means") {
    std::mt19937_64 rng(41);
    auto A = random_positive(4, rng);
    CHECK((geometric_mean(A, A, 0.5) - A).max_abs() < 1e-9);

    auto B = random_positive(4, rng);
    for (double t : {0.25, 0.5, 0.75}) {
        auto bt = geometric_mean(ComplexMatrix::identity(4), B, t);
        auto oracle = psd_power(B, t);
        CHECK((bt - oracle).max_abs() < 1e-9);
    }

    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + static_cast<int>(rng() % 5);
        auto P = random_positive(n, rng);
        auto Q = random_positive(n, rng);
        auto pq = geometric_mean(P, Q, 0.5);
        auto qp = geometric_mean(Q, P, 0.5);
        CHECK((pq - qp).max_abs() < 1e-9);
    }

    auto D1 = ComplexMatrix::diagonal({1.0, 4.0, 9.0});
    auto D2 = ComplexMatrix::diagonal({2.0, 0.5, 3.0});
    auto mixed = geometric_mean(D1, D2, 0.3);
    for (int i = 0; i < 3; ++i) {
        double a = D1(i, i).real(), b = D2(i, i).real();
        CHECK(std::abs(mixed(i, i).real() - std::pow(a, 0.7) * std::pow(b, 0.3)) < 1e-10);
    }

    CHECK_THROWS_AS(geometric_mean(ComplexMatrix::diagonal({1.0, 0.0}), D1, 0.5),
                    std::invalid_argument);
}

TEST_CASE("finite Berezin quantities") {
    auto qI = berezin_quantities_finite(ComplexMatrix::identity(3));
    CHECK(qI.ber == 1.0);
    CHECK(qI.norm_b1 == 1.0);
    CHECK(qI.norm_b2 == 1.0);

    ComplexMatrix shift(2, 2);
    shift(1, 0) = 1.0;
    auto qs = berezin_quantities_finite(shift);
    CHECK(qs.ber == 0.0);
    CHECK(qs.norm_b1 == 1.0);
    CHECK(qs.norm_b2 == 1.0);

    auto qd = berezin_quantities_finite(ComplexMatrix::diagonal({1.0, Complex{0.0, 2.0}}));
    CHECK(qd.ber == 2.0);
    REQUIRE(qd.ber_set.size() == 2);
    CHECK(qd.ber_set[1] == Complex{0.0, 2.0});
}

TEST_CASE("convex hull") {
    std::vector<Complex> collinear{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}};
    auto seg = convex_hull(collinear);
    CHECK(seg.vertices.size() == 2);

    std::vector<Complex> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    auto sq = convex_hull(square);
    CHECK(sq.vertices.size() == 4);

    CHECK_THROWS_AS(convex_hull(std::span<const Complex>{}), std::invalid_argument);

    std::mt19937_64 rng(51);
    std::vector<Complex> pts;
    for (int i = 0; i < 500; ++i) pts.emplace_back(pm1(rng), pm1(rng));
    auto hull = convex_hull(pts);
    // Brute-force oracle: every input point lies inside and each hull vertex
    // is one of the inputs.
    for (Complex p : pts) CHECK(inside_hull(p, hull, 1e-9));
    for (Complex v : hull.vertices) {
        CHECK(std::any_of(pts.begin(), pts.end(),
                          [v](Complex p) { return std::abs(p - v) < 1e-15; }));
    }
    // CCW orientation: positive signed area.
    double area = 0.0;
    for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
        Complex a = hull.vertices[i], b = hull.vertices[(i + 1) % hull.vertices.size()];
        area += a.real() * b.imag() - b.real() * a.imag();
    }
    CHECK(area > 0.0);
}

TEST_CASE("numerical range boundary") {
    auto seg = numerical_range_boundary(ComplexMatrix::diagonal({0.0, 1.0}), 256);
    REQUIRE(seg.vertices.size() == 2);
    double lo = std::min(seg.vertices[0].real(), seg.vertices[1].real());
    double hi = std::max(seg.vertices[0].real(), seg.vertices[1].real());
    CHECK(std::abs(lo) < 1e-9);
    CHECK(std::abs(hi - 1.0) < 1e-9);

    ComplexMatrix nil(2, 2);
    nil(0, 1) = 1.0;
    auto disc = numerical_range_boundary(nil, 256);
    for (Complex v : disc.vertices) CHECK(std::abs(std::abs(v) - 0.5) < 1e-3);
    CHECK(disc.vertices.size() > 100);

    ComplexMatrix point(1, 1);
    point(0, 0) = Complex{0.3, -0.2};
    auto single = numerical_range_boundary(point, 64);
    REQUIRE(single.vertices.size() == 1);
    CHECK(std::abs(single.vertices[0] - Complex{0.3, -0.2}) < 1e-14);

    CHECK_THROWS_AS(numerical_range_boundary(nil, 4), std::invalid_argument);
}

TEST_CASE("elliptic range of 2x2 matrices") {
    ComplexMatrix nil(2, 2);
    nil(0, 1) = 1.0;
    auto e = elliptic_range_2x2(nil);
    CHECK(std::abs(e.focus1) < 1e-14);
    CHECK(std::abs(e.focus2) < 1e-14);
    CHECK(std::abs(e.minor_axis - 1.0) < 1e-14);
    CHECK(std::abs(e.major_axis - 1.0) < 1e-14);

    ComplexMatrix diag2(2, 2);
    diag2(0, 0) = 1.0;
    diag2(1, 1) = Complex{0.0, 2.0};
    auto ed = elliptic_range_2x2(diag2);
    CHECK(ed.minor_axis == 0.0);
    CHECK(std::abs(ed.major_axis - std::abs(Complex{1.0, -2.0})) < 1e-14);

    ComplexMatrix upper(2, 2);
    upper(0, 0) = 1.0;
    upper(0, 1) = 2.0;
    upper(1, 1) = 3.0;
    auto eu = elliptic_range_2x2(upper);
    CHECK(std::abs(eu.focus1 - 1.0) < 1e-14);
    CHECK(std::abs(eu.focus2 - 3.0) < 1e-14);
    CHECK(std::abs(eu.minor_axis - 2.0) < 1e-14);
    CHECK(std::abs(eu.major_axis - 2.0 * std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(eu.major_axis * eu.major_axis -
                   (std::norm(eu.focus1 - eu.focus2) + eu.minor_axis * eu.minor_axis)) < 1e-12);

    // Cross-check the ellipse against the supporting-line boundary.
    auto hull = convex_hull(ellipse_boundary_points(eu, 8192));
    auto range = numerical_range_boundary(upper, 8192);
    CHECK(polygon_hausdorff(hull, range, 8192) < 1e-6);

    CHECK_THROWS_AS(elliptic_range_2x2(ComplexMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("Schur reduction handles non-triangular 2x2 input") {
    // Unitary conjugation leaves the numerical range unchanged, so the
    // ellipse from a rotated matrix must match the boundary algorithm.
    ComplexMatrix A(2, 2);
    A(0, 0) = Complex{0.3, 0.4};
    A(0, 1) = Complex{-1.1, 0.2};
    A(1, 0) = Complex{0.7, -0.5};
    A(1, 1) = Complex{-0.2, 0.1};
    auto e = elliptic_range_2x2(A);
    auto hull = convex_hull(ellipse_boundary_points(e, 4096));
    auto range = numerical_range_boundary(A, 4096);
    CHECK(polygon_hausdorff(hull, range, 4096) < 1e-5);
}

TEST_CASE("diagonal matrices: hull equals numerical range") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 2 + static_cast<int>(rng() % 15);
        std::vector<Complex> d;
        for (int i = 0; i < n; ++i) d.emplace_back(pm1(rng), pm1(rng));
        CHECK(hull_vs_numrange_gap(ComplexMatrix::diagonal(d), 256) <= 1e-6);
    }

    ComplexMatrix nil(2, 2);
    nil(0, 1) = 1.0;
    double gap = hull_vs_numrange_gap(nil, 256);
    CHECK(std::abs(gap - 0.5) < 1e-3);

    ComplexMatrix point(1, 1);
    point(0, 0) = Complex{0.2, 0.9};
    CHECK(hull_vs_numrange_gap(point, 64) == 0.0);
}

TEST_CASE("Berezin set lies inside the numerical range") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto A = random_matrix(n, rng);
        auto range = numerical_range_boundary(A, 512);
        for (Complex d : A.diagonal_entries()) CHECK(inside_hull(d, range, 1e-6));
    }
}

TEST_CASE("N_z model: numerical radius exceeds the Berezin radius") {
    // Hardy model of the rank-one map f -> <f, 1> z.
    FiniteRankOperator nz{SpaceSpec::hardy(),
                          {{AnalyticPolynomial{1.0}, AnalyticPolynomial::monomial(1)}}};
    RadiusConfig cfg;
    cfg.grid = DiscGrid{200, 16, 0.999};
    double ber = estimate_berezin_radius(nz, cfg);
    CHECK(std::abs(ber - 2.0 / (3.0 * std::sqrt(3.0))) < 1e-8);

    ComplexMatrix block(2, 2);
    block(1, 0) = 1.0;  // maps e_1 to e_2, the matrix picture of the same map
    double w = 0.0;
    for (Complex v : numerical_range_boundary(block, 512).vertices) {
        w = std::max(w, std::abs(v));
    }
    CHECK(std::abs(w - 0.5) < 1e-4);
    CHECK(std::abs((w - ber) - (0.5 - 2.0 / (3.0 * std::sqrt(3.0)))) < 1e-4);
    CHECK(std::abs((0.5 - 2.0 / (3.0 * std::sqrt(3.0))) - 0.11509) < 1e-5);
}
