#include "berezin/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace berezin {

namespace {

// 32-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre32 {
    std::array<double, 32> node{};
    std::array<double, 32> weight{};

    GaussLegendre32() {
        constexpr int n = 32;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            node[static_cast<std::size_t>(i)] = x;
            weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre32& gl32() {
    static const GaussLegendre32 table;
    return table;
}

double gl32_panel(Complex c, Complex d, double a, double b) {
    const auto& q = gl32();
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.node.size(); ++i) {
        double s = mid + half * q.node[i];
        acc += q.weight[i] * std::abs(s * c + (1.0 - s) * d);
    }
    return half * acc;
}

double adaptive_panel(Complex c, Complex d, double a, double b, double whole, int depth) {
    double m = 0.5 * (a + b);
    double left = gl32_panel(c, d, a, m);
    double right = gl32_panel(c, d, m, b);
    if (depth >= 30 || std::abs(left + right - whole) < 1e-12) return left + right;
    return adaptive_panel(c, d, a, m, left, depth + 1) +
           adaptive_panel(c, d, m, b, right, depth + 1);
}

double integrate_segment(Complex c, Complex d, double a, double b) {
    if (a >= b) return 0.0;
    return adaptive_panel(c, d, a, b, gl32_panel(c, d, a, b), 0);
}

// Deterministic uniform double in [0,1); avoids the implementation-defined
// std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_pm1(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

std::mt19937_64 trial_rng(std::uint64_t seed, long trial) {
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
}

void require_invertible(const ComplexMatrix& T, double floor, const char* what) {
    auto eig = hermitian_eig(T.adjoint() * T);
    double smin = std::sqrt(std::max(eig.eigenvalues.front(), 0.0));
    if (smin < floor) {
        throw std::invalid_argument(std::string(what) + ": matrix is too close to singular");
    }
}

}  // namespace

void InequalityReport::merge(const InequalityReport& other) {
    trials += other.trials;
    violations += other.violations;
    if (other.worst_margin < worst_margin) {
        worst_margin = other.worst_margin;
        witness = other.witness;
    }
}

double mu(double theta) {
    double s = std::abs(std::sin(theta));
    if (s < 1e-8) return 1.0;           // removable singularity at theta = n pi
    if (1.0 - s < 1e-15) return 0.5;    // cot(theta) = 0
    double c2 = std::cos(theta) * std::cos(theta);
    double log_term = std::log1p(s) - std::log1p(-s);
    return 0.5 + 0.25 * (c2 / s) * log_term;
}

double gamma(double t, double theta) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("gamma: t must lie in (0,1)");
    double tau = std::min(t, 1.0 - t);
    double c = std::cos(theta), s = std::sin(theta);
    double root = std::sqrt(c * c + (2.0 * t - 1.0) * (2.0 * t - 1.0) * s * s);
    return 1.0 - (1.0 - root) / (2.0 * tau);
}

double segment_mean_integral(Complex c, Complex d) {
    Complex e = c - d;
    double len2 = std::norm(e);
    if (len2 < 1e-300) return std::abs(d);  // constant integrand
    // Closest approach of s -> s c + (1-s) d to the origin; splitting there
    // keeps each panel free of the |.| kink.
    double s_star = -(d.real() * e.real() + d.imag() * e.imag()) / len2;
    if (s_star > 0.0 && s_star < 1.0) {
        return integrate_segment(c, d, 0.0, s_star) + integrate_segment(c, d, s_star, 1.0);
    }
    return integrate_segment(c, d, 0.0, 1.0);
}

double angle_between(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw std::invalid_argument("angle_between: size mismatch");
    Complex dot{};
    double nx = 0.0, ny = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * std::conj(y[i]);
        nx += std::norm(x[i]);
        ny += std::norm(y[i]);
    }
    if (nx == 0.0 || ny == 0.0) throw std::invalid_argument("angle_between: zero vector");
    double ratio = std::clamp(std::abs(dot) / std::sqrt(nx * ny), 0.0, 1.0);
    return std::acos(ratio);
}

InequalityReport verify_kato(const ComplexMatrix& T, double nu) {
    if (nu < 0.0 || nu > 1.0) throw std::domain_error("verify_kato: nu must lie in [0,1]");
    InequalityReport report{.name = "kato"};
    auto mod_pow = psd_power(T.adjoint() * T, nu);           // |T|^{2 nu}
    auto adj_pow = psd_power(T * T.adjoint(), 1.0 - nu);     // |T*|^{2(1-nu)}
    int n = T.rows();
    for (int lam = 0; lam < n; ++lam) {
        for (int m = 0; m < n; ++m) {
            double lhs = std::abs(T(m, lam));
            double rhs = std::sqrt(std::max(mod_pow(lam, lam).real(), 0.0) *
                                   std::max(adj_pow(m, m).real(), 0.0));
            report.record(rhs - lhs);
        }
    }
    return report;
}

InequalityReport verify_refined_kato(const ComplexMatrix& T, double nu) {
    if (!(nu > 0.0 && nu < 1.0)) {
        throw std::domain_error("verify_refined_kato: nu must lie in (0,1)");
    }
    InequalityReport report{.name = "refined-kato"};
    auto polar = polar_decompose(T);
    auto gram = T.adjoint() * T;
    auto half_nu = psd_power(gram, 0.5 * nu);               // |T|^{nu}
    auto half_co = psd_power(gram, 0.5 * (1.0 - nu));       // |T|^{1-nu}
    auto mod_pow = psd_power(gram, nu);
    auto adj_pow = psd_power(T * T.adjoint(), 1.0 - nu);
    auto u_adj = polar.unitary.adjoint();
    int n = T.rows();
    for (int lam = 0; lam < n; ++lam) {
        auto x = half_nu.column(lam);
        for (int m = 0; m < n; ++m) {
            auto y = half_co.apply(u_adj.column(m));
            double theta = angle_between(x, y);
            double factor = mu(theta);
            double rhs_sqrt = std::sqrt(std::max(mod_pow(lam, lam).real(), 0.0) *
                                        std::max(adj_pow(m, m).real(), 0.0));
            report.record(factor * rhs_sqrt - std::abs(T(m, lam)));
            report.record(1.0 - factor);  // refinement never exceeds plain Kato
        }
    }
    return report;
}

InequalityReport verify_radius_bound(const ComplexMatrix& T, double nu) {
    if (!(nu > 0.0 && nu < 1.0)) {
        throw std::domain_error("verify_radius_bound: nu must lie in (0,1)");
    }
    InequalityReport report{.name = "radius-bound"};
    auto polar = polar_decompose(T);
    auto gram = T.adjoint() * T;
    auto half_nu = psd_power(gram, 0.5 * nu);
    auto half_co = psd_power(gram, 0.5 * (1.0 - nu));
    auto mod_pow = psd_power(gram, nu);
    auto adj_pow = psd_power(T * T.adjoint(), 1.0 - nu);
    auto u_adj = polar.unitary.adjoint();

    double ber = 0.0, mu_max = 0.0;
    int n = T.rows();
    auto sum = mod_pow + adj_pow;
    for (int lam = 0; lam < n; ++lam) {
        auto x = half_nu.column(lam);
        auto y = half_co.apply(u_adj.column(lam));
        double theta = angle_between(x, y);
        double factor = mu(theta);
        double a = std::max(mod_pow(lam, lam).real(), 0.0);
        double b = std::max(adj_pow(lam, lam).real(), 0.0);
        double lhs = std::abs(T(lam, lam));
        report.record(factor * std::sqrt(a * b) - lhs);
        report.record(0.5 * factor * (a + b) - factor * std::sqrt(a * b));
        ber = std::max(ber, lhs);
        mu_max = std::max(mu_max, factor);
    }
    double b1 = berezin_quantities_finite(sum).norm_b1;
    report.record(0.5 * mu_max * b1 - ber);
    return report;
}

InequalityReport verify_geomean_bounds(const ComplexMatrix& T, double nu) {
    if (!(nu > 0.0 && nu < 1.0)) {
        throw std::domain_error("verify_geomean_bounds: nu must lie in (0,1)");
    }
    InequalityReport report{.name = "geomean"};
    auto polar = polar_decompose(T);
    auto gram = T.adjoint() * T;
    auto a_mat = psd_power(gram, nu);
    auto b_mat = psd_power(T * T.adjoint(), 1.0 - nu);
    auto mean = geometric_mean(a_mat, b_mat, 0.5);
    auto half_nu = psd_power(gram, 0.5 * nu);
    auto half_co = psd_power(gram, 0.5 * (1.0 - nu));
    auto u_adj = polar.unitary.adjoint();
    int n = T.rows();
    for (int lam = 0; lam < n; ++lam) {
        double g = mean(lam, lam).real();
        double a = std::max(a_mat(lam, lam).real(), 0.0);
        double b = std::max(b_mat(lam, lam).real(), 0.0);
        report.record(std::sqrt(a * b) - g);
        auto x = half_nu.column(lam);
        auto y = half_co.apply(u_adj.column(lam));
        double theta = angle_between(x, y);
        report.record(std::abs(T(lam, lam)) - std::cos(theta) * g);
    }
    return report;
}

std::vector<InequalityReport> verify_scalar_suite(const TrialConfig& cfg) {
    std::vector<InequalityReport> out;

    InequalityReport cd_lower{.name = "prop-cd-lower"};
    InequalityReport cd_upper{.name = "prop-cd-upper"};
    InequalityReport reverse_tri{.name = "reverse-triangle"};
    for (long trial = 0; trial < cfg.trials; ++trial) {
        auto rng = trial_rng(cfg.seed, trial);
        Complex c{uniform_pm1(rng), uniform_pm1(rng)};
        Complex d{uniform_pm1(rng), uniform_pm1(rng)};
        double integral = segment_mean_integral(c, d);
        cd_lower.record(integral - 0.5 * std::abs(c + d));
        cd_upper.record(0.5 * (std::abs(c) + std::abs(d)) - integral);

        double t = 0.05 + 0.9 * uniform01(rng);
        double tau = std::min(t, 1.0 - t);
        double lhs = 0.5 * (std::abs(c) + std::abs(d)) -
                     ((1.0 - t) * std::abs(c) + t * std::abs(d) -
                      std::abs((1.0 - t) * c + t * d)) /
                         (2.0 * tau);
        reverse_tri.record(0.5 * std::abs(c + d) - lhs);
    }
    out.push_back(cd_lower);
    out.push_back(cd_upper);
    out.push_back(reverse_tri);

    constexpr int kGrid = 2001;
    const std::vector<double> t_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> mu_vals(kGrid);
    InequalityReport mu_bounds{.name = "mu-bounds"};
    InequalityReport mu_sandwich{.name = "mu-cos-sandwich"};
    for (int k = 0; k < kGrid; ++k) {
        double theta = std::numbers::pi * k / (kGrid - 1);
        double m = mu(theta);
        mu_vals[static_cast<std::size_t>(k)] = m;
        mu_bounds.record(m - 0.5);
        mu_bounds.record(1.0 - m);
        mu_sandwich.record(m - std::abs(std::cos(theta)));
    }
    out.push_back(mu_bounds);
    out.push_back(mu_sandwich);

    InequalityReport mu_mono{.name = "mu-monotone"};
    for (int k = 0; k + 1 < kGrid; ++k) {
        double step = mu_vals[static_cast<std::size_t>(k + 1)] - mu_vals[static_cast<std::size_t>(k)];
        // nonincreasing on [0, pi/2], nondecreasing on [pi/2, pi]
        mu_mono.record((k + 1 <= (kGrid - 1) / 2 ? -step : step) + 1e-12);
    }
    out.push_back(mu_mono);

    InequalityReport gamma_bounds{.name = "gamma-bounds"};
    InequalityReport gamma_mono{.name = "gamma-monotone"};
    for (double t : t_list) {
        double prev = 0.0;
        for (int k = 0; k < kGrid; ++k) {
            double theta = std::numbers::pi * k / (kGrid - 1);
            double g = gamma(t, theta);
            gamma_bounds.record(g);
            gamma_bounds.record(1.0 - g);
            if (k > 0) {
                double step = g - prev;
                gamma_mono.record((k <= (kGrid - 1) / 2 ? -step : step) + 1e-12);
            }
            prev = g;
        }
    }
    out.push_back(gamma_bounds);
    out.push_back(gamma_mono);
    return out;
}

ComplexMatrix random_trial_matrix(int dim, std::uint64_t seed, long trial, double floor) {
    if (dim < 1) throw std::invalid_argument("random_trial_matrix: dim must be >= 1");
    auto rng = trial_rng(seed, trial);
    ComplexMatrix T(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double re = uniform_pm1(rng);
            double im = uniform_pm1(rng);
            T(i, j) = Complex{re, im};
        }
    }
    if (floor > 0.0) {
        // Shifting along the polar unitary lifts every singular value by the
        // floor: U(P + floor I) has singular values sigma_i + floor.
        auto polar = polar_decompose(T);
        T = T + Complex{floor, 0.0} * polar.unitary;
    }
    return T;
}

InequalityReport run_matrix_suite(std::string_view suite, const TrialConfig& cfg,
                                  std::span<const int> dims) {
    if (dims.empty()) throw std::invalid_argument("run_matrix_suite: dims must be nonempty");
    InequalityReport total{.name = std::string(suite)};
    total.trials = 0;
    for (long trial = 0; trial < cfg.trials; ++trial) {
        int dim = dims[static_cast<std::size_t>(trial) % dims.size()];
        auto T = random_trial_matrix(dim, cfg.seed, trial, cfg.invertibility_floor);
        if (suite != "kato") require_invertible(T, 0.5 * cfg.invertibility_floor, "run_matrix_suite");
        for (double nu : cfg.nu_list) {
            InequalityReport r;
            if (suite == "kato") {
                r = verify_kato(T, nu);
            } else if (suite == "refined-kato") {
                r = verify_refined_kato(T, nu);
            } else if (suite == "radius-bound") {
                r = verify_radius_bound(T, nu);
            } else if (suite == "geomean") {
                r = verify_geomean_bounds(T, nu);
            } else {
                throw std::invalid_argument("run_matrix_suite: unknown suite " +
                                            std::string(suite));
            }
            if (r.worst_margin < total.worst_margin) total.witness = T;
            InequalityReport bare = r;
            bare.witness.reset();
            total.violations += bare.violations;
            if (bare.worst_margin < total.worst_margin) total.worst_margin = bare.worst_margin;
        }
    }
    total.trials = cfg.trials;
    return total;
}

}  // namespace berezin
