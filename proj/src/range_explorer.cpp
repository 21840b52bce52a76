#include "berezin/range_explorer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace berezin {

namespace {

constexpr double kSearchLimit = 1.0 - 1e-6;  // optimizer stays inside |lambda| <= this

void require_disc_op(const FiniteRankOperator& op, const char* what) {
    if (op.terms.empty()) {
        throw std::invalid_argument(std::string(what) + ": term list must be nonempty");
    }
    if (!op.space.is_disc()) {
        throw std::invalid_argument(std::string(what) + ": hardy or bergman operators only");
    }
}

void validate_grid(const DiscGrid& grid) {
    if (grid.n_radial < 2 || grid.n_angular < 1) {
        throw std::invalid_argument("DiscGrid: need n_radial >= 2 and n_angular >= 1");
    }
    if (!(grid.r_max > 0.0 && grid.r_max < 1.0)) {
        throw std::invalid_argument("DiscGrid: r_max must lie in (0,1)");
    }
}

// Derivative-free compass search. Maximizes f over |lambda| <= r_limit,
// halving the step from step0 until it drops below step_tol.
Complex pattern_search(const std::function<double(Complex)>& f, Complex start, double r_limit,
                       double step0, double step_tol, int max_iters) {
    Complex best = start;
    double best_val = f(start);
    double step = step0;
    int iters = 0;
    while (step > step_tol && iters < max_iters) {
        ++iters;
        bool improved = false;
        const Complex moves[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        for (Complex d : moves) {
            Complex cand = best + d;
            if (std::abs(cand) > r_limit) continue;
            double v = f(cand);
            if (v > best_val) {
                best_val = v;
                best = cand;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

// Uniform bucket grid over sampled values; supports approximate nearest
// queries good enough for screening candidate midpoints.
class ValueIndex {
public:
    explicit ValueIndex(const std::vector<std::pair<Complex, Complex>>& points)
        : points_(points) {
        double lo_re = std::numeric_limits<double>::max(), hi_re = -lo_re;
        double lo_im = lo_re, hi_im = hi_re;
        for (const auto& [lam, v] : points) {
            lo_re = std::min(lo_re, v.real());
            hi_re = std::max(hi_re, v.real());
            lo_im = std::min(lo_im, v.imag());
            hi_im = std::max(hi_im, v.imag());
        }
        origin_ = {lo_re, lo_im};
        double extent = std::max({hi_re - lo_re, hi_im - lo_im, 1e-30});
        cell_ = extent / 128.0;
        nx_ = static_cast<int>((hi_re - lo_re) / cell_) + 2;
        ny_ = static_cast<int>((hi_im - lo_im) / cell_) + 2;
        buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
        for (std::size_t i = 0; i < points.size(); ++i) {
            buckets_[bucket_of(points[i].second)].push_back(i);
        }
    }

    // Distance from w to the nearest sampled value, and that sample's index.
    std::pair<double, std::size_t> nearest(Complex w) const {
        int cx = std::clamp(static_cast<int>((w.real() - origin_.real()) / cell_), 0, nx_ - 1);
        int cy = std::clamp(static_cast<int>((w.imag() - origin_.imag()) / cell_), 0, ny_ - 1);
        double best = std::numeric_limits<double>::max();
        std::size_t best_idx = 0;
        int max_ring = std::max(nx_, ny_);
        for (int ring = 0; ring <= max_ring; ++ring) {
            if (best < std::numeric_limits<double>::max() &&
                best < cell_ * (ring - 1)) {
                break;  // no closer point can exist further out
            }
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    int x = cx + dx, y = cy + dy;
                    if (x < 0 || x >= nx_ || y < 0 || y >= ny_) continue;
                    for (std::size_t idx : buckets_[static_cast<std::size_t>(y) * nx_ + x]) {
                        double d = std::abs(points_[idx].second - w);
                        if (d < best) {
                            best = d;
                            best_idx = idx;
                        }
                    }
                }
            }
        }
        return {best, best_idx};
    }

    // Indices of the k samples whose values are nearest to w.
    std::vector<std::size_t> k_nearest(Complex w, std::size_t k) const {
        std::vector<std::pair<double, std::size_t>> ranked;
        ranked.reserve(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) {
            ranked.emplace_back(std::abs(points_[i].second - w), i);
        }
        k = std::min(k, ranked.size());
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<long>(k), ranked.end());
        std::vector<std::size_t> out(k);
        for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
        return out;
    }

private:
    std::size_t bucket_of(Complex v) const {
        int x = std::clamp(static_cast<int>((v.real() - origin_.real()) / cell_), 0, nx_ - 1);
        int y = std::clamp(static_cast<int>((v.imag() - origin_.imag()) / cell_), 0, ny_ - 1);
        return static_cast<std::size_t>(y) * nx_ + x;
    }

    const std::vector<std::pair<Complex, Complex>>& points_;
    Complex origin_;
    double cell_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace

std::vector<Complex> grid_points(const DiscGrid& grid) {
    validate_grid(grid);
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(grid.n_radial) * grid.n_angular);
    for (int j = 0; j < grid.n_radial; ++j) {
        double r = grid.r_max * j / (grid.n_radial - 1);
        for (int k = 0; k < grid.n_angular; ++k) {
            double theta = 2.0 * std::numbers::pi * k / grid.n_angular;
            pts.push_back(std::polar(r, theta));
        }
    }
    return pts;
}

RangeSample sample_range(const FiniteRankOperator& op, const DiscGrid& grid) {
    require_disc_op(op, "sample_range");
    RangeSample out;
    auto pts = grid_points(grid);
    out.points.reserve(pts.size());
    for (Complex lam : pts) {
        out.points.emplace_back(lam, berezin_transform(op, lam));
    }
    return out;
}

RadiusEstimate estimate_berezin_radius_detail(const FiniteRankOperator& op,
                                              const RadiusConfig& cfg) {
    require_disc_op(op, "estimate_berezin_radius");
    auto f = [&op](Complex lam) { return std::abs(berezin_transform(op, lam)); };

    auto pts = grid_points(cfg.grid);
    std::vector<std::pair<double, std::size_t>> ranked(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ranked[i] = {f(pts[i]), i};
    std::size_t starts = std::min<std::size_t>(5, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<long>(starts), ranked.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });

    RadiusEstimate best{ranked[0].first, pts[ranked[0].second]};
    double step_tol = std::min(1e-7, cfg.tol);
    for (std::size_t s = 0; s < starts; ++s) {
        Complex arg = pattern_search(f, pts[ranked[s].second], kSearchLimit, 0.05, step_tol,
                                     cfg.refine_iters);
        double v = f(arg);
        if (v > best.value) best = {v, arg};
    }
    return best;
}

double estimate_berezin_radius(const FiniteRankOperator& op, const RadiusConfig& cfg) {
    return estimate_berezin_radius_detail(op, cfg).value;
}

double closed_form_radius(RadiusFamily family, const FamilyParams& p) {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw std::domain_error(msg);
    };
    double n = p.n, m = p.m;
    switch (family) {
        case RadiusFamily::hardy_monomial:
            require(p.n >= 1, "hardy_monomial: n >= 1");
            return (1.0 / (n + 1.0)) * std::pow(n / (n + 1.0), n);
        case RadiusFamily::hardy_equal_moduli:
            require(p.n >= 1 && p.a >= 0.0, "hardy_equal_moduli: n >= 1, a >= 0");
            return p.a * p.a * std::pow(1.0 / (n + 1.0), 1.0 / n) * (n / (n + 1.0));
        case RadiusFamily::hardy_compact_diagonal:
            require(p.a >= 0.0, "hardy_compact_diagonal: a >= 0");
            return p.a * p.a;  // supremum, not attained
        case RadiusFamily::hardy_disc:
            require(p.n >= 1 && p.m > p.n, "hardy_disc: m > n >= 1");
            return (2.0 / (m + n + 2.0)) * std::pow((m + n) / (m + n + 2.0), (m + n) / 2.0);
        case RadiusFamily::bergman_monomial:
            require(p.n >= 1, "bergman_monomial: n >= 1");
            return 4.0 * std::pow(n, n) / std::pow(n + 2.0, n + 2.0);
        case RadiusFamily::bergman_disc:
            require(p.n >= 1 && p.m > p.n, "bergman_disc: m > n >= 1");
            return std::pow(4.0 / (m + n + 4.0), 2.0) *
                   std::pow((m + n) / (m + n + 4.0), (m + n) / 2.0);
    }
    throw std::domain_error("closed_form_radius: unknown family");
}

double symmetry_defect(const FiniteRankOperator& op, const DiscGrid& grid) {
    require_disc_op(op, "symmetry_defect");
    double worst = 0.0;
    for (Complex lam : grid_points(grid)) {
        Complex a = berezin_transform(op, std::conj(lam));
        Complex b = std::conj(berezin_transform(op, lam));
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

std::optional<NonconvexityWitness> find_nonconvexity_witness(const FiniteRankOperator& op,
                                                             const WitnessConfig& cfg) {
    require_disc_op(op, "find_nonconvexity_witness");
    RangeSample sample = sample_range(op, cfg.grid);
    const auto& pts = sample.points;
    ValueIndex index(pts);

    const int nr = cfg.grid.n_radial, na = cfg.grid.n_angular;
    struct Candidate {
        std::size_t i, j;
        double screen;  // distance from midpoint to the nearest sample
    };
    std::vector<Candidate> candidates;

    auto consider = [&](std::size_t i, std::size_t j) {
        Complex mid = 0.5 * (pts[i].second + pts[j].second);
        double d = index.nearest(mid).first;
        if (d > cfg.attain_tol) candidates.push_back({i, j, d});
    };

    // Conjugate pairs: the grid is closed under conjugation, so pair each
    // point with its angular mirror. Midpoints are Re A~(lambda), the values
    // the paper's corollary says a convex range must attain.
    for (int jr = 0; jr < nr; ++jr) {
        for (int k = 1; k < (na + 1) / 2; ++k) {
            std::size_t i = static_cast<std::size_t>(jr) * na + k;
            std::size_t j = static_cast<std::size_t>(jr) * na + (na - k);
            consider(i, j);
            if (static_cast<int>(candidates.size()) >= cfg.pair_budget / 2) break;
        }
        if (static_cast<int>(candidates.size()) >= cfg.pair_budget / 2) break;
    }

    // Farthest pairs over a strided subsample.
    std::size_t stride = std::max<std::size_t>(1, pts.size() / 128);
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < pts.size(); i += stride) sub.push_back(i);
    for (std::size_t a = 0; a < sub.size() && static_cast<int>(candidates.size()) < cfg.pair_budget;
         ++a) {
        double best = -1.0;
        std::size_t partner = sub[a];
        for (std::size_t b : sub) {
            double d = std::abs(pts[sub[a]].second - pts[b].second);
            if (d > best) {
                best = d;
                partner = b;
            }
        }
        consider(sub[a], partner);
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.screen > b.screen; });

    int minimizations = 0;
    for (const Candidate& c : candidates) {
        if (minimizations >= 200) break;
        ++minimizations;
        Complex mid = 0.5 * (pts[c.i].second + pts[c.j].second);
        auto dist = [&](Complex lam) { return std::abs(berezin_transform(op, lam) - mid); };
        auto neg = [&](Complex lam) { return -dist(lam); };
        double gap = std::numeric_limits<double>::max();
        for (std::size_t start : index.k_nearest(mid, 5)) {
            Complex arg = pattern_search(neg, pts[start].first, kSearchLimit, 0.05, 1e-6, 400);
            gap = std::min(gap, dist(arg));
            if (gap <= cfg.attain_tol) break;
        }
        if (gap > cfg.attain_tol) {
            return NonconvexityWitness{pts[c.i].second, pts[c.j].second, pts[c.i].first,
                                       pts[c.j].first, mid, gap};
        }
    }
    return std::nullopt;
}

std::optional<RealInterval> real_interval_summary(const RangeSample& sample, double imag_tol) {
    if (sample.points.empty()) return std::nullopt;
    RealInterval out{std::numeric_limits<double>::max(), -std::numeric_limits<double>::max()};
    for (const auto& [lam, v] : sample.points) {
        if (std::abs(v.imag()) > imag_tol) return std::nullopt;
        out.min = std::min(out.min, v.real());
        out.max = std::max(out.max, v.real());
    }
    return out;
}

double real_part_value(const FiniteRankOperator& op, Complex lambda) {
    return berezin_transform(op, lambda).real();
}

}  // namespace berezin
