#include "berezin/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace berezin {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square() || m.rows() < 1) {
        throw std::invalid_argument(std::string(what) + ": square matrix required");
    }
}

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    Complex e = b - a;
    double len2 = std::norm(e);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a).real() * e.real() + (p - a).imag() * e.imag()) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * e));
}

// Boundary points of a polygon, spaced uniformly in arc length.
std::vector<Complex> boundary_samples(const HullPolygon& poly, int count) {
    const auto& v = poly.vertices;
    if (v.empty()) throw std::invalid_argument("boundary_samples: empty polygon");
    if (v.size() == 1) return std::vector<Complex>(static_cast<std::size_t>(count), v[0]);

    std::vector<std::pair<Complex, Complex>> edges;
    if (v.size() == 2) {
        edges.emplace_back(v[0], v[1]);
        edges.emplace_back(v[1], v[0]);
    } else {
        for (std::size_t i = 0; i < v.size(); ++i) {
            edges.emplace_back(v[i], v[(i + 1) % v.size()]);
        }
    }
    double perimeter = 0.0;
    for (const auto& [a, b] : edges) perimeter += std::abs(b - a);
    if (perimeter == 0.0) return std::vector<Complex>(static_cast<std::size_t>(count), v[0]);

    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    std::size_t e = 0;
    double edge_start = 0.0;
    for (int k = 0; k < count; ++k) {
        double s = perimeter * k / count;
        while (e + 1 < edges.size() &&
               edge_start + std::abs(edges[e].second - edges[e].first) < s) {
            edge_start += std::abs(edges[e].second - edges[e].first);
            ++e;
        }
        double len = std::abs(edges[e].second - edges[e].first);
        double t = len > 0.0 ? (s - edge_start) / len : 0.0;
        out.push_back(edges[e].first + t * (edges[e].second - edges[e].first));
    }
    return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
    data_.assign(static_cast<std::size_t>(rows) * cols, Complex{});
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
    ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> d) {
    return diagonal(std::span<const Complex>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    }
    return m;
}

std::vector<Complex> ComplexMatrix::diagonal_entries() const {
    int n = std::min(rows_, cols_);
    std::vector<Complex> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = (*this)(i, i);
    return d;
}

std::vector<Complex> ComplexMatrix::column(int j) const {
    std::vector<Complex> c(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
    return c;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> x) const {
    if (static_cast<int>(x.size()) != cols_) {
        throw std::invalid_argument("ComplexMatrix::apply: size mismatch");
    }
    std::vector<Complex> y(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        Complex acc{};
        for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& v : data_) acc += std::norm(v);
    return std::sqrt(acc);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i) {
        for (int j = i; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        }
    }
    return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("matrix addition: shape mismatch");
    }
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("matrix subtraction: shape mismatch");
    }
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (auto& v : out.data_) v *= s;
    return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& H) {
    require_square(H, "hermitian_eig");
    int n = H.rows();
    if (n > 64) throw std::invalid_argument("hermitian_eig: dimension must be <= 64");
    double scale = std::max(1.0, H.max_abs());
    if (!H.is_hermitian(1e-13 * scale)) {
        throw std::invalid_argument("hermitian_eig: matrix is not hermitian");
    }

    // Symmetrize to kill representational roundoff, then rotate.
    ComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (H(i, j) + std::conj(H(j, i)));
    }
    ComplexMatrix V = ComplexMatrix::identity(n);
    double norm_f = A.frobenius_norm();

    bool converged = norm_f == 0.0;
    for (int sweep = 0; sweep < 30 && !converged; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) off += std::norm(A(i, j));
            }
        }
        if (std::sqrt(off) < 1e-14 * norm_f) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Complex g = A(p, q);
                double absg = std::abs(g);
                if (absg < 1e-300) continue;
                double alpha = A(p, p).real();
                double beta = A(q, q).real();
                double tau = (alpha - beta) / (2.0 * absg);
                double t = tau == 0.0
                               ? 1.0
                               : std::copysign(1.0, tau) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                Complex s = (t * c) * std::conj(g / absg);

                // A <- J* A J and V <- V J, J acting on columns p,q.
                for (int k = 0; k < n; ++k) {
                    Complex akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp + s * akq;
                    A(k, q) = -std::conj(s) * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    Complex apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk + std::conj(s) * aqk;
                    A(q, k) = -s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    Complex vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp + s * vkq;
                    V(k, q) = -std::conj(s) * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) off += std::norm(A(i, j));
            }
        }
        if (std::sqrt(off) >= 1e-14 * norm_f) {
            throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&A](int a, int b) { return A(a, a).real() < A(b, b).real(); });

    HermitianEig out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[static_cast<std::size_t>(j)] = A(order[static_cast<std::size_t>(j)],
                                                         order[static_cast<std::size_t>(j)])
                                                           .real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = V(i, order[static_cast<std::size_t>(j)]);
    }
    return out;
}

namespace {

ComplexMatrix spectral_map(const HermitianEig& eig, const std::vector<double>& mapped) {
    int n = eig.vectors.rows();
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex acc{};
            for (int k = 0; k < n; ++k) {
                acc += eig.vectors(i, k) * mapped[static_cast<std::size_t>(k)] *
                       std::conj(eig.vectors(j, k));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace

ComplexMatrix psd_power(const ComplexMatrix& A, double t) {
    require_square(A, "psd_power");
    if (t < 0.0) throw std::invalid_argument("psd_power: t must be >= 0");
    auto eig = hermitian_eig(A);  // throws on non-hermitian input
    double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    for (double e : eig.eigenvalues) {
        if (e < -1e-10 * std::max(1.0, top)) {
            throw std::invalid_argument("psd_power: matrix is not positive semidefinite");
        }
    }
    double rank_tol = 1e-12 * std::max(1.0, top);
    std::vector<double> mapped(eig.eigenvalues.size());
    for (std::size_t k = 0; k < mapped.size(); ++k) {
        double e = std::max(eig.eigenvalues[k], 0.0);
        if (t == 0.0) {
            mapped[k] = e > rank_tol ? 1.0 : 0.0;  // range projection
        } else {
            mapped[k] = std::pow(e, t);
        }
    }
    return spectral_map(eig, mapped);
}

PolarDecomposition polar_decompose(const ComplexMatrix& T) {
    require_square(T, "polar_decompose");
    auto gram = T.adjoint() * T;
    auto eig = hermitian_eig(gram);
    double top = std::max(eig.eigenvalues.back(), 0.0);
    double rank_tol = 1e-12 * std::max(1.0, std::sqrt(top));

    std::vector<double> roots(eig.eigenvalues.size());
    std::vector<double> inv(eig.eigenvalues.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        roots[k] = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
        inv[k] = roots[k] > rank_tol ? 1.0 / roots[k] : 0.0;
    }
    PolarDecomposition out;
    out.positive = spectral_map(eig, roots);
    // U = T P^+ vanishes on ker(P); for invertible T this is T P^{-1}, unitary.
    out.unitary = T * spectral_map(eig, inv);
    return out;
}

ComplexMatrix geometric_mean(const ComplexMatrix& A, const ComplexMatrix& B, double t) {
    require_square(A, "geometric_mean");
    require_square(B, "geometric_mean");
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("geometric_mean: t must be in [0,1]");
    auto eig_a = hermitian_eig(A);
    if (eig_a.eigenvalues.front() <= 1e-10) {
        throw std::invalid_argument("geometric_mean: A is not strictly positive");
    }
    std::vector<double> half(eig_a.eigenvalues.size()), half_inv(eig_a.eigenvalues.size());
    for (std::size_t k = 0; k < half.size(); ++k) {
        half[k] = std::sqrt(eig_a.eigenvalues[k]);
        half_inv[k] = 1.0 / half[k];
    }
    auto a_half = spectral_map(eig_a, half);
    auto a_half_inv = spectral_map(eig_a, half_inv);

    auto mid = a_half_inv * B * a_half_inv;
    auto eig_m = hermitian_eig(mid);
    if (eig_m.eigenvalues.front() <= 1e-10) {
        throw std::invalid_argument("geometric_mean: B is not strictly positive");
    }
    std::vector<double> powered(eig_m.eigenvalues.size());
    for (std::size_t k = 0; k < powered.size(); ++k) {
        powered[k] = std::pow(eig_m.eigenvalues[k], t);
    }
    return a_half * spectral_map(eig_m, powered) * a_half;
}

FiniteBerezinQuantities berezin_quantities_finite(const ComplexMatrix& T) {
    require_square(T, "berezin_quantities_finite");
    FiniteBerezinQuantities out;
    out.ber_set = T.diagonal_entries();
    for (const auto& d : out.ber_set) out.ber = std::max(out.ber, std::abs(d));
    for (int j = 0; j < T.cols(); ++j) {
        double col = 0.0;
        for (int i = 0; i < T.rows(); ++i) {
            double a = std::abs(T(i, j));
            out.norm_b2 = std::max(out.norm_b2, a);
            col += a * a;
        }
        out.norm_b1 = std::max(out.norm_b1, std::sqrt(col));
    }
    return out;
}

HullPolygon convex_hull(std::span<const Complex> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty input");
    constexpr double kCollinearTol = 1e-12;

    std::vector<Complex> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.size() == 1) return HullPolygon{{pts[0]}};

    auto build = [&](auto begin, auto end) {
        std::vector<Complex> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   cross(chain[chain.size() - 2], chain.back(), *it) <= kCollinearTol) {
                chain.pop_back();
            }
            chain.push_back(*it);
        }
        return chain;
    };
    auto lower = build(pts.begin(), pts.end());
    auto upper = build(pts.rbegin(), pts.rend());

    HullPolygon hull;
    hull.vertices.assign(lower.begin(), lower.end() - 1);
    hull.vertices.insert(hull.vertices.end(), upper.begin(), upper.end() - 1);
    if (hull.vertices.empty()) hull.vertices = {pts.front(), pts.back()};
    if (hull.vertices.size() == 2 && hull.vertices[0] == hull.vertices[1]) {
        hull.vertices.pop_back();
    }
    return hull;
}

HullPolygon numerical_range_boundary(const ComplexMatrix& A, int K) {
    require_square(A, "numerical_range_boundary");
    if (K < 8) throw std::invalid_argument("numerical_range_boundary: K must be >= 8");
    int n = A.rows();
    auto adj = A.adjoint();
    // A polygon vertex whose supporting-angle window falls between two sample
    // angles is still a near-top eigenvector at the adjacent samples; the
    // tie tolerance below is sized so no vertex can slip through the grid.
    double tie_tol = 4.0 * std::numbers::pi * A.frobenius_norm() / K;
    std::vector<Complex> boundary;
    boundary.reserve(static_cast<std::size_t>(K));
    for (int j = 0; j < K; ++j) {
        double theta = 2.0 * std::numbers::pi * j / K;
        Complex phase = std::polar(1.0, theta);
        ComplexMatrix H(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                H(r, c) = 0.5 * (phase * A(r, c) + std::conj(phase) * adj(r, c));
            }
        }
        auto eig = hermitian_eig(H);
        double top = eig.eigenvalues.back();
        for (int k = n - 1; k >= 0 && top - eig.eigenvalues[static_cast<std::size_t>(k)] <= tie_tol;
             --k) {
            auto x = eig.vectors.column(k);
            auto ax = A.apply(x);
            Complex point{};
            for (int i = 0; i < n; ++i) {
                point +=
                    std::conj(x[static_cast<std::size_t>(i)]) * ax[static_cast<std::size_t>(i)];
            }
            boundary.push_back(point);  // in W(A) for any unit eigenvector
        }
    }
    return convex_hull(boundary);
}

EllipseParams elliptic_range_2x2(const ComplexMatrix& A) {
    if (A.rows() != 2 || A.cols() != 2) {
        throw std::invalid_argument("elliptic_range_2x2: 2x2 matrix required");
    }
    Complex l1 = A(0, 0), l2 = A(1, 1), m = A(0, 1);
    if (std::abs(A(1, 0)) > 1e-14 * std::max(1.0, A.max_abs())) {
        // Deterministic Schur step: rotate the eigenvector nearest the (0,0)
        // entry into the first coordinate.
        Complex tr = A(0, 0) + A(1, 1);
        Complex det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
        Complex disc = std::sqrt(tr * tr - 4.0 * det);
        Complex e1 = 0.5 * (tr + disc), e2 = 0.5 * (tr - disc);
        if (std::abs(e2 - A(0, 0)) < std::abs(e1 - A(0, 0))) std::swap(e1, e2);

        Complex v0 = A(0, 1), v1 = e1 - A(0, 0);
        if (std::norm(v0) + std::norm(v1) < std::norm(e1 - A(1, 1)) + std::norm(A(1, 0))) {
            v0 = e1 - A(1, 1);
            v1 = A(1, 0);
        }
        double nv = std::sqrt(std::norm(v0) + std::norm(v1));
        v0 /= nv;
        v1 /= nv;
        // Q = [v, v_perp]; T = Q* A Q is upper triangular.
        Complex w0 = -std::conj(v1), w1 = std::conj(v0);
        auto quad = [&A](Complex a0, Complex a1, Complex b0, Complex b1) {
            return std::conj(a0) * (A(0, 0) * b0 + A(0, 1) * b1) +
                   std::conj(a1) * (A(1, 0) * b0 + A(1, 1) * b1);
        };
        l1 = quad(v0, v1, v0, v1);
        l2 = quad(w0, w1, w0, w1);
        m = quad(v0, v1, w0, w1);
    }
    EllipseParams e;
    e.focus1 = l1;
    e.focus2 = l2;
    e.minor_axis = std::abs(m);
    e.major_axis = std::sqrt(std::norm(l1 - l2) + std::norm(m));
    return e;
}

std::vector<Complex> ellipse_boundary_points(const EllipseParams& e, int count) {
    if (count < 1) throw std::invalid_argument("ellipse_boundary_points: count must be >= 1");
    Complex center = 0.5 * (e.focus1 + e.focus2);
    Complex axis = e.focus2 - e.focus1;
    Complex u = std::abs(axis) > 1e-15 ? axis / std::abs(axis) : Complex{1.0, 0.0};
    Complex v = u * Complex{0.0, 1.0};
    double semi_major = 0.5 * e.major_axis;
    double semi_minor = 0.5 * e.minor_axis;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        double t = 2.0 * std::numbers::pi * k / count;
        out.push_back(center + semi_major * std::cos(t) * u + semi_minor * std::sin(t) * v);
    }
    return out;
}

double point_to_polygon(Complex p, const HullPolygon& poly) {
    const auto& v = poly.vertices;
    if (v.empty()) throw std::invalid_argument("point_to_polygon: empty polygon");
    if (v.size() == 1) return std::abs(p - v[0]);
    double best = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < v.size(); ++i) {
        best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
    }
    return best;
}

double polygon_hausdorff(const HullPolygon& a, const HullPolygon& b, int samples) {
    double worst = 0.0;
    for (Complex p : boundary_samples(a, samples)) worst = std::max(worst, point_to_polygon(p, b));
    for (Complex p : boundary_samples(b, samples)) worst = std::max(worst, point_to_polygon(p, a));
    return worst;
}

double hull_vs_numrange_gap(const ComplexMatrix& A, int K) {
    require_square(A, "hull_vs_numrange_gap");
    auto diag = A.diagonal_entries();
    auto hull = convex_hull(diag);
    auto range = numerical_range_boundary(A, K);
    return polygon_hausdorff(hull, range, 1024);
}

}  // namespace berezin
