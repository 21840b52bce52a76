#pragma once

#include <span>
#include <vector>

#include "berezin/types.hpp"

namespace berezin {

/// Dense row-major complex matrix for desk-scale (n <= 64) spectral work.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(std::span<const Complex> d);
    static ComplexMatrix diagonal(std::initializer_list<Complex> d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    Complex operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    std::vector<Complex> diagonal_entries() const;
    std::vector<Complex> column(int j) const;
    std::vector<Complex> apply(std::span<const Complex> x) const;

    double max_abs() const;
    double frobenius_norm() const;
    bool is_hermitian(double tol = 1e-13) const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix vectors;            // columns; H = V diag(eig) V*
};

/// Cyclic complex Jacobi diagonalization, deterministic row-major rotation
/// order, for hermitian matrices of dimension <= 64.
HermitianEig hermitian_eig(const ComplexMatrix& H);

/// Spectral power of a PSD matrix; negative roundoff eigenvalues are clamped
/// to zero. t = 0 yields the orthogonal projection onto range(A).
ComplexMatrix psd_power(const ComplexMatrix& A, double t);

struct PolarDecomposition {
    ComplexMatrix unitary;   // partial isometry U with T = U P
    ComplexMatrix positive;  // P = (T*T)^{1/2}
};

PolarDecomposition polar_decompose(const ComplexMatrix& T);

/// Weighted geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2} of strictly
/// positive matrices, t in [0,1].
ComplexMatrix geometric_mean(const ComplexMatrix& A, const ComplexMatrix& B, double t);

struct FiniteBerezinQuantities {
    double ber = 0.0;      // max |T_ii|
    double norm_b1 = 0.0;  // max column euclidean norm
    double norm_b2 = 0.0;  // max |T_ij|
    std::vector<Complex> ber_set;  // diagonal entries
};

FiniteBerezinQuantities berezin_quantities_finite(const ComplexMatrix& T);

/// Counterclockwise convex polygon; degenerate cases keep 1 or 2 vertices.
struct HullPolygon {
    std::vector<Complex> vertices;
};

HullPolygon convex_hull(std::span<const Complex> points);

/// Supporting-hyperplane inner approximation of the numerical range W(A)
/// from K boundary angles.
HullPolygon numerical_range_boundary(const ComplexMatrix& A, int K);

struct EllipseParams {
    Complex focus1, focus2;
    double minor_axis = 0.0;  // full axis lengths
    double major_axis = 0.0;
};

/// Elliptic range theorem instance for a 2x2 matrix; non-triangular input is
/// reduced by a deterministic Schur step first.
EllipseParams elliptic_range_2x2(const ComplexMatrix& A);

std::vector<Complex> ellipse_boundary_points(const EllipseParams& e, int count);

double point_to_polygon(Complex p, const HullPolygon& poly);
double polygon_hausdorff(const HullPolygon& a, const HullPolygon& b, int samples = 1024);

/// Symmetric Hausdorff distance between conv(diag(A)) and the numerical
/// range boundary polygon.
double hull_vs_numrange_gap(const ComplexMatrix& A, int K);

}  // namespace berezin
