#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "berezin/types.hpp"

namespace berezin {

enum class SpaceKind { hardy, bergman, finite };

/// Which reproducing kernel Hilbert space an operator lives on: the Hardy
/// space H^2(D), the Bergman space A^2(D), or C^n with the standard basis
/// kernels.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::hardy;
    int dim = 0;  // finite spaces only

    static SpaceSpec hardy() { return {SpaceKind::hardy, 0}; }
    static SpaceSpec bergman() { return {SpaceKind::bergman, 0}; }
    static SpaceSpec finite(int dim);

    bool is_disc() const { return kind != SpaceKind::finite; }

    /// Weight of the monomial z^m in the inner product: 1 on Hardy,
    /// 1/(m+1) on Bergman.
    double monomial_weight(int m) const;

    /// Exponent s of the normalization factor (1-|lambda|^2)^s.
    int kernel_exponent() const;

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// Finite complex coefficient sequence; index m holds the coefficient of
/// z^m. Trailing zeros never affect equality, evaluation or inner products.
class AnalyticPolynomial {
public:
    AnalyticPolynomial() = default;
    AnalyticPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}
    AnalyticPolynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {}

    static AnalyticPolynomial monomial(int degree, Complex coeff = 1.0);

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(std::size_t m) const { return m < coeffs_.size() ? coeffs_[m] : Complex{}; }

    /// Degree of the trimmed polynomial, -1 for the zero polynomial.
    int degree() const;
    bool is_zero() const;
    bool has_real_coeffs(double tol = 0.0) const;

    Complex eval(Complex z) const;

    friend bool operator==(const AnalyticPolynomial& a, const AnalyticPolynomial& b);

private:
    std::vector<Complex> coeffs_;
};

/// A(f) = sum_i <f, g_i> h_i over a fixed space.
struct FiniteRankOperator {
    SpaceSpec space;
    std::vector<std::pair<AnalyticPolynomial, AnalyticPolynomial>> terms;  // (g, h)
};

struct BerezinValue {
    Complex lambda;
    Complex value;
};

Complex kernel_eval(const SpaceSpec& space, Complex lambda, Complex z);
double kernel_norm_sq(const SpaceSpec& space, Complex lambda);

Complex inner_product(const SpaceSpec& space, const AnalyticPolynomial& p,
                      const AnalyticPolynomial& q);

AnalyticPolynomial apply_operator(const FiniteRankOperator& op, const AnalyticPolynomial& f);

Complex berezin_transform(const FiniteRankOperator& op, Complex lambda);

/// Berezin transform of the rank-N truncation of f -> sum_{n>=1} <f,az^n> az^n
/// on the Hardy space.
Complex berezin_transform_truncated_diagonal(Complex a, int N, Complex lambda,
                                             const SpaceSpec& space);

/// Truncation of the kernel k_lambda to a polynomial of degree D.
AnalyticPolynomial truncated_kernel(const SpaceSpec& space, Complex lambda, int degree);

/// Norm of a polynomial in the given disc space.
double symbol_norm(const SpaceSpec& space, const AnalyticPolynomial& p);

}  // namespace berezin
