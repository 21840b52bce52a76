#include "berezin/rkhs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace berezin {

namespace {

void require_inside_disc(Complex lambda, const char* what) {
    if (!inside_disc(lambda)) {
        throw std::domain_error(std::string(what) + ": point lies on or outside the unit disc");
    }
}

void require_disc_space(const SpaceSpec& space, const char* what) {
    if (!space.is_disc()) {
        throw std::invalid_argument(std::string(what) + ": finite spaces are not supported here");
    }
}

void validate(const FiniteRankOperator& op) {
    if (op.terms.empty()) {
        throw std::invalid_argument("FiniteRankOperator: term list must be nonempty");
    }
}

}  // namespace

SpaceSpec SpaceSpec::finite(int dim) {
    if (dim < 1) throw std::invalid_argument("SpaceSpec::finite: dim must be >= 1");
    return {SpaceKind::finite, dim};
}

double SpaceSpec::monomial_weight(int m) const {
    switch (kind) {
        case SpaceKind::hardy: return 1.0;
        case SpaceKind::bergman: return 1.0 / (m + 1.0);
        case SpaceKind::finite: break;
    }
    throw std::invalid_argument("monomial_weight: finite spaces have no monomial basis");
}

int SpaceSpec::kernel_exponent() const {
    switch (kind) {
        case SpaceKind::hardy: return 1;
        case SpaceKind::bergman: return 2;
        case SpaceKind::finite: break;
    }
    throw std::invalid_argument("kernel_exponent: finite spaces have no disc kernel");
}

AnalyticPolynomial AnalyticPolynomial::monomial(int degree, Complex coeff) {
    if (degree < 0) throw std::invalid_argument("monomial: degree must be >= 0");
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coeff;
    return AnalyticPolynomial(std::move(c));
}

int AnalyticPolynomial::degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] != Complex{}) return static_cast<int>(i);
    }
    return -1;
}

bool AnalyticPolynomial::is_zero() const { return degree() < 0; }

bool AnalyticPolynomial::has_real_coeffs(double tol) const {
    for (const auto& c : coeffs_) {
        if (std::abs(c.imag()) > tol) return false;
    }
    return true;
}

Complex AnalyticPolynomial::eval(Complex z) const {
    Complex acc{};
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * z + coeffs_[i];
    }
    return acc;
}

bool operator==(const AnalyticPolynomial& a, const AnalyticPolynomial& b) {
    std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeff(i) != b.coeff(i)) return false;
    }
    return true;
}

Complex kernel_eval(const SpaceSpec& space, Complex lambda, Complex z) {
    require_disc_space(space, "kernel_eval");
    require_inside_disc(lambda, "kernel_eval");
    require_inside_disc(z, "kernel_eval");
    Complex base = 1.0 / (1.0 - std::conj(lambda) * z);
    return space.kind == SpaceKind::hardy ? base : base * base;
}

double kernel_norm_sq(const SpaceSpec& space, Complex lambda) {
    if (space.kind == SpaceKind::finite) return 1.0;  // basis kernels are unit vectors
    require_inside_disc(lambda, "kernel_norm_sq");
    double base = 1.0 / (1.0 - std::norm(lambda));
    return space.kind == SpaceKind::hardy ? base : base * base;
}

Complex inner_product(const SpaceSpec& space, const AnalyticPolynomial& p,
                      const AnalyticPolynomial& q) {
    require_disc_space(space, "inner_product");
    std::size_t n = std::min(p.coeffs().size(), q.coeffs().size());
    Complex acc{};
    for (std::size_t m = 0; m < n; ++m) {
        acc += p.coeffs()[m] * std::conj(q.coeffs()[m]) * space.monomial_weight(static_cast<int>(m));
    }
    return acc;
}

AnalyticPolynomial apply_operator(const FiniteRankOperator& op, const AnalyticPolynomial& f) {
    validate(op);
    require_disc_space(op.space, "apply_operator");
    std::vector<Complex> out;
    for (const auto& [g, h] : op.terms) {
        Complex w = inner_product(op.space, f, g);
        if (h.coeffs().size() > out.size()) out.resize(h.coeffs().size());
        for (std::size_t m = 0; m < h.coeffs().size(); ++m) {
            out[m] += w * h.coeffs()[m];
        }
    }
    return AnalyticPolynomial(std::move(out));
}

Complex berezin_transform(const FiniteRankOperator& op, Complex lambda) {
    validate(op);
    require_disc_space(op.space, "berezin_transform");
    require_inside_disc(lambda, "berezin_transform");
    Complex acc{};
    for (const auto& [g, h] : op.terms) {
        acc += std::conj(g.eval(lambda)) * h.eval(lambda);
    }
    double factor = 1.0 - std::norm(lambda);
    if (op.space.kind == SpaceKind::bergman) factor *= factor;
    return factor * acc;
}

Complex berezin_transform_truncated_diagonal(Complex a, int N, Complex lambda,
                                             const SpaceSpec& space) {
    if (space.kind != SpaceKind::hardy) {
        throw std::invalid_argument("berezin_transform_truncated_diagonal: hardy space only");
    }
    if (N < 1) throw std::invalid_argument("berezin_transform_truncated_diagonal: N must be >= 1");
    require_inside_disc(lambda, "berezin_transform_truncated_diagonal");
    double r2 = std::norm(lambda);
    double sum = 0.0;
    double pw = 1.0;
    for (int n = 1; n <= N; ++n) {
        pw *= r2;
        sum += pw;
    }
    return std::norm(a) * (1.0 - r2) * sum;
}

AnalyticPolynomial truncated_kernel(const SpaceSpec& space, Complex lambda, int degree) {
    require_disc_space(space, "truncated_kernel");
    require_inside_disc(lambda, "truncated_kernel");
    if (degree < 0) throw std::invalid_argument("truncated_kernel: degree must be >= 0");
    // k_lambda(z) = sum_m conj(lambda)^m z^m / w_m, so that <p, k_lambda> = p(lambda).
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    Complex pw = 1.0;
    for (int m = 0; m <= degree; ++m) {
        c[static_cast<std::size_t>(m)] = pw / space.monomial_weight(m);
        pw *= std::conj(lambda);
    }
    return AnalyticPolynomial(std::move(c));
}

double symbol_norm(const SpaceSpec& space, const AnalyticPolynomial& p) {
    require_disc_space(space, "symbol_norm");
    double acc = 0.0;
    for (std::size_t m = 0; m < p.coeffs().size(); ++m) {
        acc += std::norm(p.coeffs()[m]) * space.monomial_weight(static_cast<int>(m));
    }
    return std::sqrt(acc);
}

}  // namespace berezin
