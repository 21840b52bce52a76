#pragma once

#include <complex>

namespace berezin {

using Complex = std::complex<double>;

// Points with |lambda| >= 1 - kDiscBoundaryMargin are rejected by every
// disc-space operation; the normalization (1-|lambda|^2)^s amplifies
// cancellation too much closer to the boundary.
inline constexpr double kDiscBoundaryMargin = 1e-12;

inline bool inside_disc(Complex lambda) {
    return std::abs(lambda) < 1.0 - kDiscBoundaryMargin;
}

}  // namespace berezin
