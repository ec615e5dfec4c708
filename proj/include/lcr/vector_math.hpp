// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace lcr {

using Embedding = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline double l2_norm(std::span<const double> a) noexcept {
    return std::sqrt(dot(a, a));
}

/// Cosine similarity; 0 when either side is the zero vector.
inline double cosine(std::span<const double> a, std::span<const double> b) noexcept {
    const double na = l2_norm(a);
    const double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot(a, b) / (na * nb);
}

inline bool all_finite(std::span<const double> a) noexcept {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace lcr
