// Copyright 2026 The spinmur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only oracles that deliberately avoid the library's Pauli-coordinate
// shortcuts: explicit complex 2x2 matrices for probabilities and eigenvalues,
// and Gauss-Legendre nodes for independent sphere integrals.

#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "spinmur/qubit.hpp"

namespace spinmur::testing {

using complexd = std::complex<double>;

/// Row-major complex 2x2 matrix: {a00, a01, a10, a11}.
struct Mat2 {
    std::array<complexd, 4> a;
};

/// tI + v.sigma as an explicit matrix.
inline Mat2 effect_matrix(const Effect &e) {
    const complexd i{0.0, 1.0};
    return Mat2{{complexd{e.t + e.v.z}, e.v.x - i * e.v.y, e.v.x + i * e.v.y,
                 complexd{e.t - e.v.z}}};
}

/// (I + r.sigma)/2 as an explicit matrix.
inline Mat2 density_matrix(const BlochState &s) {
    Mat2 m = effect_matrix(Effect{1.0, s.r});
    for (complexd &c : m.a) {
        c *= 0.5;
    }
    return m;
}

inline Mat2 mul(const Mat2 &x, const Mat2 &y) {
    return Mat2{{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
                 x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
}

inline complexd tr(const Mat2 &m) { return m.a[0] + m.a[3]; }

/// Born probability tr(E rho) computed entirely in matrix form.
inline double trace_prob(const Effect &e, const BlochState &s) {
    return tr(mul(effect_matrix(e), density_matrix(s))).real();
}

/// Eigenvalues (min, max) of a Hermitian 2x2 matrix.
inline std::pair<double, double> hermitian_eigs(const Mat2 &m) {
    double mean = tr(m).real() / 2.0;
    double det = (m.a[0] * m.a[3] - m.a[1] * m.a[2]).real();
    double disc = std::sqrt(std::max(0.0, mean * mean - det));
    return {mean - disc, mean + disc};
}

/// n-point Gauss-Legendre rule on [-1, 1]: pairs (node, weight).
inline std::vector<std::array<double, 2>> gauss_legendre(int n) {
    std::vector<std::array<double, 2>> rule(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = x, p0 = 1.0, dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) {
                break;
            }
        }
        rule[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return rule;
}

}  // namespace spinmur::testing
