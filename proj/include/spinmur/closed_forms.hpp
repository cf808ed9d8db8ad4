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

// Closed-form evaluations of the uncertainty bounds.
//
// For a state with Bloch components r_k and marginals that shrink each target
// by a factor c, the error function is a sum of binary KL terms s(r_k, c)
// with an explicit formula; the covariant-family optima and the named
// constants of the library all derive from it. The direction-averaged error
// of the rotation-invariant family also integrates in closed form; it is
// implemented in a reformulation that stays stable at the two removable
// singularities (fully depolarizing noise and the unpolarized state).

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "spinmur/entropy.hpp"

namespace spinmur {

/// Which closed form produced a value.
enum class FormulaId {
    GeneralShrink,   // sum of binary KL terms s(r_k, c)
    PairBound,       // two orthogonal targets, optimal c = 1/sqrt2
    TripleBound,     // three orthogonal targets, optimal c = 1/sqrt3
    MeanError,       // direction-averaged error of the rotation-invariant family
    MeanErrorSharp,  // its epsilon = 0 specialization
    NamedConstant,
};

inline const char *formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::GeneralShrink: return "general_shrink";
        case FormulaId::PairBound: return "pair_bound";
        case FormulaId::TripleBound: return "triple_bound";
        case FormulaId::MeanError: return "mean_error";
        case FormulaId::MeanErrorSharp: return "mean_error_sharp";
        default: return "named_constant";
    }
}

/// A non-negative closed-form bound tagged with its formula.
struct BoundValue {
    EntropyValue value;
    FormulaId formula = FormulaId::GeneralShrink;

    double bits() const { return value.bits; }
    bool infinite() const { return value.infinite; }
};

namespace detail {

/// Binary KL between the +/-1 statistics of a sharp component r and its
/// c-shrunk version: s(r, c) = sum_x (1+xr)/2 log2[(1+xr)/(1+xcr)].
/// Even in r; infinite exactly when c = -1 and |r| = 1.
inline EntropyValue shrink_term(double r, double c) {
    double nats = 0.0;
    for (int x : {+1, -1}) {
        double p = (1.0 + x * r) / 2.0;
        double q = (1.0 + x * c * r) / 2.0;
        if (p < kProbFloor) {
            continue;
        }
        if (q < kProbFloor) {
            return EntropyValue::infinity();
        }
        nats += p * std::log(p / q);
    }
    return EntropyValue::finite(nats / std::numbers::ln2);
}

/// g(u) = (atanh(u)/u - 1)/u^2 = 1/3 + u^2/5 + u^4/7 + ...; the library only
/// needs |u| <= 1/2, where the series converges fast and uniformly.
inline double atanh_remainder(double u) {
    const double u2 = u * u;
    double term = 1.0 / 3.0;
    double sum = term;
    double pow = 1.0;
    for (int k = 2; k <= 40; ++k) {
        pow *= u2;
        term = pow / (2.0 * k + 1.0);
        sum += term;
        if (term < 1e-19) {
            break;
        }
    }
    return sum;
}

/// Small-radius expansion of the direction-averaged error, in bits.
///
/// Expanding the integrand (1+z)[ln(1+z) - ln(1+lambda z)] of the defining
/// z-integral in powers of z and integrating term by term over [-r, r] gives
///   mean error = log2(e) * sum_{k>=1} r^{2k}/(2k+1) *
///                [ (1-lambda^{2k-1})/(2k-1) - (1-lambda^{2k})/(2k) ],
/// whose leading term is log2(e)(1-lambda)^2 r^2/6. The antiderivative form
/// loses all significant digits below r ~ 1e-3 (it subtracts two O(1)
/// quantities agreeing to O(r^2)); this series is exact to round-off for
/// r <= 0.1 and |lambda| <= 1/2.
inline double mean_error_series(double r, double lambda) {
    const double r2 = r * r;
    double lam_odd = lambda;  // lambda^{2k-1}
    double rpow = r2;         // r^{2k}
    double sum = 0.0;
    for (int k = 1; k <= 60; ++k) {
        double odd = (1.0 - lam_odd) / (2.0 * k - 1.0);
        double even = (1.0 - lam_odd * lambda) / (2.0 * k);
        double term = rpow * (odd - even) / (2.0 * k + 1.0);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) {
            break;
        }
        lam_odd *= lambda * lambda;
        rpow *= r2;
    }
    return sum * std::numbers::log2e;
}

}  // namespace detail

/// Error function of a state with sharp components r_k approximated by
/// marginals shrunk with factor c: sum_k s(r_k, c). Decreasing in c, so on a
/// symmetric interval [-c_max, c_max] it is minimized at c = +c_max.
inline BoundValue sd_general_c(const std::vector<double> &components, double c) {
    if (components.size() != 2 && components.size() != 3) {
        throw std::invalid_argument("sd_general_c: expected 2 or 3 components");
    }
    if (std::abs(c) > 1.0 + 1e-15) {
        throw std::invalid_argument("sd_general_c: |c| exceeds 1");
    }
    double bits = 0.0;
    for (double r : components) {
        if (std::abs(r) > 1.0 + 1e-12) {
            throw std::invalid_argument("sd_general_c: component outside [-1, 1]");
        }
        EntropyValue term = detail::shrink_term(r, c);
        if (term.infinite) {
            return BoundValue{EntropyValue::infinity(), FormulaId::GeneralShrink};
        }
        bits += term.bits;
    }
    return BoundValue{EntropyValue::finite(bits), FormulaId::GeneralShrink};
}

/// Two-orthogonal-target lower bound: the error function of any admissible
/// joint measurement of two orthogonal spin directions with in-plane
/// components (r1, r2) is at least sd_general_c((r1, r2), 1/sqrt2).
inline BoundValue sd2_bound(double r1, double r2) {
    if (r1 * r1 + r2 * r2 > 1.0 + 1e-12) {
        throw std::invalid_argument("sd2_bound: components exceed the Bloch ball");
    }
    BoundValue b = sd_general_c({r1, r2}, 1.0 / std::sqrt(2.0));
    b.formula = FormulaId::PairBound;
    return b;
}

/// Three-orthogonal-target lower bound at a state: sd_general_c(r, 1/sqrt3).
inline BoundValue sd3_bound(const BlochState &s) {
    BoundValue b = sd_general_c({s.r.x, s.r.y, s.r.z}, 1.0 / std::sqrt(3.0));
    b.formula = FormulaId::TripleBound;
    return b;
}

/// Direction-averaged error of the rotation-invariant family, in closed form.
///
/// With lambda = (1 - 2 eps)/2 the z-integral of mean_error_quadrature has
/// the antiderivative-based value
///     (1+r)^2/(4r) log2[2(1+r)/(2+2 lambda r)]
///   - (1-r)^2/(4r) log2[2(1-r)/(2-2 lambda r)]
///   + log2(e) (1-lambda) [ (1-lambda) lambda r^2 g(lambda r)/2 - 1/2 ],
/// where g(u) = (atanh(u)/u - 1)/u^2. Grouping the lambda-singular pieces
/// into g keeps the expression exact and stable for every eps in [0, 1],
/// including the fully depolarizing point eps = 1/2 (lambda = 0). Below
/// r = 0.09 the antiderivative form cancels catastrophically and the
/// even power series of mean_error_series takes over.
inline BoundValue mean_error_closed(double r, double epsilon) {
    if (!(r >= 0.0 && r <= 1.0 + 1e-12)) {
        throw std::invalid_argument("mean_error_closed: r outside [0, 1]");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0 + 1e-12)) {
        throw std::invalid_argument("mean_error_closed: epsilon outside [0, 1]");
    }
    r = std::min(r, 1.0);
    const double lambda = (1.0 - 2.0 * epsilon) / 2.0;
    const double log2e = std::numbers::log2e;
    if (r < 0.09) {
        return BoundValue{EntropyValue::finite(detail::mean_error_series(r, lambda)),
                          FormulaId::MeanError};
    }
    double term_plus = (1.0 + r) * (1.0 + r) / (4.0 * r) *
                       std::log2(2.0 * (1.0 + r) / (2.0 + 2.0 * lambda * r));
    double term_minus = 0.0;
    if (r < 1.0) {  // the (1-r)^2 log(1-r) piece vanishes at r = 1
        term_minus = (1.0 - r) * (1.0 - r) / (4.0 * r) *
                     std::log2(2.0 * (1.0 - r) / (2.0 - 2.0 * lambda * r));
    }
    double g = detail::atanh_remainder(lambda * r);
    double tail = log2e * (1.0 - lambda) *
                  ((1.0 - lambda) * lambda * r * r * g / 2.0 - 0.5);
    return BoundValue{EntropyValue::finite(term_plus - term_minus + tail),
                      FormulaId::MeanError};
}

/// Worst-case mean-error bound for the sharp rotation-invariant measurement
/// (eps = 0), written directly from its own closed form:
///   (1+r)^2/(4r) log2[2(1+r)/(2+r)] - (1-r)^2/(4r) log2[2(1-r)/(2-r)]
///   + (log2 e)/2 (atanh(r/2)/r - 1).
/// Agrees with mean_error_closed(r, 0) to float accuracy.
inline BoundValue sd_inf_bound(double r) {
    if (!(r >= 0.0 && r <= 1.0 + 1e-12)) {
        throw std::invalid_argument("sd_inf_bound: r outside [0, 1]");
    }
    r = std::min(r, 1.0);
    const double log2e = std::numbers::log2e;
    if (r < 0.09) {
        return BoundValue{EntropyValue::finite(detail::mean_error_series(r, 0.5)),
                          FormulaId::MeanErrorSharp};
    }
    double term_plus = (1.0 + r) * (1.0 + r) / (4.0 * r) *
                       std::log2(2.0 * (1.0 + r) / (2.0 + r));
    double term_minus = 0.0;
    if (r < 1.0) {
        term_minus = (1.0 - r) * (1.0 - r) / (4.0 * r) *
                     std::log2(2.0 * (1.0 - r) / (2.0 - r));
    }
    double tail = 0.5 * log2e * (std::atanh(r / 2.0) / r - 1.0);
    return BoundValue{EntropyValue::finite(term_plus - term_minus + tail),
                      FormulaId::MeanErrorSharp};
}

/// The library's named constants, all computed from their formulas at call
/// time (decimal reference values appear only in tests).
struct Constants {
    double c_orth2;       // log2[2(2-sqrt2)]: worst-case bound, two orthogonal targets
    double c_orth3;       // log2(3-sqrt3): worst-case bound, three orthogonal targets
    double c_inf;         // worst-case mean error, rotation-invariant family
    double mean_c_orth2;  // direction-averaged variant: c_orth2 / 2
    double mean_c_orth3;  // direction-averaged variant: c_orth3 / 3
    double mean_c_inf;    // equals c_inf (the mean is the quantity itself)
};

inline Constants constants() {
    Constants k{};
    k.c_orth2 = std::log2(2.0 * (2.0 - std::sqrt(2.0)));
    k.c_orth3 = std::log2(3.0 - std::sqrt(3.0));
    k.c_inf = 0.75 * std::log2(4.0 / 3.0) - (std::numbers::log2e - 1.0) / 2.0;
    k.mean_c_orth2 = k.c_orth2 / 2.0;
    k.mean_c_orth3 = k.c_orth3 / 3.0;
    k.mean_c_inf = k.c_inf;
    return k;
}

}  // namespace spinmur
