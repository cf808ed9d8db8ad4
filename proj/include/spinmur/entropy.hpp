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

// Relative entropy (base 2) and the error functions built from it: the sum of
// Kullback-Leibler divergences between sharp target statistics and the
// statistics of a joint measurement's marginals, plus the direction-averaged
// variant for the rotation-invariant family (evaluated by adaptive
// quadrature; the closed form lives in closed_forms.hpp).

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "spinmur/families.hpp"
#include "spinmur/quadrature.hpp"
#include "spinmur/qubit.hpp"

namespace spinmur {

/// Probabilities below this are treated as exact zeros inside KL terms.
inline constexpr double kProbFloor = 1e-15;

/// Finite probability distribution over an ordered outcome set.
struct Distribution {
    std::vector<double> probs;

    Distribution() = default;
    explicit Distribution(std::vector<double> p) : probs(std::move(p)) {
        double sum = 0.0;
        for (double &x : probs) {
            if (x < -kProbFloor) {
                throw std::invalid_argument("distribution: negative probability " +
                                            std::to_string(x));
            }
            x = std::min(std::max(x, 0.0), 1.0);
            sum += x;
        }
        if (std::abs(sum - 1.0) > kValidityTol) {
            throw std::invalid_argument("distribution: probabilities sum to " +
                                        std::to_string(sum));
        }
    }

    std::size_t size() const { return probs.size(); }
};

/// Outcome statistics of a POVM on a state, in label order.
inline Distribution outcome_distribution(const Povm &p, const BlochState &s) {
    std::vector<double> probs;
    probs.reserve(p.size());
    for (const Effect &e : p.effects) {
        probs.push_back(outcome_prob(e, s));
    }
    return Distribution{std::move(probs)};
}

/// Non-negative amount of information in bits, possibly infinite.
///
/// Infinity is an explicit flag (optimizers treat such candidates as
/// rejected); `bits` equals +inf in that case for arithmetic convenience.
struct EntropyValue {
    double bits = 0.0;
    bool infinite = false;

    static EntropyValue finite(double b) { return EntropyValue{std::max(b, 0.0), false}; }
    static EntropyValue infinity() {
        return EntropyValue{std::numeric_limits<double>::infinity(), true};
    }
};

/// Relative entropy S(p || q) = sum_x p(x) log2[p(x)/q(x)].
///
/// Terms with p(x) = 0 contribute zero (including 0 log 0/0); if p(x) > 0
/// while q(x) = 0 for some x the result is the infinite flag.
inline EntropyValue rel_entropy(const Distribution &p, const Distribution &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("rel_entropy: outcome counts differ");
    }
    double nats = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double pe = p.probs[i] < kProbFloor ? 0.0 : p.probs[i];
        double qe = q.probs[i] < kProbFloor ? 0.0 : q.probs[i];
        if (pe == 0.0) {
            continue;
        }
        if (qe == 0.0) {
            return EntropyValue::infinity();
        }
        nats += pe * std::log(pe / qe);
    }
    return EntropyValue::finite(nats / std::numbers::ln2);
}

/// State-dependent error function: sum over targets k of
/// S(target_k statistics || marginal_k statistics) at the given state.
/// Both lists must have equal length 2 or 3 and hold binary POVMs.
inline EntropyValue error_function(const std::vector<Povm> &targets,
                                   const std::vector<Povm> &approx_marginals,
                                   const BlochState &s) {
    if (targets.size() != approx_marginals.size()) {
        throw std::invalid_argument("error_function: list lengths differ");
    }
    if (targets.size() != 2 && targets.size() != 3) {
        throw std::invalid_argument("error_function: expected 2 or 3 targets");
    }
    double bits = 0.0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (targets[k].size() != 2 || approx_marginals[k].size() != 2) {
            throw std::invalid_argument("error_function: all POVMs must be binary");
        }
        EntropyValue term =
            rel_entropy(outcome_distribution(targets[k], s),
                        outcome_distribution(approx_marginals[k], s));
        if (term.infinite) {
            return EntropyValue::infinity();
        }
        bits += term.bits;
    }
    return EntropyValue::finite(bits);
}

/// Residual of the product identity
///   S(p1 || q1) + S(p2 || q2) = S(p1 x p2 || q1 x q2)
/// for two targets at a state. Zero when both sides are infinite; infinite on
/// a finite/infinite mismatch.
inline double tensor_identity_check(const std::vector<Povm> &targets,
                                    const std::vector<Povm> &approx_marginals,
                                    const BlochState &s) {
    if (targets.size() != 2 || approx_marginals.size() != 2) {
        throw std::invalid_argument("tensor_identity_check: expected exactly 2 targets");
    }
    EntropyValue lhs = error_function(targets, approx_marginals, s);

    Distribution p1 = outcome_distribution(targets[0], s);
    Distribution p2 = outcome_distribution(targets[1], s);
    Distribution q1 = outcome_distribution(approx_marginals[0], s);
    Distribution q2 = outcome_distribution(approx_marginals[1], s);
    std::vector<double> pp, qq;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            pp.push_back(p1.probs[i] * p2.probs[j]);
            qq.push_back(q1.probs[i] * q2.probs[j]);
        }
    }
    EntropyValue rhs = rel_entropy(Distribution{std::move(pp)}, Distribution{std::move(qq)});

    if (lhs.infinite && rhs.infinite) {
        return 0.0;
    }
    if (lhs.infinite != rhs.infinite) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(lhs.bits - rhs.bits);
}

/// Direction-averaged error of the rotation-invariant family at a state:
/// the mean over uniformly distributed directions a of
/// S(sharp statistics along a || noisy marginal statistics along a).
///
/// By rotational symmetry the average reduces to a single integral over
/// z = a.r in [-r, r] (align the polar axis with r; the azimuth integrates
/// out), which is evaluated adaptively to absolute accuracy tol.
inline EntropyValue mean_error_quadrature(const FamilyParam &eps, const BlochState &s,
                                          double tol) {
    if (eps.kind != FamilyKind::SO3) {
        throw std::invalid_argument("mean_error_quadrature: parameter kind mismatch");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("mean_error_quadrature: tolerance must be positive");
    }
    const double r = s.r.norm();
    if (r < 1e-12) {
        return EntropyValue::finite(0.0);
    }
    const double lambda = (1.0 - 2.0 * eps.value) / 2.0;
    // Integrand of the z-integral in nats: both +/- outcome terms of the KL
    // fold into one (1+z) log[(1+z)/(1+lambda z)] by the z -> -z symmetry.
    auto f = [lambda](double z) {
        double p = 1.0 + z;
        if (p <= 1e-300) {
            return 0.0;
        }
        return p * (std::log(p) - std::log(1.0 + lambda * z));
    };
    // Half the requested accuracy goes to the quadrature; undo the final
    // log2(e)/(2r) scaling when budgeting.
    double quad_tol = 0.5 * tol * (2.0 * r) * std::numbers::ln2;
    QuadratureResult q = integrate_adaptive(f, -r, r, quad_tol);
    return EntropyValue::finite(q.value * std::numbers::log2e / (2.0 * r));
}

}  // namespace spinmur
