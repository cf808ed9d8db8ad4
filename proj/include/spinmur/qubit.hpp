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

// Qubit states, effects, and POVMs in real Pauli coordinates.
//
// A qubit density operator is (1/2)(I + r.sigma) and a two-outcome effect is
// t I + v.sigma, so the whole library works with the real pair (t, v) and the
// real 3-vector r. Positivity, normalization, and outcome probabilities are
// then closed-form scalar checks; no complex matrices are stored (a complex
// 2x2 oracle exists only in the test suite).

#include <cstddef>
#include <string>
#include <vector>

#include "spinmur/geometry.hpp"

namespace spinmur {

/// Absolute tolerance for state/effect/POVM validity checks.
inline constexpr double kValidityTol = 1e-12;

/// Qubit state as a Bloch vector r with |r| <= 1.
struct BlochState {
    Vec3 r;

    BlochState() = default;
    explicit BlochState(const Vec3 &r_) : r(r_) {
        if (r.norm() > 1.0 + kValidityTol) {
            throw std::invalid_argument("invalid state: Bloch vector length " +
                                        std::to_string(r.norm()) + " exceeds 1");
        }
    }
    BlochState(double x, double y, double z) : BlochState(Vec3{x, y, z}) {}
};

/// Unit vector labelling a sharp spin direction.
struct Direction {
    Vec3 a;

    explicit Direction(const Vec3 &a_) : a(a_) {
        if (std::abs(a.norm() - 1.0) > kValidityTol) {
            throw std::invalid_argument("invalid direction: vector length " +
                                        std::to_string(a.norm()) + " is not 1");
        }
    }
    Direction(double x, double y, double z) : Direction(Vec3{x, y, z}) {}
};

/// Effect t I + v.sigma with eigenvalues t +/- |v|.
///
/// Validity (0 <= effect <= I) means t >= |v| and t + |v| <= 1. Construction
/// does not enforce validity — optimization code probes the boundary — use
/// is_valid() / povm_validate() to check.
struct Effect {
    double t = 0.0;
    Vec3 v;

    Effect() = default;
    Effect(double t_, const Vec3 &v_) : t(t_), v(v_) {}

    double eig_min() const { return t - v.norm(); }
    double eig_max() const { return t + v.norm(); }
    bool is_valid(double tol = kValidityTol) const {
        return eig_min() >= -tol && eig_max() <= 1.0 + tol;
    }
};

/// Outcome label: a tuple over {-1, +1}, one entry per outcome coordinate.
using OutcomeLabel = std::vector<int>;

/// Finite POVM: ordered outcome labels with one effect per outcome.
///
/// Labels are explicit tuples so that marginalization selects a coordinate,
/// never a position convention.
struct Povm {
    std::vector<OutcomeLabel> labels;
    std::vector<Effect> effects;

    std::size_t size() const { return effects.size(); }
    /// Number of outcome coordinates (all labels must agree).
    std::size_t arity() const { return labels.empty() ? 0 : labels.front().size(); }
};

/// Probability of an effect on a state: Tr[(tI + v.sigma) rho] = t + v.r.
inline double outcome_prob(const Effect &e, const BlochState &s) { return e.t + e.v.dot(s.r); }

/// Sharp two-outcome spin observable along `a`: effects (1/2)(I + x a.sigma).
inline Povm spin_observable(const Direction &a) {
    Povm p;
    p.labels = {{+1}, {-1}};
    p.effects = {Effect{0.5, 0.5 * a.a}, Effect{0.5, -0.5 * a.a}};
    return p;
}

/// Result of povm_validate: first violated constraint (if any) with its
/// signed residual (negative means violated by |residual|).
struct ValidationReport {
    bool ok = true;
    std::string constraint;   // "positivity", "boundedness", "completeness", "labels"
    double residual = 0.0;    // signed; slack for the tightest check when ok
    std::size_t outcome = 0;  // offending outcome index where applicable

    explicit operator bool() const { return ok; }
};

/// Check effect validity and sum-to-identity for a POVM.
///
/// Reports the first violated constraint with a signed residual; when every
/// constraint holds, `residual` carries the smallest slack seen.
inline ValidationReport povm_validate(const Povm &p, double tol = kValidityTol) {
    ValidationReport rep;
    if (p.effects.size() != p.labels.size()) {
        rep.ok = false;
        rep.constraint = "labels";
        rep.residual = static_cast<double>(p.effects.size()) - static_cast<double>(p.labels.size());
        return rep;
    }
    double slack = 1.0;
    for (std::size_t i = 0; i < p.effects.size(); ++i) {
        if (p.labels[i].size() != p.arity()) {
            rep.ok = false;
            rep.constraint = "labels";
            rep.outcome = i;
            return rep;
        }
        double lo = p.effects[i].eig_min();
        if (lo < -tol) {
            rep.ok = false;
            rep.constraint = "positivity";
            rep.residual = lo;
            rep.outcome = i;
            return rep;
        }
        double hi = 1.0 - p.effects[i].eig_max();
        if (hi < -tol) {
            rep.ok = false;
            rep.constraint = "boundedness";
            rep.residual = hi;
            rep.outcome = i;
            return rep;
        }
        slack = std::min(slack, std::min(lo, hi));
    }
    double ts = 0.0;
    Vec3 vs;
    for (const Effect &e : p.effects) {
        ts += e.t;
        vs += e.v;
    }
    double closure = std::max(std::abs(ts - 1.0), vs.norm());
    if (closure > tol) {
        rep.ok = false;
        rep.constraint = "completeness";
        rep.residual = -closure;
        return rep;
    }
    rep.residual = std::min(slack, tol - closure);
    return rep;
}

/// Marginal of a product-outcome POVM along outcome coordinate `axis`
/// (0-based): the binary POVM whose effect at x is the sum of all effects
/// whose label has that coordinate equal to x.
inline Povm marginal(const Povm &p, std::size_t axis) {
    if (axis >= p.arity()) {
        throw std::invalid_argument("marginal: axis " + std::to_string(axis) +
                                    " out of range for arity " + std::to_string(p.arity()));
    }
    Povm out;
    out.labels = {{+1}, {-1}};
    out.effects = {Effect{}, Effect{}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        int x = p.labels[i][axis];
        if (x != +1 && x != -1) {
            throw std::invalid_argument("marginal: labels must be tuples over {-1,+1}");
        }
        Effect &acc = out.effects[x == +1 ? 0 : 1];
        acc.t += p.effects[i].t;
        acc.v += p.effects[i].v;
    }
    return out;
}

/// Conjugation by a unitary, expressed as a Bloch rotation: (t, v) -> (t, R v).
inline Effect rotate_effect(const Effect &e, const Mat3 &rot) {
    if (!is_rotation(rot)) {
        throw std::invalid_argument("rotate_effect: matrix is not a rotation (tol 1e-10)");
    }
    return Effect{e.t, rot.apply(e.v)};
}

}  // namespace spinmur
