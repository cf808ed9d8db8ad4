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

// Symmetry-covariant measurement families.
//
// Each family is a one-parameter set of POVMs that transforms consistently
// under a rotation group acting jointly on outcomes and on Bloch space:
//   - dihedral-4 bi-observables on {-1,+1}^2 (noise parameter c, |c| <= 1/sqrt2),
//   - octahedral tri-observables on {-1,+1}^3 (|c| <= 1/sqrt3),
//   - dihedral-2 bi-observables interpolating between correlated and
//     anticorrelated marginals (gamma in [-1,1]),
//   - the rotation-invariant continuous family with flip noise epsilon in [0,1],
//     exposed through its binary marginals and its outcome density.
// Families enter through these closed-form parametrizations only.

#include <cmath>
#include <string>

#include "spinmur/qubit.hpp"

namespace spinmur {

/// Which covariant family a scalar parameter belongs to.
enum class FamilyKind { D4, O, D2, SO3 };

inline const char *family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::D4: return "d4";
        case FamilyKind::O: return "o";
        case FamilyKind::D2: return "d2";
        default: return "so3";
    }
}

/// Admissible closed parameter interval for a family kind.
inline std::pair<double, double> family_interval(FamilyKind k) {
    switch (k) {
        case FamilyKind::D4: return {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
        case FamilyKind::O: return {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
        case FamilyKind::D2: return {-1.0, 1.0};
        default: return {0.0, 1.0};
    }
}

/// Scalar family parameter carrying its kind and interval check.
struct FamilyParam {
    double value = 0.0;
    FamilyKind kind = FamilyKind::D4;

    FamilyParam(double value_, FamilyKind kind_) : value(value_), kind(kind_) {
        auto [lo, hi] = family_interval(kind);
        // One ulp of headroom so that e.g. 1/sqrt(2) round-trips through text.
        double slack = 1e-15;
        if (value < lo - slack || value > hi + slack) {
            throw std::invalid_argument(std::string("family parameter ") + std::to_string(value) +
                                        " outside [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "] for family " +
                                        family_kind_name(kind));
        }
    }
};

/// Dihedral-4 covariant bi-observable: effects (1/4)(I + c(x sigma1 + y sigma2))
/// on outcomes (x, y) in {-1,+1}^2.
inline Povm d4_family(const FamilyParam &c) {
    if (c.kind != FamilyKind::D4) {
        throw std::invalid_argument("d4_family: parameter kind mismatch");
    }
    Povm p;
    for (int x : {+1, -1}) {
        for (int y : {+1, -1}) {
            p.labels.push_back({x, y});
            p.effects.push_back(Effect{0.25, {c.value * x / 4.0, c.value * y / 4.0, 0.0}});
        }
    }
    return p;
}

/// Octahedrally covariant tri-observable: effects
/// (1/8)(I + c(x sigma1 + y sigma2 + z sigma3)) on (x, y, z) in {-1,+1}^3.
inline Povm o_family(const FamilyParam &c) {
    if (c.kind != FamilyKind::O) {
        throw std::invalid_argument("o_family: parameter kind mismatch");
    }
    Povm p;
    for (int x : {+1, -1}) {
        for (int y : {+1, -1}) {
            for (int z : {+1, -1}) {
                p.labels.push_back({x, y, z});
                p.effects.push_back(Effect{
                    0.125, {c.value * x / 8.0, c.value * y / 8.0, c.value * z / 8.0}});
            }
        }
    }
    return p;
}

/// Dihedral-2 covariant bi-observable: effects
///   (1/4)[(1 + gamma x y) I + ((x + gamma y) sigma1 + (y + gamma x) sigma2)/sqrt2].
/// Every effect is rank one (t = |v|); at |gamma| = 1 the anti-diagonal
/// outcomes become null effects, which are retained (probability zero) so the
/// outcome set is constant across the parameter interval.
inline Povm d2_family(const FamilyParam &gamma) {
    if (gamma.kind != FamilyKind::D2) {
        throw std::invalid_argument("d2_family: parameter kind mismatch");
    }
    const double g = gamma.value;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Povm p;
    for (int x : {+1, -1}) {
        for (int y : {+1, -1}) {
            p.labels.push_back({x, y});
            p.effects.push_back(Effect{(1.0 + g * x * y) / 4.0,
                                       {(x + g * y) * inv_sqrt2 / 4.0,
                                        (y + g * x) * inv_sqrt2 / 4.0, 0.0}});
        }
    }
    return p;
}

/// Binary marginal of the rotation-invariant family along direction `a`:
/// effects (1/2)(I + x (1 - 2 eps)/2 a.sigma).
inline Povm so3_marginal(const FamilyParam &eps, const Direction &a) {
    if (eps.kind != FamilyKind::SO3) {
        throw std::invalid_argument("so3_marginal: parameter kind mismatch");
    }
    const double lambda = (1.0 - 2.0 * eps.value) / 2.0;
    Povm p;
    p.labels = {{+1}, {-1}};
    p.effects = {Effect{0.5, (lambda / 2.0) * a.a}, Effect{0.5, (-lambda / 2.0) * a.a}};
    return p;
}

/// Outcome density of the rotation-invariant family at spherical outcome
/// (theta, phi), without the sin(theta) dtheta dphi / 4pi measure factor:
/// the (1 - eps)-weighted aligned component plus the eps-weighted flipped one,
/// i.e. (1, (1 - 2 eps) xi) with xi the unit vector at (theta, phi).
inline Effect so3_density(const FamilyParam &eps, double theta, double phi) {
    if (eps.kind != FamilyKind::SO3) {
        throw std::invalid_argument("so3_density: parameter kind mismatch");
    }
    if (theta < 0.0 || theta > M_PI + 1e-12) {
        throw std::invalid_argument("so3_density: theta outside [0, pi]");
    }
    Vec3 xi = spherical_direction(theta, phi);
    return Effect{1.0, (1.0 - 2.0 * eps.value) * xi};
}

/// Pair of sharp target directions at angle alpha, arranged symmetrically
/// about the first-quadrant bisector of the xy-plane.
struct TargetPair {
    double alpha = 0.0;
    Direction a;
    Direction b;
};

/// Build the canonical target pair for angle alpha in [0, pi]:
/// a = (cos(pi/4 - alpha/2), sin(pi/4 - alpha/2), 0) and the mirror image b.
inline TargetPair target_pair(double alpha) {
    if (!(alpha >= 0.0 && alpha <= M_PI + 1e-12)) {
        throw std::invalid_argument("target_pair: alpha outside [0, pi]");
    }
    double lo = M_PI / 4.0 - alpha / 2.0;
    double hi = M_PI / 4.0 + alpha / 2.0;
    return TargetPair{alpha, Direction{std::cos(lo), std::sin(lo), 0.0},
                      Direction{std::cos(hi), std::sin(hi), 0.0}};
}

}  // namespace spinmur
