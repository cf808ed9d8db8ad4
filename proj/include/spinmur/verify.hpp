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

// Runtime verification suites behind the `verify` command: structural
// invariants (core), closed forms against the quadrature and probability
// pipelines (closed-forms), optimization cross-checks (minimax), and Monte
// Carlo consistency (sampler). Each check reports a measured value against
// its bound so failures are diagnosable from the JSON report alone.

#include <cstdint>
#include <string>
#include <vector>

#include "spinmur/closed_forms.hpp"
#include "spinmur/entropy.hpp"
#include "spinmur/families.hpp"
#include "spinmur/minimax.hpp"
#include "spinmur/reports.hpp"
#include "spinmur/rng.hpp"
#include "spinmur/sampler.hpp"

namespace spinmur {

struct VerifyCheck {
    std::string name;
    double value = 0.0;  // measured residual / count / margin
    double bound = 0.0;  // pass when value <= bound
    bool passed = false;
};

struct VerifySuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<VerifyCheck> checks;
    bool passed = true;

    void add(const std::string &name, double value, double bound) {
        bool ok = value <= bound;
        checks.push_back(VerifyCheck{name, value, bound, ok});
        passed = passed && ok;
    }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * i / (n - 1);
    }
    return xs;
}

inline std::vector<Povm> xy_targets() {
    return {spin_observable(Direction{1, 0, 0}), spin_observable(Direction{0, 1, 0})};
}

inline std::vector<Povm> xyz_targets() {
    return {spin_observable(Direction{1, 0, 0}), spin_observable(Direction{0, 1, 0}),
            spin_observable(Direction{0, 0, 1})};
}

inline std::vector<Povm> marginals_of(const Povm &m) {
    std::vector<Povm> out;
    for (std::size_t k = 0; k < m.arity(); ++k) {
        out.push_back(marginal(m, k));
    }
    return out;
}

/// Random feasible four-outcome bi-observable (shrink-projected).
inline GeneralBiObservable random_bi_observable(SplitMix64 &rng) {
    GeneralBiObservable m;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        m.weights[i] = rng.uniform(0.2, 1.0);
        sum += m.weights[i];
    }
    for (double &w : m.weights) {
        w /= sum;
    }
    Vec3 mean;
    for (int i = 0; i < 4; ++i) {
        m.vectors[i] = (m.weights[i] * rng.uniform(0.0, 0.95)) * rng.unit_vector();
        mean += 0.25 * m.vectors[i];
    }
    for (Vec3 &v : m.vectors) {
        v -= mean;
    }
    return m.shrunk_to_valid();
}

inline double effect_distance(const Effect &a, const Effect &b) {
    return std::abs(a.t - b.t) + (a.v - b.v).norm();
}

/// Residual of a covariance identity: rotating every effect must reproduce
/// the effect of the permuted label.
template <class LabelMap>
double covariance_residual(const Povm &p, const Mat3 &rot, LabelMap &&map) {
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        OutcomeLabel mapped = map(p.labels[i]);
        bool found = false;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p.labels[j] == mapped) {
                worst = std::max(worst,
                                 effect_distance(rotate_effect(p.effects[i], rot), p.effects[j]));
                found = true;
                break;
            }
        }
        if (!found) {
            return kInf;
        }
    }
    return worst;
}

inline void verify_core(VerifySuiteResult &res, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double c2 = 1.0 / std::sqrt(2.0), c3 = 1.0 / std::sqrt(3.0);

    // POVM validity across family parameter grids, endpoints included.
    int invalid = 0;
    std::vector<Povm> members;
    for (double c : linspace(-c2, c2, 21)) {
        members.push_back(d4_family(FamilyParam{c, FamilyKind::D4}));
    }
    for (double c : linspace(-c3, c3, 21)) {
        members.push_back(o_family(FamilyParam{c, FamilyKind::O}));
    }
    for (double g : linspace(-1.0, 1.0, 41)) {
        members.push_back(d2_family(FamilyParam{g, FamilyKind::D2}));
    }
    std::vector<Direction> dirs{Direction{1, 0, 0}, Direction{0, 1, 0}, Direction{0, 0, 1}};
    for (int i = 0; i < 5; ++i) {
        dirs.push_back(Direction{rng.unit_vector()});
    }
    for (double e : linspace(0.0, 1.0, 21)) {
        for (const Direction &d : dirs) {
            members.push_back(so3_marginal(FamilyParam{e, FamilyKind::SO3}, d));
        }
    }
    for (const Povm &m : members) {
        if (!povm_validate(m).ok) {
            ++invalid;
        }
    }
    res.add("family_grid_validity_failures", invalid, 0);

    // Marginals of valid product POVMs are valid.
    int marg_invalid = 0;
    for (const Povm &m : members) {
        for (std::size_t k = 0; k < m.arity(); ++k) {
            if (m.arity() >= 2 && !povm_validate(marginal(m, k)).ok) {
                ++marg_invalid;
            }
        }
    }
    res.add("marginal_validity_failures", marg_invalid, 0);

    // Outcome probabilities sum to one on random members and states.
    double worst_norm = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Povm &m = members[rng.next_u64() % members.size()];
        BlochState s{rng.ball_point()};
        double sum = 0.0;
        for (const Effect &e : m.effects) {
            sum += outcome_prob(e, s);
        }
        worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
    }
    res.add("probability_normalization", worst_norm, 1e-12);

    // outcome_prob is affine in the state.
    double worst_affine = 0.0;
    for (int i = 0; i < 100; ++i) {
        Effect e{rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.5) * rng.unit_vector()};
        Vec3 r1 = rng.ball_point(), r2 = rng.ball_point();
        double lam = rng.next_double();
        double lhs = outcome_prob(e, BlochState{lam * r1 + (1.0 - lam) * r2});
        double rhs = lam * outcome_prob(e, BlochState{r1}) +
                     (1.0 - lam) * outcome_prob(e, BlochState{r2});
        worst_affine = std::max(worst_affine, std::abs(lhs - rhs));
    }
    res.add("outcome_prob_affinity", worst_affine, 1e-12);

    // Rotations preserve effect eigenvalues.
    double worst_eig = 0.0;
    for (int i = 0; i < 100; ++i) {
        Effect e{rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.5) * rng.unit_vector()};
        Mat3 rot = axis_angle_rotation(rng.unit_vector(), rng.uniform(0.0, 6.28));
        Effect f = rotate_effect(e, rot);
        worst_eig = std::max(worst_eig, std::max(std::abs(e.eig_min() - f.eig_min()),
                                                 std::abs(e.eig_max() - f.eig_max())));
    }
    res.add("rotation_eigenvalue_preservation", worst_eig, 1e-14);

    // Covariance generator identities.
    const Vec3 bisector{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
    const Vec3 anti_bisector{-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
    double worst_d4 = 0.0;
    for (double c : linspace(-c2, c2, 11)) {
        Povm m = d4_family(FamilyParam{c, FamilyKind::D4});
        worst_d4 = std::max(
            worst_d4, covariance_residual(m, axis_angle_rotation({1, 0, 0}, M_PI),
                                          [](const OutcomeLabel &l) {
                                              return OutcomeLabel{l[0], -l[1]};
                                          }));
        worst_d4 = std::max(
            worst_d4, covariance_residual(m, axis_angle_rotation(bisector, M_PI),
                                          [](const OutcomeLabel &l) {
                                              return OutcomeLabel{l[1], l[0]};
                                          }));
    }
    res.add("covariance_d4_generators", worst_d4, 1e-12);

    double worst_o = 0.0;
    for (double c : linspace(-c3, c3, 11)) {
        Povm m = o_family(FamilyParam{c, FamilyKind::O});
        worst_o = std::max(
            worst_o, covariance_residual(m, axis_angle_rotation({0, 0, 1}, M_PI / 2),
                                         [](const OutcomeLabel &l) {
                                             return OutcomeLabel{-l[1], l[0], l[2]};
                                         }));
        worst_o = std::max(
            worst_o, covariance_residual(m, axis_angle_rotation({1, 0, 0}, M_PI / 2),
                                         [](const OutcomeLabel &l) {
                                             return OutcomeLabel{l[0], -l[2], l[1]};
                                         }));
        worst_o = std::max(
            worst_o, covariance_residual(m, axis_angle_rotation({0, 1, 0}, M_PI / 2),
                                         [](const OutcomeLabel &l) {
                                             return OutcomeLabel{l[2], l[1], -l[0]};
                                         }));
    }
    res.add("covariance_o_generators", worst_o, 1e-12);

    double worst_d2 = 0.0;
    for (double g : linspace(-1.0, 1.0, 21)) {
        Povm m = d2_family(FamilyParam{g, FamilyKind::D2});
        worst_d2 = std::max(
            worst_d2, covariance_residual(m, axis_angle_rotation(bisector, M_PI),
                                          [](const OutcomeLabel &l) {
                                              return OutcomeLabel{l[1], l[0]};
                                          }));
        worst_d2 = std::max(
            worst_d2, covariance_residual(m, axis_angle_rotation(anti_bisector, M_PI),
                                          [](const OutcomeLabel &l) {
                                              return OutcomeLabel{-l[1], -l[0]};
                                          }));
    }
    res.add("covariance_d2_generators", worst_d2, 1e-12);

    // The interpolating family at gamma = 0 is the optimal dihedral-4 member.
    {
        Povm lhs = d2_family(FamilyParam{0.0, FamilyKind::D2});
        Povm rhs = d4_family(FamilyParam{c2, FamilyKind::D4});
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            worst = std::max(worst, effect_distance(lhs.effects[i], rhs.effects[i]));
        }
        res.add("d2_zero_equals_d4_optimal", worst, 1e-15);
    }

    // Target-pair geometry: opening angle and first-quadrant bisector.
    double worst_geo = 0.0;
    for (double alpha : linspace(0.0, M_PI, 41)) {
        TargetPair tp = target_pair(alpha);
        worst_geo = std::max(worst_geo, std::abs(tp.a.a.dot(tp.b.a) - std::cos(alpha)));
        Vec3 sum = tp.a.a + tp.b.a;
        if (sum.norm() > 1e-9) {
            worst_geo = std::max(worst_geo, (sum.normalized() - bisector).norm());
        }
    }
    res.add("target_pair_geometry", worst_geo, 1e-12);

    // Rotation covariance of the continuous-family density.
    double worst_so3 = 0.0;
    for (int i = 0; i < 50; ++i) {
        FamilyParam eps{rng.next_double(), FamilyKind::SO3};
        double theta = std::acos(rng.uniform(-1.0, 1.0));
        double phi = rng.uniform(0.0, 2.0 * M_PI);
        Mat3 rot = axis_angle_rotation(rng.unit_vector(), rng.uniform(0.0, 6.28));
        Vec3 xi2 = rot.apply(spherical_direction(theta, phi));
        double theta2 = std::acos(std::min(1.0, std::max(-1.0, xi2.z)));
        double phi2 = std::atan2(xi2.y, xi2.x);
        if (phi2 < 0) {
            phi2 += 2.0 * M_PI;
        }
        Effect direct = so3_density(eps, theta2, phi2);
        Effect rotated = rotate_effect(so3_density(eps, theta, phi), rot);
        worst_so3 = std::max(worst_so3, effect_distance(direct, rotated));
    }
    res.add("so3_density_rotation_covariance", worst_so3, 1e-12);

    // Product identity of the error function on random instances.
    double worst_tensor = 0.0;
    for (int i = 0; i < 100; ++i) {
        Povm m = random_bi_observable(rng).assemble();
        BlochState s{rng.ball_point()};
        worst_tensor = std::max(
            worst_tensor, tensor_identity_check(xy_targets(), marginals_of(m), s));
    }
    res.add("tensor_identity_random", worst_tensor, 1e-12);
}

inline void verify_closed_forms(VerifySuiteResult &res, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double c2 = 1.0 / std::sqrt(2.0), c3 = 1.0 / std::sqrt(3.0);

    // Quadrature against the closed form on the full grid.
    double worst_quad = 0.0;
    for (double r : linspace(0.1, 1.0, 10)) {
        for (double e : linspace(0.0, 1.0, 11)) {
            double quad =
                mean_error_quadrature(FamilyParam{e, FamilyKind::SO3}, BlochState{r, 0, 0}, 1e-10)
                    .bits;
            worst_quad = std::max(worst_quad, std::abs(quad - mean_error_closed(r, e).bits()));
        }
    }
    res.add("quadrature_vs_closed_form", worst_quad, 1e-8);

    // Closed forms against the generic probability pipeline.
    double worst_pipe = 0.0;
    Povm m2 = d4_family(FamilyParam{c2, FamilyKind::D4});
    Povm m3 = o_family(FamilyParam{c3, FamilyKind::O});
    for (int i = 0; i < 30; ++i) {
        BlochState s{rng.ball_point()};
        EntropyValue ef2 = error_function(xy_targets(), marginals_of(m2), s);
        worst_pipe = std::max(worst_pipe, std::abs(ef2.bits - sd2_bound(s.r.x, s.r.y).bits()));
        EntropyValue ef3 = error_function(xyz_targets(), marginals_of(m3), s);
        worst_pipe = std::max(worst_pipe, std::abs(ef3.bits - sd3_bound(s).bits()));
    }
    res.add("closed_vs_probability_pipeline", worst_pipe, 1e-10);

    // Monotonicity in the shrink factor, and optimality of the boundary.
    double worst_mono = 0.0;
    double worst_opt = 0.0;
    for (int i = 0; i < 20; ++i) {
        BlochState s{rng.ball_point()};
        std::vector<double> comps{s.r.x, s.r.y};
        double prev = kInf;
        for (double c : linspace(0.0, 1.0, 21)) {
            double v = sd_general_c(comps, c).bits();
            worst_mono = std::max(worst_mono, v - prev);
            prev = v;
        }
        double at_opt = sd_general_c(comps, c2).bits();
        for (double c : linspace(-c2, c2, 21)) {
            worst_opt = std::max(worst_opt, at_opt - sd_general_c(comps, c).bits());
        }
        std::vector<double> comps3{s.r.x, s.r.y, s.r.z};
        double at_opt3 = sd_general_c(comps3, c3).bits();
        for (double c : linspace(-c3, c3, 21)) {
            worst_opt = std::max(worst_opt, at_opt3 - sd_general_c(comps3, c).bits());
        }
    }
    res.add("shrink_term_decreasing_in_c", worst_mono, 1e-14);
    res.add("boundary_c_is_optimal", worst_opt, 1e-14);

    // Mean error monotone in r (eps != 1/2) and in eps.
    double worst_r_mono = 0.0, worst_e_mono = 0.0;
    for (double e : linspace(0.0, 1.0, 11)) {
        if (std::abs(e - 0.5) < 1e-9) {
            continue;
        }
        double prev = -kInf;
        for (double r : linspace(0.0, 1.0, 21)) {
            double v = mean_error_closed(r, e).bits();
            worst_r_mono = std::max(worst_r_mono, prev - v);
            prev = v;
        }
    }
    for (double r : linspace(0.1, 1.0, 10)) {
        double prev = -kInf;
        for (double e : linspace(0.0, 1.0, 21)) {
            double v = mean_error_closed(r, e).bits();
            worst_e_mono = std::max(worst_e_mono, prev - v);
            prev = v;
        }
    }
    res.add("mean_error_increasing_in_r", worst_r_mono, 1e-14);
    res.add("mean_error_increasing_in_eps", worst_e_mono, 1e-14);

    // Continuity across the fully depolarizing point.
    double worst_cont = 0.0;
    for (double r : linspace(0.1, 1.0, 10)) {
        double mid = mean_error_closed(r, 0.5).bits();
        worst_cont = std::max(worst_cont,
                              std::abs(mean_error_closed(r, 0.5 + 1e-6).bits() - mid));
        worst_cont = std::max(worst_cont,
                              std::abs(mean_error_closed(r, 0.5 - 1e-6).bits() - mid));
    }
    res.add("mean_error_continuity_at_half", worst_cont, 1e-4);

    // The sharp-family specialization matches the general closed form.
    double worst_sharp = 0.0;
    for (double r : linspace(0.0, 1.0, 101)) {
        worst_sharp = std::max(worst_sharp,
                               std::abs(sd_inf_bound(r).bits() - mean_error_closed(r, 0.0).bits()));
    }
    res.add("sharp_bound_matches_general", worst_sharp, 1e-12);

    // Named-constant consistency and ordering.
    Constants k = constants();
    double worst_const = std::max(std::abs(2.0 * k.mean_c_orth2 - k.c_orth2),
                                  std::abs(3.0 * k.mean_c_orth3 - k.c_orth3));
    worst_const = std::max(worst_const, std::abs(k.mean_c_inf - k.c_inf));
    res.add("constants_mean_relations", worst_const, 1e-15);
    bool ordered = k.c_inf < k.mean_c_orth3 && k.mean_c_orth3 < k.mean_c_orth2;
    res.add("constants_ordering_violations", ordered ? 0 : 1, 0);
}

inline void verify_minimax(VerifySuiteResult &res, std::uint64_t seed, int threads) {
    SplitMix64 rng(seed);
    Constants k = constants();
    const double c2 = 1.0 / std::sqrt(2.0), c3 = 1.0 / std::sqrt(3.0);

    OptResult d2v = divergence(xy_targets(), d4_family(FamilyParam{c2, FamilyKind::D4}), 1e-8);
    res.add("divergence_pair_optimum", std::abs(d2v.value.bits - k.c_orth2), 1e-9);
    OptResult d3v = divergence(xyz_targets(), o_family(FamilyParam{c3, FamilyKind::O}), 1e-8);
    res.add("divergence_triple_optimum", std::abs(d3v.value.bits - k.c_orth3), 1e-9);

    // Sup over the ball never beats sup over the sphere (convexity in the state).
    double worst_ball = 0.0;
    for (int i = 0; i < 10; ++i) {
        Povm m = random_bi_observable(rng).assemble();
        std::vector<Povm> margs = marginals_of(m);
        auto objective = [&](const BlochState &s) {
            return error_function(xy_targets(), margs, s);
        };
        OptResult sphere = sup_over_states(objective, 1e-7);
        if (sphere.value.infinite) {
            continue;
        }
        double interior_best = 0.0;
        for (double radius : {0.3, 0.6, 0.9}) {
            for (int t = 1; t < 8; ++t) {
                for (int p = 0; p < 16; ++p) {
                    BlochState s{radius *
                                 spherical_direction(M_PI * t / 8, 2.0 * M_PI * p / 16)};
                    EntropyValue v = objective(s);
                    if (!v.infinite) {
                        interior_best = std::max(interior_best, v.bits);
                    }
                }
            }
        }
        for (int t = 0; t < 50; ++t) {
            EntropyValue v = objective(BlochState{rng.ball_point()});
            if (!v.infinite) {
                interior_best = std::max(interior_best, v.bits);
            }
        }
        worst_ball = std::max(worst_ball, interior_best - sphere.value.bits);
    }
    res.add("sphere_sufficiency", worst_ball, 1e-9);

    // Certified lower bounds across the covariant families.
    double worst_pair_mur = -kInf;
    for (double c : linspace(-c2, c2, 21)) {
        OptResult d = divergence(xy_targets(), d4_family(FamilyParam{c, FamilyKind::D4}), 1e-6);
        if (!d.value.infinite) {
            worst_pair_mur = std::max(worst_pair_mur, k.c_orth2 - d.value.bits);
        }
    }
    res.add("pair_mur_over_family", worst_pair_mur, 1e-6);
    double worst_triple_mur = -kInf;
    for (double c : linspace(-c3, c3, 21)) {
        OptResult d = divergence(xyz_targets(), o_family(FamilyParam{c, FamilyKind::O}), 1e-6);
        if (!d.value.infinite) {
            worst_triple_mur = std::max(worst_triple_mur, k.c_orth3 - d.value.bits);
        }
    }
    res.add("triple_mur_over_family", worst_triple_mur, 1e-6);

    OptResult inc = incompatibility_degree(M_PI / 2, 1e-4);
    res.add("incompatibility_orthogonal", std::abs(inc.value.bits - k.c_orth2), 2e-4);
    res.add("incompatibility_orthogonal_gamma", std::abs(inc.witness_param), 5e-3);

    GlobalSearchResult g = global_minimax(M_PI / 2, 8, 1e-4, seed, threads);
    res.add("global_search_best_above", k.c_orth2 - 1e-3 - g.best.value.bits, 0.0);
    res.add("global_search_best_below", g.best.value.bits - (k.c_orth2 + 5e-3), 0.0);
    double worst_restart = 0.0;
    for (const RestartRecord &r : g.restarts) {
        if (!r.value.infinite) {
            worst_restart = std::max(worst_restart, k.c_orth2 - 1e-3 - r.value.bits);
        }
    }
    res.add("global_search_restarts_respect_bound", worst_restart, 0.0);

    res.add("mean_divergence_value",
            std::abs(mean_divergence(0.0, 1e-10).value.bits - k.c_inf), 1e-9);

    // The direction-averaged error is the same at every pure state.
    double lo = kInf, hi = -kInf;
    for (int i = 0; i < 20; ++i) {
        double v = mean_error_quadrature(FamilyParam{0.2, FamilyKind::SO3},
                                         BlochState{rng.unit_vector()}, 1e-11)
                       .bits;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    res.add("mean_error_state_invariance", hi - lo, 1e-10);

    // Epsilon = 0 minimizes the worst-case mean error, strictly.
    double base = mean_divergence(0.0, 1e-10).value.bits;
    double worst_eps = 0.0;
    for (double e : linspace(0.0, 1.0, 21)) {
        worst_eps = std::max(worst_eps, base - mean_divergence(e, 1e-10).value.bits);
    }
    res.add("mean_divergence_minimum_at_zero", worst_eps, 0.0);
    double strict = std::min(mean_divergence(0.001, 1e-10).value.bits - base,
                             mean_divergence(0.01, 1e-10).value.bits - base);
    res.add("mean_divergence_strictly_increasing", strict > 0 ? 0 : 1, 0);

    // Family minimization lands on the boundary parameter; degenerate states flagged flat.
    double worst_opt_param = 0.0;
    int flat_errors = 0;
    for (int i = 0; i < 20; ++i) {
        BlochState s{rng.ball_point()};
        if (std::abs(s.r.x) > 1e-3 || std::abs(s.r.y) > 1e-3) {
            OptResult r2 = minimize_family(FamilyKind::D4, s);
            worst_opt_param = std::max(worst_opt_param, std::abs(r2.witness_param - c2));
        }
        if (s.r.norm() > 1e-3) {
            OptResult r3 = minimize_family(FamilyKind::O, s);
            worst_opt_param = std::max(worst_opt_param, std::abs(r3.witness_param - c3));
        }
    }
    res.add("minimize_family_boundary_param", worst_opt_param, 1e-6);
    if (!minimize_family(FamilyKind::D4, BlochState{0, 0, 1}).flat_objective) {
        ++flat_errors;
    }
    if (!minimize_family(FamilyKind::O, BlochState{0, 0, 0}).flat_objective) {
        ++flat_errors;
    }
    res.add("minimize_family_flat_detection", flat_errors, 0);

    // Strict local optimality of the boundary parameter.
    double worst_strict = kInf;
    for (int i = 0; i < 10; ++i) {
        Vec3 r = rng.ball_point();
        if (std::abs(r.x) < 0.05 && std::abs(r.y) < 0.05) {
            continue;
        }
        std::vector<double> comps{r.x, r.y};
        double at = sd_general_c(comps, c2).bits();
        for (double delta : {1e-3, 1e-2}) {
            worst_strict = std::min(worst_strict, sd_general_c(comps, c2 - delta).bits() - at);
        }
        std::vector<double> comps3{r.x, r.y, r.z};
        double at3 = sd_general_c(comps3, c3).bits();
        for (double delta : {1e-3, 1e-2}) {
            worst_strict = std::min(worst_strict, sd_general_c(comps3, c3 - delta).bits() - at3);
        }
    }
    res.add("boundary_strictly_optimal", worst_strict > 0 ? 0 : 1, 0);
}

inline void verify_sampler(VerifySuiteResult &res, std::uint64_t seed) {
    const double c2 = 1.0 / std::sqrt(2.0);
    Povm m0 = d4_family(FamilyParam{c2, FamilyKind::D4});
    BlochState x_state{1, 0, 0};

    // Same seed, same run.
    SampleRun a = sample_outcomes(m0, x_state, 100000, seed + 7);
    SampleRun b = sample_outcomes(m0, x_state, 100000, seed + 7);
    res.add("seed_determinism", a.counts == b.counts ? 0 : 1, 0);
    EntropyValue e1 = empirical_error_function(xy_targets(), m0, x_state, 200000, seed);
    EntropyValue e2 = empirical_error_function(xy_targets(), m0, x_state, 200000, seed);
    res.add("empirical_determinism",
            (e1.infinite == e2.infinite && e1.bits == e2.bits) ? 0 : 1, 0);

    // Fair-coin counts within five sigma.
    Povm coin;
    coin.labels = {{+1}, {-1}};
    coin.effects = {Effect{0.5, {}}, Effect{0.5, {}}};
    SampleRun c = sample_outcomes(coin, BlochState{0.3, 0.1, 0.2}, 1000000, seed);
    double dev = std::abs(static_cast<double>(c.counts[0]) - 500000.0);
    res.add("coin_five_sigma", dev, 5.0 * std::sqrt(1000000.0 * 0.25));

    // Marginal frequency of the optimal pair measurement at a polarized state.
    SampleRun j = sample_outcomes(m0, x_state, 1000000, seed + 1);
    double plus = static_cast<double>(j.counts[0] + j.counts[1]) / 1000000.0;
    double p_true = 0.5 + 0.5 * c2;
    res.add("pair_marginal_frequency", std::abs(plus - p_true),
            5.0 * std::sqrt(p_true * (1.0 - p_true) / 1000000.0));

    // Deterministic outcome for an eigenstate of a sharp observable.
    SampleRun d = sample_outcomes(spin_observable(Direction{1, 0, 0}), x_state, 1000, seed + 2);
    res.add("deterministic_outcome", d.counts[0] == 1000 && d.counts[1] == 0 ? 0 : 1, 0);

    // Plug-in estimate approaches the analytic value at 3/sqrt(n) scale.
    Constants k = constants();
    for (std::uint64_t n : {static_cast<std::uint64_t>(10000), static_cast<std::uint64_t>(1000000)}) {
        EntropyValue emp = empirical_error_function(xy_targets(), m0, x_state, n, seed + 3);
        double window = 3.0 / std::sqrt(static_cast<double>(n));
        res.add("empirical_consistency_n" + std::to_string(n),
                emp.infinite ? kInf : std::abs(emp.bits - k.c_orth2), window);
    }

    // Small samples may produce the infinite flag, never a crash.
    BlochState s9{0.9, 0, 0};
    int infinite_seen = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        EntropyValue e = empirical_error_function(xy_targets(), m0, s9, 10,
                                                  SplitMix64::derive(seed, trial));
        if (e.infinite) {
            ++infinite_seen;
        }
    }
    res.add("small_sample_infinity_flagged", infinite_seen > 0 ? 0 : 1, 0);
}

}  // namespace detail

/// Run one verification suite: "core", "closed-forms", "minimax", "sampler",
/// or "all" (concatenates the four).
inline std::vector<VerifySuiteResult> run_verify(const std::string &suite, std::uint64_t seed,
                                                 int threads = 1) {
    std::vector<VerifySuiteResult> out;
    auto want = [&](const char *name) { return suite == "all" || suite == name; };
    if (!(suite == "all" || suite == "core" || suite == "closed-forms" || suite == "minimax" ||
          suite == "sampler")) {
        throw std::invalid_argument("unknown verify suite: " + suite);
    }
    if (want("core")) {
        VerifySuiteResult r;
        r.suite = "core";
        r.seed = seed;
        detail::verify_core(r, seed);
        out.push_back(std::move(r));
    }
    if (want("closed-forms")) {
        VerifySuiteResult r;
        r.suite = "closed-forms";
        r.seed = seed;
        detail::verify_closed_forms(r, seed);
        out.push_back(std::move(r));
    }
    if (want("minimax")) {
        VerifySuiteResult r;
        r.suite = "minimax";
        r.seed = seed;
        detail::verify_minimax(r, seed, threads);
        out.push_back(std::move(r));
    }
    if (want("sampler")) {
        VerifySuiteResult r;
        r.suite = "sampler";
        r.seed = seed;
        detail::verify_sampler(r, seed);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace spinmur
