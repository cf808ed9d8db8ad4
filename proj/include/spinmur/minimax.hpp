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

// The optimization layer: worst-case state search (divergence), parameter
// minimization inside covariant families, the incompatibility degree over the
// interpolating bi-observable family, and an unrestricted multi-start search
// over all four-outcome bi-observables used to verify the bounds
// independently of any family parametrization.
//
// Two structural facts drive the algorithms here and are themselves covered
// by tests:
//   - The error function is convex in the state (outcome probabilities are
//     affine in the Bloch vector and KL divergence is jointly convex), so its
//     supremum over the Bloch ball is attained on the sphere; the state
//     search therefore scans a geodesic grid and polishes on the sphere only.
//   - The worst-case error is convex in the effect coordinates (t, v) of the
//     measurement (a supremum of KL terms composed with affine maps, over the
//     intersection of a simplex with second-order cones), but not smooth at
//     its minimizers. The unrestricted search consequently runs projected
//     subgradient descent with Polyak-style steps in the native coordinates;
//     smooth derivative-free methods stall on the conical kink.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "spinmur/closed_forms.hpp"
#include "spinmur/entropy.hpp"
#include "spinmur/families.hpp"
#include "spinmur/qubit.hpp"
#include "spinmur/rng.hpp"

namespace spinmur {

/// Result of an optimization run: the optimal value with the argmax state
/// and/or argmin parameter that witnesses it.
struct OptResult {
    EntropyValue value;
    BlochState witness_state;  // argmax state where applicable
    double witness_param = std::numeric_limits<double>::quiet_NaN();  // argmin parameter
    long iterations = 0;       // objective evaluations
    double requested_tol = 0.0;
    double achieved_tol = 0.0;
    bool converged = true;
    bool flat_objective = false;  // objective constant: every parameter optimal
};

/// Geodesic grid resolution for the state search: theta_rows colatitude rows
/// including both poles (theta_rows - 1 intervals) by n_phi azimuths.
struct SphereGrid {
    int theta_rows = 33;
    int n_phi = 64;
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One KL term p log2(p/q) with the library's zero conventions; +inf when the
/// approximating probability vanishes under a realized one.
inline double kl_half_term_nats(double p, double q) {
    if (p < kProbFloor) {
        return 0.0;
    }
    if (q < kProbFloor) {
        return kInf;
    }
    return p * std::log(p / q);
}

/// Binary KL in bits from the two +1-outcome probabilities.
inline double binary_kl_bits(double p_plus, double q_plus) {
    double p = std::min(std::max(p_plus, 0.0), 1.0);
    double q = std::min(std::max(q_plus, 0.0), 1.0);
    double nats = kl_half_term_nats(p, q) + kl_half_term_nats(1.0 - p, 1.0 - q);
    return nats * std::numbers::log2e;
}

/// Allocation-free two-target error function in bits: targets along a and b,
/// binary marginals (t1, w1) and (t2, w2), state r.
inline double pair_error_bits(const Vec3 &a, const Vec3 &b, double t1, const Vec3 &w1,
                              double t2, const Vec3 &w2, const Vec3 &r) {
    return binary_kl_bits(0.5 * (1.0 + a.dot(r)), t1 + w1.dot(r)) +
           binary_kl_bits(0.5 * (1.0 + b.dot(r)), t2 + w2.dot(r));
}

struct SphereSupResult {
    double value = -kInf;
    Vec3 witness{0, 0, 1};
    long evals = 0;
    double tail_gain = 0.0;  // improvement gathered once the step was tiny
    bool any_finite = false;
};

/// Maximize a double-valued objective over the unit sphere: geodesic grid
/// scan (first-tie-wins, so witnesses are deterministic) followed by a
/// tangent-plane compass polish with halving steps down to hmin radians.
///
/// A +inf evaluation wins the supremum outright, but only once some other
/// point has evaluated finite: the scan records the first infinity and keeps
/// going until a finite value confirms the objective is not degenerate
/// everywhere. If nothing evaluates finite the result reports
/// any_finite = false and the caller decides how to fail.
template <class F>
SphereSupResult sphere_sup(F &&f, const SphereGrid &grid, double hmin) {
    SphereSupResult out;
    bool inf_found = false;
    Vec3 inf_witness{0, 0, 1};
    auto consider = [&](const Vec3 &u) {
        double val = f(u);
        ++out.evals;
        if (std::isinf(val) && val > 0.0) {
            if (!inf_found) {
                inf_found = true;
                inf_witness = u;
            }
            return;
        }
        if (!std::isfinite(val)) {
            return;  // NaN or -inf: ignore, counts as non-finite
        }
        out.any_finite = true;
        if (val > out.value) {
            out.value = val;
            out.witness = u;
        }
    };
    auto settled = [&] { return inf_found && out.any_finite; };

    consider({0, 0, 1});
    if (!settled()) {
        consider({0, 0, -1});
    }
    const int rows = grid.theta_rows;
    for (int i = 1; i + 1 < rows && !settled(); ++i) {
        double theta = M_PI * i / (rows - 1);
        for (int j = 0; j < grid.n_phi && !settled(); ++j) {
            double phi = 2.0 * M_PI * j / grid.n_phi;
            consider(spherical_direction(theta, phi));
        }
    }
    if (inf_found && out.any_finite) {
        out.value = kInf;
        out.witness = inf_witness;
        return out;
    }
    if (!out.any_finite) {
        return out;
    }

    double h = M_PI / (rows - 1);
    const double h_tail = std::max(8.0 * hmin, 1e-6);
    bool in_tail = false;
    double value_at_tail = out.value;
    while (h > hmin) {
        if (!in_tail && h <= h_tail) {
            in_tail = true;
            value_at_tail = out.value;
        }
        Vec3 t1 = out.witness.cross({1, 0, 0});
        if (t1.norm() < 1e-6) {
            t1 = out.witness.cross({0, 1, 0});
        }
        t1 = t1.normalized();
        Vec3 t2 = out.witness.cross(t1);
        bool improved = false;
        for (const Vec3 &d : {t1, -1.0 * t1, t2, -1.0 * t2}) {
            Vec3 u = (out.witness + h * d).normalized();
            double val = f(u);
            ++out.evals;
            if (std::isinf(val)) {
                out.value = kInf;
                out.witness = u;
                return out;
            }
            if (val > out.value) {
                out.value = val;
                out.witness = u;
                improved = true;
            }
        }
        if (!improved) {
            h *= 0.5;
        }
    }
    out.tail_gain = in_tail ? out.value - value_at_tail : 0.0;
    return out;
}

inline double hmin_for_tol(double tol) {
    return std::min(std::max(0.02 * std::sqrt(tol), 1e-8), 3e-5);
}

}  // namespace detail

/// Supremum of a state objective over the Bloch ball.
///
/// The objectives of this library (sums of KL terms of distributions affine
/// in the Bloch vector) are convex in the state, so the supremum is attained
/// at the extreme points and only the unit sphere is searched: a coarse
/// geodesic grid (default 32x64 intervals in theta, phi) then local
/// refinement to tol. A +inf evaluation is itself a valid supremum and is
/// returned with the offending direction; an objective with no finite value
/// anywhere on the sphere throws std::domain_error.
template <class F>
OptResult sup_over_states(F &&objective, double tol, SphereGrid grid = {}) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("sup_over_states: tolerance must be positive");
    }
    auto wrapped = [&](const Vec3 &u) -> double {
        EntropyValue v = objective(BlochState{u});
        return v.infinite ? detail::kInf : v.bits;
    };
    detail::SphereSupResult s = detail::sphere_sup(wrapped, grid, detail::hmin_for_tol(tol));
    OptResult out;
    out.iterations = s.evals;
    out.requested_tol = tol;
    if (!s.any_finite) {
        throw std::domain_error("sup_over_states: objective is not finite anywhere");
    }
    if (std::isinf(s.value)) {
        out.value = EntropyValue::infinity();
        out.witness_state = BlochState{s.witness};
        return out;
    }
    out.value = EntropyValue::finite(s.value);
    out.witness_state = BlochState{s.witness};
    out.achieved_tol = s.tail_gain;
    out.converged = out.achieved_tol <= tol;
    return out;
}

/// Worst-case information loss of a joint measurement against its sharp
/// targets: sup over states of the error function.
///
/// Support collapse is pre-screened: if a marginal outcome probability can
/// reach zero at a state where the corresponding target probability stays
/// positive, the supremum is +inf and that state is reported as witness.
inline OptResult divergence(const std::vector<Povm> &targets, const Povm &m, double tol,
                            SphereGrid grid = {}) {
    ValidationReport rep = povm_validate(m);
    if (!rep.ok) {
        throw std::invalid_argument(std::string("divergence: invalid POVM (") + rep.constraint +
                                    " residual " + std::to_string(rep.residual) + ")");
    }
    if (m.arity() != targets.size()) {
        throw std::invalid_argument("divergence: POVM arity does not match target count");
    }
    std::vector<Povm> margs;
    margs.reserve(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        margs.push_back(marginal(m, k));
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
        for (int xi : {0, 1}) {
            const Effect &e = margs[k].effects[xi];
            double nw = e.v.norm();
            if (nw > 1e-15 && e.t - nw < kValidityTol) {
                // Marginal outcome probability vanishes at the anti-aligned state.
                Vec3 r0 = (-1.0 / nw) * e.v;
                double p = outcome_prob(targets[k].effects[xi], BlochState{r0});
                if (p > 1e-9) {
                    OptResult out;
                    out.value = EntropyValue::infinity();
                    out.witness_state = BlochState{r0};
                    out.requested_tol = tol;
                    return out;
                }
            }
        }
    }
    auto objective = [&](const BlochState &s) { return error_function(targets, margs, s); };
    return sup_over_states(objective, tol, grid);
}

/// Minimize the closed-form error bound over the family parameter for a
/// fixed state: two-target (dihedral-4) or three-target (octahedral) kind.
/// Degenerate states (no relevant components) make the objective identically
/// zero; then every parameter is optimal and flat_objective is set.
inline OptResult minimize_family(FamilyKind kind, const BlochState &s) {
    if (kind != FamilyKind::D4 && kind != FamilyKind::O) {
        throw std::invalid_argument("minimize_family: kind must be the d4 or o family");
    }
    std::vector<double> comps = (kind == FamilyKind::D4)
                                    ? std::vector<double>{s.r.x, s.r.y}
                                    : std::vector<double>{s.r.x, s.r.y, s.r.z};
    const double c_max = family_interval(kind).second;
    OptResult out;
    out.requested_tol = 1e-9;
    double largest = 0.0;
    for (double c : comps) {
        largest = std::max(largest, std::abs(c));
    }
    if (largest <= kValidityTol) {
        out.value = EntropyValue::finite(0.0);
        out.witness_param = c_max;
        out.flat_objective = true;
        return out;
    }
    auto f = [&](double c) { return sd_general_c(comps, c).bits(); };
    const int n = 201;
    int best_i = 0;
    double best = detail::kInf;
    for (int i = 0; i < n; ++i) {
        double c = -c_max + 2.0 * c_max * i / (n - 1);
        double v = f(c);
        ++out.iterations;
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    double lo = -c_max + 2.0 * c_max * std::max(0, best_i - 1) / (n - 1);
    double hi = -c_max + 2.0 * c_max * std::min(n - 1, best_i + 1) / (n - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    out.iterations += 2;
    while (hi - lo > 1e-9) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
        ++out.iterations;
    }
    double c_opt = (f1 <= f2) ? x1 : x2;
    double v_opt = std::min(f1, f2);
    double c_grid = -c_max + 2.0 * c_max * best_i / (n - 1);
    if (best < v_opt) {
        c_opt = c_grid;
        v_opt = best;
    }
    out.value = EntropyValue::finite(v_opt);
    out.witness_param = c_opt;
    out.achieved_tol = std::abs(f1 - f2);
    out.converged = true;
    return out;
}

/// Least achievable divergence for two targets at angle alpha, over the
/// interpolating bi-observable family with parameter gamma in [-1, 1].
///
/// The parameter search is a 41-point grid followed by golden-section
/// refinement inside the best bracket (unimodality is plausible but unproven;
/// the grid guards against it). The inner state supremum runs at tol/10.
/// Infinite divergences (support collapse at |gamma| = 1 for incompatible
/// targets) are rejected candidates, not errors.
inline OptResult incompatibility_degree(double alpha, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("incompatibility_degree: tolerance must be positive");
    }
    TargetPair tp = target_pair(alpha);
    std::vector<Povm> targets{spin_observable(tp.a), spin_observable(tp.b)};
    const double inner_tol = tol / 10.0;
    OptResult out;
    out.requested_tol = tol;

    auto value_at = [&](double gamma) -> double {
        OptResult d = divergence(targets, d2_family(FamilyParam{gamma, FamilyKind::D2}),
                                 inner_tol);
        out.iterations += d.iterations;
        return d.value.infinite ? detail::kInf : d.value.bits;
    };

    const int n = 41;
    int best_i = -1;
    double best = detail::kInf;
    for (int i = 0; i < n; ++i) {
        double gamma = -1.0 + 2.0 * i / (n - 1);
        double v = value_at(gamma);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    double grid_gamma = -1.0 + 2.0 * best_i / (n - 1);
    double lo = -1.0 + 2.0 * std::max(0, best_i - 1) / (n - 1);
    double hi = -1.0 + 2.0 * std::min(n - 1, best_i + 1) / (n - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = value_at(x1), f2 = value_at(x2);
    while (hi - lo > 1e-4) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = value_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = value_at(x2);
        }
    }
    double gamma_opt = (f1 <= f2) ? x1 : x2;
    if (best <= std::min(f1, f2)) {
        gamma_opt = grid_gamma;
    }
    OptResult final_div = divergence(targets, d2_family(FamilyParam{gamma_opt, FamilyKind::D2}),
                                     inner_tol);
    out.iterations += final_div.iterations;
    out.value = final_div.value;
    out.witness_state = final_div.witness_state;
    out.witness_param = gamma_opt;
    out.achieved_tol = std::max(final_div.achieved_tol, std::abs(f1 - f2));
    out.converged = out.achieved_tol <= tol;
    return out;
}

/// Worst-case direction-averaged error of the rotation-invariant family.
/// The closed form is increasing in |r|, so the supremum over states is the
/// pure-state value; a coarse ball scan re-verifies that monotonicity.
inline OptResult mean_divergence(double epsilon, double tol) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("mean_divergence: epsilon outside [0, 1]");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("mean_divergence: tolerance must be positive");
    }
    OptResult out;
    out.requested_tol = tol;
    double best = mean_error_closed(1.0, epsilon).bits();
    out.iterations = 1;
    for (int i = 0; i <= 10; ++i) {
        double r = i / 10.0;
        double v = mean_error_closed(r, epsilon).bits();
        ++out.iterations;
        if (v > best + 1e-12) {
            out.converged = false;  // would contradict monotonicity in r
            best = v;
        }
    }
    out.value = EntropyValue::finite(best);
    out.witness_state = BlochState{0, 0, 1};  // any pure state attains the mean
    out.witness_param = epsilon;
    out.achieved_tol = 0.0;
    return out;
}

/// Unconstrained four-outcome bi-observable in native effect coordinates:
/// weights on the simplex and Pauli vectors summing to zero, one per outcome
/// (+1,+1), (+1,-1), (-1,+1), (-1,-1); feasibility additionally needs
/// weight >= |vector| per outcome.
struct GeneralBiObservable {
    std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};
    std::array<Vec3, 4> vectors{};

    Povm assemble() const {
        Povm p;
        p.labels = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
        for (int i = 0; i < 4; ++i) {
            p.effects.push_back(Effect{weights[i], vectors[i]});
        }
        return p;
    }

    /// Project onto feasibility by shrinking every vector with the common
    /// factor min_i(weight_i / |vector_i|, 1); preserves the zero sum.
    GeneralBiObservable shrunk_to_valid() const {
        double s = 1.0;
        for (int i = 0; i < 4; ++i) {
            double n = vectors[i].norm();
            if (n > weights[i] && n > 0.0) {
                s = std::min(s, weights[i] / n);
            }
        }
        GeneralBiObservable out = *this;
        for (Vec3 &v : out.vectors) {
            v = s * v;
        }
        return out;
    }
};

/// One multi-start record: the measurement a restart converged to and its
/// full-accuracy divergence.
struct RestartRecord {
    std::uint64_t seed = 0;
    EntropyValue value;
    GeneralBiObservable observable;
    BlochState witness;
};

/// Result of the unrestricted multi-start search.
struct GlobalSearchResult {
    OptResult best;
    GeneralBiObservable best_observable;
    std::vector<RestartRecord> restarts;
};

namespace detail {

/// Optimizer state: simplex weights plus three free vectors (the fourth is
/// minus their sum).
struct SubgradIterate {
    std::array<double, 4> t;
    std::array<Vec3, 3> v;

    GeneralBiObservable to_observable() const {
        GeneralBiObservable m;
        m.weights = t;
        m.vectors = {v[0], v[1], v[2], -1.0 * (v[0] + v[1] + v[2])};
        return m;
    }
};

struct MarginalPair {
    double t1;
    Vec3 w1;
    double t2;
    Vec3 w2;
};

inline MarginalPair marginals_of(const GeneralBiObservable &m) {
    return MarginalPair{m.weights[0] + m.weights[1], m.vectors[0] + m.vectors[1],
                        m.weights[0] + m.weights[2], m.vectors[0] + m.vectors[2]};
}

/// Divergence of an assembled feasible bi-observable against targets a, b:
/// support-collapse pre-check, then the sphere search.
inline SphereSupResult bi_divergence(const Vec3 &a, const Vec3 &b, const MarginalPair &mp,
                                     const SphereGrid &grid, double hmin) {
    struct {
        double tm;
        Vec3 w;
        const Vec3 *target;
    } checks[2] = {{mp.t1, mp.w1, &a}, {mp.t2, mp.w2, &b}};
    for (const auto &c : checks) {
        double nw = c.w.norm();
        if (nw <= 1e-15) {
            continue;
        }
        for (int x : {+1, -1}) {
            double tx = (x == +1) ? c.tm : 1.0 - c.tm;
            if (tx - nw < kValidityTol) {
                Vec3 r0 = (-static_cast<double>(x) / nw) * c.w;
                if (0.5 * (1.0 + x * c.target->dot(r0)) > 1e-9) {
                    SphereSupResult s;
                    s.value = kInf;
                    s.witness = r0;
                    return s;
                }
            }
        }
    }
    auto f = [&](const Vec3 &r) {
        return pair_error_bits(a, b, mp.t1, mp.w1, mp.t2, mp.w2, r);
    };
    return sphere_sup(f, grid, hmin);
}

struct SubgradSample {
    double merit = 0.0;       // divergence of the projection plus penalty
    double div_value = 0.0;   // +inf when the projection diverges
    std::array<double, 4> gt{};
    std::array<Vec3, 3> gv{};
};

/// Objective sample and subgradient for the projected-subgradient search.
/// The divergence part is evaluated at the shrink-projected point and its
/// subgradient taken at the worst state found there; infeasibility adds a
/// linear penalty with its own subgradient (through the dependent fourth
/// vector as well).
inline SubgradSample eval_subgradient(const Vec3 &a, const Vec3 &b, const SubgradIterate &it,
                                      double penalty, const SphereGrid &grid, double hmin,
                                      long &evals) {
    SubgradSample out;
    GeneralBiObservable raw = it.to_observable();
    GeneralBiObservable proj = raw.shrunk_to_valid();
    double viol = 0.0;
    for (int i = 0; i < 4; ++i) {
        viol += std::max(0.0, raw.vectors[i].norm() - raw.weights[i]);
    }
    MarginalPair mp = marginals_of(proj);
    SphereSupResult sup = bi_divergence(a, b, mp, grid, hmin);
    evals += sup.evals;
    out.div_value = sup.value;
    if (std::isinf(sup.value)) {
        out.merit = 100.0 + penalty * viol;  // keep Polyak steps finite
    } else {
        out.merit = sup.value + penalty * viol;
        const Vec3 &r = sup.witness;
        struct {
            double tm;
            Vec3 w;
            const Vec3 *target;
            int other;  // second outcome index contributing to this marginal
        } parts[2] = {{mp.t1, mp.w1, &a, 1}, {mp.t2, mp.w2, &b, 2}};
        for (const auto &part : parts) {
            double qp = part.tm + part.w.dot(r);
            double qm = 1.0 - qp;
            if (qp <= 1e-300 || qm <= 1e-300) {
                continue;
            }
            double pp = 0.5 * (1.0 + part.target->dot(r));
            double br = -(pp / qp - (1.0 - pp) / qm) / std::numbers::ln2;
            out.gt[0] += br;
            out.gt[part.other] += br;
            out.gv[0] += br * r;
            if (part.other < 3) {
                out.gv[part.other] += br * r;
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        double n = raw.vectors[i].norm();
        if (n > raw.weights[i] && n > 0.0) {
            Vec3 vh = (1.0 / n) * raw.vectors[i];
            out.gt[i] -= penalty;
            if (i < 3) {
                out.gv[i] += penalty * vh;
            } else {
                for (int j = 0; j < 3; ++j) {
                    out.gv[j] -= penalty * vh;
                }
            }
        }
    }
    return out;
}

inline void retract_simplex(std::array<double, 4> &t) {
    double sum = 0.0;
    for (double &x : t) {
        x = std::max(x, 1e-9);
        sum += x;
    }
    for (double &x : t) {
        x /= sum;
    }
}

/// One seeded restart: random feasible-ish start, 480 projected-subgradient
/// iterations with Polyak steps against the running record, then a
/// full-accuracy divergence of the best projected iterate.
inline RestartRecord run_restart(const Vec3 &a, const Vec3 &b, std::uint64_t seed,
                                 double final_tol) {
    const SphereGrid coarse{17, 32};
    const double coarse_hmin = 1e-7;
    const double penalty = 3.0;
    const int iters = 480;

    SplitMix64 rng(seed);
    SubgradIterate it;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        it.t[i] = rng.uniform(0.4, 1.0);
        sum += it.t[i];
    }
    for (double &x : it.t) {
        x /= sum;
    }
    std::array<Vec3, 4> v;
    Vec3 mean;
    for (int i = 0; i < 4; ++i) {
        v[i] = (it.t[i] * rng.uniform(0.0, 0.9)) * rng.unit_vector();
        mean += 0.25 * v[i];
    }
    for (int i = 0; i < 3; ++i) {
        it.v[i] = v[i] - mean;
    }

    long evals = 0;
    SubgradIterate best_it = it;
    double best_merit = kInf;
    bool any_finite = false;
    double record = kInf;
    for (int k = 0; k < iters; ++k) {
        SubgradSample s = eval_subgradient(a, b, it, penalty, coarse, coarse_hmin, evals);
        if (!std::isinf(s.div_value) && s.merit < best_merit) {
            best_merit = s.merit;
            best_it = it;
            any_finite = true;
        }
        record = std::min(record, s.merit);
        double delta = std::max(2e-4, 0.3 * std::pow(0.985, k));
        double gn2 = 0.0;
        for (double g : s.gt) {
            gn2 += g * g;
        }
        for (const Vec3 &g : s.gv) {
            gn2 += g.dot(g);
        }
        if (gn2 < 1e-30) {
            break;
        }
        double step = (s.merit - record + delta) / gn2;
        for (int i = 0; i < 4; ++i) {
            it.t[i] -= step * s.gt[i];
        }
        retract_simplex(it.t);
        for (int i = 0; i < 3; ++i) {
            it.v[i] -= step * s.gv[i];
        }
    }

    RestartRecord rec;
    rec.seed = seed;
    rec.observable = best_it.to_observable().shrunk_to_valid();
    SphereSupResult final_sup = bi_divergence(a, b, marginals_of(rec.observable), SphereGrid{},
                                              hmin_for_tol(final_tol));
    if (!any_finite || std::isinf(final_sup.value)) {
        rec.value = EntropyValue::infinity();
    } else {
        rec.value = EntropyValue::finite(final_sup.value);
    }
    rec.witness = BlochState{final_sup.witness};
    return rec;
}

}  // namespace detail

/// Multi-start minimization of the divergence over all four-outcome
/// bi-observables for targets at angle alpha. Deterministic given the seed:
/// restart seeds are derived up front and results are reduced in restart
/// order, so any thread count reproduces the serial answer. Every reported
/// measurement is feasible (projected), hence its divergence is a true upper
/// bound on the minimum; restart values below an uncertainty bound would
/// falsify it.
inline GlobalSearchResult global_minimax(double alpha, int restarts, double tol,
                                         std::uint64_t seed, int threads = 1) {
    if (restarts < 1) {
        throw std::invalid_argument("global_minimax: restarts must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("global_minimax: tolerance must be positive");
    }
    TargetPair tp = target_pair(alpha);
    const Vec3 a = tp.a.a, b = tp.b.a;
    const double final_tol = tol / 10.0;

    std::vector<std::uint64_t> seeds(restarts);
    {
        SplitMix64 master(seed);
        for (int i = 0; i < restarts; ++i) {
            seeds[i] = master.next_u64();
        }
    }
    GlobalSearchResult out;
    out.restarts.resize(restarts);
    int workers = std::max(1, std::min(threads, restarts));
    if (workers == 1) {
        for (int i = 0; i < restarts; ++i) {
            out.restarts[i] = detail::run_restart(a, b, seeds[i], final_tol);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (int i = w; i < restarts; i += workers) {
                    out.restarts[i] = detail::run_restart(a, b, seeds[i], final_tol);
                }
            });
        }
        for (std::thread &th : pool) {
            th.join();
        }
    }

    int best_i = -1;
    for (int i = 0; i < restarts; ++i) {
        if (out.restarts[i].value.infinite) {
            continue;
        }
        if (best_i < 0 || out.restarts[i].value.bits < out.restarts[best_i].value.bits) {
            best_i = i;
        }
    }
    OptResult best;
    best.requested_tol = tol;
    if (best_i < 0) {
        best.value = EntropyValue::infinity();
        best.converged = false;
    } else {
        best.value = out.restarts[best_i].value;
        best.witness_state = out.restarts[best_i].witness;
        best.achieved_tol = final_tol;
        best.converged = true;
        out.best_observable = out.restarts[best_i].observable;
    }
    best.witness_param = static_cast<double>(best_i);
    best.iterations = restarts;
    out.best = best;
    return out;
}

}  // namespace spinmur
