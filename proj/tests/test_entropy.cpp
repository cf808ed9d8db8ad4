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

#include <catch2/catch_amalgamated.hpp>

#include "spinmur/closed_forms.hpp"
#include "spinmur/entropy.hpp"
#include "spinmur/families.hpp"
#include "spinmur/quadrature.hpp"
#include "spinmur/rng.hpp"
#include "support/matrix_oracle.hpp"

using namespace spinmur;

namespace {

std::vector<Povm> xy_targets() {
    return {spin_observable(Direction{1, 0, 0}), spin_observable(Direction{0, 1, 0})};
}

std::vector<Povm> marginals_of(const Povm &m) {
    std::vector<Povm> out;
    for (std::size_t k = 0; k < m.arity(); ++k) {
        out.push_back(marginal(m, k));
    }
    return out;
}

/// Direction-averaged error computed over the full sphere of measurement
/// directions in the lab frame — no reduction to a one-dimensional integral.
double mean_error_sphere_oracle(double eps, const Vec3 &r, int n_polar, int n_phi) {
    const double lambda = (1.0 - 2.0 * eps) / 2.0;
    double acc = 0.0;
    for (const auto &[node, weight] : testing::gauss_legendre(n_polar)) {
        double theta = std::acos(node);
        for (int j = 0; j < n_phi; ++j) {
            Vec3 a = spherical_direction(theta, 2.0 * M_PI * j / n_phi);
            double z = a.dot(r);
            double kl = 0.0;
            for (int sign : {+1, -1}) {
                double p = (1.0 + sign * z) / 2.0;
                double q = (1.0 + sign * lambda * z) / 2.0;
                if (p > 0.0) {
                    kl += p * std::log2(p / q);
                }
            }
            acc += weight / (2.0 * n_phi) * kl;
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("distribution validation", "[entropy]") {
    CHECK_NOTHROW(Distribution{{0.25, 0.75}});
    CHECK_NOTHROW(Distribution{{0.0, 1.0}});
    CHECK_THROWS_AS((Distribution{{-0.1, 1.1}}), std::invalid_argument);
    CHECK_THROWS_AS((Distribution{{0.5, 0.4}}), std::invalid_argument);
    // Tiny negative round-off is clamped to zero.
    Distribution d{{-1e-16, 1.0}};
    CHECK(d.probs[0] == 0.0);
}

TEST_CASE("relative entropy base cases", "[entropy]") {
    Distribution p{{0.3, 0.7}};
    CHECK(rel_entropy(p, p).bits == Catch::Approx(0.0).margin(1e-15));

    // Deterministic vs uniform: exactly one bit.
    CHECK(rel_entropy(Distribution{{1.0, 0.0}}, Distribution{{0.5, 0.5}}).bits ==
          Catch::Approx(1.0).margin(1e-15));

    // A hand-computed value: S((1/2,1/2) || (1/4,3/4)) = 1 - log2(3)/2.
    double expected = 1.0 - 0.5 * std::log2(3.0);
    CHECK(rel_entropy(Distribution{{0.5, 0.5}}, Distribution{{0.25, 0.75}}).bits ==
          Catch::Approx(expected).margin(1e-15));

    CHECK_THROWS_AS(rel_entropy(p, Distribution{{0.2, 0.3, 0.5}}), std::invalid_argument);
}

TEST_CASE("relative entropy zero conventions", "[entropy]") {
    // p = 0 terms contribute nothing, even against q = 0.
    CHECK(rel_entropy(Distribution{{0.0, 1.0}}, Distribution{{0.0, 1.0}}).bits == 0.0);
    CHECK(rel_entropy(Distribution{{0.0, 1.0}}, Distribution{{0.5, 0.5}}).bits ==
          Catch::Approx(1.0).margin(1e-15));
    // p > 0 against q = 0 raises the infinite flag.
    EntropyValue inf = rel_entropy(Distribution{{0.5, 0.5}}, Distribution{{0.0, 1.0}});
    CHECK(inf.infinite);
    CHECK(std::isinf(inf.bits));
    // Probabilities below the floor count as exact zeros.
    EntropyValue tiny = rel_entropy(Distribution{{1e-16, 1.0 - 1e-16}},
                                    Distribution{{0.0, 1.0}});
    CHECK_FALSE(tiny.infinite);
}

TEST_CASE("outcome distribution matches the trace oracle", "[entropy][oracle]") {
    SplitMix64 rng(41);
    Povm m = o_family(FamilyParam{0.3, FamilyKind::O});
    for (int i = 0; i < 20; ++i) {
        BlochState s{rng.ball_point()};
        Distribution d = outcome_distribution(m, s);
        double sum = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) {
            CHECK(d.probs[k] == Catch::Approx(testing::trace_prob(m.effects[k], s)).margin(1e-14));
            sum += d.probs[k];
        }
        CHECK(sum == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("error function at the optimal pair measurement", "[entropy]") {
    std::vector<Povm> marg = marginals_of(d4_family(FamilyParam{1.0 / std::sqrt(2.0),
                                                                FamilyKind::D4}));
    // Fully polarized x state: only the first target contributes,
    // S((1,0) || (1/2 + 1/(2 sqrt 2), ...)) = -log2(1/2 + 1/(2 sqrt 2)).
    EntropyValue at_x = error_function(xy_targets(), marg, BlochState{1, 0, 0});
    double expected = -std::log2(0.5 + 0.25 * std::sqrt(2.0));
    CHECK_FALSE(at_x.infinite);
    CHECK(at_x.bits == Catch::Approx(expected).margin(1e-15));
    CHECK(at_x.bits == Catch::Approx(0.228446696836388).margin(1e-12));

    // Center of the ball: all statistics uniform, zero error.
    CHECK(error_function(xy_targets(), marg, BlochState{0, 0, 0}).bits == 0.0);
    // Perpendicular polarization: both targets unbiased, zero error.
    CHECK(error_function(xy_targets(), marg, BlochState{0, 0, 1}).bits ==
          Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("error function propagates the infinite flag", "[entropy]") {
    std::vector<Povm> marg = marginals_of(d2_family(FamilyParam{1.0, FamilyKind::D2}));
    const double c2 = 1.0 / std::sqrt(2.0);
    // At gamma = 1 both marginals are the sharp bisector observable; a state
    // opposing the bisector nulls their '+' probability while the sharp
    // targets keep positive mass there.
    EntropyValue v = error_function(xy_targets(), marg, BlochState{-c2, -c2, 0});
    CHECK(v.infinite);
    // The aligned pure state nulls the opposite marginal outcome instead,
    // while the tilted targets keep mass there: also infinite.
    CHECK(error_function(xy_targets(), marg, BlochState{c2, c2, 0}).infinite);
    // Interior states leave both outcomes of the sharp marginal populated.
    CHECK_FALSE(error_function(xy_targets(), marg, BlochState{0.5 * c2, 0.5 * c2, 0}).infinite);
    CHECK_FALSE(error_function(xy_targets(), marg, BlochState{0, 0, 0.9}).infinite);
}

TEST_CASE("error function input validation", "[entropy]") {
    std::vector<Povm> marg = marginals_of(d4_family(FamilyParam{0.5, FamilyKind::D4}));
    std::vector<Povm> three{marg[0], marg[1], marg[0]};
    BlochState s{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(error_function(xy_targets(), three, s), std::invalid_argument);
    std::vector<Povm> one{marg[0]};
    CHECK_THROWS_AS(error_function(one, one, s), std::invalid_argument);
    std::vector<Povm> quaternary{d4_family(FamilyParam{0.5, FamilyKind::D4}),
                                 d4_family(FamilyParam{0.5, FamilyKind::D4})};
    CHECK_THROWS_AS(error_function(xy_targets(), quaternary, s), std::invalid_argument);
}

TEST_CASE("product identity of the error function", "[entropy]") {
    SplitMix64 rng(42);
    for (int i = 0; i < 50; ++i) {
        double c = rng.uniform(-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
        std::vector<Povm> marg = marginals_of(d4_family(FamilyParam{c, FamilyKind::D4}));
        BlochState s{rng.ball_point()};
        CHECK(tensor_identity_check(xy_targets(), marg, s) < 1e-12);
    }
    // The identity holds for any consistent pairing, so swapping the
    // marginals in the call cannot break it. What is pairing-sensitive is the
    // product itself: cross-pairing the factors of the second argument while
    // keeping the per-target sum changes the value.
    std::vector<Povm> marg = marginals_of(d4_family(FamilyParam{0.6, FamilyKind::D4}));
    BlochState s{0.9, 0.1, 0};
    Distribution p1 = outcome_distribution(xy_targets()[0], s);
    Distribution p2 = outcome_distribution(xy_targets()[1], s);
    Distribution q1 = outcome_distribution(marg[0], s);
    Distribution q2 = outcome_distribution(marg[1], s);
    std::vector<double> pp, q_cross;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            pp.push_back(p1.probs[i] * p2.probs[j]);
            q_cross.push_back(q2.probs[i] * q1.probs[j]);
        }
    }
    EntropyValue crossed = rel_entropy(Distribution{pp}, Distribution{q_cross});
    EntropyValue matched = error_function(xy_targets(), marg, s);
    REQUIRE_FALSE(crossed.infinite);
    REQUIRE_FALSE(matched.infinite);
    CHECK(std::abs(crossed.bits - matched.bits) > 1e-3);
}

TEST_CASE("adaptive quadrature on analytic integrands", "[entropy][quadrature]") {
    // Polynomial: exact for the embedded rule.
    QuadratureResult poly = integrate_adaptive(
        [](double x) { return x * x * x - 2.0 * x + 1.0; }, 0.0, 2.0, 1e-12);
    CHECK(poly.converged);
    CHECK(poly.value == Catch::Approx(2.0).margin(1e-12));

    QuadratureResult sine = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                               M_PI, 1e-12);
    CHECK(sine.converged);
    CHECK(sine.value == Catch::Approx(2.0).margin(1e-11));
    CHECK(sine.evaluations > 0);
}

TEST_CASE("adaptive quadrature subdivides an endpoint singularity", "[entropy][quadrature]") {
    QuadratureResult root = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); },
                                               1e-12, 1.0, 1e-9, 100000);
    CHECK(root.converged);
    CHECK(root.value == Catch::Approx(2.0).margin(1e-5));
}

TEST_CASE("mean error quadrature: frozen values", "[entropy]") {
    auto me = [](double eps, double r, double tol) {
        return mean_error_quadrature(FamilyParam{eps, FamilyKind::SO3}, BlochState{0, 0, r}, tol)
            .bits;
    };
    CHECK(me(1.0, 1.0, 1e-10) == Catch::Approx(0.597876934710844).margin(1e-9));
    CHECK(me(0.5, 1.0, 1e-10) == Catch::Approx(0.278652479555518).margin(1e-9));
    CHECK(me(0.5, 1.0, 1e-10) ==
          Catch::Approx(1.0 - std::numbers::log2e / 2.0).margin(1e-9));
    CHECK(me(0.0, 1.0, 1e-10) == Catch::Approx(constants().c_inf).margin(1e-9));
    CHECK(me(0.3, 0.0, 1e-10) == 0.0);
    CHECK_THROWS_AS(me(0.3, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(mean_error_quadrature(FamilyParam{0.5, FamilyKind::D2},
                                          BlochState{0, 0, 0.5}, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("mean error quadrature agrees with the full sphere average", "[entropy][oracle]") {
    // Independent two-dimensional oracle in the lab frame, no symmetry
    // reduction: spectral quadrature over all measurement directions.
    Vec3 tilted = Vec3{0.3, -0.5, 0.2}.normalized() * 0.7;
    for (double eps : {0.0, 0.2, 0.5, 0.9}) {
        double reduced =
            mean_error_quadrature(FamilyParam{eps, FamilyKind::SO3}, BlochState{tilted}, 1e-11)
                .bits;
        double oracle = mean_error_sphere_oracle(eps, tilted, 48, 64);
        CHECK(reduced == Catch::Approx(oracle).margin(1e-9));
    }
    // Pure state: the integrand loses analyticity at the antipode, so the
    // fixed-order oracle is only good to ~1e-6 there.
    Vec3 pure = Vec3{0.6, 0.48, 0.64}.normalized();
    double reduced =
        mean_error_quadrature(FamilyParam{0.1, FamilyKind::SO3}, BlochState{pure}, 1e-11).bits;
    CHECK(reduced ==
          Catch::Approx(mean_error_sphere_oracle(0.1, pure, 200, 128)).margin(2e-6));
}

TEST_CASE("mean error depends only on the radius", "[entropy]") {
    SplitMix64 rng(43);
    FamilyParam eps{0.25, FamilyKind::SO3};
    double ref = mean_error_quadrature(eps, BlochState{0, 0, 0.8}, 1e-11).bits;
    for (int i = 0; i < 5; ++i) {
        BlochState s{0.8 * rng.unit_vector()};
        CHECK(mean_error_quadrature(eps, s, 1e-11).bits == Catch::Approx(ref).margin(1e-10));
    }
}
