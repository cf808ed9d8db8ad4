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

// Monte Carlo measurement simulation: seeded, reproducible draws from exact
// outcome distributions, and the plug-in estimator of the error function
// built from independent sample runs. The sampler validates the analytic
// pipeline end to end; it does not correct plug-in bias (tolerance windows
// in the tests absorb it).

#include <cstdint>
#include <vector>

#include "spinmur/entropy.hpp"
#include "spinmur/qubit.hpp"
#include "spinmur/rng.hpp"

namespace spinmur {

/// Outcome counts of n independent measurement shots.
struct SampleRun {
    std::vector<std::uint64_t> counts;  // per outcome, in label order
    std::uint64_t n = 0;
    std::uint64_t seed = 0;

    Distribution empirical() const {
        std::vector<double> p;
        p.reserve(counts.size());
        for (std::uint64_t c : counts) {
            p.push_back(static_cast<double>(c) / static_cast<double>(n));
        }
        return Distribution{std::move(p)};
    }
};

/// Draw n i.i.d. outcomes of a POVM on a state by inverse-CDF sampling over
/// the exact outcome probabilities. Deterministic given the seed.
inline SampleRun sample_outcomes(const Povm &p, const BlochState &s, std::uint64_t n,
                                 std::uint64_t seed) {
    ValidationReport rep = povm_validate(p);
    if (!rep.ok) {
        throw std::invalid_argument(std::string("sample_outcomes: invalid POVM (") +
                                    rep.constraint + ")");
    }
    if (n < 1) {
        throw std::invalid_argument("sample_outcomes: need at least one shot");
    }
    std::vector<double> cdf;
    cdf.reserve(p.size());
    double acc = 0.0;
    for (const Effect &e : p.effects) {
        acc += std::min(std::max(outcome_prob(e, s), 0.0), 1.0);
        cdf.push_back(acc);
    }
    cdf.back() = 1.0;  // guard against rounding in the accumulated sum

    SampleRun run;
    run.counts.assign(p.size(), 0);
    run.n = n;
    run.seed = seed;
    SplitMix64 rng(seed);
    for (std::uint64_t shot = 0; shot < n; ++shot) {
        double u = rng.next_double();
        std::size_t k = 0;
        while (k + 1 < cdf.size() && u >= cdf[k]) {
            ++k;
        }
        ++run.counts[k];
    }
    return run;
}

/// Plug-in estimate of the error function: empirical target statistics
/// against the empirical marginals of the joint measurement, each from an
/// independent sample run (derived seeds: target k uses draw k of the seed
/// stream, the joint run uses the following draw). May return the infinite
/// flag when a small-sample empirical marginal misses an outcome that a
/// target hits.
inline EntropyValue empirical_error_function(const std::vector<Povm> &targets, const Povm &m,
                                             const BlochState &s, std::uint64_t n,
                                             std::uint64_t seed) {
    if (targets.size() != 2 && targets.size() != 3) {
        throw std::invalid_argument("empirical_error_function: expected 2 or 3 targets");
    }
    if (m.arity() != targets.size()) {
        throw std::invalid_argument("empirical_error_function: POVM arity mismatch");
    }
    std::vector<Distribution> emp_targets;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        emp_targets.push_back(
            sample_outcomes(targets[k], s, n, SplitMix64::derive(seed, k)).empirical());
    }
    SampleRun joint = sample_outcomes(m, s, n, SplitMix64::derive(seed, targets.size()));

    double bits = 0.0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        // Empirical marginal: sum joint counts over the other coordinates.
        std::uint64_t plus = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m.labels[i][k] == +1) {
                plus += joint.counts[i];
            }
        }
        double q_plus = static_cast<double>(plus) / static_cast<double>(n);
        Distribution q{{q_plus, 1.0 - q_plus}};
        EntropyValue term = rel_entropy(emp_targets[k], q);
        if (term.infinite) {
            return EntropyValue::infinity();
        }
        bits += term.bits;
    }
    return EntropyValue::finite(bits);
}

}  // namespace spinmur
