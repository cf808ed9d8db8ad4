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

// Optimization walkthrough: worst-case divergences of covariant members,
// the incompatibility degree at a few target angles, and a small
// unrestricted multi-start search over all four-outcome joint measurements.

#include <cstdio>

#include "spinmur/spinmur.hpp"

int main() {
    using namespace spinmur;

    std::vector<Povm> targets{spin_observable(Direction{1, 0, 0}),
                              spin_observable(Direction{0, 1, 0})};

    // Worst-case error of the optimal pair member over all states.
    Povm m0 = d4_family(FamilyParam{1.0 / std::sqrt(2.0), FamilyKind::D4});
    OptResult d = divergence(targets, m0, 1e-8);
    std::printf("worst-case pair error: %.12f at state (%.3f, %.3f, %.3f)\n", d.value.bits,
                d.witness_state.r.x, d.witness_state.r.y, d.witness_state.r.z);

    // Incompatibility degree for a few opening angles between the targets.
    std::printf("\nincompatibility degree:\n");
    std::printf("  %8s  %14s  %10s\n", "alpha", "I(alpha)", "gamma_opt");
    for (double alpha : {0.0, M_PI / 6, M_PI / 4, M_PI / 3, M_PI / 2}) {
        OptResult r = incompatibility_degree(alpha, 1e-4);
        std::printf("  %8.5f  %14.9f  %10.5f\n", alpha, r.value.bits, r.witness_param);
    }

    // Small unrestricted search: random joint measurements never beat the
    // covariant optimum at orthogonal targets.
    GlobalSearchResult g = global_minimax(M_PI / 2, 8, 1e-4, 0);
    std::printf("\nunrestricted 8-restart search at alpha = pi/2:\n");
    for (const RestartRecord &r : g.restarts) {
        if (r.value.infinite) {
            std::printf("  restart seed %llu: divergent candidate\n",
                        static_cast<unsigned long long>(r.seed));
        } else {
            std::printf("  restart seed %llu: %.9f\n",
                        static_cast<unsigned long long>(r.seed), r.value.bits);
        }
    }
    std::printf("best found: %.9f (covariant optimum %.9f)\n", g.best.value.bits,
                constants().c_orth2);
    return 0;
}
