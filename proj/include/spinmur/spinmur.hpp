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

// Umbrella header: pulls in the whole spinmur library.

#include "spinmur/geometry.hpp"
#include "spinmur/qubit.hpp"
#include "spinmur/families.hpp"
#include "spinmur/quadrature.hpp"
#include "spinmur/entropy.hpp"
#include "spinmur/closed_forms.hpp"
#include "spinmur/rng.hpp"
#include "spinmur/minimax.hpp"
#include "spinmur/sampler.hpp"
#include "spinmur/reports.hpp"
#include "spinmur/verify.hpp"
