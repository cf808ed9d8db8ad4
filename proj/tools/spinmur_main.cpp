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

// Command-line surface of the spinmur library.
//
// Subcommands: constants, curve, divergence, verify, sample. All output is
// deterministic: numbers are rounded to 12 significant digits before JSON
// serialization, CSV uses '.' decimals and '\n' line endings, and every
// randomized command echoes its seed and generator name. Exit codes:
// 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinmur/spinmur.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

/// A double rounded to 12 significant digits, as a JSON number; non-finite
/// values (the +infinity flag) become the string "inf".
ordered_json num12(double x) {
    if (!std::isfinite(x)) {
        return ordered_json("inf");
    }
    return ordered_json(std::strtod(spinmur::format_sig12(x).c_str(), nullptr));
}

ordered_json vec12(const spinmur::Vec3 &v) {
    return ordered_json::array({num12(v.x), num12(v.y), num12(v.z)});
}

ordered_json entropy12(const spinmur::EntropyValue &e) {
    return e.infinite ? ordered_json("inf") : num12(e.bits);
}

void emit(const ordered_json &doc) { std::cout << doc.dump(2) << "\n"; }

void opt_metadata(ordered_json &doc, const spinmur::OptResult &r) {
    doc["value"] = entropy12(r.value);
    doc["infinite"] = r.value.infinite;
    doc["witness_state"] = vec12(r.witness_state.r);
    doc["iterations"] = r.iterations;
    doc["requested_tol"] = num12(r.requested_tol);
    doc["achieved_tol"] = num12(r.achieved_tol);
    doc["converged"] = r.converged;
}

spinmur::FamilyKind family_kind(const std::string &family) {
    using spinmur::FamilyKind;
    if (family == "d4") {
        return FamilyKind::D4;
    }
    if (family == "o") {
        return FamilyKind::O;
    }
    if (family == "d2") {
        return FamilyKind::D2;
    }
    if (family == "so3") {
        return FamilyKind::SO3;
    }
    throw std::invalid_argument("unknown family: " + family);
}

/// Build the family parameter from command-line text. Values within 1e-6 of
/// the admissible interval are clamped onto it, so decimal truncations of
/// irrational endpoints (0.57735027 for 1/sqrt3, 0.70710678 for 1/sqrt2)
/// denote the endpoint itself; anything farther out is a usage error.
spinmur::FamilyParam cli_param(const std::string &family, double value) {
    spinmur::FamilyKind kind = family_kind(family);
    auto [lo, hi] = spinmur::family_interval(kind);
    const double slack = 1e-6;
    if (value < lo - slack || value > hi + slack) {
        char msg[160];
        std::snprintf(msg, sizeof(msg), "--param %.10g outside [%.10g, %.10g] for family %s",
                      value, lo, hi, family.c_str());
        throw std::invalid_argument(msg);
    }
    return spinmur::FamilyParam{std::clamp(value, lo, hi), kind};
}

spinmur::Povm family_member(const std::string &family, double param,
                            const spinmur::Vec3 &direction) {
    using namespace spinmur;
    FamilyParam p = cli_param(family, param);
    switch (p.kind) {
        case FamilyKind::D4: return d4_family(p);
        case FamilyKind::O: return o_family(p);
        case FamilyKind::D2: return d2_family(p);
        default: return so3_marginal(p, Direction{direction});
    }
}

int run_constants() {
    spinmur::Constants k = spinmur::constants();
    ordered_json doc;
    doc["command"] = "constants";
    doc["constants"]["c_orth2"] = num12(k.c_orth2);
    doc["constants"]["c_orth3"] = num12(k.c_orth3);
    doc["constants"]["c_inf"] = num12(k.c_inf);
    doc["constants"]["mean_c_orth2"] = num12(k.mean_c_orth2);
    doc["constants"]["mean_c_orth3"] = num12(k.mean_c_orth3);
    doc["constants"]["mean_c_inf"] = num12(k.mean_c_inf);
    doc["formulas"]["c_orth2"] = "log2(2*(2-sqrt(2)))";
    doc["formulas"]["c_orth3"] = "log2(3-sqrt(3))";
    doc["formulas"]["c_inf"] = "(3/4)*log2(4/3)-(log2(e)-1)/2";
    doc["formulas"]["mean_c_orth2"] = "c_orth2/2";
    doc["formulas"]["mean_c_orth3"] = "c_orth3/3";
    doc["formulas"]["mean_c_inf"] = "c_inf";
    emit(doc);
    return 0;
}

int run_curve(int steps, double tol, const std::string &csv_path,
              const std::string &svg_path) {
    std::vector<spinmur::CurvePoint> points = spinmur::compute_curve(steps, tol);
    std::string csv = spinmur::curve_csv(points);
    std::cout << csv;
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open " + csv_path);
        }
        out << csv;
    }
    if (!svg_path.empty()) {
        std::ofstream out(svg_path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open " + svg_path);
        }
        out << spinmur::curve_svg(points);
    }
    return 0;
}

int run_divergence(const std::string &family, double param, const std::string &targets,
                   double tol, bool degrees) {
    using namespace spinmur;
    param = cli_param(family, param).value;  // clamp truncated endpoint input
    ordered_json doc;
    doc["command"] = "divergence";
    doc["family"] = family;
    doc["param"] = num12(param);
    doc["targets"] = targets;
    doc["tol"] = num12(tol);

    if (targets == "all") {
        if (family != "so3") {
            throw std::invalid_argument("targets=all requires --family so3");
        }
        OptResult r = mean_divergence(param, tol);
        opt_metadata(doc, r);
        emit(doc);
        return 0;
    }
    if (family == "so3") {
        throw std::invalid_argument("--family so3 supports only --targets all");
    }

    std::vector<Povm> target_povms;
    if (targets == "xy") {
        target_povms = {spin_observable(Direction{1, 0, 0}), spin_observable(Direction{0, 1, 0})};
    } else if (targets == "xyz") {
        target_povms = {spin_observable(Direction{1, 0, 0}), spin_observable(Direction{0, 1, 0}),
                        spin_observable(Direction{0, 0, 1})};
    } else if (targets.rfind("alpha:", 0) == 0) {
        std::size_t pos = 0;
        double alpha = std::stod(targets.substr(6), &pos);
        if (pos != targets.size() - 6) {
            throw std::invalid_argument("malformed targets spec: " + targets);
        }
        if (degrees) {
            alpha *= M_PI / 180.0;
        }
        doc["alpha"] = num12(alpha);
        TargetPair tp = target_pair(alpha);
        target_povms = {spin_observable(tp.a), spin_observable(tp.b)};
    } else {
        throw std::invalid_argument("unknown targets spec: " + targets);
    }

    Povm m = family_member(family, param, Vec3{0, 0, 1});
    if (m.arity() != target_povms.size()) {
        throw std::invalid_argument("targets arity does not match family " + family);
    }
    OptResult r = divergence(target_povms, m, tol);
    opt_metadata(doc, r);
    emit(doc);
    return 0;
}

int run_verify(const std::string &suite, std::uint64_t seed, int threads) {
    std::vector<spinmur::VerifySuiteResult> results = spinmur::run_verify(suite, seed, threads);
    ordered_json doc;
    doc["command"] = "verify";
    doc["suite"] = suite;
    doc["seed"] = seed;
    doc["rng"] = spinmur::kRngName;
    doc["threads"] = threads;
    bool all_passed = true;
    doc["suites"] = ordered_json::array();
    for (const spinmur::VerifySuiteResult &r : results) {
        ordered_json js;
        js["suite"] = r.suite;
        js["passed"] = r.passed;
        js["checks"] = ordered_json::array();
        for (const spinmur::VerifyCheck &c : r.checks) {
            ordered_json jc;
            jc["name"] = c.name;
            jc["value"] = num12(c.value);
            jc["bound"] = num12(c.bound);
            jc["passed"] = c.passed;
            js["checks"].push_back(jc);
        }
        doc["suites"].push_back(js);
        all_passed = all_passed && r.passed;
    }
    doc["passed"] = all_passed;
    emit(doc);
    return all_passed ? 0 : 1;
}

int run_sample(const std::string &family, double param, const std::vector<double> &state,
               std::uint64_t n, std::uint64_t seed, const std::vector<double> &direction) {
    using namespace spinmur;
    if (state.size() != 3) {
        throw std::invalid_argument("--state expects rx,ry,rz");
    }
    if (!direction.empty() && direction.size() != 3) {
        throw std::invalid_argument("--direction expects ax,ay,az");
    }
    if (!direction.empty() && family != "so3") {
        throw std::invalid_argument("--direction applies only to --family so3");
    }
    Vec3 dir{0, 0, 1};
    if (!direction.empty()) {
        dir = Vec3{direction[0], direction[1], direction[2]}.normalized();
    }
    param = cli_param(family, param).value;  // clamp truncated endpoint input
    Povm m = family_member(family, param, dir);
    BlochState s{state[0], state[1], state[2]};
    SampleRun run = sample_outcomes(m, s, n, seed);

    ordered_json doc;
    doc["command"] = "sample";
    doc["family"] = family;
    doc["param"] = num12(param);
    if (family == "so3") {
        doc["direction"] = vec12(dir);
    }
    doc["state"] = vec12(s.r);
    doc["n"] = n;
    doc["seed"] = seed;
    doc["rng"] = kRngName;
    doc["labels"] = ordered_json::array();
    for (const OutcomeLabel &l : m.labels) {
        doc["labels"].push_back(l);
    }
    doc["counts"] = run.counts;
    doc["frequencies"] = ordered_json::array();
    for (double f : run.empirical().probs) {
        doc["frequencies"].push_back(num12(f));
    }
    emit(doc);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"entropic measurement-uncertainty toolkit for spin-1/2 observables"};
    app.require_subcommand(1);
    int rc = 0;

    CLI::App *c_const = app.add_subcommand("constants", "print the named bound constants");
    c_const->callback([&]() { rc = run_constants(); });

    CLI::App *c_curve =
        app.add_subcommand("curve", "incompatibility degree over target opening angles");
    int steps = 25;
    double curve_tol = 1e-4;
    std::string csv_path, svg_path;
    c_curve->add_option("--steps", steps, "grid points on [0,pi]")
        ->required()
        ->check(CLI::Range(2, 100000));
    c_curve->add_option("--tol", curve_tol, "optimization tolerance")
        ->required()
        ->check(CLI::PositiveNumber);
    c_curve->add_option("--csv", csv_path, "also write the CSV to this file");
    c_curve->add_option("--svg", svg_path, "write an SVG line plot to this file");
    c_curve->callback([&]() { rc = run_curve(steps, curve_tol, csv_path, svg_path); });

    CLI::App *c_div =
        app.add_subcommand("divergence", "worst-case error of a family member against targets");
    std::string div_family, div_targets;
    double div_param = 0.0, div_tol = 1e-6;
    bool degrees = false;
    c_div->add_option("--family", div_family, "approximating family")
        ->required()
        ->check(CLI::IsMember({"d4", "o", "d2", "so3"}));
    c_div->add_option("--param", div_param, "family parameter")->required();
    c_div->add_option("--targets", div_targets, "xy | xyz | alpha:<value> | all")->required();
    c_div->add_option("--tol", div_tol, "optimization tolerance")
        ->required()
        ->check(CLI::PositiveNumber);
    c_div->add_flag("--degrees", degrees, "interpret alpha:<value> in degrees");
    c_div->callback(
        [&]() { rc = run_divergence(div_family, div_param, div_targets, div_tol, degrees); });

    CLI::App *c_verif = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::uint64_t verify_seed = 0;
    int threads = 1;
    c_verif->add_option("--suite", suite, "core | closed-forms | minimax | sampler | all")
        ->required()
        ->check(CLI::IsMember({"core", "closed-forms", "minimax", "sampler", "all"}));
    c_verif->add_option("--seed", verify_seed, "seed for randomized checks (default 0)");
    c_verif->add_option("--threads", threads, "worker cap for internal parallelism")
        ->check(CLI::Range(1, 256));
    c_verif->callback([&]() { rc = run_verify(suite, verify_seed, threads); });

    CLI::App *c_sample = app.add_subcommand("sample", "Monte Carlo outcome sampling");
    std::string sample_family;
    double sample_param = 0.0;
    std::vector<double> state, direction;
    std::uint64_t n = 0, sample_seed = 0;
    c_sample->add_option("--family", sample_family, "family of the sampled measurement")
        ->required()
        ->check(CLI::IsMember({"d4", "o", "d2", "so3"}));
    c_sample->add_option("--param", sample_param, "family parameter")->required();
    c_sample->add_option("--state", state, "Bloch vector rx,ry,rz")->required()->delimiter(',');
    c_sample->add_option("--n", n, "number of shots")->required()->check(CLI::PositiveNumber);
    c_sample->add_option("--seed", sample_seed, "RNG seed (default 0)");
    c_sample
        ->add_option("--direction", direction, "measurement direction ax,ay,az (so3 only)")
        ->delimiter(',');
    c_sample->callback([&]() {
        rc = run_sample(sample_family, sample_param, state, n, sample_seed, direction);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
