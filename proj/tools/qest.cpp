// Copyright 2026 The qest Authors
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

// qest: bounds and optimal measurements for two-parameter estimation with
// pure state probes.
//
// Subcommands: bound, measure, verify, grid-sweep, mixed-bound.
// Exit codes: 0 success, 1 I/O or parse error, 2 model-domain error,
// 3 verification failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "qest/bound.hpp"
#include "qest/errors.hpp"
#include "qest/gridstate.hpp"
#include "qest/io.hpp"
#include "qest/measurement.hpp"
#include "qest/mixed.hpp"
#include "qest/oracle.hpp"
#include "qest/rng.hpp"
#include "qest/tolerances.hpp"

namespace {

using namespace qest;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerify = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QEST_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            throw ParseError("QEST_SEED is not a valid integer: " + std::string(env));
        }
    }
    return kDefaultFuzzSeed;
}

std::string json_field(const std::string& key, const std::string& value, bool quote) {
    return "\"" + key + "\": " + (quote ? "\"" + value + "\"" : value);
}

PureModel load_pure_model(const std::string& path) {
    const io::ModelFile file = io::parse_model_file(path);
    if (!file.pure) throw ParseError(path + ": no pure-state fields (psi0/dpsi)");
    return *file.pure;
}

MixedModel load_mixed_model(const std::string& path) {
    const io::ModelFile file = io::parse_model_file(path);
    if (!file.mixed) throw ParseError(path + ": no mixed section");
    return *file.mixed;
}

std::string bound_json(const BoundResult& r, double c_sld, double beta) {
    std::ostringstream out;
    out << "{\n"
        << "  " << json_field("c_mi", io::format_double(r.value), false) << ",\n"
        << "  " << json_field("c_sld", io::format_double(c_sld), false) << ",\n"
        << "  " << json_field("beta", io::format_double(beta), false) << ",\n"
        << "  " << json_field("eta", io::format_double(r.eta), false) << ",\n"
        << "  " << json_field("phi_star", io::format_double(r.phi_star), false) << ",\n"
        << "  " << json_field("s1", io::format_double(r.s1), false) << ",\n"
        << "  " << json_field("s2", io::format_double(r.s2), false) << ",\n"
        << "  " << json_field("branch", to_string(r.branch), true) << "\n"
        << "}";
    return out.str();
}

int cmd_bound(const std::string& path) {
    const PureModel model = load_pure_model(path);
    const BoundResult r = cmi_for_model(model);
    const FisherPair fp = fisher_pair(model);
    std::cout << bound_json(r, r.s1 + r.s2, fp.beta) << "\n";
    return kExitOk;
}

int cmd_measure(const std::string& path, std::optional<double> phi_override,
                const std::string& out_path) {
    const PureModel model = load_pure_model(path);
    Povm povm;
    BoundResult bound;
    if (phi_override) {
        // Same pipeline, evaluated at a caller-chosen trade-off angle.
        const PureModel g = gauge_fix(model);
        const FisherPair fp = fisher_pair(g);
        const Mat2 j_inv_sqrt = sym2_inv_sqrt(fp.qfi);
        const Mat2 s = j_inv_sqrt * g.weight * j_inv_sqrt;
        const Mat2 rot = canonical_q(s);
        bound = cmi_for_model(g);
        bound.phi_star = *phi_override;
        auto [form, record] = to_standard_form(g);
        Mat2 q = polar_orthogonal(record.jacobian.inverse() * j_inv_sqrt * rot);
        if (q.determinant() < 0.0) q.col(1) = -q.col(1);
        Povm base = (form.dim == 3) ? optimal_projectors(form, *phi_override)
                                    : optimal_povm_beta1(form, *phi_override);
        povm = pull_back(rotate_measurement(base, form, q), record);
    } else {
        std::tie(povm, bound) = optimal_measurement_for_weight(model);
    }
    io::write_povm_file(out_path, povm);

    const Cfim cf = classical_fisher(povm, model);
    const FisherPair fp = fisher_pair(model);
    const double achieved = (model.weight * cf.fisher.inverse()).trace();
    const double det_g = std::max(0.0, cf.normalized.determinant());
    const double det_ig = std::max(0.0, (Mat2::Identity() - cf.normalized).determinant());
    const double slack =
        std::sqrt(det_g) - std::sqrt(det_ig) - std::sqrt(1.0 - fp.beta * fp.beta);

    std::ostringstream out;
    out << "{\n"
        << "  " << json_field("c_mi", io::format_double(bound.value), false) << ",\n"
        << "  " << json_field("achieved", io::format_double(achieved), false) << ",\n"
        << "  " << json_field("eq6_slack", io::format_double(slack), false) << ",\n"
        << "  " << json_field("phi", io::format_double(bound.phi_star), false) << ",\n"
        << "  " << json_field("outcomes", std::to_string(povm.elements.size()), false)
        << ",\n"
        << "  " << json_field("povm_path", out_path, true) << "\n"
        << "}";
    std::cout << out.str() << "\n";
    return kExitOk;
}

void print_report_tsv(const oracle::OracleReport& r) {
    std::cout << r.name << "\t" << r.samples << "\t" << io::format_double(r.max_violation)
              << "\t" << io::format_double(r.tolerance) << "\t"
              << (r.passed ? "pass" : "FAIL") << "\n";
}

int cmd_verify(long samples, std::uint64_t seed, const std::vector<int>& dims, int jobs,
               bool self_test) {
    std::cout << "check\tsamples\tmax_violation\ttolerance\tstatus\n";
    bool all_passed = true;

    auto reports = oracle::run_inequality_fuzz(samples, dims, seed, jobs);
    const long quartic_samples = std::min<long>(samples, 1000);
    reports.push_back(oracle::quartic_vs_grid(quartic_samples, seed));

    if (self_test) {
        // Negative control: report the regret slack of the unattainable
        // F = J on an incompatible model; the checker must flag it.
        const StandardForm form = make_standard_form(0.3, 3);
        PureModel m;
        m.psi0 = form.probe;
        m.dpsi = {form.deriv[0], form.deriv[1]};
        const FisherPair fp = fisher_pair(m);
        Cfim fabricated;
        fabricated.fisher = fp.qfi;
        fabricated.normalized = Mat2::Identity();
        const double violation = -regret_check(fabricated, fp);
        reports.push_back(oracle::OracleReport{"self_test_violation", violation, 1,
                                               tol::kFuzzRegret,
                                               violation <= tol::kFuzzRegret});
    }

    for (const auto& r : reports) {
        print_report_tsv(r);
        all_passed = all_passed && r.passed;
    }
    return all_passed ? kExitOk : kExitVerify;
}

int cmd_grid_sweep(const std::vector<double>& deltas, const std::string& out_path,
                   int jobs) {
    const auto rows = sweep(deltas, Mat2::Identity(), jobs);
    std::ostringstream csv;
    csv << "delta,n_delta,nbar,j11,j22,beta,c_sld,c_mi\n";
    for (const auto& row : rows) {
        csv << io::format_double(row.delta) << "," << io::format_double(row.n_delta) << ","
            << io::format_double(row.nbar) << "," << io::format_double(row.j11) << ","
            << io::format_double(row.j22) << "," << io::format_double(row.beta) << ","
            << io::format_double(row.c_sld) << "," << io::format_double(row.c_mi) << "\n";
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open file for writing: " + out_path);
        out << csv.str();
    }
    return kExitOk;
}

int cmd_mixed_bound(const std::string& path) {
    const MixedModel model = load_mixed_model(path);
    const BoundResult r = cstar(model);
    const FisherPair fp = fisher_pair(model);
    std::ostringstream out;
    out << "{\n"
        << "  " << json_field("c_star", io::format_double(r.value), false) << ",\n"
        << "  " << json_field("beta", io::format_double(fp.beta), false) << ",\n"
        << "  " << json_field("attainable", "false", false) << "\n"
        << "}";
    std::cout << out.str() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attainable Cramer-Rao bounds and optimal measurements for "
                 "two-parameter estimation with pure state probes"};
    app.require_subcommand(1);

    std::string model_path;
    std::string povm_out = "povm.json";
    std::optional<double> phi_override;
    long samples = 5000;
    std::uint64_t seed_flag = 0;
    bool seed_set = false;
    std::vector<int> dims = {2, 3, 4, 5};
    int jobs = 0;
    bool self_test = false;
    std::vector<double> deltas = {0.60, 0.55, 0.50, 0.45, 0.40,
                                  0.35, 0.30, 0.25, 0.20, 0.15};
    std::string csv_out;

    auto* bound_cmd = app.add_subcommand("bound", "Evaluate the attainable bound");
    bound_cmd->add_option("model", model_path, "model JSON file")->required();

    auto* measure_cmd =
        app.add_subcommand("measure", "Construct the optimal measurement");
    measure_cmd->add_option("model", model_path, "model JSON file")->required();
    measure_cmd->add_option("--phi", phi_override,
                            "override the trade-off angle (default: the minimizer)");
    measure_cmd->add_option("--out", povm_out, "output POVM path")
        ->capture_default_str();

    auto* verify_cmd =
        app.add_subcommand("verify", "Run the brute-force verification oracles");
    verify_cmd->add_option("--samples", samples, "number of fuzz samples")
        ->capture_default_str();
    verify_cmd->add_option("--seed", seed_flag, "fuzz seed (overrides QEST_SEED)")
        ->each([&](const std::string&) { seed_set = true; });
    verify_cmd->add_option("--dims", dims, "Hilbert-space dimensions to sample")
        ->capture_default_str();
    verify_cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)")
        ->capture_default_str();
    verify_cmd->add_flag("--self-test-violation", self_test,
                         "include a deliberate violation (negative control)");

    auto* sweep_cmd =
        app.add_subcommand("grid-sweep", "Displacement sensing with grid states");
    sweep_cmd->add_option("--deltas", deltas, "squeezing values")->capture_default_str();
    sweep_cmd->add_option("--out", csv_out, "CSV output path (default: stdout)");
    sweep_cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)")
        ->capture_default_str();

    auto* mixed_cmd =
        app.add_subcommand("mixed-bound", "Purification lower bound for mixed states");
    mixed_cmd->add_option("model", model_path, "model JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (bound_cmd->parsed()) return cmd_bound(model_path);
        if (measure_cmd->parsed()) return cmd_measure(model_path, phi_override, povm_out);
        if (verify_cmd->parsed()) {
            const std::uint64_t seed = seed_set ? seed_flag : default_seed();
            return cmd_verify(samples, seed, dims, jobs, self_test);
        }
        if (sweep_cmd->parsed()) return cmd_grid_sweep(deltas, csv_out, jobs);
        if (mixed_cmd->parsed()) return cmd_mixed_bound(model_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
