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

// Acceptance suite: every release-gating numerical guarantee, one line of
// output per criterion.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qest/bound.hpp"
#include "qest/canonical.hpp"
#include "qest/gridstate.hpp"
#include "qest/measurement.hpp"
#include "qest/mixed.hpp"
#include "qest/oracle.hpp"
#include "qest/rng.hpp"
#include "test_helpers.hpp"

using namespace qest;
using namespace qest::testing;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

bool check(bool ok, std::string& detail, const std::string& msg) {
    if (!ok && detail.empty()) detail = msg;
    return ok;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// 1. Quartic path vs grid oracle on 1000 seeded triples.
bool criterion_quartic_vs_oracle(std::string& detail) {
    double max_rel = 0.0;
    for (long i = 0; i < 1000; ++i) {
        SplitMix64 rng(SplitMix64::substream(0xACC1, static_cast<std::uint64_t>(i)));
        const double s1 = 10.0 * std::max(rng.uniform(), 1e-12);
        const double s2 = 10.0 * std::max(rng.uniform(), 1e-12);
        const double beta = rng.uniform();
        const BoundResult fast = cmi(s1, s2, beta);
        const auto [slow, phi] = oracle::grid_min_cmi(s1, s2, beta);
        (void)phi;
        max_rel = std::max(max_rel, std::abs(fast.value - slow) / (1.0 + fast.value));
    }
    detail = "max |cmi - oracle|/(1+value) = " + fmt(max_rel);
    return max_rel <= 1e-9;
}

// 2. Closed-form fixed points at 1e-10.
bool criterion_fixed_points(std::string& detail) {
    bool ok = true;
    ok &= check(std::abs(cmi(1.0, 1.0, 0.0).value - 2.0) <= 1e-10, detail,
                "cmi(1,1,0) != 2");
    ok &= check(std::abs(cmi(4.0, 1.0, 1.0).value - 9.0) <= 1e-10, detail,
                "cmi(4,1,1) != 9");
    SplitMix64 rng(0xACC2);
    for (int i = 0; i < 100 && ok; ++i) {
        const double s1 = 10.0 * rng.uniform() + 1e-9;
        const double beta = rng.uniform();
        ok &= check(std::abs(cmi(s1, 0.0, beta).value - s1) <= 1e-10, detail,
                    "cmi(s1,0,beta) != s1");
    }
    for (int i = 0; i < 100 && ok; ++i) {
        const double s = 10.0 * rng.uniform() + 1e-9;
        const double beta = rng.uniform();
        const double expect = 4.0 * s / (1.0 + std::sqrt(1.0 - beta * beta));
        ok &= check(std::abs(cmi(s, s, beta).value - expect) <= 1e-10, detail,
                    "cmi(s,s,beta) off the equal-eigenvalue formula");
    }
    if (ok) detail = "all closed forms within 1e-10";
    return ok;
}

// 3. Saturation of the determinant inequality on a 20x20 (eta, phi) grid.
bool criterion_saturation_grid(std::string& detail) {
    double max_slack = 0.0;
    double max_eig_err = 0.0;
    const int n = 20;
    for (int i = 0; i < n; ++i) {
        const double eta = 0.05 + (0.25 * M_PI - 0.05) * i / (n - 1);
        const double beta = std::sin(2.0 * eta);
        const int dim = (1.0 - beta < 1e-9) ? 2 : 3;
        const StandardForm form = make_standard_form(eta, dim);
        const PureModel m = model_from_standard_form(form);
        const double span = (dim == 2) ? 0.25 * M_PI : eta;
        for (int j = 0; j < n; ++j) {
            // Cell-centered grid over [-span, span]: at the exact interval
            // endpoints det(I - G) is identically zero and one ulp of noise
            // in F already costs sqrt(eps) ~ 1e-8 in the slack, which no
            // double-precision route can certify tighter.
            const double phi = -span + (2.0 * j + 1.0) * span / n;
            const Povm povm = (dim == 3) ? optimal_projectors(form, phi)
                                         : optimal_povm_beta1(form, phi);
            const Cfim cf = classical_fisher(povm, m);
            const double det_g = std::max(0.0, cf.normalized.determinant());
            const double det_ig =
                std::max(0.0, (Mat2::Identity() - cf.normalized).determinant());
            const double slack = std::abs(std::sqrt(det_g) - std::sqrt(det_ig) -
                                          std::sqrt(1.0 - beta * beta));
            max_slack = std::max(max_slack, slack);

            const double hi = std::pow(std::cos(std::abs(phi) - span), 2);
            const double lo = std::pow(std::cos(std::abs(phi) + span), 2);
            const auto [g1, g2] = sym2_eigenvalues(cf.normalized);
            max_eig_err = std::max(max_eig_err,
                                   std::max(std::abs(g1 - hi), std::abs(g2 - lo)));
        }
    }
    detail = "max |eq6 slack| = " + fmt(max_slack) +
             ", max eigenvalue error = " + fmt(max_eig_err);
    return max_slack <= 1e-8 && max_eig_err <= 1e-9;
}

// 4. End-to-end attainability on 200 random models with random weights.
bool criterion_attainability(std::string& detail) {
    double max_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int d = 2 + i % 4;
        const PureModel m = oracle::random_model(d, SplitMix64::substream(0xACC4, i));
        const auto [povm, bound] = optimal_measurement_for_weight(m);
        validate_povm(povm); // PSD/completeness at 1e-10
        const Cfim cf = classical_fisher(povm, m);
        const double achieved = (m.weight * cf.fisher.inverse()).trace();
        max_err = std::max(max_err,
                           std::abs(achieved - bound.value) / (1.0 + bound.value));
    }
    detail = "max |achieved - c_mi|/(1+c_mi) = " + fmt(max_err);
    return max_err <= 1e-8;
}

// 5. Inequality fuzz: 10^4 random POVMs never violate eq6 or the regret.
bool criterion_inequality_fuzz(std::string& detail) {
    const auto reports = oracle::run_inequality_fuzz(10000, {2, 3, 4, 5}, kDefaultFuzzSeed);
    detail = "eq6 max violation = " + fmt(reports[0].max_violation) +
             ", regret max violation = " + fmt(reports[1].max_violation);
    return reports[0].passed && reports[1].passed;
}

// 6. Qubit universality: 500 random d=2 models have beta = 1.
bool criterion_qubit_beta(std::string& detail) {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const PureModel m = oracle::random_model(2, SplitMix64::substream(0xACC6, i));
        worst = std::max(worst, std::abs(fisher_pair(m).beta - 1.0));
    }
    detail = "max |beta - 1| = " + fmt(worst);
    return worst <= 1e-9;
}

// 7. Branciard measurement is independent of its free parameters.
bool criterion_branciard_independence(std::string& detail) {
    const double eta = 0.32, phi = 0.11;
    const StandardForm form = make_standard_form(eta, 3);
    const PureModel m = model_from_standard_form(form);
    Mat2 expect = Mat2::Zero();
    expect(0, 0) = std::pow(std::cos(phi + eta), 2);
    expect(1, 1) = std::pow(std::cos(phi - eta), 2);
    const double beta = std::sin(2.0 * eta);

    double max_err = 0.0;
    SplitMix64 rng(0xACC7);
    for (int i = 0; i < 50; ++i) {
        const double q = 3.0 * (rng.uniform() - 0.5);
        const double r = 3.0 * (rng.uniform() - 0.5);
        if (q * q + r * r < 1e-3) continue;
        const double n1 = 1.0 + (1.0 - beta * beta) * (q * q + r * r);
        const double s = std::exp(rng.gaussian()) * std::sqrt(n1 / (1.0 - beta * beta));
        const Povm povm = branciard_measurement(form, phi, q, r, s);
        const Cfim cf = classical_fisher(povm, m);
        max_err = std::max(max_err, (cf.fisher - expect).cwiseAbs().maxCoeff());
    }
    detail = "max |F - diag(cos^2(phi+eta), cos^2(phi-eta))| = " + fmt(max_err);
    return max_err <= 1e-9;
}

// 8. Mixed-state bound equals the pure pipeline on the explicit purification.
bool criterion_mixed_consistency(std::string& detail) {
    double max_val_err = 0.0, max_fisher_err = 0.0, max_beta_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        SplitMix64 rng(SplitMix64::substream(0xACC8, i));
        const int d = 3, rank = 2;
        CMat u = random_unitary(d, rng);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
        double total = 0.0;
        for (int k = 0; k < rank; ++k) total += (p(k) = rng.uniform() + 0.1);
        p /= total;
        MixedModel m;
        m.rho = CMat::Zero(d, d);
        for (int k = 0; k < rank; ++k) m.rho += p(k) * (u.col(k) * u.col(k).adjoint());
        for (auto& dr : m.drho) {
            CMat h(d, d);
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index b = 0; b < d; ++b) h(a, b) = rng.complex_gaussian();
            }
            h = 0.5 * (h + h.adjoint()).eval();
            h -= (m.rho * h).trace().real() * CMat::Identity(d, d);
            dr = 0.5 * (m.rho * h + h * m.rho);
        }
        Mat2 g;
        g << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
        m.weight = g.transpose() * g + 0.1 * Mat2::Identity();

        const FisherPair mixed_fp = fisher_pair(m);
        const PureModel pure = purify(m);
        const FisherPair pure_fp = fisher_pair(pure);
        const BoundResult via_mixed = cstar(m);
        const BoundResult via_pure = cmi_for_model(pure);

        max_val_err = std::max(max_val_err, std::abs(via_mixed.value - via_pure.value) /
                                               (1.0 + via_pure.value));
        max_fisher_err =
            std::max(max_fisher_err, (mixed_fp.qfi - pure_fp.qfi).cwiseAbs().maxCoeff() /
                                         (1.0 + mixed_fp.qfi.cwiseAbs().maxCoeff()));
        max_beta_err = std::max(max_beta_err, std::abs(mixed_fp.beta - pure_fp.beta));
    }
    detail = "max value err = " + fmt(max_val_err) + ", max J err = " +
             fmt(max_fisher_err) + ", max beta err = " + fmt(max_beta_err);
    return max_val_err <= 1e-9 && max_fisher_err <= 1e-9 && max_beta_err <= 1e-9;
}

// 9. Grid-state sweep identities across the default squeezing range.
bool criterion_grid_sweep(std::string& detail) {
    const std::vector<double> deltas = {0.60, 0.55, 0.50, 0.45, 0.40,
                                        0.35, 0.30, 0.25, 0.20, 0.15};
    const auto rows = sweep(deltas, Mat2::Identity());
    bool ok = rows.size() == deltas.size();
    double prev_beta = 2.0;
    for (const auto& row : rows) {
        const double tr = row.j11 + row.j22;
        ok = ok && std::abs(tr - 4.0 * (2.0 * row.nbar + 1.0)) <= 1e-8 * tr; // (a)
        ok = ok && row.c_mi * (2.0 * row.nbar + 1.0) >= 1.0 - 1e-8;          // (b)
        ok = ok && row.c_sld <= row.c_mi + 1e-12 &&
             row.c_mi <= (1.0 + row.beta) * row.c_sld + 1e-12;               // (c)
        ok = ok && row.beta < prev_beta;                                     // (d)
        prev_beta = row.beta;
    }
    const double gap_first = rows.front().c_mi / rows.front().c_sld;
    const double gap_last = rows.back().c_mi / rows.back().c_sld;
    ok = ok && gap_last < gap_first; // (e)
    detail = "gap ratio " + fmt(gap_first) + " -> " + fmt(gap_last) +
             ", beta " + fmt(rows.front().beta) + " -> " + fmt(rows.back().beta);
    return ok;
}

// 10. Gaussian-sum closed forms match adaptive quadrature.
bool criterion_quadrature(std::string& detail) {
    using oracle::GridIntegrand;
    struct Sample {
        GridIntegrand which;
        int t1, t2;
        double delta;
        double closed;
    };
    const std::vector<Sample> samples = {
        {GridIntegrand::dd_u, 0, 1, 0.5, overlap_dd_u(0, 1, 0.5)},
        {GridIntegrand::dd_u, -1, 2, 0.6, overlap_dd_u(-1, 2, 0.6)},
        {GridIntegrand::dd_v, 1, 1, 0.4, overlap_dd_v(1, 1, 0.4)},
        {GridIntegrand::dd_v, 0, -1, 0.3, overlap_dd_v(0, -1, 0.3)},
        {GridIntegrand::psi, 0, 1, 0.3, overlap_psi(0, 1, 0.3)},
    };
    double max_err = 0.0;
    bool converged = true;
    for (const auto& s : samples) {
        const auto q = oracle::quadrature_overlap(s.which, s.t1, s.t2, s.delta);
        converged = converged && q.converged;
        max_err = std::max(max_err, std::abs(q.value - s.closed));
    }
    detail = "max |closed - quadrature| = " + fmt(max_err);
    return converged && max_err <= 1e-9;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"quartic vs oracle (1000 triples)", 5.0, criterion_quartic_vs_oracle},
        {"closed-form fixed points", 5.0, criterion_fixed_points},
        {"eq6 saturation on the (eta, phi) grid", 10.0, criterion_saturation_grid},
        {"end-to-end attainability (200 models)", 30.0, criterion_attainability},
        {"inequality fuzz (10^4 POVMs)", 60.0, criterion_inequality_fuzz},
        {"qubit universality (500 models)", 5.0, criterion_qubit_beta},
        {"Branciard parameter independence", 5.0, criterion_branciard_independence},
        {"mixed-state purification consistency", 10.0, criterion_mixed_consistency},
        {"grid-state sweep identities", 20.0, criterion_grid_sweep},
        {"closed forms vs quadrature", 5.0, criterion_quadrature},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        const bool in_budget = elapsed < criteria[i].budget_seconds;
        ok = ok && in_budget;
        std::printf("[%s] %2zu. %s — %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str(), elapsed,
                    in_budget ? "" : ", over budget");
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
