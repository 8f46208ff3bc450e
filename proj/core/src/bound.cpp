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

#include "qest/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

std::string to_string(BoundBranch branch) {
    switch (branch) {
        case BoundBranch::general: return "general";
        case BoundBranch::beta_zero: return "beta_zero";
        case BoundBranch::beta_one: return "beta_one";
        case BoundBranch::equal_s: return "equal_s";
        case BoundBranch::singular_w: return "singular_w";
    }
    return "unknown";
}

double objective(double phi, double s1, double s2, double eta) {
    const auto term = [](double s, double c) {
        if (s == 0.0) return 0.0;
        if (c == 0.0) return std::numeric_limits<double>::infinity();
        return s / (c * c);
    };
    return term(s1, std::cos(phi - eta)) + term(s2, std::cos(phi + eta));
}

std::array<double, 5> quartic_coefficients(double s1, double s2, double eta) {
    if (!(eta > 0.0) || eta > 0.25 * M_PI + 1e-15) {
        throw DomainError("quartic_coefficients requires 0 < eta <= pi/4");
    }
    const double c = std::cos(eta);
    const double s = std::sin(eta);
    const double sum = s1 + s2;
    const double dif = s1 - s2;
    return {
        -2.0 * dif * c * s * s * s,
        2.0 * sum * (3.0 * c * c * s * s + s * s * s * s),
        -6.0 * dif * (c * c * c * s + c * s * s * s),
        2.0 * sum * (c * c * c * c + 3.0 * c * c * s * s),
        -2.0 * dif * c * c * c * s,
    };
}

namespace {

double poly_eval(const std::array<double, 5>& a, double x) {
    double y = 0.0;
    for (const double coeff : a) y = y * x + coeff;
    return y;
}

double poly_deriv_eval(const std::array<double, 5>& a, double x) {
    double y = 0.0;
    for (int k = 0; k < 4; ++k) y = y * x + a[static_cast<std::size_t>(k)] * (4 - k);
    return y;
}

// Real roots of the stationarity quartic inside [-limit, limit], found as
// companion-matrix eigenvalues of the significant-degree polynomial and
// polished with two Newton steps on the full quartic.
std::vector<double> quartic_real_roots(const std::array<double, 5>& a, double limit) {
    double max_abs = 0.0;
    for (const double coeff : a) max_abs = std::max(max_abs, std::abs(coeff));
    if (max_abs == 0.0) return {};

    std::size_t lead = 0;
    while (lead < 4 && std::abs(a[lead]) < 1e-14 * max_abs) ++lead;
    const int degree = static_cast<int>(4 - lead);
    if (degree < 1) return {};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int k = 0; k < degree; ++k) {
        companion(0, k) = -a[lead + 1 + static_cast<std::size_t>(k)] / a[lead];
        if (k + 1 < degree) companion(k + 1, k) = 1.0;
    }
    const Eigen::VectorXcd eigs = companion.eigenvalues();

    std::vector<double> roots;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const Cplx z = eigs(i);
        if (std::abs(z.imag()) >= tol::kRootImag * (1.0 + std::abs(z))) continue;
        double x = z.real();
        for (int it = 0; it < 2; ++it) {
            const double dp = poly_deriv_eval(a, x);
            if (dp == 0.0) break;
            x -= poly_eval(a, x) / dp;
        }
        x = std::clamp(x, -limit, limit);
        roots.push_back(x);
    }
    return roots;
}

BoundResult make_result(double value, double phi, double s1, double s2, double eta,
                        BoundBranch branch) {
    BoundResult r;
    r.value = value;
    r.phi_star = phi;
    r.s1 = s1;
    r.s2 = s2;
    r.eta = eta;
    r.branch = branch;
    return r;
}

} // namespace

BoundResult cmi(double s1, double s2, double beta) {
    if (s1 < 0.0 || s2 < 0.0) throw DomainError("cmi: eigenvalues must be nonnegative");
    if (beta < 0.0 || beta > 1.0) throw DomainError("cmi: beta must lie in [0, 1]");
    if (s1 < s2) std::swap(s1, s2); // the objective is symmetric under phi -> -phi

    const double eta = 0.5 * std::asin(beta);

    if (beta < tol::kBetaZeroDispatch) {
        return make_result(s1 + s2, 0.0, s1, s2, eta, BoundBranch::beta_zero);
    }
    if (1.0 - beta < tol::kBetaOneDispatch) {
        const double value = (std::sqrt(s1) + std::sqrt(s2)) * (std::sqrt(s1) + std::sqrt(s2));
        // Locate phi_star on the same quartic path; the endpoint minimum
        // (s2 = 0) survives because the objective treats it exactly.
        double phi = 0.0;
        if (s1 > 0.0) {
            const auto coeffs = quartic_coefficients(s1, s2, 0.25 * M_PI);
            double best = objective(0.0, s1, s2, 0.25 * M_PI);
            for (const double x : quartic_real_roots(coeffs, 1.0)) {
                const double cand = std::atan(x);
                const double v = objective(cand, s1, s2, 0.25 * M_PI);
                if (v < best) {
                    best = v;
                    phi = cand;
                }
            }
        }
        return make_result(value, phi, s1, s2, eta, BoundBranch::beta_one);
    }
    if (std::abs(s1 - s2) <= tol::kEqualSRel * (s1 + s2)) {
        const double s = 0.5 * (s1 + s2);
        const double value = 4.0 * s / (1.0 + std::sqrt((1.0 - beta) * (1.0 + beta)));
        return make_result(value, 0.0, s1, s2, eta, BoundBranch::equal_s);
    }
    if (s2 < tol::kSingularSRel * s1) {
        return make_result(s1, eta, s1, s2, eta, BoundBranch::singular_w);
    }

    const auto coeffs = quartic_coefficients(s1, s2, eta);
    std::vector<double> candidates = quartic_real_roots(coeffs, std::tan(eta));
    candidates.push_back(std::tan(eta));
    candidates.push_back(-std::tan(eta));
    candidates.push_back(0.0);

    double best_value = std::numeric_limits<double>::infinity();
    double best_phi = 0.0;
    for (const double x : candidates) {
        const double phi = std::atan(x);
        const double v = objective(phi, s1, s2, eta);
        if (v < best_value) {
            best_value = v;
            best_phi = phi;
        }
    }
    return make_result(best_value, best_phi, s1, s2, eta, BoundBranch::general);
}

BoundResult cmi_for_model(const PureModel& model) {
    const FisherPair fp = fisher_pair(model);
    const Mat2 j_inv_sqrt = sym2_inv_sqrt(fp.qfi);
    const Mat2 s = j_inv_sqrt * model.weight * j_inv_sqrt;
    auto [s1, s2] = sym2_eigenvalues(s);
    // The normalized weight is PSD up to roundoff.
    if (s2 < 0.0) {
        if (s2 < -1e-12 * std::max(1.0, s1)) {
            throw DomainError("normalized weight has a negative eigenvalue");
        }
        s2 = 0.0;
    }
    if (s1 < 0.0) s1 = 0.0;
    return cmi(s1, s2, fp.beta);
}

double sld_bound_for_model(const PureModel& model) {
    const FisherPair fp = fisher_pair(model);
    return (model.weight * fp.qfi.inverse()).trace();
}

} // namespace qest
