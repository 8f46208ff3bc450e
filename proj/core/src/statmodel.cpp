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

#include "qest/statmodel.hpp"

#include <cmath>
#include <string>

#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

void validate_model(const PureModel& model) {
    if (model.dim() < 2) {
        throw DomainError("model dimension must be at least 2");
    }
    if (model.dpsi[0].size() != model.dim() || model.dpsi[1].size() != model.dim()) {
        throw DomainError("derivative dimension does not match the probe state");
    }
    const double norm_defect = std::abs(model.psi0.norm() - 1.0);
    if (norm_defect > tol::kUnitNorm) {
        throw DomainError("probe state is not normalized (defect " +
                          std::to_string(norm_defect) + ")");
    }
    if ((model.weight - model.weight.transpose()).cwiseAbs().maxCoeff() > tol::kUnitNorm) {
        throw DomainError("weight matrix is not symmetric");
    }
    const auto [w1, w2] = sym2_eigenvalues(model.weight);
    (void)w1;
    if (w2 < -tol::kWeightPsd) {
        throw DomainError("weight matrix is not positive semidefinite");
    }
}

PureModel gauge_fix(const PureModel& model) {
    validate_model(model);
    PureModel out = model;
    for (auto& d : out.dpsi) {
        d -= model.psi0 * model.psi0.dot(d);
    }
    return out;
}

bool is_gauge_fixed(const PureModel& model) {
    return std::abs(model.psi0.dot(model.dpsi[0])) <= tol::kGaugeOverlap &&
           std::abs(model.psi0.dot(model.dpsi[1])) <= tol::kGaugeOverlap;
}

SldOperator sld_pure(const PureModel& model, int j) {
    validate_model(model);
    if (j != 0 && j != 1) throw DomainError("sld_pure: parameter index must be 0 or 1");
    if (!is_gauge_fixed(model)) {
        throw DomainError("sld_pure requires a gauge-fixed model");
    }
    const CVec& d = model.dpsi[static_cast<std::size_t>(j)];
    CMat l = 2.0 * (d * model.psi0.adjoint() + model.psi0 * d.adjoint());
    return SldOperator{std::move(l)};
}

FisherPair fisher_pair(const PureModel& model) {
    validate_model(model);
    // Gauge-invariant overlaps: c_ij = <d_i|d_j> - <d_i|psi><psi|d_j>.
    Eigen::Matrix2cd c;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const auto& di = model.dpsi[static_cast<std::size_t>(i)];
            const auto& dj = model.dpsi[static_cast<std::size_t>(j)];
            c(i, j) = di.dot(dj) - di.dot(model.psi0) * model.psi0.dot(dj);
        }
    }
    FisherPair out;
    out.qfi = 4.0 * c.real();
    out.qfi = 0.5 * (out.qfi + out.qfi.transpose()).eval();
    const double skew_12 = 4.0 * c(0, 1).imag();
    out.skew << 0.0, skew_12, -skew_12, 0.0;

    const double det = out.qfi.determinant();
    if (det < tol::kDetQfiMin) {
        throw SingularModelError("parameters are not locally identifiable (det J = " +
                                 std::to_string(det) + ")");
    }
    double beta = std::abs(skew_12) / std::sqrt(det);
    if (beta > 1.0 + tol::kBetaClamp) {
        throw InternalError("beta exceeds 1 beyond the clamping margin: " +
                            std::to_string(beta));
    }
    // Within the clamp window of the pure-state boundary the value is pure
    // floating-point noise; snap it so the beta = 1 branch is exact.
    if (std::abs(beta - 1.0) <= tol::kBetaClamp) beta = 1.0;
    out.beta = std::min(std::max(beta, 0.0), 1.0);
    out.eta = 0.5 * std::asin(out.beta);
    return out;
}

double weakly_commuting_check(const PureModel& model) {
    const SldOperator l1 = sld_pure(model, 0);
    const SldOperator l2 = sld_pure(model, 1);
    const CMat comm = l1.matrix * l2.matrix - l2.matrix * l1.matrix;
    const Cplx v = model.psi0.dot(comm * model.psi0) / Cplx(0.0, 2.0);
    return v.real();
}

} // namespace qest
