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

#ifndef QEST_MIXED_HPP
#define QEST_MIXED_HPP

#include <array>

#include "qest/bound.hpp"
#include "qest/statmodel.hpp"

namespace qest {

/// Locally parameterized mixed-state model.
struct MixedModel {
    CMat rho;                  // Hermitian PSD, unit trace
    std::array<CMat, 2> drho;  // Hermitian traceless derivatives
    Mat2 weight = Mat2::Identity();

    Eigen::Index dim() const { return rho.rows(); }
};

void validate_mixed_model(const MixedModel& model);

/// SLD of a mixed model: in the eigenbasis of rho,
/// L_ab = 2 (drho)_ab / (p_a + p_b) on the supported block and zero on the
/// kernel-kernel block.  Throws ModelNotRegularError when the derivative
/// leaks outside the support.
SldOperator sld_mixed(const MixedModel& model, int j);

/// Fisher pair of a mixed model from the moments Tr[rho L_i L_j].
FisherPair fisher_pair(const MixedModel& model);

/// Purification-based lower bound: the bound evaluated with qfi and beta
/// computed from Tr[rho L_i L_j].  Equals the pure-state bound of any
/// faithful purification; not attainable in general for mixed states.
BoundResult cstar(const MixedModel& model);

/// Minimal purification: a pure model on a (d * rank) space whose partial
/// trace reproduces rho and both derivatives, with
/// psi0 = sum_i sqrt(p_i) |psi_i>|e_i> and dpsi_j = (L_j x I) psi0 / 2.
PureModel purify(const MixedModel& model);

/// Partial trace over the environment factor of a (d*r) x (d*r) operator,
/// with the environment as the fast index.  Exposed for tests.
CMat partial_trace_env(const CMat& op, Eigen::Index d, Eigen::Index r);

} // namespace qest

#endif // QEST_MIXED_HPP
