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

#ifndef QEST_STATMODEL_HPP
#define QEST_STATMODEL_HPP

#include <array>

#include "qest/linalg.hpp"

namespace qest {

/// Locally parameterized pure-state model: the probe state, its two
/// parameter derivatives at the true point, and the weight matrix of the
/// scalar error figure tr[W * MSE].  Derivatives are inputs, never
/// differentiated numerically here.
struct PureModel {
    CVec psi0;                  // probe state, unit norm
    std::array<CVec, 2> dpsi;   // derivative states
    Mat2 weight = Mat2::Identity();

    Eigen::Index dim() const { return psi0.size(); }
};

/// Real and imaginary parts of the SLD second moments <psi|L_i L_j|psi>:
/// qfi is the quantum Fisher information matrix, skew its antisymmetric
/// imaginary companion.  beta in [0, 1] is the incompatibility coefficient
/// (modulus of the eigenvalues of qfi^-1 * skew) and eta = arcsin(beta)/2.
struct FisherPair {
    Mat2 qfi = Mat2::Zero();
    Mat2 skew = Mat2::Zero();
    double beta = 0.0;
    double eta = 0.0;
};

/// Symmetric logarithmic derivative operator for one parameter.
struct SldOperator {
    CMat matrix;
};

/// Throws DomainError unless psi0 is normalized, dimensions agree,
/// d >= 2 and the weight matrix is symmetric positive semidefinite.
void validate_model(const PureModel& model);

/// Removes the component of each derivative along psi0.  The projection
/// only drops the gauge part, so qfi and skew are unchanged.
PureModel gauge_fix(const PureModel& model);

bool is_gauge_fixed(const PureModel& model);

/// Minimal-support pure-state SLD, L_j = 2(|dpsi_j><psi0| + h.c.).
/// Requires a gauge-fixed model.
SldOperator sld_pure(const PureModel& model, int j);

/// Computes qfi, skew and beta from the gauge-invariant overlap formula.
/// Throws SingularModelError when det(qfi) falls below the
/// identifiability threshold.
FisherPair fisher_pair(const PureModel& model);

/// <psi|[L_1, L_2]|psi> / (2i), an independent cross-check of skew(0,1).
double weakly_commuting_check(const PureModel& model);

} // namespace qest

#endif // QEST_STATMODEL_HPP
