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

#ifndef QEST_MEASUREMENT_HPP
#define QEST_MEASUREMENT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qest/bound.hpp"
#include "qest/canonical.hpp"
#include "qest/statmodel.hpp"

namespace qest {

/// Positive operator-valued measure: a finite list of PSD operators
/// summing to the identity.
struct Povm {
    std::vector<CMat> elements;
    std::vector<std::string> labels; // empty or one per element

    Eigen::Index dim() const { return elements.empty() ? 0 : elements.front().rows(); }
};

/// Throws DomainError if any element fails the PSD floor or the elements
/// do not sum to the identity entrywise.
void validate_povm(const Povm& povm);

/// Classical Fisher information of a measurement on a model, with its
/// normalized companion G = J^{-1/2} F J^{-1/2} whose eigenvalues lie in
/// the unit square.
struct Cfim {
    Mat2 fisher = Mat2::Zero();
    Mat2 normalized = Mat2::Zero();
};

/// F_jk = sum_i (d_j p_i)(d_k p_i) / p_i with p_i = <psi0|Pi_i|psi0> and
/// d_j p_i = 2 Re<dpsi_j|Pi_i|psi0>.  Outcomes with p_i < kZeroOutcome
/// contribute zero.
Cfim classical_fisher(const Povm& povm, const PureModel& model);

/// Three-outcome projective measurement on the three-dimensional standard
/// form whose Fisher information is diag(cos^2(phi-eta), cos^2(phi+eta)).
Povm optimal_projectors(const StandardForm& form, double phi);

/// Four-outcome POVM for the maximal-incompatibility branch: it measures
/// the observable optimal for parameter 1 with probability alpha =
/// cos^2(phi - pi/4) and the one for parameter 2 otherwise, giving
/// F = diag(alpha, 1 - alpha).
Povm optimal_povm_beta1(const StandardForm& form, double phi);

/// Transforms a standard-form measurement so its Fisher information
/// becomes Q F Q^T.  On the three-dimensional branch the elements are
/// conjugated by the span rotation; on the two-dimensional branch the two
/// SLD observables are recombined by Q.
Povm rotate_measurement(const Povm& povm, const StandardForm& form, const Mat2& q);

/// Carries a standard-form POVM back to the original space: undoes the
/// span rotation, embeds through the subspace basis and appends the
/// orthogonal-complement projector as an extra (zero-probability) outcome.
Povm pull_back(const Povm& povm, const ReparamRecord& record);

/// Full pipeline: bound evaluation, optimal construction at phi_star,
/// rotation aligning the information eigenbasis with the weight, and
/// pull-back.  The returned POVM achieves tr[W F^{-1}] = value.
std::pair<Povm, BoundResult> optimal_measurement_for_weight(const PureModel& model);

/// Projective measurement from the error-tradeoff construction on the
/// three-dimensional standard form.  Its Fisher information is
/// diag(cos^2(phi+eta), cos^2(phi-eta)) for every admissible choice of the
/// free parameters q, r, s, t.  s and t must satisfy
/// s*t = <m1|m1> / (1 - beta^2); omitted values are solved for, with the
/// symmetric split as the default.  q = r = 0 is rejected.
Povm branciard_measurement(const StandardForm& form, double phi, double q, double r,
                           std::optional<double> s = std::nullopt,
                           std::optional<double> t = std::nullopt);

/// Slack of the diagonal information trade-off: with regrets
/// t_j = (J_jj - F_jj)/J_jj and chi = skew_12/sqrt(J_11 J_22), returns
/// t_1 + t_2 + 2 sqrt(1-chi^2) sqrt(t_1 t_2) - chi^2, which is
/// nonnegative for every measurement-backed F.
double regret_check(const Cfim& cfim, const FisherPair& pair);

} // namespace qest

#endif // QEST_MEASUREMENT_HPP
