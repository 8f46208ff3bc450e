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

#ifndef QEST_CANONICAL_HPP
#define QEST_CANONICAL_HPP

#include <utility>

#include "qest/statmodel.hpp"

namespace qest {

/// Everything needed to carry a measurement constructed in the standard
/// form back to the original problem:
///   - jacobian A: the parameter reparametrisation, dtheta/dtheta' = A,
///     so the standard-form derivatives are sum_k A(k,j) * dpsi_k after
///     the Hilbert-space maps below;
///   - subspace_basis B: d x d' orthonormal columns spanning
///     Span{psi0, dpsi_1, dpsi_2} with B.col(0) = psi0;
///   - hilbert_unitary V: the d' x d' rotation applied inside that span.
struct ReparamRecord {
    Mat2 jacobian = Mat2::Identity();
    CMat hilbert_unitary;
    CMat subspace_basis;
};

/// Canonical representation of a two-parameter pure model, fully
/// determined by eta.  dim == 3 carries
///   probe = e1, deriv[0] = (0, i sin(eta), cos(eta))/2,
///              deriv[1] = (0, cos(eta), -i sin(eta))/2,
/// and dim == 2 (maximal incompatibility) carries
///   probe = e1, deriv[0] = (0, 1)/2, deriv[1] = (0, i)/2.
struct StandardForm {
    double eta = 0.0;
    int dim = 3;
    CVec probe;
    std::array<CVec, 2> deriv;

    double beta() const { return std::sin(2.0 * eta); }
};

/// Builds the canonical states of the standard form for a given eta.
StandardForm make_standard_form(double eta, int dim);

/// Transforms a model into the standard form.  The chain is: project onto
/// the derivative span, orthogonalize against the probe, diagonalize the
/// real part of the derivative Gram matrix, rescale each derivative to
/// squared norm 1/4, fix the sign of the imaginary cross term, and apply
/// the final span rotation.  Dispatches to the two-dimensional branch when
/// 1 - beta < kBetaOneDispatch.
std::pair<StandardForm, ReparamRecord> to_standard_form(const PureModel& model);

/// Unitary on the three-dimensional standard space that keeps the probe
/// fixed and maps deriv[j] to sum_l Q(j,l) deriv[l].  Rejects
/// non-orthogonal Q and the two-dimensional branch.
CMat rotation_unitary(const StandardForm& form, const Mat2& q);

/// Orthogonal Q with Q^T S Q diagonal, eigenvalues descending, so the
/// larger eigenvalue of S pairs with the larger information eigenvalue.
/// Degenerate S yields the identity.
Mat2 canonical_q(const Mat2& s);

} // namespace qest

#endif // QEST_CANONICAL_HPP
