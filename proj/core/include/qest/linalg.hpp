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

#ifndef QEST_LINALG_HPP
#define QEST_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace qest {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// Eigenvalues of a real symmetric 2x2 matrix, descending.
std::pair<double, double> sym2_eigenvalues(const Mat2& s);

/// Orthogonal eigenvector matrix of a real symmetric 2x2 matrix with
/// columns ordered by descending eigenvalue and deterministic signs.
/// Within kEqualSRel of a multiple of the identity, returns the identity.
Mat2 sym2_eigenvectors(const Mat2& s);

/// Inverse square root of a symmetric positive-definite 2x2 matrix.
Mat2 sym2_inv_sqrt(const Mat2& s);

/// Nearest orthogonal matrix (polar factor) of an almost-orthogonal 2x2.
Mat2 polar_orthogonal(const Mat2& m);

/// Max-norm Hermiticity defect ||m - m^dagger||_inf.
double hermiticity_defect(const CMat& m);

/// Smallest eigenvalue of a Hermitian matrix (input is hermitized first).
double min_hermitian_eigenvalue(const CMat& m);

} // namespace qest

#endif // QEST_LINALG_HPP
