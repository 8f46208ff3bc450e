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

#include "qest/linalg.hpp"

#include <cmath>

#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

std::pair<double, double> sym2_eigenvalues(const Mat2& s) {
    const double mean = 0.5 * (s(0, 0) + s(1, 1));
    const double half_gap = 0.5 * (s(0, 0) - s(1, 1));
    const double off = 0.5 * (s(0, 1) + s(1, 0));
    const double r = std::hypot(half_gap, off);
    return {mean + r, mean - r};
}

Mat2 sym2_eigenvectors(const Mat2& s) {
    const double off = 0.5 * (s(0, 1) + s(1, 0));
    const double scale = std::abs(s(0, 0)) + std::abs(s(1, 1)) + std::abs(off);
    const double half_gap = 0.5 * (s(0, 0) - s(1, 1));
    const double r = std::hypot(half_gap, off);
    if (r <= tol::kEqualSRel * (1.0 + scale)) {
        return Mat2::Identity(); // multiple of the identity, any frame works
    }
    // Eigenvector for the larger eigenvalue lambda+ = mean + r.
    Vec2 v;
    if (half_gap >= 0.0) {
        v << half_gap + r, off;
    } else {
        v << off, r - half_gap;
    }
    const double n = v.norm();
    if (n == 0.0) return Mat2::Identity();
    v /= n;
    // Sign convention: the largest-magnitude component is positive.
    const double lead = std::abs(v(0)) >= std::abs(v(1)) ? v(0) : v(1);
    if (lead < 0.0) v = -v;
    Mat2 q;
    q.col(0) = v;
    q.col(1) << -v(1), v(0);
    return q;
}

Mat2 sym2_inv_sqrt(const Mat2& s) {
    const Mat2 q = sym2_eigenvectors(s);
    const auto [l1, l2] = sym2_eigenvalues(s);
    if (l2 <= 0.0) {
        throw DomainError("sym2_inv_sqrt: matrix is not positive definite");
    }
    Mat2 d = Mat2::Zero();
    d(0, 0) = 1.0 / std::sqrt(l1);
    d(1, 1) = 1.0 / std::sqrt(l2);
    return q * d * q.transpose();
}

Mat2 polar_orthogonal(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

double hermiticity_defect(const CMat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const CMat& m) {
    const CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace qest
