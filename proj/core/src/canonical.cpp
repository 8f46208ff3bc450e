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

#include "qest/canonical.hpp"

#include <cmath>

#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

namespace {

// Phase convention: rotate so the first component above the noise floor is
// real and positive.  Keeps the subspace basis deterministic.
CVec fix_phase(CVec v) {
    const double floor = 1e-12 * v.norm();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > floor) {
            const Cplx phase = v(i) / std::abs(v(i));
            return v / phase;
        }
    }
    return v;
}

// Gram-Schmidt step against the accumulated columns of basis.
CVec remove_components(const CMat& basis, Eigen::Index ncols, const CVec& v) {
    CVec w = v;
    for (Eigen::Index k = 0; k < ncols; ++k) {
        w -= basis.col(k) * basis.col(k).dot(v);
    }
    return w;
}

} // namespace

StandardForm make_standard_form(double eta, int dim) {
    if (dim != 2 && dim != 3) throw DomainError("standard form dimension must be 2 or 3");
    StandardForm form;
    form.eta = eta;
    form.dim = dim;
    if (dim == 3) {
        form.probe = CVec::Zero(3);
        form.probe(0) = 1.0;
        CVec d1 = CVec::Zero(3), d2 = CVec::Zero(3);
        d1(1) = Cplx(0.0, 0.5 * std::sin(eta));
        d1(2) = 0.5 * std::cos(eta);
        d2(1) = 0.5 * std::cos(eta);
        d2(2) = Cplx(0.0, -0.5 * std::sin(eta));
        form.deriv = {d1, d2};
    } else {
        form.probe = CVec::Zero(2);
        form.probe(0) = 1.0;
        CVec d1 = CVec::Zero(2), d2 = CVec::Zero(2);
        d1(1) = 0.5;
        d2(1) = Cplx(0.0, 0.5);
        form.deriv = {d1, d2};
    }
    return form;
}

Mat2 canonical_q(const Mat2& s) {
    return sym2_eigenvectors(0.5 * (s + s.transpose()));
}

std::pair<StandardForm, ReparamRecord> to_standard_form(const PureModel& model) {
    const PureModel g = gauge_fix(model);
    const FisherPair fp = fisher_pair(g);
    const int dprime = (1.0 - fp.beta < tol::kBetaOneDispatch) ? 2 : 3;

    const Eigen::Index d = g.dim();

    // Subspace basis: the probe itself, then Gram-Schmidt over the
    // derivatives with a deterministic phase.
    CMat basis(d, dprime);
    basis.col(0) = g.psi0;
    {
        CVec b1 = remove_components(basis, 1, g.dpsi[0]);
        const double n1 = b1.norm();
        if (n1 <= 0.0) throw InternalError("first derivative vanishes after gauge fixing");
        basis.col(1) = fix_phase(b1 / n1);
    }
    if (dprime == 3) {
        CVec b2 = remove_components(basis, 2, g.dpsi[1]);
        const double n2 = b2.norm();
        if (n2 <= 0.0) {
            throw InternalError("derivative span collapsed on the beta < 1 branch");
        }
        basis.col(2) = fix_phase(b2 / n2);
    }

    // Reduced derivative vectors.  They are orthogonal to e1 exactly.
    CVec v1 = basis.adjoint() * g.dpsi[0];
    CVec v2 = basis.adjoint() * g.dpsi[1];

    // Diagonalize the real part of the derivative Gram matrix.
    Mat2 gram_re;
    gram_re << v1.dot(v1).real(), v1.dot(v2).real(), v2.dot(v1).real(), v2.dot(v2).real();
    gram_re = 0.5 * (gram_re + gram_re.transpose()).eval();
    const Mat2 rot = sym2_eigenvectors(gram_re);
    CVec u1 = rot(0, 0) * v1 + rot(1, 0) * v2;
    CVec u2 = rot(0, 1) * v1 + rot(1, 1) * v2;

    // Rescale both derivatives to squared norm 1/4.
    const double m1 = u1.squaredNorm();
    const double m2 = u2.squaredNorm();
    if (m1 <= 0.0 || m2 <= 0.0) {
        throw SingularModelError("degenerate derivative Gram matrix");
    }
    Mat2 jac = rot;
    jac.col(0) /= 2.0 * std::sqrt(m1);
    jac.col(1) /= 2.0 * std::sqrt(m2);
    u1 /= 2.0 * std::sqrt(m1);
    u2 /= 2.0 * std::sqrt(m2);

    const StandardForm form = make_standard_form(fp.eta, dprime);
    ReparamRecord record;
    record.subspace_basis = basis;

    if (dprime == 3) {
        // Fix the sign of the imaginary cross term to match the canonical
        // states, which carry <d1|d2> = -i sin(2 eta)/4.
        if (u1.dot(u2).imag() > 0.0) {
            u2 = -u2;
            jac.col(1) = -jac.col(1);
        }
        const Cplx ip = u1.dot(u2);
        const double den = 2.0 * std::sqrt(0.25 - 4.0 * std::norm(ip));
        const CVec ubar = (u2 - 4.0 * ip * u1) / den;

        const CVec& t1 = form.deriv[0];
        const CVec& t2 = form.deriv[1];
        const Cplx ipt = t1.dot(t2);
        const double dent = 2.0 * std::sqrt(0.25 - 4.0 * std::norm(ipt));
        const CVec tbar = (t2 - 4.0 * ipt * t1) / dent;

        CMat u = CMat::Zero(3, 3);
        u(0, 0) = 1.0;
        u += 4.0 * (t1 * u1.adjoint() + tbar * ubar.adjoint());
        record.hilbert_unitary = u;
    } else {
        // Both reduced derivatives point along e2 with unit-modulus
        // amplitudes; a phase rotation sends the first to (0, 1)/2 and a
        // parameter sign flip makes the second (0, i)/2.
        const Cplx z1 = 2.0 * u1(1);
        const Cplx z2 = 2.0 * u2(1);
        CMat u = CMat::Zero(2, 2);
        u(0, 0) = 1.0;
        u(1, 1) = std::conj(z1) / std::abs(z1);
        if ((u(1, 1) * z2).imag() < 0.0) {
            jac.col(1) = -jac.col(1);
        }
        record.hilbert_unitary = u;
    }
    record.jacobian = jac;
    return {form, record};
}

CMat rotation_unitary(const StandardForm& form, const Mat2& q) {
    if (form.dim != 3) {
        throw WrongBranchError("rotation_unitary is defined on the beta < 1 branch; "
                               "recombine the SLD observables for dim == 2");
    }
    if ((q.transpose() * q - Mat2::Identity()).cwiseAbs().maxCoeff() > tol::kOrthogonal) {
        throw DomainError("rotation matrix is not orthogonal");
    }
    if (q.determinant() < 0.0) {
        // A reflection would have to flip the sign of the imaginary cross
        // term of the derivatives, which no unitary can do.
        throw DomainError("rotation_unitary requires a proper rotation; factor "
                          "reflections through a parameter sign flip");
    }
    const CVec& d1 = form.deriv[0];
    const CVec& d2 = form.deriv[1];
    const CVec r1 = q(0, 0) * d1 + q(0, 1) * d2;
    const CVec r2 = q(1, 0) * d1 + q(1, 1) * d2;

    const Cplx ip = d1.dot(d2);
    const double den = 2.0 * std::sqrt(0.25 - 4.0 * std::norm(ip));
    const CVec zbar = (d2 - 4.0 * ip * d1) / den;
    const CVec z = (r2 - 4.0 * ip * r1) / den;

    CMat u = CMat::Zero(3, 3);
    u(0, 0) = 1.0;
    u += 4.0 * (r1 * d1.adjoint() + z * zbar.adjoint());
    return u;
}

} // namespace qest
