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

#include "qest/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

namespace {

CMat projector(const CVec& v) { return v * v.adjoint(); }

CMat sld_matrix(const CVec& probe, const CVec& deriv) {
    return 2.0 * (deriv * probe.adjoint() + probe * deriv.adjoint());
}

void require_phi_in(double phi, double span, const char* what) {
    if (std::abs(phi) > span + 1e-12) {
        throw DomainError(std::string(what) + ": phi outside the admissible interval");
    }
}

} // namespace

void validate_povm(const Povm& povm) {
    if (povm.elements.empty()) throw DomainError("POVM has no elements");
    const Eigen::Index d = povm.dim();
    CMat sum = CMat::Zero(d, d);
    for (const CMat& e : povm.elements) {
        if (e.rows() != d || e.cols() != d) {
            throw DomainError("POVM elements have inconsistent dimensions");
        }
        if (hermiticity_defect(e) > tol::kPovmPsd) {
            throw DomainError("POVM element is not Hermitian");
        }
        if (min_hermitian_eigenvalue(e) < -tol::kPovmPsd) {
            throw DomainError("POVM element is not positive semidefinite");
        }
        sum += e;
    }
    if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::kPovmComplete) {
        throw DomainError("POVM elements do not sum to the identity");
    }
    if (!povm.labels.empty() && povm.labels.size() != povm.elements.size()) {
        throw DomainError("POVM label count does not match element count");
    }
}

Cfim classical_fisher(const Povm& povm, const PureModel& model) {
    if (povm.dim() != model.dim()) {
        throw DomainError("POVM and model dimensions do not match");
    }
    const PureModel g = gauge_fix(model);
    Mat2 f = Mat2::Zero();
    for (const CMat& e : povm.elements) {
        const double p = (g.psi0.dot(e * g.psi0)).real();
        if (p < tol::kZeroOutcome) continue; // zero-probability outcomes contribute 0
        Vec2 grad;
        grad << 2.0 * (g.dpsi[0].dot(e * g.psi0)).real(),
                2.0 * (g.dpsi[1].dot(e * g.psi0)).real();
        f += grad * grad.transpose() / p;
    }
    Cfim out;
    out.fisher = 0.5 * (f + f.transpose());
    const FisherPair fp = fisher_pair(g);
    const Mat2 j_inv_sqrt = sym2_inv_sqrt(fp.qfi);
    out.normalized = j_inv_sqrt * out.fisher * j_inv_sqrt;
    return out;
}

Povm optimal_projectors(const StandardForm& form, double phi) {
    if (form.dim != 3) {
        throw WrongBranchError("optimal_projectors requires the beta < 1 branch");
    }
    require_phi_in(phi, form.eta, "optimal_projectors");

    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const Cplx e_plus = std::polar(1.0, phi);
    const Cplx e_minus = std::polar(1.0, -phi);
    const Cplx x = (3.0 * e_minus - std::sqrt(3.0) * e_plus) / 6.0;
    const Cplx y = -(3.0 * e_minus + std::sqrt(3.0) * e_plus) / 6.0;

    CVec p1(3), p2(3), p3(3);
    p1 << inv_sqrt3, inv_sqrt3 * e_plus, inv_sqrt3 * e_plus;
    p2 << inv_sqrt3, x, y;
    p3 << inv_sqrt3, y, x;

    Povm povm;
    povm.elements = {projector(p1), projector(p2), projector(p3)};
    povm.labels = {"pi1", "pi2", "pi3"};
    return povm;
}

Povm optimal_povm_beta1(const StandardForm& form, double phi) {
    if (form.dim != 2) {
        throw WrongBranchError("optimal_povm_beta1 requires the beta = 1 branch");
    }
    require_phi_in(phi, 0.25 * M_PI, "optimal_povm_beta1");

    const double alpha = std::pow(std::cos(phi - 0.25 * M_PI), 2);
    if (alpha < -1e-12 || alpha > 1.0 + 1e-12) {
        throw DomainError("optimal_povm_beta1: mixing probability outside [0, 1]");
    }
    const CMat l1 = sld_matrix(form.probe, form.deriv[0]);
    const CMat l2 = sld_matrix(form.probe, form.deriv[1]);
    const CMat id = CMat::Identity(2, 2);

    Povm povm;
    povm.elements = {0.5 * alpha * (id + l1), 0.5 * alpha * (id - l1),
                     0.5 * (1.0 - alpha) * (id + l2), 0.5 * (1.0 - alpha) * (id - l2)};
    povm.labels = {"l1+", "l1-", "l2+", "l2-"};
    return povm;
}

Povm rotate_measurement(const Povm& povm, const StandardForm& form, const Mat2& q) {
    if ((q.transpose() * q - Mat2::Identity()).cwiseAbs().maxCoeff() > tol::kOrthogonal) {
        throw DomainError("rotation matrix is not orthogonal");
    }
    if (form.dim == 3) {
        // Only proper rotations admit a covariant unitary.  A reflection is
        // factored through the parameter flip diag(1, -1), which cancels on
        // the diagonal information matrices of the optimal constructions.
        Mat2 rot = q;
        if (rot.determinant() < 0.0) rot.col(1) = -rot.col(1);
        const CMat u = rotation_unitary(form, rot);
        Povm out;
        out.labels = povm.labels;
        out.elements.reserve(povm.elements.size());
        for (const CMat& e : povm.elements) {
            out.elements.push_back(u.adjoint() * e * u);
        }
        return out;
    }

    // Two-dimensional branch: recombining the SLD observables by the
    // transposed rotation makes the Fisher information transform as QFQ^T,
    // matching the unitary conjugation on the other branch.
    if (povm.elements.size() != 4) {
        throw DomainError("the beta = 1 rotation acts on the four-outcome construction");
    }
    const double alpha =
        0.5 * ((povm.elements[0].trace() + povm.elements[1].trace()).real());
    CMat l1 = sld_matrix(form.probe, form.deriv[0]);
    CMat l2 = sld_matrix(form.probe, form.deriv[1]);
    if (alpha > 1e-12) l1 = (povm.elements[0] - povm.elements[1]) / alpha;
    if (1.0 - alpha > 1e-12) l2 = (povm.elements[2] - povm.elements[3]) / (1.0 - alpha);
    const CMat r1 = q(0, 0) * l1 + q(1, 0) * l2;
    const CMat r2 = q(0, 1) * l1 + q(1, 1) * l2;
    const CMat id = CMat::Identity(2, 2);

    Povm out;
    out.elements = {0.5 * alpha * (id + r1), 0.5 * alpha * (id - r1),
                    0.5 * (1.0 - alpha) * (id + r2), 0.5 * (1.0 - alpha) * (id - r2)};
    out.labels = povm.labels;
    return out;
}

Povm pull_back(const Povm& povm, const ReparamRecord& record) {
    const CMat& basis = record.subspace_basis;
    const CMat& u = record.hilbert_unitary;
    if (povm.dim() != u.rows() || basis.cols() != u.rows()) {
        throw DomainError("pull_back: record does not match the POVM dimension");
    }
    const Eigen::Index d = basis.rows();

    Povm out;
    out.elements.reserve(povm.elements.size() + 1);
    for (const CMat& e : povm.elements) {
        out.elements.push_back(basis * (u.adjoint() * e * u) * basis.adjoint());
    }
    out.elements.push_back(CMat::Identity(d, d) - basis * basis.adjoint());
    out.labels = povm.labels;
    if (!out.labels.empty()) out.labels.push_back("complement");
    return out;
}

std::pair<Povm, BoundResult> optimal_measurement_for_weight(const PureModel& model) {
    const PureModel g = gauge_fix(model);
    const FisherPair fp = fisher_pair(g);

    const Mat2 j_inv_sqrt = sym2_inv_sqrt(fp.qfi);
    const Mat2 s = j_inv_sqrt * g.weight * j_inv_sqrt;
    const Mat2 r = canonical_q(s);
    auto [s1, s2] = sym2_eigenvalues(s);
    s1 = std::max(s1, 0.0);
    s2 = std::max(s2, 0.0);

    const BoundResult bound = cmi(s1, s2, fp.beta);

    auto [form, record] = to_standard_form(g);
    // Align the constructed information eigenbasis with the weight: the
    // composite A^{-1} J^{-1/2} R is orthogonal up to roundoff.  Its second
    // column sign is free (the diagonal core cancels it), so pick the
    // proper rotation.
    Mat2 q = polar_orthogonal(record.jacobian.inverse() * j_inv_sqrt * r);
    if (q.determinant() < 0.0) q.col(1) = -q.col(1);

    Povm base = (form.dim == 3) ? optimal_projectors(form, bound.phi_star)
                                : optimal_povm_beta1(form, bound.phi_star);
    const Povm rotated = rotate_measurement(base, form, q);
    return {pull_back(rotated, record), bound};
}

Povm branciard_measurement(const StandardForm& form, double phi, double q, double r,
                           std::optional<double> s, std::optional<double> t) {
    if (form.dim != 3) {
        throw WrongBranchError("branciard_measurement requires beta < 1");
    }
    require_phi_in(phi, form.eta, "branciard_measurement");
    if (q == 0.0 && r == 0.0) {
        throw DomainError("branciard_measurement: q and r must not both vanish");
    }
    const double beta = form.beta();
    const double eta = form.eta;

    // The construction is stated for the convention <L1 L2> = +i beta; the
    // standard form carries -i beta, so the parameter roles are exchanged
    // and the angle negated.
    const CMat la = sld_matrix(form.probe, form.deriv[1]);
    const CMat lb = sld_matrix(form.probe, form.deriv[0]);
    const double ang = -phi;

    const Cplx a(q * std::cos(ang + eta), r * std::sin(ang + eta));
    const Cplx b(r * std::cos(ang - eta), q * std::sin(ang - eta));

    const CVec la_psi = la * form.probe;
    const CVec lb_psi = lb * form.probe;
    const CVec m1 = form.probe + b * la_psi + a * lb_psi;
    const double n1 = m1.squaredNorm();

    const double st_required = n1 / (1.0 - beta * beta);
    double s_val = 0.0;
    double t_val = 0.0;
    if (s && t) {
        s_val = *s;
        t_val = *t;
        if (std::abs(s_val * t_val - st_required) > 1e-9 * (1.0 + st_required)) {
            throw DomainError("branciard_measurement: s*t must equal <m1|m1>/(1-beta^2)");
        }
    } else if (s) {
        s_val = *s;
        if (s_val == 0.0) throw DomainError("branciard_measurement: s must be nonzero");
        t_val = st_required / s_val;
    } else if (t) {
        t_val = *t;
        if (t_val == 0.0) throw DomainError("branciard_measurement: t must be nonzero");
        s_val = st_required / t_val;
    } else {
        s_val = std::sqrt(st_required);
        t_val = s_val;
    }

    const CMat dop = m1.dot(lb_psi) * la - m1.dot(la_psi) * lb;
    const CVec d_psi = dop * form.probe;
    const CVec m2 = n1 * form.probe + s_val * d_psi - m1;
    const CVec m3 = n1 * form.probe - t_val * d_psi - m1;

    const double n2 = m2.norm();
    const double n3 = m3.norm();
    if (n2 <= 0.0 || n3 <= 0.0) {
        throw DomainError("branciard_measurement: degenerate construction");
    }

    Povm povm;
    povm.elements = {projector(m1 / m1.norm()), projector(m2 / n2), projector(m3 / n3)};
    povm.labels = {"m1", "m2", "m3"};
    return povm;
}

double regret_check(const Cfim& cfim, const FisherPair& pair) {
    const double j11 = pair.qfi(0, 0);
    const double j22 = pair.qfi(1, 1);
    if (j11 <= 0.0 || j22 <= 0.0) {
        throw DomainError("regret_check requires positive Fisher diagonals");
    }
    double chi = pair.skew(0, 1) / std::sqrt(j11 * j22);
    chi = std::clamp(chi, -1.0, 1.0);
    const double t1 = std::max(0.0, (j11 - cfim.fisher(0, 0)) / j11);
    const double t2 = std::max(0.0, (j22 - cfim.fisher(1, 1)) / j22);
    return t1 + t2 + 2.0 * std::sqrt(1.0 - chi * chi) * std::sqrt(t1 * t2) - chi * chi;
}

} // namespace qest
