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

#include "qest/mixed.hpp"

#include <cmath>
#include <string>

#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

void validate_mixed_model(const MixedModel& model) {
    const Eigen::Index d = model.dim();
    if (d < 2) throw DomainError("mixed model dimension must be at least 2");
    if (model.rho.cols() != d) throw DomainError("rho is not square");
    if (hermiticity_defect(model.rho) > tol::kUnitNorm) {
        throw DomainError("rho is not Hermitian");
    }
    if (std::abs(model.rho.trace().real() - 1.0) > tol::kUnitNorm ||
        std::abs(model.rho.trace().imag()) > tol::kUnitNorm) {
        throw DomainError("rho does not have unit trace");
    }
    if (min_hermitian_eigenvalue(model.rho) < -tol::kUnitNorm) {
        throw DomainError("rho is not positive semidefinite");
    }
    for (const CMat& dr : model.drho) {
        if (dr.rows() != d || dr.cols() != d) {
            throw DomainError("derivative dimension does not match rho");
        }
        if (hermiticity_defect(dr) > tol::kUnitNorm) {
            throw DomainError("drho is not Hermitian");
        }
        if (std::abs(dr.trace()) > tol::kLeakage) {
            throw DomainError("drho is not traceless");
        }
    }
    if ((model.weight - model.weight.transpose()).cwiseAbs().maxCoeff() > tol::kUnitNorm) {
        throw DomainError("weight matrix is not symmetric");
    }
}

namespace {

struct RhoEigen {
    Eigen::VectorXd p;
    CMat v;
};

RhoEigen rho_eigen(const MixedModel& model) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (model.rho + model.rho.adjoint()));
    return {es.eigenvalues(), es.eigenvectors()};
}

CMat sld_in_eigenbasis(const MixedModel& model, int j, const RhoEigen& re) {
    const Eigen::Index d = model.dim();
    const CMat delta = re.v.adjoint() * model.drho[static_cast<std::size_t>(j)] * re.v;
    const double scale = delta.cwiseAbs().maxCoeff();
    CMat l = CMat::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            const double denom = re.p(a) + re.p(b);
            if (denom < tol::kSupportCut) {
                // Kernel-kernel block: the derivative must vanish here.
                if (std::abs(delta(a, b)) > tol::kLeakage * (1.0 + scale)) {
                    throw ModelNotRegularError(
                        "derivative has support outside supp(rho); SLD unsolvable");
                }
                continue;
            }
            l(a, b) = 2.0 * delta(a, b) / denom;
        }
    }
    return l;
}

} // namespace

SldOperator sld_mixed(const MixedModel& model, int j) {
    validate_mixed_model(model);
    if (j != 0 && j != 1) throw DomainError("sld_mixed: parameter index must be 0 or 1");
    const RhoEigen re = rho_eigen(model);
    CMat l = re.v * sld_in_eigenbasis(model, j, re) * re.v.adjoint();
    l = 0.5 * (l + l.adjoint()).eval();
    return SldOperator{std::move(l)};
}

FisherPair fisher_pair(const MixedModel& model) {
    const SldOperator l1 = sld_mixed(model, 0);
    const SldOperator l2 = sld_mixed(model, 1);
    const std::array<const CMat*, 2> ls = {&l1.matrix, &l2.matrix};

    Eigen::Matrix2cd moments;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            moments(i, j) =
                (model.rho * (*ls[static_cast<std::size_t>(i)]) * (*ls[static_cast<std::size_t>(j)]))
                    .trace();
        }
    }
    FisherPair out;
    out.qfi = moments.real();
    out.qfi = 0.5 * (out.qfi + out.qfi.transpose()).eval();
    const double skew_12 = 0.5 * (moments(0, 1).imag() - moments(1, 0).imag());
    out.skew << 0.0, skew_12, -skew_12, 0.0;

    const double det = out.qfi.determinant();
    if (det < tol::kDetQfiMin) {
        throw SingularModelError("mixed model is not locally identifiable");
    }
    double beta = std::abs(skew_12) / std::sqrt(det);
    if (beta > 1.0 + tol::kBetaClamp) {
        throw InternalError("mixed-state beta exceeds 1 beyond the clamping margin");
    }
    if (std::abs(beta - 1.0) <= tol::kBetaClamp) beta = 1.0;
    out.beta = std::min(std::max(beta, 0.0), 1.0);
    out.eta = 0.5 * std::asin(out.beta);
    return out;
}

BoundResult cstar(const MixedModel& model) {
    const FisherPair fp = fisher_pair(model);
    const Mat2 j_inv_sqrt = sym2_inv_sqrt(fp.qfi);
    const Mat2 s = j_inv_sqrt * model.weight * j_inv_sqrt;
    auto [s1, s2] = sym2_eigenvalues(s);
    return cmi(std::max(s1, 0.0), std::max(s2, 0.0), fp.beta);
}

PureModel purify(const MixedModel& model) {
    validate_mixed_model(model);
    const RhoEigen re = rho_eigen(model);
    const Eigen::Index d = model.dim();

    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (re.p(i) > tol::kSupportCut) support.push_back(i);
    }
    if (support.empty()) throw DomainError("rho has empty support");
    const Eigen::Index r = static_cast<Eigen::Index>(support.size());

    // psi0 = sum_i sqrt(p_i) |psi_i> x |e_i>, environment as the fast index.
    CVec psi0 = CVec::Zero(d * r);
    for (Eigen::Index k = 0; k < r; ++k) {
        const double w = std::sqrt(re.p(support[static_cast<std::size_t>(k)]));
        for (Eigen::Index a = 0; a < d; ++a) {
            psi0(a * r + k) = w * re.v(a, support[static_cast<std::size_t>(k)]);
        }
    }

    const SldOperator l1 = sld_mixed(model, 0);
    const SldOperator l2 = sld_mixed(model, 1);
    const auto lift = [&](const CMat& l) {
        CVec out = CVec::Zero(d * r);
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) {
                if (l(a, b) == Cplx(0.0, 0.0)) continue;
                for (Eigen::Index k = 0; k < r; ++k) {
                    out(a * r + k) += 0.5 * l(a, b) * psi0(b * r + k);
                }
            }
        }
        return out;
    };

    PureModel out;
    out.psi0 = psi0;
    out.dpsi = {lift(l1.matrix), lift(l2.matrix)};
    out.weight = model.weight;
    return out;
}

CMat partial_trace_env(const CMat& op, Eigen::Index d, Eigen::Index r) {
    if (op.rows() != d * r || op.cols() != d * r) {
        throw DomainError("partial_trace_env: dimensions do not factorize");
    }
    CMat out = CMat::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            Cplx acc = 0.0;
            for (Eigen::Index k = 0; k < r; ++k) acc += op(a * r + k, b * r + k);
            out(a, b) = acc;
        }
    }
    return out;
}

} // namespace qest
