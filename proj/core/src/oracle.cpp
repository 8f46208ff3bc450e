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

#include "qest/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qest/bound.hpp"
#include "qest/errors.hpp"
#include "qest/gridstate.hpp"
#include "qest/rng.hpp"
#include "qest/tolerances.hpp"

namespace qest::oracle {

std::pair<double, double> grid_min_cmi(double s1, double s2, double beta, int npoints) {
    if (s1 < 0.0 || s2 < 0.0 || beta < 0.0 || beta > 1.0) {
        throw DomainError("grid_min_cmi: invalid inputs");
    }
    npoints = std::max(npoints, 1000);
    const double eta = 0.5 * std::asin(beta);

    // Deliberately independent of the quartic path: only the objective
    // formula is shared.
    const auto f = [&](double phi) {
        const auto term = [](double s, double c) {
            if (s == 0.0) return 0.0;
            if (c == 0.0) return std::numeric_limits<double>::infinity();
            return s / (c * c);
        };
        return term(s1, std::cos(phi - eta)) + term(s2, std::cos(phi + eta));
    };

    if (eta == 0.0) return {f(0.0), 0.0};

    const double step = 2.0 * eta / (npoints - 1);
    double best_phi = -eta;
    double best_val = f(-eta);
    for (int i = 1; i < npoints; ++i) {
        const double phi = -eta + step * i;
        const double v = f(phi);
        if (v < best_val) {
            best_val = v;
            best_phi = phi;
        }
    }

    // Golden-section refinement of the bracket around the best grid point.
    double lo = std::max(-eta, best_phi - step);
    double hi = std::min(eta, best_phi + step);
    const double inv_phi_ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - inv_phi_ratio * (hi - lo);
    double d = lo + inv_phi_ratio * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > 1e-14) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi_ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi_ratio * (hi - lo);
            fd = f(d);
        }
    }
    const double phi = 0.5 * (lo + hi);
    const double val = f(phi);
    if (val < best_val) return {val, phi};
    return {best_val, best_phi};
}

Povm random_povm(int d, int n_outcomes, std::uint64_t seed) {
    if (d < 2) throw DomainError("random_povm: dimension must be at least 2");
    if (n_outcomes < 1) throw DomainError("random_povm: need at least one outcome");

    for (int attempt = 0; attempt < 64; ++attempt) {
        SplitMix64 rng(SplitMix64::substream(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<CMat> kernels;
        kernels.reserve(static_cast<std::size_t>(n_outcomes));
        CMat total = CMat::Zero(d, d);
        for (int i = 0; i < n_outcomes; ++i) {
            CMat a(d, d);
            for (Eigen::Index row = 0; row < d; ++row) {
                for (Eigen::Index col = 0; col < d; ++col) {
                    a(row, col) = rng.complex_gaussian();
                }
            }
            CMat k = a * a.adjoint();
            total += k;
            kernels.push_back(std::move(k));
        }
        Eigen::SelfAdjointEigenSolver<CMat> es(total);
        if (es.eigenvalues().minCoeff() < 1e-12 * es.eigenvalues().maxCoeff()) {
            continue; // singular normalizer, redraw
        }
        const CMat inv_sqrt = es.operatorInverseSqrt();
        Povm povm;
        povm.elements.reserve(kernels.size());
        for (const CMat& k : kernels) {
            CMat e = inv_sqrt * k * inv_sqrt;
            povm.elements.push_back(0.5 * (e + e.adjoint()));
        }
        return povm;
    }
    throw InternalError("random_povm: could not draw a nonsingular normalizer");
}

PureModel random_model(int d, std::uint64_t seed) {
    if (d < 2) throw DomainError("random_model: dimension must be at least 2");
    for (int attempt = 0; attempt < 64; ++attempt) {
        SplitMix64 rng(SplitMix64::substream(seed, 0x517CC1B7ULL + static_cast<std::uint64_t>(attempt)));
        PureModel m;
        m.psi0 = CVec(d);
        for (Eigen::Index i = 0; i < d; ++i) m.psi0(i) = rng.complex_gaussian();
        m.psi0.normalize();
        for (auto& dv : m.dpsi) {
            dv = CVec(d);
            for (Eigen::Index i = 0; i < d; ++i) dv(i) = rng.complex_gaussian();
        }
        Mat2 g;
        g << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
        m.weight = g.transpose() * g + 0.05 * Mat2::Identity();

        try {
            const FisherPair fp = fisher_pair(m);
            (void)fp;
            return m;
        } catch (const SingularModelError&) {
            continue;
        }
    }
    throw InternalError("random_model: repeated singular draws");
}

std::vector<OracleReport> inequality_fuzz(const std::vector<PureModel>& models,
                                          const std::vector<Povm>& povms) {
    if (models.size() != povms.size()) {
        throw DomainError("inequality_fuzz: models and povms must pair up");
    }
    double max_eq6 = models.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    double max_regret = max_eq6;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const FisherPair fp = fisher_pair(models[i]);
        const Cfim cf = classical_fisher(povms[i], models[i]);
        const Mat2& g = cf.normalized;
        const double det_g = std::max(0.0, g.determinant());
        const double det_ig = std::max(0.0, (Mat2::Identity() - g).determinant());
        const double eq6 =
            std::sqrt(det_g) - std::sqrt(det_ig) - std::sqrt((1.0 - fp.beta) * (1.0 + fp.beta));
        max_eq6 = std::max(max_eq6, eq6);
        max_regret = std::max(max_regret, -regret_check(cf, fp));
    }
    if (models.empty()) {
        max_eq6 = 0.0;
        max_regret = 0.0;
    }
    const long n = static_cast<long>(models.size());
    return {
        OracleReport{"eq6_inequality", max_eq6, n, tol::kFuzzEq6, max_eq6 <= tol::kFuzzEq6},
        OracleReport{"regret_inequality", max_regret, n, tol::kFuzzRegret,
                     max_regret <= tol::kFuzzRegret},
    };
}

namespace {

// One deterministic fuzz sample; every eighth sample swaps in a
// constructed optimal measurement so the saturating boundary is present.
std::pair<PureModel, Povm> fuzz_sample(std::uint64_t seed, long index,
                                       const std::vector<int>& dims, bool include_optimal) {
    const std::uint64_t sub = SplitMix64::substream(seed, static_cast<std::uint64_t>(index));
    SplitMix64 rng(sub);
    const int d = dims[static_cast<std::size_t>(index) % dims.size()];
    PureModel model = random_model(d, sub);
    if (include_optimal && index % 8 == 3) {
        auto [povm, bound] = optimal_measurement_for_weight(model);
        (void)bound;
        return {std::move(model), std::move(povm)};
    }
    const int n_out = 2 + static_cast<int>(rng.next() % 5);
    Povm povm = random_povm(d, n_out, sub ^ 0xBEEF);
    return {std::move(model), std::move(povm)};
}

} // namespace

std::vector<OracleReport> run_inequality_fuzz(long samples, const std::vector<int>& dims,
                                              std::uint64_t seed, int jobs,
                                              bool include_optimal) {
    if (samples < 0) throw DomainError("run_inequality_fuzz: negative sample count");
    if (dims.empty()) throw DomainError("run_inequality_fuzz: empty dimension list");
    for (const int d : dims) {
        if (d < 2) throw DomainError("run_inequality_fuzz: dimensions must be >= 2");
    }

    std::vector<PureModel> models(static_cast<std::size_t>(samples));
    std::vector<Povm> povms(static_cast<std::size_t>(samples));

    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, samples > 0 ? static_cast<unsigned>(samples) : 1u);

    std::atomic<long> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        try {
            for (long i = cursor.fetch_add(1); i < samples; i = cursor.fetch_add(1)) {
                auto [model, povm] = fuzz_sample(seed, i, dims, include_optimal);
                models[static_cast<std::size_t>(i)] = std::move(model);
                povms[static_cast<std::size_t>(i)] = std::move(povm);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return inequality_fuzz(models, povms);
}

OracleReport quartic_vs_grid(long samples, std::uint64_t seed) {
    double max_rel = 0.0;
    for (long i = 0; i < samples; ++i) {
        SplitMix64 rng(SplitMix64::substream(seed ^ 0x9A41C, static_cast<std::uint64_t>(i)));
        const double s1 = 10.0 * std::max(rng.uniform(), 1e-12);
        const double s2 = 10.0 * std::max(rng.uniform(), 1e-12);
        const double beta = rng.uniform();
        const BoundResult fast = cmi(s1, s2, beta);
        const auto [slow, phi] = grid_min_cmi(s1, s2, beta);
        (void)phi;
        max_rel = std::max(max_rel, std::abs(fast.value - slow) / (1.0 + fast.value));
    }
    return OracleReport{"quartic_vs_grid", max_rel, samples, tol::kFuzzQuarticVsGrid,
                        max_rel <= tol::kFuzzQuarticVsGrid};
}

QuadratureResult quadrature_overlap(GridIntegrand which, int t1, int t2, double delta) {
    if (!(delta > 0.0)) throw DomainError("quadrature_overlap: delta must be positive");
    const double a = std::sqrt(2.0 * M_PI) * t1;
    const double b = std::sqrt(2.0 * M_PI) * t2;
    const double d2 = delta * delta;
    const double lattice = std::exp(-M_PI * d2 * (static_cast<double>(t1) * t1 +
                                                  static_cast<double>(t2) * t2));
    const double norm = std::sqrt(2.0 / M_PI) * lattice;

    const auto gaussians = [&](double x) {
        return std::exp(-(x - a) * (x - a) / (2.0 * d2)) *
               std::exp(-(x - b) * (x - b) / (2.0 * d2));
    };
    std::function<double(double)> integrand;
    switch (which) {
        case GridIntegrand::dd_u:
            integrand = [&](double x) {
                return norm / (d2 * d2) * (x - a) * (x - b) * gaussians(x);
            };
            break;
        case GridIntegrand::dd_v:
            integrand = [&](double x) { return norm * x * x * gaussians(x); };
            break;
        case GridIntegrand::psi:
            integrand = [&](double x) { return norm * gaussians(x); };
            break;
    }

    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double mid = 0.5 * (a + b);
    const double span = std::abs(a - b) / 2.0 + 12.0 * delta; // integrand support
    const double value = gauss_kronrod<double, 31>::integrate(
        integrand, mid - span, mid + span, 12, 1e-14, &err);
    QuadratureResult out;
    out.value = value;
    out.abs_error = err;
    out.converged = err < tol::kQuadAbsErr;
    return out;
}

} // namespace qest::oracle
