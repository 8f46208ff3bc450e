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

#include "qest/gridstate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qest/bound.hpp"
#include "qest/errors.hpp"
#include "qest/tolerances.hpp"

namespace qest {

namespace {

constexpr int kCutoffCap = 200;

double envelope(int t1, int t2, double delta) {
    const double d2 = delta * delta;
    const double diff = static_cast<double>(t1 - t2);
    const double sq = static_cast<double>(t1) * t1 + static_cast<double>(t2) * t2;
    return std::exp(-0.5 * M_PI / d2 * (2.0 * d2 * d2 * sq + diff * diff));
}

// Largest prefactor magnitude over |t1|, |t2| <= cutoff, used by the tail
// criterion.
double max_prefactor(double delta, int cutoff) {
    const double d2 = delta * delta;
    const double span = M_PI * 4.0 * static_cast<double>(cutoff) * cutoff;
    const double pref_u = (d2 + span) / (std::sqrt(2.0) * d2 * delta);
    const double pref_v = delta / std::sqrt(2.0) * (d2 + span);
    const double pref_psi = std::sqrt(2.0) * delta;
    return std::max({pref_u, pref_v, pref_psi});
}

} // namespace

GridParams GridParams::for_delta(double delta, double tail_tol) {
    if (!(delta > 0.0)) throw DomainError("grid squeezing parameter must be positive");
    if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be positive");
    const double d2 = delta * delta;
    for (int t = 1; t <= kCutoffCap; ++t) {
        const double tt = static_cast<double>(t) * t;
        const bool lattice_tail =
            std::exp(-2.0 * M_PI * d2 * d2 * tt) * max_prefactor(delta, t) < tail_tol;
        const bool cross_tail = std::exp(-0.5 * M_PI * tt / d2) < tail_tol;
        if (lattice_tail && cross_tail) {
            return GridParams{delta, t, tail_tol};
        }
    }
    throw DomainError("grid cutoff cap insufficient for this squeezing value");
}

double overlap_dd_u(int t1, int t2, double delta) {
    const double d2 = delta * delta;
    const double diff = static_cast<double>(t1 - t2);
    return (d2 - M_PI * diff * diff) / (std::sqrt(2.0) * d2 * delta) *
           envelope(t1, t2, delta);
}

double overlap_dd_v(int t1, int t2, double delta) {
    const double d2 = delta * delta;
    const double sum = static_cast<double>(t1 + t2);
    return delta / std::sqrt(2.0) * (d2 + M_PI * sum * sum) * envelope(t1, t2, delta);
}

double overlap_psi(int t1, int t2, double delta) {
    return std::sqrt(2.0) * delta * envelope(t1, t2, delta);
}

namespace {

double lattice_sum(double (*term)(int, int, double), const GridParams& p) {
    double acc = 0.0;
    for (int t1 = -p.cutoff; t1 <= p.cutoff; ++t1) {
        for (int t2 = -p.cutoff; t2 <= p.cutoff; ++t2) {
            acc += term(t1, t2, p.delta);
        }
    }
    return acc;
}

} // namespace

double grid_norm(const GridParams& p) {
    if (p.cutoff < 1) throw DomainError("grid cutoff must be positive");
    const double inv_sq = lattice_sum(&overlap_psi, p);
    if (!(inv_sq > 0.0)) throw InternalError("grid normalization sum is not positive");
    return 1.0 / std::sqrt(inv_sq);
}

FisherPair grid_fisher(const GridParams& p) {
    const double n = grid_norm(p);
    const double n2 = n * n;
    FisherPair out;
    out.qfi = Mat2::Zero();
    out.qfi(0, 0) = 4.0 * n2 * lattice_sum(&overlap_dd_u, p);
    out.qfi(1, 1) = 4.0 * n2 * lattice_sum(&overlap_dd_v, p);
    out.skew << 0.0, 2.0, -2.0, 0.0;
    if (out.qfi(0, 0) <= 0.0 || out.qfi(1, 1) <= 0.0) {
        throw InternalError("grid quantum Fisher information is not positive");
    }
    out.beta = std::min(1.0, 2.0 / std::sqrt(out.qfi(0, 0) * out.qfi(1, 1)));
    out.eta = 0.5 * std::asin(out.beta);
    return out;
}

double mean_photon(const GridParams& p) {
    const FisherPair fp = grid_fisher(p);
    return 0.5 * (0.25 * fp.qfi.trace() - 1.0);
}

namespace {

GridSweepRow sweep_row(double delta, const Mat2& weight) {
    const GridParams p = GridParams::for_delta(delta);
    const FisherPair fp = grid_fisher(p);
    GridSweepRow row;
    row.delta = delta;
    row.n_delta = grid_norm(p);
    row.j11 = fp.qfi(0, 0);
    row.j22 = fp.qfi(1, 1);
    row.beta = fp.beta;
    row.nbar = 0.5 * (0.25 * fp.qfi.trace() - 1.0);
    row.c_sld = (weight * fp.qfi.inverse()).trace();
    const Mat2 j_inv_sqrt = sym2_inv_sqrt(fp.qfi);
    const Mat2 s = j_inv_sqrt * weight * j_inv_sqrt;
    const auto [s1, s2] = sym2_eigenvalues(s);
    row.c_mi = cmi(std::max(s1, 0.0), std::max(s2, 0.0), fp.beta).value;
    return row;
}

} // namespace

std::vector<GridSweepRow> sweep(const std::vector<double>& deltas, const Mat2& weight,
                                int jobs) {
    std::vector<GridSweepRow> rows(deltas.size());
    if (deltas.empty()) return rows;

    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(deltas.size()));

    if (workers <= 1) {
        for (std::size_t i = 0; i < deltas.size(); ++i) rows[i] = sweep_row(deltas[i], weight);
        return rows;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = cursor.fetch_add(1); i < deltas.size();
                     i = cursor.fetch_add(1)) {
                    rows[i] = sweep_row(deltas[i], weight);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

} // namespace qest
