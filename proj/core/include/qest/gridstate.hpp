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

#ifndef QEST_GRIDSTATE_HPP
#define QEST_GRIDSTATE_HPP

#include <vector>

#include "qest/statmodel.hpp"

namespace qest {

/// Parameters of a finitely squeezed grid-state computation.  delta is the
/// dimensionless squeezing parameter; the double sums over the lattice are
/// truncated at |t| <= cutoff, chosen so that every neglected Gaussian
/// term is below tail_tol.
struct GridParams {
    double delta = 0.0;
    int cutoff = 0;
    double tail_tol = 1e-16;

    /// Selects the smallest cutoff meeting the tail criterion (capped at
    /// 200; throws DomainError if the cap is insufficient).
    static GridParams for_delta(double delta, double tail_tol = 1e-16);
};

/// One row of the displacement-sensing sweep.
struct GridSweepRow {
    double delta = 0.0;
    double n_delta = 0.0; // normalization of the grid state
    double nbar = 0.0;    // mean photon number
    double j11 = 0.0;
    double j22 = 0.0;
    double beta = 0.0;
    double c_sld = 0.0;   // tr[W J^-1]
    double c_mi = 0.0;
};

// Closed-form Gaussian lattice overlaps.  All three share the envelope
// exp(-pi/(2 delta^2) * (2 delta^4 (t1^2 + t2^2) + (t1 - t2)^2)).

/// <d_u psi_t1 | d_u psi_t2> = (delta^2 - pi (t1-t2)^2) / (sqrt(2) delta^3) * envelope.
double overlap_dd_u(int t1, int t2, double delta);

/// <d_v psi_t1 | d_v psi_t2> = (delta / sqrt(2)) (delta^2 + pi (t1+t2)^2) * envelope.
double overlap_dd_v(int t1, int t2, double delta);

/// <psi_t1 | psi_t2> = sqrt(2) delta * envelope.
double overlap_psi(int t1, int t2, double delta);

/// Normalization N_delta with N^-2 = sum_{t1,t2} overlap_psi; approaches 1
/// as delta -> 0.
double grid_norm(const GridParams& p);

/// Fisher pair of the displacement-sensing model: qfi is diagonal with
/// entries 4 N^2 sum overlap_dd_u and 4 N^2 sum overlap_dd_v, the skew
/// off-diagonal is exactly 2, and beta = 2 / sqrt(j11 * j22).
FisherPair grid_fisher(const GridParams& p);

/// Mean photon number from the trace identity tr(qfi) = 4 (2 nbar + 1).
double mean_photon(const GridParams& p);

/// One sweep row per squeezing value; rows are independent and may be
/// computed in parallel (jobs = 0 uses the available parallelism) with
/// deterministic output order.
std::vector<GridSweepRow> sweep(const std::vector<double>& deltas, const Mat2& weight,
                                int jobs = 0);

} // namespace qest

#endif // QEST_GRIDSTATE_HPP
