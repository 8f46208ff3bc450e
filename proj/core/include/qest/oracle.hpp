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

#ifndef QEST_ORACLE_HPP
#define QEST_ORACLE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qest/measurement.hpp"
#include "qest/statmodel.hpp"

namespace qest::oracle {

/// Outcome of one brute-force verification run.
struct OracleReport {
    std::string name;
    double max_violation = 0.0;
    long samples = 0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Brute-force bound minimizer: uniform phi grid over [-eta, eta] followed
/// by golden-section refinement of the best bracket down to width 1e-14.
/// Shares no code with the quartic path beyond the objective formula.
std::pair<double, double> grid_min_cmi(double s1, double s2, double beta,
                                       int npoints = 4001);

/// Seeded random POVM: n Wishart-style PSD operators A_i A_i^dagger
/// normalized by S^{-1/2} (.) S^{-1/2} with S their sum.
Povm random_povm(int d, int n_outcomes, std::uint64_t seed);

/// Seeded random pure model with a random PSD weight; redraws until the
/// quantum Fisher information is safely nonsingular.
PureModel random_model(int d, std::uint64_t seed);

/// Evaluates the determinant inequality and the regret inequality on
/// matched (model, povm) pairs; returns one report per inequality.
std::vector<OracleReport> inequality_fuzz(const std::vector<PureModel>& models,
                                          const std::vector<Povm>& povms);

/// Convenience builder for the fuzz pool: samples models over the given
/// dimensions and 2..6-outcome POVMs, optionally mixing in constructed
/// optimal measurements so saturation is present in the pool.
std::vector<OracleReport> run_inequality_fuzz(long samples, const std::vector<int>& dims,
                                              std::uint64_t seed, int jobs = 0,
                                              bool include_optimal = true);

/// Quartic path versus grid oracle on seeded random (s1, s2, beta) triples.
OracleReport quartic_vs_grid(long samples, std::uint64_t seed);

/// Integrands of the grid-state overlap formulas, for quadrature cross-checks.
enum class GridIntegrand { dd_u, dd_v, psi };

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod evaluation of the defining Gaussian integral of
/// one lattice overlap, with absolute error target kQuadAbsErr.
QuadratureResult quadrature_overlap(GridIntegrand which, int t1, int t2, double delta);

} // namespace qest::oracle

#endif // QEST_ORACLE_HPP
