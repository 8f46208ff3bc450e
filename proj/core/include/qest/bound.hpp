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

#ifndef QEST_BOUND_HPP
#define QEST_BOUND_HPP

#include <array>
#include <string>

#include "qest/statmodel.hpp"

namespace qest {

/// Which closed-form shortcut (if any) produced a bound value.
enum class BoundBranch { general, beta_zero, beta_one, equal_s, singular_w };

std::string to_string(BoundBranch branch);

/// Result of the most informative Cramer-Rao bound evaluation.
/// value is per-copy in units of W * theta^2; phi_star in [-eta, eta]
/// attains the minimum of the objective for the descending pair (s1, s2).
struct BoundResult {
    double value = 0.0;
    double phi_star = 0.0;
    double s1 = 0.0; // eigenvalues of J^{-1/2} W J^{-1/2}, s1 >= s2 >= 0
    double s2 = 0.0;
    double eta = 0.0;
    BoundBranch branch = BoundBranch::general;
};

/// The trade-off objective s1/cos^2(phi - eta) + s2/cos^2(phi + eta).
/// Terms with a zero weight contribute zero; a vanishing denominator under
/// a positive weight returns +infinity.
double objective(double phi, double s1, double s2, double eta);

/// Most informative bound for eigenvalue pair (s1, s2) and incompatibility
/// beta.  Special cases are dispatched first; the general branch solves the
/// quartic in x = tan(phi) via a companion matrix with Newton polish and
/// evaluates the objective at every interior root plus the endpoints.
BoundResult cmi(double s1, double s2, double beta);

/// Full model entry point: computes the Fisher pair, the eigenvalues of
/// J^{-1/2} W J^{-1/2} and dispatches to cmi.
BoundResult cmi_for_model(const PureModel& model);

/// tr[W J^{-1}], the (generally unattainable) scalar SLD bound.
double sld_bound_for_model(const PureModel& model);

/// Coefficients {x^4, x^3, x^2, x, 1} of the stationarity quartic in
/// x = tan(phi).  Requires 0 < eta <= pi/4.
std::array<double, 5> quartic_coefficients(double s1, double s2, double eta);

} // namespace qest

#endif // QEST_BOUND_HPP
