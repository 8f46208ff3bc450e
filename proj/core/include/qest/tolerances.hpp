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

#ifndef QEST_TOLERANCES_HPP
#define QEST_TOLERANCES_HPP

namespace qest::tol {

// Model invariants.
inline constexpr double kUnitNorm = 1e-12;       // | ||psi0|| - 1 |
inline constexpr double kGaugeOverlap = 1e-10;   // |<psi0|dpsi_j>| rejection
inline constexpr double kWeightPsd = 1e-12;      // smallest eigenvalue of W
inline constexpr double kDetQfiMin = 1e-14;      // identifiability threshold on det J

// Incompatibility coefficient handling.
inline constexpr double kBetaClamp = 1e-9;       // clamp window around beta = 1
inline constexpr double kBetaOneDispatch = 1e-9; // 1 - beta below this -> 2d branch
inline constexpr double kBetaZeroDispatch = 1e-12;
inline constexpr double kEqualSRel = 1e-14;      // |s1-s2| < kEqualSRel*(s1+s2)
inline constexpr double kSingularSRel = 1e-14;   // s2 < kSingularSRel*s1

// Root finding.
inline constexpr double kRootImag = 1e-9;        // |Im x| < kRootImag*(1+|x|)

// POVM invariants.
inline constexpr double kPovmPsd = 1e-10;        // eigenvalue floor for elements
inline constexpr double kPovmComplete = 1e-10;   // entrywise |sum - I|
inline constexpr double kZeroOutcome = 1e-14;    // p(i) below this contributes 0

// Unitarity / orthogonality checks.
inline constexpr double kOrthogonal = 1e-12;

// Mixed-state SLD.
inline constexpr double kSupportCut = 1e-12;     // p_a + p_b division threshold
inline constexpr double kLeakage = 1e-10;        // derivative outside support

// Fuzz-report tolerances (one table, shared by tests and the verify command).
inline constexpr double kFuzzEq6 = 1e-9;
inline constexpr double kFuzzRegret = 1e-9;
inline constexpr double kFuzzQuarticVsGrid = 1e-9;

// Grid-state sums and the quadrature oracle.
inline constexpr double kGridTail = 1e-16;
inline constexpr double kQuadAbsErr = 1e-12;

} // namespace qest::tol

#endif // QEST_TOLERANCES_HPP
