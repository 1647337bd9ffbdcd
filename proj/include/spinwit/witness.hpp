#pragma once

#include <array>

#include "spinwit/pure_state.hpp"

namespace spinwit {

// Absolute margin tolerance: exact-engine arithmetic carries <=1e-12 rounding
// while physically meaningful margins are orders of magnitude larger.
inline constexpr double kDetectionTolerance = 1e-9;

struct WitnessVerdict {
    double lhs = 0.0;   // |amplitude|^2 style quantity, >= 0
    double rhs = 0.0;
    double margin = 0.0;  // lhs - rhs
    bool detected = false;
    double tolerance = kDetectionTolerance;
    bool indeterminate = false;  // undefined-denominator case (spin-squeezing test)
};

struct WitnessMatrix3 {
    Eigen::Matrix3cd m;
    std::array<double, 3> eigenvalues{};  // descending
};

// lhs choice for the first product-operator condition: either the plain
// |<J_{a-} J_{b+}>|^2 or the adjoint-pair form |<J_{a+} J_{b+}>|^2; the
// right-hand side <J_{a+}J_{a-}J_{b+}J_{b-}> is shared.
enum class LhsVariant { plain, adjoint_pair };

// |<J_{a-} J_{b+}>|^2 > <J_{a+} J_{a-} J_{b+} J_{b-}>
WitnessVerdict condition_one(const PureState& state, const SiteBlock& a, const SiteBlock& b,
                             double tolerance = kDetectionTolerance,
                             LhsVariant variant = LhsVariant::plain);

// |<J_{a-} J_{b-}>|^2 > <J_{a+} J_{a-}> <J_{b+} J_{b-}>
WitnessVerdict condition_two(const PureState& state, const SiteBlock& a, const SiteBlock& b,
                             double tolerance = kDetectionTolerance);

// Spin-squeezing entanglement test on an N-qubit register:
// (Delta J3)^2 / (<J1>^2 + <J2>^2) < 1/N, reported as
// lhs = (<J1>^2+<J2>^2)/N, rhs = (Delta J3)^2. A vanishing denominator makes
// the criterion undefined; the verdict is then flagged indeterminate.
WitnessVerdict sorensen(const PureState& state, double tolerance = kDetectionTolerance);

// 3x3 Hermitian witness matrix over the A-side operator family
// {J_{a-}, J_{a+}, J_{a3}} with B = J_{b-}:
//   M_kl = conj(t_k) t_l - <A_k phi | A_l phi>,
//   phi = J_{b-}|psi>, t_k = <psi| A_k J_{b+} |psi>.
// A positive eigenvalue certifies block entanglement for some operator choice,
// and the positivity is invariant under block-local rotations (congruence).
WitnessMatrix3 rotation_matrix(const PureState& state, const SiteBlock& a, const SiteBlock& b);

WitnessVerdict rotation_verdict(const WitnessMatrix3& m, double tolerance = kDetectionTolerance);

// Closed-form margin of the non-invariant product-operator condition evaluated
// on the rotated two-spin-j benchmark state:
//   margin = cos(alpha) cos(beta) - j (1 + sin^2 alpha sin^2 beta)
//            - (cos(alpha) cos(beta) - 1)^2 / 4.
double old_condition_rotated(double j, double alpha, double beta);

// Eigenvalues of a 3x3 Hermitian matrix, descending. Closed-form
// characteristic-polynomial solve with a cyclic-Jacobi fallback when the
// trigonometric discriminant is nearly degenerate.
std::array<double, 3> hermitian3_eigenvalues(const Eigen::Matrix3cd& m);

}  // namespace spinwit
