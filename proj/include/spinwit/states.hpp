#pragma once

#include <Eigen/Dense>

#include "spinwit/pure_state.hpp"

namespace spinwit {

// Two-block state with matched z-projection, sum_m c_m |j,m>_a |j,m>_b,
// realized on 2n qubits (n = 2j per block) through symmetric Dicke states.
struct CorrelatedSpec {
    double j = 0.5;
    Eigen::VectorXcd coeffs;  // c_m for m = -j..j (ascending), 2j+1 entries
};

// Eigenstate family of (J1 + i*lambda*J2) built from a coefficient
// recurrence; saturates the angular-momentum uncertainty relation.
struct IntelligentSpec {
    double j = 1.0;
    double m0 = -1.0;  // largest populated z-projection before rotation
    double lambda = 4.0;
};

// (1/sqrt2)|0000> + (1/2)(|0110> + |1001>) on four qubits.
PureState four_qubit_example();

// Symmetric n-qubit state with j = n/2 and j+m excitations, equal amplitude
// over all placements. Requires |m| <= n/2 and j+m integral.
PureState dicke_state(int n, double m);

// Builds the 2n-qubit state for the spec; blocks are sites 0..n-1 and
// n..2n-1. Dense construction caps j at 4 (16 qubits).
PureState correlated_state(const CorrelatedSpec& spec);

// c_m proportional to x^(j+m), normalized. Requires x > 0.
CorrelatedSpec geometric_coeffs(double j, double x);

// Collective-ladder condition margin in closed form:
//   lhs = |sum_{m>-j} (j+m)(j-m+1) conj(c_{m-1}) c_m|
//   rhs = sum_m (j+m)(j-m+1) |c_m|^2
// Positive margin certifies block entanglement. Coefficients are
// normalized internally, so the returned value is scale-free.
double collective_margin(const CorrelatedSpec& spec);

// Single-spin-pair condition margin: same lhs, rhs = 2j * sum |c_m|^2 (j+m).
// Never positive unless collective_margin is (2j >= j-m+1 termwise).
double single_spin_margin(const CorrelatedSpec& spec);

// Builds the coefficient vector by forward recurrence from C_{-j} = 1,
// truncates above m0, normalizes, then rotates both spins by
// exp(-i*theta*J1) with theta = arccos(-1/lambda). Throws for lambda <= 1.
PureState intelligent_state(const IntelligentSpec& spec);

// Residual norm of the defining ladder-product eigenvalue relation
//   [J_{a-}J_{b-} - i*sqrt(lambda^2-1)*(J_{a3}+J_{b3})] |psi> = beta |psi>
// with beta = -2i*m0*sqrt(lambda^2-1), evaluated in the frame where the
// coefficient recurrence lives. Zero (machine precision) by construction.
double intelligent_residual(const IntelligentSpec& spec);

// Residual norm of the total-spin relation
//   [(J1a+J1b) + i*lambda*(J2a+J2b)] |psi> = beta |psi>
// evaluated on the rotated state. Vanishes only when m0 = -j; reported
// for diagnostics at other m0.
double intelligent_total_residual(const IntelligentSpec& spec);

// Margin from the closed-form expectation sums of the eigenstate family:
//   lhs = |sum_m [2i*sqrt(lambda^2+1)/lambda*(m0-m) - (lambda^2-1)m^2/lambda^2] w_m|
//   rhs =  sum_m [(lambda^2+1)/(2lambda^2)*(j(j+1)-m^2) - m/lambda] w_m
// with w_m the normalized coefficient weights. For j=1, m0=-1 the sign
// changes at lambda = 3. See oracle-suite output for where these sums and
// the exact engine part ways at other (j, m0).
double intelligent_margin_closed_form(const IntelligentSpec& spec);

}  // namespace spinwit
