#include "spinwit/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace spinwit {

namespace {

bool is_half_integer(double v) { return std::abs(2.0 * v - std::round(2.0 * v)) < 1e-9; }

void check_correlated(const CorrelatedSpec& spec) {
    if (!(spec.j > 0.0) || !is_half_integer(spec.j))
        throw std::invalid_argument("correlated: j must be a positive half-integer");
    const int d = static_cast<int>(std::round(2.0 * spec.j)) + 1;
    if (spec.coeffs.size() != d)
        throw std::invalid_argument("correlated: need 2j+1 coefficients");
    if (spec.coeffs.norm() < 1e-12)
        throw std::invalid_argument("correlated: zero coefficient vector");
}

void check_intelligent(const IntelligentSpec& spec) {
    if (!(spec.lambda > 1.0))
        throw std::invalid_argument("intelligent: lambda must exceed 1");
    if (!(spec.j > 0.0) || !is_half_integer(spec.j))
        throw std::invalid_argument("intelligent: j must be a positive half-integer");
    if (!is_half_integer(spec.m0) || spec.m0 < -spec.j - 1e-9 || spec.m0 > spec.j + 1e-9)
        throw std::invalid_argument("intelligent: m0 must be a half-integer in [-j, j]");
    const double k = spec.j + spec.m0;
    if (std::abs(k - std::round(k)) > 1e-9)
        throw std::invalid_argument("intelligent: j + m0 must be an integer");
}

// Coefficient vector C_m, m = -j..j ascending, from the recurrence
//   C_{m+1} = 2i*s*(m - m0) / ((j+m+1)(j-m)) * C_m,   s = sqrt(lambda^2-1),
// started at C_{-j} = 1 and identically zero above m0.
Eigen::VectorXcd intelligent_coeffs(const IntelligentSpec& spec) {
    const int d = static_cast<int>(std::round(2.0 * spec.j)) + 1;
    const int top = static_cast<int>(std::round(spec.j + spec.m0));  // index of m0
    const double s = std::sqrt(spec.lambda * spec.lambda - 1.0);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
    c[0] = 1.0;
    for (int k = 0; k < top; ++k) {
        const double m = -spec.j + k;
        c[k + 1] = cplx(0.0, 2.0 * s * (m - spec.m0)) /
                   ((spec.j + m + 1.0) * (spec.j - m)) * c[k];
    }
    return c / c.norm();
}

// Diagonal |m,m> two-site state carrying the recurrence coefficients,
// before any rotation. Site dims are {2j+1, 2j+1}.
PureState intelligent_diagonal(const IntelligentSpec& spec) {
    const Eigen::VectorXcd c = intelligent_coeffs(spec);
    const int d = static_cast<int>(c.size());
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
    for (int k = 0; k < d; ++k) amps[static_cast<Eigen::Index>(k) * d + k] = c[k];
    return PureState({d, d}, amps);
}

}  // namespace

PureState four_qubit_example() {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
    amps[0b0000] = 1.0 / std::sqrt(2.0);
    amps[0b0110] = 0.5;
    amps[0b1001] = 0.5;
    return PureState({2, 2, 2, 2}, amps);
}

PureState dicke_state(int n, double m) {
    if (n < 1) throw std::invalid_argument("dicke: need at least one qubit");
    const double j = 0.5 * n;
    const double kd = j + m;
    if (std::abs(kd - std::round(kd)) > 1e-9 || m < -j - 1e-9 || m > j + 1e-9)
        throw std::invalid_argument("dicke: m out of range or j+m not integral");
    const int k = static_cast<int>(std::round(kd));  // number of excitations
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    for (unsigned idx = 0; idx < (1u << n); ++idx)
        if (std::popcount(idx) == k) amps[idx] = 1.0;
    return PureState(std::vector<int>(n, 2), amps);
}

PureState correlated_state(const CorrelatedSpec& spec) {
    check_correlated(spec);
    if (spec.j > 4.0 + 1e-9)
        throw std::invalid_argument("correlated: dense construction caps j at 4");
    const int n = static_cast<int>(std::round(2.0 * spec.j));  // qubits per block
    const Eigen::Index bd = Eigen::Index(1) << n;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(bd * bd);
    for (int k = 0; k < spec.coeffs.size(); ++k) {
        if (spec.coeffs[k] == cplx(0.0)) continue;
        const double m = -spec.j + k;
        const Eigen::VectorXcd block = dicke_state(n, m).amps();
        for (Eigen::Index ia = 0; ia < bd; ++ia) {
            if (block[ia] == cplx(0.0)) continue;
            for (Eigen::Index ib = 0; ib < bd; ++ib)
                amps[ia * bd + ib] += spec.coeffs[k] * block[ia] * block[ib];
        }
    }
    return PureState(std::vector<int>(2 * n, 2), amps);
}

CorrelatedSpec geometric_coeffs(double j, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("geometric: x must be positive");
    if (!(j > 0.0) || !is_half_integer(j))
        throw std::invalid_argument("geometric: j must be a positive half-integer");
    const int d = static_cast<int>(std::round(2.0 * j)) + 1;
    Eigen::VectorXcd c(d);
    for (int k = 0; k < d; ++k) c[k] = std::pow(x, k);  // x^(j+m), m = -j+k
    c /= c.norm();
    return CorrelatedSpec{j, c};
}

double collective_margin(const CorrelatedSpec& spec) {
    check_correlated(spec);
    const Eigen::VectorXcd c = spec.coeffs / spec.coeffs.norm();
    const int d = static_cast<int>(c.size());
    const double two_j = d - 1.0;
    cplx lhs = 0.0;
    double rhs = 0.0;
    for (int k = 1; k < d; ++k) {
        const double w = k * (two_j - k + 1.0);  // (j+m)(j-m+1) at m = -j+k
        lhs += w * std::conj(c[k - 1]) * c[k];
        rhs += w * std::norm(c[k]);
    }
    return std::abs(lhs) - rhs;
}

double single_spin_margin(const CorrelatedSpec& spec) {
    check_correlated(spec);
    const Eigen::VectorXcd c = spec.coeffs / spec.coeffs.norm();
    const int d = static_cast<int>(c.size());
    const double two_j = d - 1.0;
    cplx lhs = 0.0;
    double occupancy = 0.0;  // sum |c_m|^2 (j+m)
    for (int k = 1; k < d; ++k) {
        lhs += k * (two_j - k + 1.0) * std::conj(c[k - 1]) * c[k];
        occupancy += k * std::norm(c[k]);
    }
    return std::abs(lhs) - two_j * occupancy;
}

PureState intelligent_state(const IntelligentSpec& spec) {
    check_intelligent(spec);
    PureState state = intelligent_diagonal(spec);
    const double theta = std::acos(-1.0 / spec.lambda);
    state = rotate_block(state, SiteBlock{0}, EulerAngles{theta, 0.0, 0.0});
    state = rotate_block(state, SiteBlock{1}, EulerAngles{theta, 0.0, 0.0});
    return state;
}

double intelligent_residual(const IntelligentSpec& spec) {
    check_intelligent(spec);
    const PureState psi = intelligent_diagonal(spec);
    const double s = std::sqrt(spec.lambda * spec.lambda - 1.0);
    const cplx beta(0.0, -2.0 * spec.m0 * s);
    const Eigen::VectorXcd pair =
        apply_block_lowering(apply_block_lowering(psi, SiteBlock{1}), SiteBlock{0}).amps();
    const Eigen::VectorXcd jz3 =
        apply_block_jz(psi, SiteBlock{0}).amps() + apply_block_jz(psi, SiteBlock{1}).amps();
    return (pair - cplx(0.0, s) * jz3 - beta * psi.amps()).norm();
}

double intelligent_total_residual(const IntelligentSpec& spec) {
    const PureState psi = intelligent_state(spec);
    const double s = std::sqrt(spec.lambda * spec.lambda - 1.0);
    const cplx beta(0.0, -2.0 * spec.m0 * s);
    const SiteBlock both{0, 1};
    const Eigen::VectorXcd up = apply_block_raising(psi, both).amps();
    const Eigen::VectorXcd dn = apply_block_lowering(psi, both).amps();
    // (J1 + i*lambda*J2) = ((1+lambda) J+ + (1-lambda) J-) / 2
    const Eigen::VectorXcd lhs =
        0.5 * ((1.0 + spec.lambda) * up + (1.0 - spec.lambda) * dn);
    return (lhs - beta * psi.amps()).norm();
}

double intelligent_margin_closed_form(const IntelligentSpec& spec) {
    check_intelligent(spec);
    const Eigen::VectorXcd c = intelligent_coeffs(spec);
    const double L = spec.lambda;
    const double lam2 = L * L;
    cplx lhs = 0.0;
    double rhs = 0.0;
    for (int k = 0; k < c.size(); ++k) {
        const double w = std::norm(c[k]);
        if (w == 0.0) continue;
        const double m = -spec.j + k;
        lhs += w * (cplx(0.0, 2.0 * std::sqrt(lam2 + 1.0) / L * (spec.m0 - m)) -
                    (lam2 - 1.0) * m * m / lam2);
        rhs += w * ((lam2 + 1.0) / (2.0 * lam2) * (spec.j * (spec.j + 1.0) - m * m) - m / L);
    }
    return std::abs(lhs) - rhs;
}

}  // namespace spinwit
