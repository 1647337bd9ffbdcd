#include "spinwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinwit {

namespace {

void require_disjoint(const PureState& state, const SiteBlock& a, const SiteBlock& b) {
    state.check_block(a);
    state.check_block(b);
    if (!disjoint(a, b)) throw std::invalid_argument("witness: blocks overlap");
}

WitnessVerdict make_verdict(double lhs, double rhs, double tolerance) {
    WitnessVerdict v;
    v.lhs = lhs;
    v.rhs = rhs;
    v.margin = lhs - rhs;
    v.tolerance = tolerance;
    v.detected = v.margin > tolerance;
    return v;
}

}  // namespace

WitnessVerdict condition_one(const PureState& state, const SiteBlock& a, const SiteBlock& b,
                             double tolerance, LhsVariant variant) {
    require_disjoint(state, a, b);
    const PureState bp = apply_block_raising(state, b);
    cplx amp;
    if (variant == LhsVariant::plain) {
        // <psi| J_{a-} J_{b+} |psi> = <J_{a+} psi | J_{b+} psi>
        amp = inner(apply_block_raising(state, a), bp);
    } else {
        // <psi| J_{a+} J_{b+} |psi> = <J_{a-} psi | J_{b+} psi>
        amp = inner(apply_block_lowering(state, a), bp);
    }
    const PureState abm = apply_block_lowering(apply_block_lowering(state, b), a);
    const double rhs = abm.amps().squaredNorm();
    return make_verdict(std::norm(amp), rhs, tolerance);
}

WitnessVerdict condition_two(const PureState& state, const SiteBlock& a, const SiteBlock& b,
                             double tolerance) {
    require_disjoint(state, a, b);
    const PureState am = apply_block_lowering(state, a);
    const PureState bm = apply_block_lowering(state, b);
    const cplx amp = inner(state, apply_block_lowering(bm, a));
    const double rhs = am.amps().squaredNorm() * bm.amps().squaredNorm();
    return make_verdict(std::norm(amp), rhs, tolerance);
}

WitnessVerdict sorensen(const PureState& state, double tolerance) {
    for (int d : state.dims())
        if (d != 2) throw std::invalid_argument("sorensen: all sites must be qubits");
    const int n = state.sites();
    SiteBlock all;
    for (int s = 0; s < n; ++s) all.sites.push_back(s);

    const PureState plus = apply_block_raising(state, all);
    const PureState z = apply_block_jz(state, all);
    // J1 = (J+ + J-)/2, J2 = (J+ - J-)/(2i); with <J-> = conj(<J+>) these
    // collapse to the real and imaginary parts of <J+>.
    const cplx jp = inner(state, plus);
    const double mean1 = jp.real();
    const double mean2 = jp.imag();
    const double mean3 = inner(state, z).real();
    const double mean33 = z.amps().squaredNorm();  // <J3^2> = ||J3 psi||^2
    const double var3 = mean33 - mean3 * mean3;
    const double den = mean1 * mean1 + mean2 * mean2;

    WitnessVerdict v = make_verdict(den / n, var3, tolerance);
    if (den <= tolerance) {
        v.indeterminate = true;
        v.detected = false;
    }
    return v;
}

WitnessMatrix3 rotation_matrix(const PureState& state, const SiteBlock& a, const SiteBlock& b) {
    require_disjoint(state, a, b);
    const PureState phi = apply_block_lowering(state, b);
    const PureState chi = apply_block_raising(state, b);

    const std::array<PureState, 3> a_chi = {apply_block_lowering(chi, a),
                                            apply_block_raising(chi, a), apply_block_jz(chi, a)};
    const std::array<PureState, 3> a_phi = {apply_block_lowering(phi, a),
                                            apply_block_raising(phi, a), apply_block_jz(phi, a)};
    std::array<cplx, 3> t;
    for (int k = 0; k < 3; ++k) t[k] = inner(state, a_chi[k]);

    WitnessMatrix3 w;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            w.m(k, l) = std::conj(t[k]) * t[l] - inner(a_phi[k], a_phi[l]);
    w.eigenvalues = hermitian3_eigenvalues(w.m);
    return w;
}

WitnessVerdict rotation_verdict(const WitnessMatrix3& m, double tolerance) {
    WitnessVerdict v = make_verdict(m.eigenvalues[0], 0.0, tolerance);
    return v;
}

double old_condition_rotated(double j, double alpha, double beta) {
    if (!(j > 0.0) || std::abs(2.0 * j - std::round(2.0 * j)) > 1e-9)
        throw std::invalid_argument("old_condition_rotated: j must be a positive (half-)integer");
    const double cc = std::cos(alpha) * std::cos(beta);
    const double ss = std::sin(alpha) * std::sin(beta);
    return cc - j * (1.0 + ss * ss) - 0.25 * (cc - 1.0) * (cc - 1.0);
}

namespace {

// Cyclic Jacobi for a 3x3 Hermitian matrix (used near-degeneracy).
std::array<double, 3> jacobi3(Eigen::Matrix3cd m) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
        if (off < 1e-32 * (1.0 + m.cwiseAbs().maxCoeff())) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const cplx apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                // complex Jacobi rotation diagonalizing the 2x2 (p,q) block
                const double phase = std::arg(apq);
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), aqq - app);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * std::exp(cplx(0.0, phase));
                Eigen::Matrix3cd r = Eigen::Matrix3cd::Identity();
                r(p, p) = c;
                r(q, q) = c;
                r(p, q) = std::conj(s);
                r(q, p) = -s;
                m = r.adjoint() * m * r;
            }
        }
    }
    std::array<double, 3> ev = {m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

}  // namespace

std::array<double, 3> hermitian3_eigenvalues(const Eigen::Matrix3cd& m_in) {
    const Eigen::Matrix3cd m = 0.5 * (m_in + m_in.adjoint());
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());

    const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
    std::array<double, 3> ev;
    if (p1 <= 1e-30 * scale * scale) {
        ev = {m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
        std::sort(ev.begin(), ev.end(), std::greater<double>());
        return ev;
    }
    const double q = m.trace().real() / 3.0;
    const double p2 = std::pow(m(0, 0).real() - q, 2) + std::pow(m(1, 1).real() - q, 2) +
                      std::pow(m(2, 2).real() - q, 2) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const Eigen::Matrix3cd b = (m - q * Eigen::Matrix3cd::Identity()) / p;
    const double r = 0.5 * b.determinant().real();

    // nearly degenerate discriminant: hand off to cyclic Jacobi
    if (1.0 - std::abs(r) < 1e-12) return jacobi3(m);

    const double phi = std::acos(std::clamp(r, -1.0, 1.0)) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    ev = {e1, e2, e3};
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

}  // namespace spinwit
