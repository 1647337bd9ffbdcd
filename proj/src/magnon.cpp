#include "spinwit/magnon.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinwit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_chain(const ChainSpec& chain) {
    if (chain.n_sites < 2) throw std::invalid_argument("chain: need at least two sites");
    if (!(chain.spacing_a > 0.0)) throw std::invalid_argument("chain: spacing must be positive");
    if (!(chain.spin_S >= 0.5)) throw std::invalid_argument("chain: spin must be at least 1/2");
}

void check_blocks(const ChainSpec& chain, const BlockPair1D& blocks) {
    if (blocks.m < 1) throw std::invalid_argument("blocks: size must be positive");
    if (2 * blocks.m >= chain.n_sites)
        throw std::invalid_argument("blocks: 2m must be smaller than the chain");
    if (blocks.L < blocks.m) throw std::invalid_argument("blocks: second block overlaps the first");
    if (blocks.L + blocks.m > chain.n_sites)
        throw std::invalid_argument("blocks: second block runs off the chain");
}

}  // namespace

double gamma_k(const std::array<double, 3>& ka, Lattice lattice) {
    if (lattice == Lattice::chain) return std::cos(ka[0]);
    return (std::cos(ka[0]) + std::cos(ka[1]) + std::cos(ka[2])) / 3.0;
}

double dispersion(const std::array<double, 3>& ka, const DispersionParams& params,
                  Lattice lattice) {
    if (!(params.J_exchange > 0.0))
        throw std::invalid_argument("dispersion: exchange must be positive (ferromagnet)");
    return 2.0 * params.J_exchange * params.z * params.S * (1.0 - gamma_k(ka, lattice)) +
           2.0 * params.mu0 * params.H0;
}

double wavenumber_ka(const ChainSpec& chain, int n_index) {
    check_chain(chain);
    const int n = chain.n_sites;
    if (2 * n_index <= -n || 2 * n_index > n)
        throw std::invalid_argument("wavenumber: index outside (-N/2, N/2]");
    return 2.0 * kPi * n_index / n;
}

cplx single_magnon_lhs(const ChainSpec& chain, int k_index, const BlockPair1D& blocks) {
    check_blocks(chain, blocks);
    const double ka = wavenumber_ka(chain, k_index);
    cplx sum = 0.0;
    for (int j1 = 0; j1 < blocks.m; ++j1)
        for (int j2 = blocks.L; j2 < blocks.L + blocks.m; ++j2)
            sum += std::exp(cplx(0.0, ka * (j2 - j1)));
    return sum / static_cast<double>(chain.n_sites);
}

PureState single_magnon_state(const ChainSpec& chain, int k_index) {
    check_chain(chain);
    const int n = chain.n_sites;
    if (n > 20) throw std::invalid_argument("single_magnon_state: dense register caps N at 20");
    const double ka = wavenumber_ka(chain, k_index);
    const Eigen::Index all_up = (Eigen::Index(1) << n) - 1;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        const Eigen::Index flipped = all_up - (Eigen::Index(1) << (n - 1 - j));
        amps[flipped] = scale * std::exp(cplx(0.0, -ka * j));
    }
    return PureState(std::vector<int>(n, 2), amps);
}

namespace {

double xy_factor(double ka, int m, bool dirichlet) {
    if (dirichlet) {
        const double s = std::sin(0.5 * ka);
        if (std::abs(s) < 1e-14) return static_cast<double>(m) * m;  // k = 0 limit
        const double sm = std::sin(0.5 * ka * m);
        return (sm * sm) / (s * s);
    }
    const double den = std::cos(ka) + 1.0;
    if (std::abs(den) < 1e-12)
        throw std::invalid_argument("two_magnon: wavenumber with cos(ka) = -1 excluded");
    return (std::cos(ka * m) + 1.0) / den;
}

std::pair<double, double> xy_pair(const ChainSpec& chain, int k1_index, int k2_index, int m,
                                  bool dirichlet) {
    if (m < 1 || 2 * m >= chain.n_sites)
        throw std::invalid_argument("two_magnon: block size out of range");
    return {xy_factor(wavenumber_ka(chain, k1_index), m, dirichlet),
            xy_factor(wavenumber_ka(chain, k2_index), m, dirichlet)};
}

}  // namespace

std::pair<double, double> two_magnon_xy(const ChainSpec& chain, int k1_index, int k2_index,
                                        int m) {
    return xy_pair(chain, k1_index, k2_index, m, false);
}

std::pair<double, double> two_magnon_xy_dirichlet(const ChainSpec& chain, int k1_index,
                                                  int k2_index, int m) {
    return xy_pair(chain, k1_index, k2_index, m, true);
}

WitnessVerdict two_magnon_verdict(const ChainSpec& chain, int k1_index, int k2_index,
                                  const BlockPair1D& blocks) {
    check_blocks(chain, blocks);
    if (k1_index == k2_index)
        throw std::invalid_argument("two_magnon: wavenumbers must differ");
    const auto [x, y] = two_magnon_xy(chain, k1_index, k2_index, blocks.m);
    const double n = chain.n_sites;
    const double pref = 4.0 * chain.spin_S * chain.spin_S / (n * n);
    const double phase =
        std::cos(blocks.L * (wavenumber_ka(chain, k1_index) - wavenumber_ka(chain, k2_index)));
    WitnessVerdict v;
    v.lhs = pref * (x * x + 2.0 * x * y * phase + y * y);
    v.rhs = pref * (2.0 * x * y + 2.0 * x * y * phase);
    v.margin = v.lhs - v.rhs;
    v.detected = v.margin > v.tolerance;
    return v;
}

std::pair<double, double> two_magnon_oracle(const ChainSpec& chain, int k1_index, int k2_index,
                                            const BlockPair1D& blocks) {
    check_blocks(chain, blocks);
    const int n = chain.n_sites;
    if (n > 64) throw std::invalid_argument("two_magnon_oracle: N capped at 64");
    const double ka1 = wavenumber_ka(chain, k1_index);
    const double ka2 = wavenumber_ka(chain, k2_index);

    std::vector<cplx> e1(n), e2(n);
    for (int j = 0; j < n; ++j) {
        e1[j] = std::exp(cplx(0.0, -ka1 * j));
        e2[j] = std::exp(cplx(0.0, -ka2 * j));
    }

    // Two-excitation amplitudes over occupancy basis states: psi(u,v) on
    // |1_u 1_v> for u < v and psi(u,u) on |2_u>.
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(n, n);
    const double root2 = std::sqrt(2.0);
    for (int u = 0; u < n; ++u) {
        for (int v = u; v < n; ++v) {
            if (u == v)
                psi(u, u) = root2 * e1[u] * e2[u] / static_cast<double>(n);
            else
                psi(u, v) = (e1[u] * e2[v] + e1[v] * e2[u]) / static_cast<double>(n);
        }
    }

    const auto in_block = [&](int site, int first) {
        return site >= first && site < first + blocks.m;
    };
    // One-excitation vector left by sum_{j in block} a_j.
    const auto annihilate = [&](int first) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
        for (int u = 0; u < n; ++u) {
            for (int v = u; v < n; ++v) {
                if (psi(u, v) == cplx(0.0)) continue;
                if (u == v) {
                    if (in_block(u, first)) out[u] += root2 * psi(u, u);
                } else {
                    if (in_block(u, first)) out[v] += psi(u, v);
                    if (in_block(v, first)) out[u] += psi(u, v);
                }
            }
        }
        return out;
    };

    const Eigen::VectorXcd a_psi = annihilate(0);
    const Eigen::VectorXcd b_psi = annihilate(blocks.L);
    const double two_s = 2.0 * chain.spin_S;
    const double lhs = std::norm(two_s * a_psi.dot(b_psi));

    // Annihilating block A out of (sum_{j in B} a_j)|psi> leaves the vacuum.
    cplx c = 0.0;
    for (int u = 0; u < blocks.m; ++u) c += b_psi[u];
    const double rhs = two_s * two_s * std::norm(c);
    return {lhs, rhs};
}

PureState two_magnon_qubit_state(const ChainSpec& chain, int k1_index, int k2_index) {
    check_chain(chain);
    const int n = chain.n_sites;
    if (n > 20) throw std::invalid_argument("two_magnon_qubit_state: dense register caps N at 20");
    const double ka1 = wavenumber_ka(chain, k1_index);
    const double ka2 = wavenumber_ka(chain, k2_index);
    const Eigen::Index all_up = (Eigen::Index(1) << n) - 1;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const cplx amp = std::exp(cplx(0.0, -ka1 * u - ka2 * v)) +
                             std::exp(cplx(0.0, -ka1 * v - ka2 * u));
            const Eigen::Index idx =
                all_up - (Eigen::Index(1) << (n - 1 - u)) - (Eigen::Index(1) << (n - 1 - v));
            amps[idx] = amp / static_cast<double>(n);
        }
    }
    return PureState(std::vector<int>(n, 2), amps);  // renormalizes
}

}  // namespace spinwit
