#include "spinwit/thermal.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace spinwit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The Gauss-Kronrod error estimator bottoms out near machine precision on
// each panel; absolute error estimates below this floor carry no meaning,
// so convergence is judged against the relative target plus this slack.
constexpr double kErrorFloorPerPanel = 5e-14;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// y^2 / (1 - e^{-y^2}), smooth through y = 0 with limit 1.
double bose_plus(double y) {
    const double y2 = y * y;
    if (y2 < 1e-8) return 1.0 + 0.5 * y2;
    return y2 / (-std::expm1(-y2));
}

// y^2 e^{-y^2} / (1 - e^{-y^2}) = y^2 / (e^{y^2} - 1), limit 1 at y = 0.
double bose_minus(double y) {
    const double y2 = y * y;
    if (y2 < 1e-8) return 1.0 - 0.5 * y2;
    if (y2 > 700.0) return 0.0;
    return y2 / std::expm1(y2);
}

// Integrate f over [0, y0] on panels cut at the zeros of the oscillatory
// phase (period pi*tau/dr in y); adaptive Gauss-Kronrod per panel.
template <typename F>
double integrate_panels(F&& f, double y0, double freq, double quad_tol, const char* name) {
    std::vector<double> cuts{0.0};
    if (freq > 0.0) {
        const double period = kPi / freq;
        for (double y = period; y < y0; y += period) cuts.push_back(y);
    } else {
        for (int i = 1; i < 16; ++i) cuts.push_back(y0 * i / 16.0);
    }
    cuts.push_back(y0);

    // Keep the total subdivision budget near 2^20 regardless of panel count.
    int depth = 15;
    while (depth > 6 && (static_cast<double>(cuts.size()) * (1 << depth)) > 1048576.0) --depth;

    double total = 0.0, err_total = 0.0, l1_total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0, l1 = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, cuts[i], cuts[i + 1], depth, quad_tol, &err, &l1);
        err_total += err;
        l1_total += l1;
    }
    if (err_total > quad_tol * std::max(l1_total, 1e-300)) {
        std::ostringstream msg;
        msg << name << ": estimated error " << err_total << " exceeds tolerance " << quad_tol
            << " (L1 mass " << l1_total << ")";
        throw NonConvergence(msg.str());
    }
    return total;
}

double compute_i1(const ThermalParams& p, double dr) {
    const double freq = dr / p.tau;
    return integrate_panels([&](double y) { return sinc(y * freq) * bose_plus(y); }, p.y0, freq,
                            p.quad_tol, "I1");
}

double compute_i2(const ThermalParams& p) {
    return integrate_panels([](double y) { return bose_minus(y); }, p.y0, 0.0, p.quad_tol, "I2");
}

double compute_i3(const ThermalParams& p, double dr) {
    const double freq = dr / p.tau;
    return integrate_panels([&](double y) { return sinc(y * freq) * bose_minus(y); }, p.y0, freq,
                            p.quad_tol, "I3");
}

void check_distance(double dr) {
    if (!(dr >= 0.0)) throw std::invalid_argument("thermal: distance must be non-negative");
}

void check_blocks(const LinearBlocks& b) {
    if (b.m < 1) throw std::invalid_argument("thermal blocks: m must be at least 1");
    if (b.L < b.m) throw std::invalid_argument("thermal blocks: blocks overlap (need L >= m)");
}

}  // namespace

ThermalParams::ThermalParams(double tau_in, double quad_tol_in)
    : tau(tau_in), y0(tau_in * std::sqrt(3.0) * kPi), quad_tol(quad_tol_in) {
    if (!(tau > 0.0)) throw std::invalid_argument("thermal: tau must be positive");
    if (!(quad_tol > 0.0) || quad_tol >= 1.0)
        throw std::invalid_argument("thermal: quad_tol must be in (0, 1)");
}

ThermalModel::ThermalModel(ThermalParams params) : params_(params) {}

double ThermalModel::cached(std::map<double, double>& cache, double dr, bool damped) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto it = cache.find(dr);
        if (it != cache.end()) return it->second;
    }
    const double value = damped ? compute_i3(params_, dr) : compute_i1(params_, dr);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache.emplace(dr, value).first->second;  // first writer wins
}

double ThermalModel::I1(double dr_over_a) const {
    check_distance(dr_over_a);
    return cached(cache_i1_, dr_over_a, false);
}

double ThermalModel::I2() const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (cache_i2_) return *cache_i2_;
    }
    const double value = compute_i2(params_);
    std::lock_guard<std::mutex> lock(mutex_);
    if (!cache_i2_) cache_i2_ = value;
    return *cache_i2_;
}

double ThermalModel::I3(double dr_over_a) const {
    check_distance(dr_over_a);
    return cached(cache_i3_, dr_over_a, true);
}

double ThermalModel::pair_Q(double dr_over_a) const {
    const double i1 = I1(dr_over_a);
    return i1 * i1 - (I2() * I2() + i1 * I3(dr_over_a));
}

double ThermalModel::block_Q(const LinearBlocks& blocks) const {
    check_blocks(blocks);
    const int m = blocks.m;
    const int L = blocks.L;
    double s1 = 0.0, s3 = 0.0;
    for (int d = L - m + 1; d <= L + m - 1; ++d) {
        const double mult = m - std::abs(d - L);  // pair count at distance d
        s1 += mult * I1(d);
        s3 += mult * I3(d);
    }
    double w = m * I2();
    for (int d = 1; d < m; ++d) w += 2.0 * (m - d) * I3(d);
    return s1 * s1 - (w * w + s1 * s3);
}

double ThermalModel::block_Q_general(const std::vector<std::array<double, 3>>& positions_a,
                                     const std::vector<std::array<double, 3>>& positions_b) const {
    if (positions_a.empty() || positions_b.empty())
        throw std::invalid_argument("thermal blocks: empty position set");
    const auto dist = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
        const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    double s1 = 0.0, s3 = 0.0;
    for (const auto& p : positions_a) {
        for (const auto& q : positions_b) {
            const double d = dist(p, q);
            if (d < 1e-12) throw std::invalid_argument("thermal blocks: blocks share a site");
            s1 += I1(d);
            s3 += I3(d);
        }
    }
    const auto intra = [&](const std::vector<std::array<double, 3>>& pos) {
        double w = pos.size() * I2();
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) w += 2.0 * I3(dist(pos[i], pos[j]));
        return w;
    };
    return s1 * s1 - (intra(positions_a) * intra(positions_b) + s1 * s3);
}

double integral_I1(const ThermalParams& params, double dr_over_a) {
    check_distance(dr_over_a);
    return compute_i1(params, dr_over_a);
}

double integral_I2(const ThermalParams& params) { return compute_i2(params); }

double integral_I3(const ThermalParams& params, double dr_over_a) {
    check_distance(dr_over_a);
    return compute_i3(params, dr_over_a);
}

double pair_Q(const ThermalParams& params, double dr_over_a) {
    return ThermalModel(params).pair_Q(dr_over_a);
}

double block_Q(const ThermalParams& params, const LinearBlocks& blocks) {
    return ThermalModel(params).block_Q(blocks);
}

double block_Q_general(const ThermalParams& params,
                       const std::vector<std::array<double, 3>>& positions_a,
                       const std::vector<std::array<double, 3>>& positions_b) {
    return ThermalModel(params).block_Q_general(positions_a, positions_b);
}

std::vector<std::pair<double, double>> scan_distance(const ThermalParams& params, int dr_max) {
    if (dr_max < 1) throw std::invalid_argument("scan: dr_max must be at least 1");
    ThermalModel model(params);
    std::vector<std::pair<double, double>> rows;
    rows.reserve(dr_max);
    for (int dr = 1; dr <= dr_max; ++dr) rows.emplace_back(dr, model.pair_Q(dr));
    return rows;
}

std::vector<std::pair<double, double>> scan_temperature(double dr_over_a,
                                                        const std::vector<double>& tau_grid,
                                                        double quad_tol) {
    std::vector<double> grid = tau_grid;
    std::sort(grid.begin(), grid.end());
    std::vector<std::pair<double, double>> rows;
    rows.reserve(grid.size());
    for (double tau : grid)
        rows.emplace_back(tau, ThermalModel(ThermalParams(tau, quad_tol)).pair_Q(dr_over_a));
    return rows;
}

std::vector<std::pair<double, double>> scan_block(const ThermalParams& params, int L, int m_max) {
    if (m_max < 1 || m_max > L)
        throw std::invalid_argument("scan: need 1 <= m_max <= L for non-overlapping blocks");
    ThermalModel model(params);
    std::vector<std::pair<double, double>> rows;
    rows.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) rows.emplace_back(m, model.block_Q(LinearBlocks{m, L}));
    return rows;
}

double crossing_tau(double dr_over_a, double quad_tol) {
    check_distance(dr_over_a);
    double lo = 0.2, hi = 12.0;
    const auto q = [&](double tau) {
        return ThermalModel(ThermalParams(tau, quad_tol)).pair_Q(dr_over_a);
    };
    double q_lo = q(lo), q_hi = q(hi);
    if (q_lo == 0.0) return lo;
    if (q_hi == 0.0) return hi;
    if ((q_lo < 0.0) == (q_hi < 0.0))
        throw std::runtime_error("crossing_tau: no sign change of Q over tau in [0.2, 12]");
    while (hi - lo > 1e-6 * lo) {
        const double mid = 0.5 * (lo + hi);
        const double q_mid = q(mid);
        if (q_mid == 0.0) return mid;
        if ((q_mid < 0.0) == (q_lo < 0.0)) {
            lo = mid;
            q_lo = q_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int crossing_dr(const ThermalParams& params, int dr_max) {
    ThermalModel model(params);
    for (int dr = 1; dr <= dr_max; ++dr)
        if (model.pair_Q(dr) < 0.0) return dr;
    throw std::runtime_error("crossing_dr: Q stays positive up to the distance cap");
}

double kelvin_from_tau(double tau, const PhysicalConstants& constants) {
    if (!(tau > 0.0) || !(constants.D_stiffness > 0.0) || !(constants.a_lattice > 0.0) ||
        !(constants.kB > 0.0))
        throw std::invalid_argument("kelvin: all parameters must be positive");
    return constants.D_stiffness /
           (constants.kB * constants.a_lattice * constants.a_lattice * tau * tau);
}

std::array<double, 3> lattice_sum_oracle(int n_grid, const ThermalParams& params,
                                         double dr_over_a) {
    if (n_grid < 8) throw std::invalid_argument("lattice oracle: n_grid must be at least 8");
    check_distance(dr_over_a);
    const double y0 = params.y0;
    const double dy = y0 / n_grid;
    const double dmu = 2.0 / n_grid;
    const double dphi = 2.0 * kPi / n_grid;
    const double cell = dy * dmu * dphi / (4.0 * kPi);
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int i = 0; i < n_grid; ++i) {
        const double y = (i + 0.5) * dy;
        const double plus = bose_plus(y);
        const double minus = bose_minus(y);
        for (int j = 0; j < n_grid; ++j) {
            const double mu = -1.0 + (j + 0.5) * dmu;
            const double phase = std::cos(y * mu * dr_over_a / params.tau);
            for (int l = 0; l < n_grid; ++l) {
                s1 += cell * phase * plus;
                s2 += cell * minus;
                s3 += cell * phase * minus;
            }
        }
    }
    return {s1, s2, s3};
}

}  // namespace spinwit
