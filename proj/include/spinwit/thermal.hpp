#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spinwit {

// Adaptive quadrature failed to reach the requested tolerance within the
// subdivision budget.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimensionless temperature tau = sqrt(2JS/(kB*T)) = sqrt(beta*D)/a and the
// spherical cutoff y0 = tau*sqrt(3)*pi of the integration variable y.
struct ThermalParams {
    double tau;
    double y0;
    double quad_tol;
    explicit ThermalParams(double tau, double quad_tol = 1e-10);
};

// Two equal collinear blocks of m sites with lattice spacing a: block A at
// sites 0..m-1, block B at sites L..L+m-1. Non-overlap requires L >= m.
struct LinearBlocks {
    int m = 1;
    int L = 1;
};

struct PhysicalConstants {
    double D_stiffness = 0.5e-28;  // erg * cm^2
    double a_lattice = 4.0e-8;     // cm
    double kB = 1.38e-16;          // erg / K
};

// Evaluates the three thermal integrals with a per-instance cache keyed by
// the distance argument (bitwise double key). Thread-safe: concurrent
// lookups may recompute the same deterministic value; first insert wins.
class ThermalModel {
  public:
    explicit ThermalModel(ThermalParams params);

    const ThermalParams& params() const { return params_; }

    // integral of sinc(y*dr/tau) * y^2/(1 - e^{-y^2}) over [0, y0]
    double I1(double dr_over_a) const;
    // integral of y^2 e^{-y^2}/(1 - e^{-y^2}) over [0, y0]
    double I2() const;
    // integral of sinc(y*dr/tau) * y^2 e^{-y^2}/(1 - e^{-y^2}) over [0, y0]
    double I3(double dr_over_a) const;

    // Q = I1^2 - (I2^2 + I1*I3); positive Q certifies two-spin detection.
    double pair_Q(double dr_over_a) const;

    // Block form: Q = S1^2 - (W^2 + S1*S3) with S1, S3 the inter-block
    // distance sums and W = m*I2 + 2*sum_{d<m} (m-d)*I3(d) the intra-block
    // sum. m = 1 collapses to pair_Q(L) identically.
    double block_Q(const LinearBlocks& blocks) const;

    // Same condition for arbitrarily placed blocks; coordinates are in
    // units of the lattice spacing. Q = S1^2 - (W_A*W_B + S1*S3).
    double block_Q_general(const std::vector<std::array<double, 3>>& positions_a,
                           const std::vector<std::array<double, 3>>& positions_b) const;

  private:
    double cached(std::map<double, double>& cache, double dr, bool damped) const;

    ThermalParams params_;
    mutable std::mutex mutex_;
    mutable std::map<double, double> cache_i1_;
    mutable std::map<double, double> cache_i3_;
    mutable std::optional<double> cache_i2_;
};

// One-shot wrappers (no cache reuse across calls).
double integral_I1(const ThermalParams& params, double dr_over_a);
double integral_I2(const ThermalParams& params);
double integral_I3(const ThermalParams& params, double dr_over_a);
double pair_Q(const ThermalParams& params, double dr_over_a);
double block_Q(const ThermalParams& params, const LinearBlocks& blocks);
double block_Q_general(const ThermalParams& params,
                       const std::vector<std::array<double, 3>>& positions_a,
                       const std::vector<std::array<double, 3>>& positions_b);

// Q at integer distances 1..dr_max (ascending).
std::vector<std::pair<double, double>> scan_distance(const ThermalParams& params, int dr_max);
// Q over the given tau grid at fixed distance (ascending tau).
std::vector<std::pair<double, double>> scan_temperature(double dr_over_a,
                                                        const std::vector<double>& tau_grid,
                                                        double quad_tol = 1e-10);
// block Q for m = 1..m_max at fixed offset L (ascending m).
std::vector<std::pair<double, double>> scan_block(const ThermalParams& params, int L, int m_max);

// Bisection root of pair Q(tau) = 0 at fixed distance, bracket [0.2, 12],
// to 1e-6 relative. Throws when Q does not change sign over the bracket.
double crossing_tau(double dr_over_a, double quad_tol = 1e-10);
// First integer distance with Q < 0; throws if none up to dr_max.
int crossing_dr(const ThermalParams& params, int dr_max = 1000);

// T = D / (kB * a^2 * tau^2).
double kelvin_from_tau(double tau, const PhysicalConstants& constants);

// Midpoint Riemann sums {I1, I2, I3} over an n_grid^3 mesh of the cutoff
// sphere in (radius, cos(polar), azimuth) coordinates, phase factor kept
// per cell. Independent cross-check of the quadrature path; n_grid >= 8.
std::array<double, 3> lattice_sum_oracle(int n_grid, const ThermalParams& params,
                                         double dr_over_a);

}  // namespace spinwit
