#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "vendor/doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spinwit/pure_state.hpp"
#include "spinwit/states.hpp"
#include "spinwit/witness.hpp"

using namespace spinwit;

namespace {

SiteBlock range_block(int first, int count) {
    std::vector<int> sites(count);
    for (int i = 0; i < count; ++i) sites[i] = first + i;
    return SiteBlock(sites);
}

Eigen::VectorXcd random_coeffs(int n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd c(n);
    for (int i = 0; i < n; ++i) c[i] = cplx(gauss(rng), gauss(rng));
    if (c.norm() < 1e-6) c[0] += 1.0;
    return c;
}

struct Moments {
    double var1, var2, mean3;
};

// transverse variances and <J3> of the two-site collective spin
Moments collective_moments(const PureState& psi) {
    const SiteBlock both{0, 1};
    const Eigen::VectorXcd up = apply_block_raising(psi, both).amps();
    const Eigen::VectorXcd dn = apply_block_lowering(psi, both).amps();
    const Eigen::VectorXcd j1v = 0.5 * (up + dn);
    const Eigen::VectorXcd j2v = cplx(0.0, -0.5) * (up - dn);
    const double mean1 = psi.amps().dot(j1v).real();
    const double mean2 = psi.amps().dot(j2v).real();
    Moments m;
    m.var1 = j1v.squaredNorm() - mean1 * mean1;
    m.var2 = j2v.squaredNorm() - mean2 * mean2;
    m.mean3 = inner(psi, apply_block_jz(psi, both)).real();
    return m;
}

}  // namespace

TEST_CASE("four qubit example triggers the pairwise condition across the middle cut") {
    const PureState psi = four_qubit_example();
    const WitnessVerdict v = condition_two(psi, SiteBlock{0, 1}, SiteBlock{2, 3});
    CHECK(std::abs(v.lhs - 0.5) < 1e-12);
    CHECK(std::abs(v.rhs - 0.25) < 1e-12);
    CHECK(v.detected);

    // blocks are entangled as wholes while the cross pair (1,3) carries none
    CHECK(concurrence(reduced_density(psi, SiteBlock{0, 2})) < 1e-10);
}

TEST_CASE("dicke states spread excitations uniformly") {
    const PureState half = dicke_state(2, 0.0);
    CHECK(std::abs(half.amps()[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(half.amps()[2] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(half.amps()[0]) == 0.0);
    CHECK(std::abs(half.amps()[3]) == 0.0);

    // per-site excitation probability is (j+m)/(2j)
    for (double m : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const PureState d = dicke_state(4, m);
        const double occ = apply_block_lowering(d, SiteBlock{0}).amps().squaredNorm();
        CHECK(occ == doctest::Approx((2.0 + m) / 4.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(dicke_state(3, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(dicke_state(2, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(dicke_state(0, 0.0), std::invalid_argument);
}

TEST_CASE("geometric family detects exactly below the flat profile") {
    for (double j : {0.5, 1.0, 1.5, 2.0}) {
        for (double x : {0.5, 0.9, 1.0, 1.1, 2.0}) {
            const double margin = collective_margin(geometric_coeffs(j, x));
            if (x < 1.0)
                CHECK(margin > kDetectionTolerance);
            else if (x > 1.0)
                CHECK(margin < 0.0);
            else
                CHECK(std::abs(margin) < 1e-10);
        }
    }
    // hand value at j = 1, x = 1/2: (1.25 - 0.625) / 1.3125
    CHECK(collective_margin(geometric_coeffs(1.0, 0.5)) ==
          doctest::Approx(0.625 / 1.3125).epsilon(1e-12));

    CHECK_THROWS_AS(geometric_coeffs(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(geometric_coeffs(0.75, 0.5), std::invalid_argument);
}

TEST_CASE("single-spin margin never beats the collective one") {
    std::mt19937 rng(1912);
    for (double j : {0.5, 1.0, 1.5, 2.0}) {
        const int d = static_cast<int>(std::lround(2.0 * j)) + 1;
        for (int trial = 0; trial < 1000; ++trial) {
            const CorrelatedSpec spec{j, random_coeffs(d, rng)};
            const double coll = collective_margin(spec);
            const double single = single_spin_margin(spec);
            CHECK(single <= coll + 1e-12);
            if (single > kDetectionTolerance) CHECK(coll > kDetectionTolerance);
        }
    }
}

TEST_CASE("closed margins match the exact register across the family") {
    std::mt19937 rng(52);
    for (double j : {0.5, 1.0, 1.5, 2.0}) {
        const int n = static_cast<int>(std::lround(2.0 * j));
        const int d = n + 1;
        std::vector<CorrelatedSpec> specs;
        for (double x : {0.5, 1.0, 2.0}) specs.push_back(geometric_coeffs(j, x));
        specs.push_back(CorrelatedSpec{j, random_coeffs(d, rng)});

        for (const CorrelatedSpec& spec : specs) {
            const PureState psi = correlated_state(spec);
            const Eigen::VectorXcd c = spec.coeffs / spec.coeffs.norm();

            // closed sums are the amplitudes of the collective correlators
            cplx amp = 0.0;
            double occ = 0.0;
            for (int k = 1; k < d; ++k) {
                amp += k * (n - k + 1.0) * std::conj(c[k - 1]) * c[k];
                occ += k * (n - k + 1.0) * std::norm(c[k]);
            }
            const WitnessVerdict coll =
                condition_two(psi, range_block(0, n), range_block(n, n));
            CHECK(std::abs(coll.lhs - std::norm(amp)) < 1e-10);
            CHECK(std::abs(coll.rhs - occ * occ) < 1e-10);
            CHECK(std::abs(collective_margin(spec) - (std::abs(amp) - occ)) < 1e-12);

            // one spin per block scales the same amplitude by (2j)^2
            const WitnessVerdict single = condition_two(psi, SiteBlock{0}, SiteBlock{n});
            const double scale = 4.0 * j * j;
            CHECK(std::abs(scale * std::sqrt(single.lhs) - std::abs(amp)) < 1e-10);
            const double single_rhs_amp = scale * std::sqrt(single.rhs);
            CHECK(std::abs(single_spin_margin(spec) - (std::abs(amp) - single_rhs_amp)) <
                  1e-10);
        }
    }
    CHECK_THROWS_AS(correlated_state(geometric_coeffs(4.5, 0.5)), std::invalid_argument);
}

TEST_CASE("ladder-product eigenvalue relation holds across the recurrence family") {
    for (double j : {0.5, 1.0, 1.5, 2.0}) {
        for (double lambda : {1.5, 2.0, 3.0, 5.0}) {
            for (double m0 = -j; m0 <= j + 1e-9; m0 += 1.0) {
                const IntelligentSpec spec{j, m0, lambda};
                CHECK(intelligent_residual(spec) < 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(intelligent_residual({1.0, -1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(intelligent_residual({1.0, -0.5, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(intelligent_residual({1.0, -2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("total-spin eigenvalue relation holds only at the bottom rung") {
    CHECK(intelligent_total_residual({1.0, -1.0, 4.0}) < 1e-10);
    CHECK(intelligent_total_residual({2.0, -2.0, 3.0}) < 1e-10);
    CHECK(intelligent_total_residual({0.5, -0.5, 2.0}) < 1e-10);
    CHECK(intelligent_total_residual({1.5, -0.5, 2.0}) > 0.5);
    CHECK(intelligent_total_residual({1.0, 0.0, 2.0}) > 0.5);
}

TEST_CASE("closed-form margin changes sign at lambda 3 for the two-level family") {
    CHECK(intelligent_margin_closed_form({1.0, -1.0, 2.0}) ==
          doctest::Approx(-0.375).epsilon(1e-12));
    CHECK(std::abs(intelligent_margin_closed_form({1.0, -1.0, 3.0})) < 1e-12);
    CHECK(intelligent_margin_closed_form({1.0, -1.0, 4.0}) ==
          doctest::Approx(0.15625).epsilon(1e-12));
    // (lambda+1)(lambda-3)/(2 lambda^2) at a few more points
    for (double lambda : {1.5, 2.5, 6.0}) {
        const double expected = (lambda + 1.0) * (lambda - 3.0) / (2.0 * lambda * lambda);
        CHECK(intelligent_margin_closed_form({1.0, -1.0, lambda}) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("bottom-rung states saturate the uncertainty relation with skewed variances") {
    for (const IntelligentSpec spec :
         {IntelligentSpec{1.0, -1.0, 4.0}, IntelligentSpec{2.0, -2.0, 3.0},
          IntelligentSpec{1.5, -1.5, 2.0}}) {
        const Moments m = collective_moments(intelligent_state(spec));
        CHECK(std::abs(m.var1 * m.var2 - 0.25 * m.mean3 * m.mean3) < 1e-10);
        CHECK(std::abs(m.var1 - 0.5 * spec.lambda * std::abs(m.mean3)) < 1e-10);
    }
}

TEST_CASE("exact register disagrees with the closed margin at the bottom rung") {
    // the recurrence truncated at m0 = -j factorizes over the two sites, so
    // the exact correlators can never exceed their Cauchy-Schwarz bound even
    // where the printed sums turn positive
    const PureState psi = intelligent_state({1.0, -1.0, 4.0});
    const WitnessVerdict v = condition_two(psi, SiteBlock{0}, SiteBlock{1});
    const double f = 15.0 / 16.0;
    CHECK(std::abs(v.lhs - f * f) < 1e-10);
    CHECK(std::abs(v.rhs - 1.71875 * 1.71875) < 1e-10);
    CHECK_FALSE(v.detected);

    for (double lambda : {2.0, 3.0, 4.0, 5.0}) {
        const PureState s = intelligent_state({1.0, -1.0, lambda});
        const WitnessVerdict w = condition_two(s, SiteBlock{0}, SiteBlock{1});
        CHECK(std::sqrt(w.lhs) - std::sqrt(w.rhs) <= 1e-12);
    }
}
