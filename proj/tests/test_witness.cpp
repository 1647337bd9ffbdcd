#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "vendor/doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinwit/pure_state.hpp"
#include "spinwit/witness.hpp"

using namespace spinwit;

namespace {

Eigen::VectorXcd random_vector(long n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i) v[i] = cplx(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

PureState random_state(const std::vector<int>& dims, std::mt19937& rng) {
    long total = 1;
    for (int d : dims) total *= d;
    return PureState(dims, random_vector(total, rng));
}

// psi_a (x) psi_b over the site split [0, split) | [split, n)
PureState random_product_state(const std::vector<int>& dims, int split, std::mt19937& rng) {
    long da = 1, db = 1;
    for (int i = 0; i < split; ++i) da *= dims[i];
    for (std::size_t i = split; i < dims.size(); ++i) db *= dims[i];
    const Eigen::VectorXcd a = random_vector(da, rng);
    const Eigen::VectorXcd b = random_vector(db, rng);
    Eigen::VectorXcd v(da * db);
    for (long i = 0; i < da; ++i)
        for (long k = 0; k < db; ++k) v[i * db + k] = a[i] * b[k];
    return PureState(dims, std::move(v), false);
}

SiteBlock range_block(int first, int count) {
    std::vector<int> sites(count);
    for (int i = 0; i < count; ++i) sites[i] = first + i;
    return SiteBlock(sites);
}

PureState benchmark_state(double j) {
    const int d = static_cast<int>(std::lround(2.0 * j)) + 1;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
    amps[0 * d + 1] = 1.0;
    amps[1 * d + 0] = 1.0;
    return PureState({d, d}, amps);
}

EulerAngles random_angles(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-3.14159, 3.14159);
    return {uni(rng), uni(rng), uni(rng)};
}

}  // namespace

TEST_CASE("product states never trigger the pairwise conditions") {
    std::mt19937 rng(20240819);
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState psi = random_product_state({2, 2}, 1, rng);
        CHECK_FALSE(condition_one(psi, SiteBlock{0}, SiteBlock{1}).detected);
        CHECK_FALSE(
            condition_one(psi, SiteBlock{0}, SiteBlock{1}, kDetectionTolerance,
                          LhsVariant::adjoint_pair)
                .detected);
        CHECK_FALSE(condition_two(psi, SiteBlock{0}, SiteBlock{1}).detected);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const PureState psi = random_product_state({2, 2, 2, 2}, 2, rng);
        CHECK_FALSE(condition_one(psi, SiteBlock{0, 1}, SiteBlock{2, 3}).detected);
        CHECK_FALSE(condition_two(psi, SiteBlock{0, 1}, SiteBlock{2, 3}).detected);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const PureState psi = random_product_state({3, 4}, 1, rng);
        CHECK_FALSE(condition_one(psi, SiteBlock{0}, SiteBlock{1}).detected);
        CHECK_FALSE(condition_two(psi, SiteBlock{0}, SiteBlock{1}).detected);
    }
}

TEST_CASE("pairwise condition values on hand-traced two-qubit states") {
    // a|00> + b|11>: lowering pairs couple the two branches
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v[0] = 0.8;
    v[3] = 0.6;
    const PureState tilted({2, 2}, v, false);
    const WitnessVerdict two = condition_two(tilted, SiteBlock{0}, SiteBlock{1});
    CHECK(two.lhs == doctest::Approx(0.2304).epsilon(1e-12));
    CHECK(two.rhs == doctest::Approx(0.1296).epsilon(1e-12));
    CHECK(two.detected);

    const WitnessVerdict one = condition_one(tilted, SiteBlock{0}, SiteBlock{1});
    CHECK(one.lhs == doctest::Approx(0.0));
    CHECK(one.rhs == doctest::Approx(0.36).epsilon(1e-12));
    CHECK_FALSE(one.detected);

    // (|01> + |10>)/sqrt(2): the exchange state triggers the first condition
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4);
    w[1] = w[2] = 1.0 / std::sqrt(2.0);
    const PureState exchange({2, 2}, w, false);
    const WitnessVerdict flip = condition_one(exchange, SiteBlock{0}, SiteBlock{1});
    CHECK(flip.lhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(flip.rhs == doctest::Approx(0.0));
    CHECK(flip.detected);

    // the symmetric Bell state sits exactly on the second condition's boundary
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    const WitnessVerdict boundary = condition_two(PureState({2, 2}, bell, false),
                                                  SiteBlock{0}, SiteBlock{1});
    CHECK(std::abs(boundary.margin) < 1e-14);
    CHECK_FALSE(boundary.detected);
}

TEST_CASE("exchanging the blocks mirrors the second condition") {
    std::mt19937 rng(606);
    for (int trial = 0; trial < 50; ++trial) {
        const PureState psi = random_state({2, 3, 2}, rng);
        const WitnessVerdict ab = condition_two(psi, SiteBlock{0, 1}, SiteBlock{2});
        const WitnessVerdict ba = condition_two(psi, SiteBlock{2}, SiteBlock{0, 1});
        CHECK(std::abs(ab.lhs - ba.lhs) < 1e-12);
        CHECK(std::abs(ab.rhs - ba.rhs) < 1e-12);
        CHECK(ab.detected == ba.detected);
    }
}

TEST_CASE("ladder route agrees with explicit operator matrices") {
    std::mt19937 rng(1701);
    const SiteBlock a{0}, b{1, 2};
    for (int trial = 0; trial < 30; ++trial) {
        const PureState psi = random_state({3, 2, 2}, rng);
        const Eigen::MatrixXcd jm_a = block_raising_matrix(psi, a).adjoint();
        const Eigen::MatrixXcd jm_b = block_raising_matrix(psi, b).adjoint();
        const Eigen::MatrixXcd jp_b = block_raising_matrix(psi, b);

        const cplx amp1 =
            inner(psi, apply_block_operator(apply_block_operator(psi, b, jp_b), a, jm_a));
        const WitnessVerdict one = condition_one(psi, a, b);
        CHECK(std::abs(std::norm(amp1) - one.lhs) < 1e-12);

        const PureState lowered =
            apply_block_operator(apply_block_operator(psi, b, jm_b), a, jm_a);
        CHECK(std::abs(lowered.amps().squaredNorm() - one.rhs) < 1e-12);

        const cplx amp2 = inner(psi, lowered);
        const WitnessVerdict two = condition_two(psi, a, b);
        CHECK(std::abs(std::norm(amp2) - two.lhs) < 1e-12);
        const double na = apply_block_operator(psi, a, jm_a).amps().squaredNorm();
        const double nb = apply_block_operator(psi, b, jm_b).amps().squaredNorm();
        CHECK(std::abs(na * nb - two.rhs) < 1e-12);
    }
}

TEST_CASE("overlapping or invalid blocks are rejected") {
    const PureState psi = PureState::basis({2, 2, 2}, {0, 1, 0});
    CHECK_THROWS_AS(condition_two(psi, SiteBlock{0, 1}, SiteBlock{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(condition_one(psi, SiteBlock{0}, SiteBlock{4}), std::invalid_argument);
    CHECK_THROWS_AS(rotation_matrix(psi, SiteBlock{0}, SiteBlock{0}), std::invalid_argument);
    CHECK_THROWS_AS(sorensen(PureState::basis({3, 3}, {0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(old_condition_rotated(0.75, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(old_condition_rotated(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("spin squeezing test on qubit registers") {
    std::mt19937 rng(880);
    // fully separable registers are never flagged
    for (int trial = 0; trial < 300; ++trial) {
        std::normal_distribution<double> gauss;
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
        for (int site = 0; site < 4; ++site) {
            Eigen::VectorXcd q(2);
            q[0] = cplx(gauss(rng), gauss(rng));
            q[1] = cplx(gauss(rng), gauss(rng));
            q.normalize();
            Eigen::VectorXcd w(v.size() * 2);
            for (long i = 0; i < v.size(); ++i) {
                w[2 * i] = v[i] * q[0];
                w[2 * i + 1] = v[i] * q[1];
            }
            v = std::move(w);
        }
        const WitnessVerdict verdict = sorensen(PureState({2, 2, 2, 2}, v, false));
        CHECK_FALSE(verdict.detected);
    }

    // the fully polarized coherent state sits exactly on the boundary
    Eigen::VectorXcd plus = Eigen::VectorXcd::Ones(16) / 4.0;
    const WitnessVerdict coherent = sorensen(PureState({2, 2, 2, 2}, plus, false));
    CHECK(std::abs(coherent.margin) < 1e-12);
    CHECK_FALSE(coherent.detected);
    CHECK_FALSE(coherent.indeterminate);

    // vanishing transverse polarization leaves the criterion undefined
    Eigen::VectorXcd mixed = Eigen::VectorXcd::Zero(4);
    mixed[1] = mixed[2] = 1.0 / std::sqrt(2.0);
    const WitnessVerdict undefined = sorensen(PureState({2, 2}, mixed, false));
    CHECK(undefined.indeterminate);
    CHECK_FALSE(undefined.detected);

    // triplet superposition with dominant middle rung is squeezed:
    // a(|00> + |11>) + b(|01> + |10>)/sqrt(2) detects for 2b^2 > 1
    const double b2 = 0.9, a2 = 0.05;
    Eigen::VectorXcd sq = Eigen::VectorXcd::Zero(4);
    sq[0] = sq[3] = std::sqrt(a2);
    sq[1] = sq[2] = std::sqrt(b2 / 2.0);
    const WitnessVerdict squeezed = sorensen(PureState({2, 2}, sq, false));
    CHECK(squeezed.lhs == doctest::Approx(4.0 * a2 * b2).epsilon(1e-12));
    CHECK(squeezed.rhs == doctest::Approx(2.0 * a2).epsilon(1e-12));
    CHECK(squeezed.detected);
}

TEST_CASE("three-operator matrix is Hermitian with stable detection under rotations") {
    std::mt19937 rng(314159);
    for (const auto& dims : {std::vector<int>{3, 3}, std::vector<int>{2, 2, 2}}) {
        const SiteBlock a = dims.size() == 2 ? SiteBlock{0} : SiteBlock{0, 1};
        const SiteBlock b = dims.size() == 2 ? SiteBlock{1} : SiteBlock{2};
        for (int trial = 0; trial < 10; ++trial) {
            const PureState psi = random_state(dims, rng);
            const WitnessMatrix3 m = rotation_matrix(psi, a, b);
            CHECK((m.m - m.m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(m.eigenvalues[0] >= m.eigenvalues[1]);
            CHECK(m.eigenvalues[1] >= m.eigenvalues[2]);

            const bool flag = rotation_verdict(m).detected;
            for (int rot = 0; rot < 20; ++rot) {
                PureState turned = rotate_block(psi, a, random_angles(rng));
                turned = rotate_block(turned, b, random_angles(rng));
                const WitnessMatrix3 mm = rotation_matrix(turned, a, b);
                CHECK(rotation_verdict(mm).detected == flag);
            }
        }
    }
}

TEST_CASE("benchmark eigenvalue triple across spins") {
    for (double j : {0.5, 1.0, 2.0}) {
        const WitnessMatrix3 m = rotation_matrix(benchmark_state(j), SiteBlock{0}, SiteBlock{1});
        std::vector<double> expected{j * j, -2.0 * j * j, -j * j * j};
        std::sort(expected.begin(), expected.end(), std::greater<double>());
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(m.eigenvalues[i] - expected[i]) < 1e-10);
        CHECK(rotation_verdict(m).detected);
    }
}

TEST_CASE("rotated product-operator condition loses the benchmark family at spin 1") {
    CHECK(old_condition_rotated(0.5, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(old_condition_rotated(1.0, 0.0, 0.0) == doctest::Approx(0.0));

    double best = -1e300;
    const int grid = 100;
    for (int i = 0; i < grid; ++i) {
        for (int k = 0; k < grid; ++k) {
            const double alpha = (i + 0.5) * 2.0 * 3.14159265358979323846 / grid;
            const double beta = (k + 0.5) * 2.0 * 3.14159265358979323846 / grid;
            best = std::max(best, old_condition_rotated(1.0, alpha, beta));
        }
    }
    CHECK(best < 0.0);
}

TEST_CASE("closed-form Hermitian eigenvalues match a dense solver") {
    std::mt19937 rng(271828);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 300; ++trial) {
        Eigen::Matrix3cd a;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a(r, c) = cplx(gauss(rng), gauss(rng));
        const Eigen::Matrix3cd h = 0.5 * (a + a.adjoint());
        const std::array<double, 3> eig = hermitian3_eigenvalues(h);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(eig[i] - es.eigenvalues()[2 - i]) < 1e-10 * scale);
    }

    // exactly degenerate spectra take the fallback path
    for (const auto& diag : {std::array<double, 3>{1.0, 1.0, 1.0},
                             std::array<double, 3>{2.0, 2.0, 1.0},
                             std::array<double, 3>{4.0, -8.0, -8.0}}) {
        Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
        for (int i = 0; i < 3; ++i) h(i, i) = diag[i];
        const std::array<double, 3> eig = hermitian3_eigenvalues(h);
        std::array<double, 3> expected = diag;
        std::sort(expected.begin(), expected.end(), std::greater<double>());
        for (int i = 0; i < 3; ++i) CHECK(std::abs(eig[i] - expected[i]) < 1e-12);
    }
}
