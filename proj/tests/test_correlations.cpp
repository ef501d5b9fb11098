#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace cbath;

namespace {

DensityMatrix state(const ComplexMatrix& m) { return DensityMatrix::from_matrix(m); }

/// Random Bell-diagonal coefficients inside the tetrahedron of valid states.
std::array<double, 3> random_bell_coefficients(std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
        if (1 - c1 - c2 - c3 >= 0 && 1 - c1 + c2 + c3 >= 0 && 1 + c1 - c2 + c3 >= 0
            && 1 + c1 + c2 - c3 >= 0)
            return {c1, c2, c3};
    }
}

} // namespace

TEST(Negativity, Benchmarks)
{
    EXPECT_NEAR(negativity(oracle::phi_plus()), 0.5, 1e-12);
    EXPECT_NEAR(negativity(oracle::werner(0.6)), 0.2, 1e-12);
    EXPECT_NEAR(negativity(oracle::werner(1.0 / 3.0)), 0.0, 1e-12);
    EXPECT_EQ(negativity(oracle::projector(oracle::basis_ket(1))), 0.0);
}

TEST(Negativity, TraceNormFormAgrees)
{
    std::mt19937 rng(30);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix rho = oracle::random_density(rng);
        EXPECT_NEAR(negativity(rho), negativity_trace_norm(rho), 1e-10);
    }
}

TEST(Negativity, ProductStatesAndLocalUnitaries)
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        EXPECT_LT(negativity(oracle::random_product_state(rng)), 1e-12);
        const ComplexMatrix rho = oracle::random_density(rng);
        const ComplexMatrix u =
            oracle::naive_kron(oracle::random_unitary(rng, 2), oracle::random_unitary(rng, 2));
        EXPECT_NEAR(negativity(u * rho * u.adjoint()), negativity(rho), 1e-9);
    }
}

TEST(Entropy, Examples)
{
    EXPECT_NEAR(von_neumann_entropy(ops::identity(4) / 4.0), 2.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(ops::identity(2) / 2.0), 1.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(oracle::phi_plus()), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(oracle::classical_correlated()), 1.0, 1e-12);
}

TEST(Entropy, RejectsBadTrace)
{
    EXPECT_THROW(von_neumann_entropy(ops::identity(4)), InvalidDensityMatrix);
}

TEST(Entropy, Concavity)
{
    std::mt19937 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = oracle::random_density(rng);
        const ComplexMatrix b = oracle::random_density(rng);
        EXPECT_GE(von_neumann_entropy(0.5 * (a + b)),
                  0.5 * (von_neumann_entropy(a) + von_neumann_entropy(b)) - 1e-9);
    }
}

TEST(MutualInformation, Examples)
{
    EXPECT_NEAR(mutual_information(state(oracle::phi_plus())), 2.0, 1e-12);
    EXPECT_NEAR(mutual_information(state(oracle::classical_correlated())), 1.0, 1e-12);
    EXPECT_NEAR(mutual_information(state(ops::identity(4) / 4.0)), 0.0, 1e-12);
}

TEST(ConditionalEntropy, BellStateIsZeroForEveryAxis)
{
    for (double theta : {0.0, 0.4, 1.3, std::numbers::pi})
        for (double phi : {0.0, 1.0, 4.0})
            EXPECT_NEAR(conditional_entropy(oracle::phi_plus(), {theta, phi}), 0.0, 1e-9);
}

TEST(ConditionalEntropy, ClassicalStateDependsOnAxis)
{
    const ComplexMatrix rho = oracle::classical_correlated();
    EXPECT_NEAR(conditional_entropy(rho, {0.0, 0.0}), 0.0, 1e-12);
    EXPECT_NEAR(conditional_entropy(rho, {std::numbers::pi / 2, 0.0}), 1.0, 1e-12);
}

TEST(ConditionalEntropy, MatchesProjectedStateOracle)
{
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix rho = oracle::random_density(rng);
        const MeasurementAngles a{u(rng), 2.0 * u(rng)};
        double expected = 0.0;
        for (const auto& pi : measurement_projectors(a)) {
            const ComplexMatrix proj = oracle::naive_kron(ops::identity(2), pi);
            const ComplexMatrix post = proj * rho * proj;
            const double p = post.trace().real();
            expected += p * von_neumann_entropy(partial_trace(post / p, Subsystem::first));
        }
        EXPECT_NEAR(conditional_entropy(rho, a), expected, 1e-9);
    }
}

TEST(MeasurementAngles, CanonicalisationKeepsProjectors)
{
    for (double theta : {-0.7, 4.0, 7.5})
        for (double phi : {-1.0, 2.0, 9.0}) {
            const auto c = canonical_angles(theta, phi);
            EXPECT_GE(c.theta, 0.0);
            EXPECT_LE(c.theta, std::numbers::pi);
            EXPECT_GE(c.phi, 0.0);
            EXPECT_LT(c.phi, 2.0 * std::numbers::pi);
            const auto a = measurement_projectors({theta, phi});
            const auto b = measurement_projectors(c);
            EXPECT_LT(max_abs(a[0] - b[0]), 1e-12);
        }
}

TEST(Discord, Benchmarks)
{
    EXPECT_NEAR(discord(state(oracle::phi_plus())).discord, 1.0, 1e-6);
    EXPECT_NEAR(discord(state(oracle::classical_correlated())).discord, 0.0, 1e-6);
    std::mt19937 rng(34);
    for (int trial = 0; trial < 5; ++trial)
        EXPECT_NEAR(discord(state(oracle::random_product_state(rng))).discord, 0.0, 1e-6);
}

TEST(Discord, BellDiagonalOracle)
{
    std::mt19937 rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_bell_coefficients(rng);
        const double got = discord(state(oracle::bell_diagonal(c[0], c[1], c[2]))).discord;
        EXPECT_NEAR(got, oracle::bell_diagonal_discord(c[0], c[1], c[2]), 1e-4)
            << c[0] << ' ' << c[1] << ' ' << c[2];
    }
}

TEST(Discord, BoundsAndBookkeeping)
{
    std::mt19937 rng(36);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = discord(state(oracle::random_density(rng)));
        EXPECT_GE(s.classical_corr, -1e-7);
        EXPECT_LE(s.classical_corr, s.mutual_info + 1e-7);
        EXPECT_GE(s.classical_corr, s.grid_classical_corr - 1e-12);
        EXPECT_NEAR(s.mutual_info, s.classical_corr + s.discord, 1e-12);
    }
}

TEST(Discord, RejectsDegenerateGrid)
{
    DiscordOptions opt;
    opt.grid_theta = 1;
    EXPECT_THROW(discord(state(oracle::phi_plus()), opt), ConfigError);
}

TEST(CorrelationCsv, Row)
{
    EXPECT_EQ(std::string(correlation_csv_header),
              "t,negativity,mutual_info,discord,classical_corr,theta_opt,phi_opt\n");
    CorrelationSample s;
    s.negativity = 0.5;
    s.mutual_info = 2.0;
    s.discord = 1.0;
    s.classical_corr = 1.0;
    EXPECT_EQ(correlation_csv_row(0.25, s), "0.25,0.5,2,1,1,0,0\n");
}
