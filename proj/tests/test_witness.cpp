#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cbath;

namespace {

ModelParams canonical(double eta = 1.0)
{
    return ModelParams::from_rates(1.01, 0.01, eta, 0.001);
}

} // namespace

TEST(Xi, Examples)
{
    const ComplexMatrix rho01 = oracle::projector(oracle::basis_ket(1));
    EXPECT_EQ(xi(rho01, oracle::basis_ket(0)), 0.0);

    ComplexVector singlet = ComplexVector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    EXPECT_NEAR(xi(oracle::phi_plus(), singlet), -0.5, 1e-12);
}

TEST(Xi, NonNegativeOnProductStates)
{
    std::mt19937 rng(40);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix rho = oracle::random_product_state(rng);
        ComplexVector psi = oracle::random_matrix(rng, 4).col(0);
        psi.normalize();
        EXPECT_GE(xi(rho, psi), -1e-12);
    }
}

TEST(Xi, RequiresUnitNorm)
{
    EXPECT_THROW(xi(oracle::phi_plus(), ComplexVector(2.0 * oracle::basis_ket(0))), ConfigError);
}

TEST(Dxi0Quadratic, Examples)
{
    EXPECT_NEAR(dxi0_quadratic(0.5, 1.0, canonical()), -0.495, 1e-12);
    EXPECT_NEAR(dxi0_quadratic(1.0, -0.5, canonical()), 3.045, 1e-12);
}

TEST(Dxi0Quadratic, RootsBracketNegativeRegion)
{
    const auto p = canonical();
    const auto roots = dxi0_quadratic_roots(1.0, p);
    ASSERT_TRUE(roots);
    EXPECT_NEAR(roots->first, 0.01 / 1.01, 1e-15);
    EXPECT_NEAR(roots->second, 1.0, 1e-15);
    EXPECT_NEAR(dxi0_quadratic(roots->first, 1.0, p), 0.0, 1e-14);
    EXPECT_NEAR(dxi0_quadratic(roots->second, 1.0, p), 0.0, 1e-14);
    EXPECT_LT(dxi0_quadratic(0.5, 1.0, p), 0.0);
    EXPECT_GT(dxi0_quadratic(1.5, 1.0, p), 0.0);
    EXPECT_FALSE(dxi0_quadratic_roots(1.0, canonical(0.0)));
}

TEST(Dxi0Quadratic, EqualRatesGiveAPerfectSquare)
{
    const auto p = ModelParams::from_rates(0.7, 0.7, 1.3);
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double k1 = u(rng), k3 = u(rng);
        const double square = k1 * p.eta - k3;
        EXPECT_NEAR(dxi0_quadratic(k1, k3, p), 2.0 * 0.7 * square * square, 1e-12);
    }
}

TEST(Dxi0Quadratic, MatchesGeneratorRate)
{
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0), r(0.0, 2.0);
    const ComplexMatrix rho0 = product_state(1.0, 0.0).matrix();
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = ModelParams::from_rates(r(rng), r(rng), r(rng));
        const double k1 = u(rng), k2 = u(rng), k3 = u(rng);
        EXPECT_NEAR(xi_rate(p, rho0, kappa_direction(k1, k2, k3)), dxi0_quadratic(k1, k3, p),
                    1e-12);
    }
}

TEST(Dxi0General, ReducesToQuadraticAtOneZero)
{
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(-2.0, 2.0), r(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = ModelParams::from_rates(r(rng), r(rng), r(rng));
        const double k1 = u(rng), k3 = u(rng);
        EXPECT_NEAR(dxi0_general(1.0, 0.0, -k3, k1, p), dxi0_quadratic(k1, k3, p), 1e-12);
    }
}

TEST(Dxi0General, NeverNegativeAtOneOne)
{
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto p = canonical();
    for (int trial = 0; trial < 100; ++trial)
        EXPECT_GE(dxi0_general(1.0, 1.0, u(rng), u(rng), p), 0.0);
    const auto f = witness_form(1.0, 1.0, p);
    EXPECT_EQ(f.b, 0.0);
}

TEST(Dxi0General, MatchesGeneratorRateAndIgnoresVartheta)
{
    std::mt19937 rng(45);
    std::uniform_real_distribution<double> u(-1.0, 1.0), r(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto params = ModelParams::from_rates(r(rng), r(rng), r(rng));
        const double p = u(rng), q = u(rng), a = u(rng), b = u(rng);
        const ComplexMatrix rho0 = product_state(p, q).matrix();
        const double expected = dxi0_general(p, q, a, b, params);
        const double at_zero = xi_rate(params, rho0, general_direction(p, q, a, b, 0.0));
        EXPECT_NEAR(at_zero, expected, 1e-12 * std::max(1.0, std::abs(expected)));
        for (double v : {-1.0, -0.3, 0.6, 1.0})
            EXPECT_LE(std::abs(xi_rate(params, rho0, general_direction(p, q, a, b, v)) - at_zero),
                      1e-15 * std::max(1.0, std::abs(at_zero)) * 8);
    }
}

TEST(Dxi0, FiniteDifferenceOracle)
{
    std::mt19937 rng(46);
    std::uniform_real_distribution<double> u(-1.0, 1.0), r(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto params = ModelParams::from_rates(r(rng), r(rng), r(rng), 0.001);
        const auto l = build_liouvillian(params);
        const double p = u(rng), q = u(rng), a = u(rng), b = u(rng);
        const ComplexVector dir = general_direction(p, q, a, b, u(rng));
        const double n2 = dir.squaredNorm();
        const double fd =
            oracle::xi_finite_difference(l, product_state(p, q).matrix(), dir / std::sqrt(n2), 1e-6);
        const double expected = dxi0_general(p, q, a, b, params) / n2;
        EXPECT_NEAR(fd, expected, 1e-6 * std::max(std::abs(expected), 1e-3))
            << "p=" << p << " q=" << q;
    }
}

TEST(IsEntangling, Anchors)
{
    const auto p = canonical();
    const auto v10 = is_entangling(1.0, 0.0, p);
    EXPECT_TRUE(v10.entangling);
    EXPECT_NEAR(v10.excess, 4.0 * 1.0 * 1.0 * 1.0, 1e-12);
    EXPECT_TRUE(is_entangling(0.0, 1.0, p).entangling);
    EXPECT_TRUE(is_entangling(-1.0, 0.0, p).entangling);
    EXPECT_FALSE(is_entangling(1.0, 1.0, p).entangling);
    EXPECT_FALSE(is_entangling(0.0, 0.0, p).entangling);
    EXPECT_THROW(is_entangling(1.5, 0.0, p), ConfigError);
}

TEST(IsEntangling, EqualRatesBoundaryIsNotEntangling)
{
    const auto v = is_entangling(1.0, 0.0, ModelParams::from_rates(0.5, 0.5, 1.0));
    EXPECT_EQ(v.excess, 0.0);
    EXPECT_FALSE(v.entangling);
}

TEST(IsEntangling, OptimalDirectionIsNegativeExactlyWhenEntangling)
{
    const auto params = canonical(0.8);
    for (int i = 0; i < 11; ++i)
        for (int k = 0; k < 11; ++k) {
            const double p = grid_coordinate(i, 11), q = grid_coordinate(k, 11);
            const auto [dir, value] = optimal_witness_direction(p, q, params);
            EXPECT_NEAR(dir[0] * dir[0] + dir[1] * dir[1], 1.0, 1e-12);
            EXPECT_NEAR(dxi0_general(p, q, dir[0], dir[1], params), value, 1e-12);
            if (is_entangling(p, q, params).entangling)
                EXPECT_LT(value, 0.0);
            else
                EXPECT_GE(value, -1e-12);
        }
}

TEST(WitnessReport, KappaAndGeneral)
{
    const auto r = witness_kappa(0.5, 0.0, 1.0, canonical());
    EXPECT_EQ(r.xi0, 0.0);
    EXPECT_NEAR(r.dxi0, -0.495, 1e-12);
    EXPECT_TRUE(r.entangling);
    EXPECT_FALSE(witness_kappa(1.0, 0.0, -0.5, canonical()).entangling);
    EXPECT_THROW(witness_kappa(0.0, 0.0, 0.0, canonical()), ConfigError);

    const auto g = witness_general(0.3, -0.4, 1.0, 0.5, 0.2, canonical());
    EXPECT_LT(std::abs(g.xi0), xi0_zero_tolerance);
    EXPECT_EQ(g.basis, "alpha_beta_vartheta");
}

TEST(RegionScan, SymmetryAndAnchors)
{
    const int n = 21;
    const auto scan = region_scan(canonical(), n);
    ASSERT_EQ(scan.grid.size(), static_cast<std::size_t>(n * n));
    auto at = [&](int i, int k) { return scan.grid[static_cast<std::size_t>(i * n + k)]; };
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            EXPECT_EQ(at(i, k).entangling, at(n - 1 - i, n - 1 - k).entangling);
            EXPECT_EQ(at(i, k).entangling, at(n - 1 - i, k).entangling);
            EXPECT_EQ(at(i, k).entangling, at(i, n - 1 - k).entangling);
        }
    EXPECT_TRUE(at(n - 1, 10).entangling);  // (1, 0)
    EXPECT_TRUE(at(10, 0).entangling);      // (0, -1)
    EXPECT_FALSE(at(n - 1, n - 1).entangling);
    EXPECT_FALSE(at(10, 10).entangling);
    ASSERT_EQ(scan.spot_checks.size(), 10u);
    for (const auto& s : scan.spot_checks)
        EXPECT_TRUE(s.passed) << s.p << ' ' << s.q << ' ' << s.negativity;
}

TEST(RegionScan, ConfirmationMatchesVerdict)
{
    RegionScanOptions opt;
    opt.confirm_dynamics = true;
    const auto scan = region_scan(canonical(), 11, opt);
    for (const auto& pt : scan.grid) {
        ASSERT_TRUE(pt.negativity);
        EXPECT_EQ(pt.entangling, *pt.negativity > confirmation_threshold)
            << pt.p << ' ' << pt.q << ' ' << *pt.negativity;
    }
}

TEST(RegionScan, CornersOnlyGrid)
{
    const auto scan = region_scan(canonical(), 2);
    ASSERT_EQ(scan.grid.size(), 4u);
    for (const auto& pt : scan.grid) {
        EXPECT_EQ(std::abs(pt.p), 1.0);
        EXPECT_FALSE(pt.entangling);
    }
    EXPECT_TRUE(scan.spot_checks.empty());
    EXPECT_THROW(region_scan(canonical(), 1), ConfigError);
}

TEST(RegionCsv, Layout)
{
    const auto scan = region_scan(canonical(), 2);
    EXPECT_EQ(region_csv(scan, false).substr(0, 23), "p,q,entangling,excess\n-");
}
