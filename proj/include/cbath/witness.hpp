#pragma once

// Short-time entanglement-generation witness.
//
// For a product initial state rho(0) and a direction psi with
// Xi(0) = <psi| rho(0)^{T_HO} |psi> = 0, the evolution entangles the pair as
// t -> 0+ whenever d/dt Xi(0) < 0.
//
// Omega never enters these expressions: the Hamiltonian part of the generator
// drops out of d/dt Xi(0) for the directions used here.

#include "correlations.hpp"
#include "dynamics.hpp"
#include "model.hpp"
#include "parallel.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cbath {

/// Xi = <psi| rho^{T_HO} |psi> for a unit-norm psi. Takes any Hermitian
/// operator, not only states, so it can be evaluated along backward-evolved
/// points for finite differences.
inline double xi(const ComplexMatrix& rho, const ComplexVector& psi)
{
    if (psi.size() != 4)
        throw DimensionError("xi: psi must have 4 components");
    if (std::abs(psi.norm() - 1.0) > 1e-12)
        throw ConfigError("xi: psi must be normalized");
    const complex value = psi.dot(partial_transpose_second(rho) * psi);
    if (std::abs(value.imag()) > 1e-10)
        throw NumericalError("xi: quadratic form has imaginary part "
                             + std::to_string(value.imag()));
    return value.real();
}

inline double xi(const DensityMatrix& rho, const ComplexVector& psi)
{
    return xi(rho.matrix(), psi);
}

/// Exact d/dt <psi| rho(t)^{T_HO} |psi> at t = 0, through the generator.
/// psi need not be normalized.
inline double xi_rate(const ModelParams& params, const ComplexMatrix& rho0,
                      const ComplexVector& psi)
{
    const ComplexMatrix rate = partial_transpose_second(apply_generator(params, rho0));
    return psi.dot(rate * psi).real();
}

/// kappa1 |00> + kappa2 |10> + kappa3 |11> (unnormalized). Xi(0) = 0 against |01>.
inline ComplexVector kappa_direction(double kappa1, double kappa2, double kappa3)
{
    ComplexVector v(4);
    v << kappa1, 0.0, kappa2, kappa3;
    return v;
}

/// alpha (p_perp (x) q) + beta (p (x) q_perp) + vartheta (p_perp (x) q_perp),
/// with p = (p, sqrt(1-p^2)) and p_perp = (sqrt(1-p^2), -p). Orthogonal to the
/// product state itself, so Xi(0) = 0.
inline ComplexVector general_direction(double p, double q, double alpha, double beta,
                                       double vartheta)
{
    if (!(std::abs(p) <= 1.0) || !(std::abs(q) <= 1.0))
        throw ConfigError("p and q must lie in [-1, 1]");
    const double ps = std::sqrt(std::max(0.0, 1.0 - p * p));
    const double qs = std::sqrt(std::max(0.0, 1.0 - q * q));
    const Eigen::Vector2cd a(p, ps), a_perp(ps, -p);
    const Eigen::Vector2cd b(q, qs), b_perp(qs, -q);
    auto k = [](const Eigen::Vector2cd& x, const Eigen::Vector2cd& y) {
        ComplexVector v(4);
        v << x(0) * y(0), x(0) * y(1), x(1) * y(0), x(1) * y(1);
        return v;
    };
    return alpha * k(a_perp, b) + beta * k(a, b_perp) + vartheta * k(a_perp, b_perp);
}

/// d/dt Xi(0) from |0>_Q|1>_HO along kappa_direction (unnormalized):
/// 2 g1 k1^2 eta^2 - 2 (g1 + g2) k1 k3 eta + 2 g2 k3^2.
inline double dxi0_quadratic(double kappa1, double kappa3, const ModelParams& p)
{
    const double g1 = p.gamma1, g2 = p.gamma2, eta = p.eta;
    return 2.0 * g1 * kappa1 * kappa1 * eta * eta - 2.0 * (g1 + g2) * kappa1 * kappa3 * eta
           + 2.0 * g2 * kappa3 * kappa3;
}

/// Values of kappa1 (for fixed kappa3) where dxi0_quadratic vanishes:
/// kappa3 g2 / (g1 eta) and kappa3 / eta. Empty when eta or g1 is zero.
inline std::optional<std::pair<double, double>> dxi0_quadratic_roots(double kappa3,
                                                                     const ModelParams& p)
{
    if (!(p.eta > 0.0) || !(p.gamma1 > 0.0))
        return std::nullopt;
    double r1 = kappa3 * p.gamma2 / (p.gamma1 * p.eta);
    double r2 = kappa3 / p.eta;
    if (r1 > r2)
        std::swap(r1, r2);
    return std::pair{r1, r2};
}

/// Coefficients of d/dt Xi(0) = A alpha^2 + B alpha beta + C beta^2 for the
/// product state (p, q). A, C >= 0.
struct WitnessForm {
    double a;
    double b;
    double c;
};

inline WitnessForm witness_form(double p, double q, const ModelParams& params)
{
    const double g1 = params.gamma1, g2 = params.gamma2, eta = params.eta;
    const double p2 = p * p, q2 = q * q;
    return {2.0 * (g2 * p2 * p2 + (p2 - 1.0) * (p2 - 1.0) * g1),
            -2.0 * (p2 * (2.0 * q2 - 1.0) - q2) * eta * (g1 + g2),
            2.0 * eta * eta * (g2 * q2 * q2 + (q2 - 1.0) * (q2 - 1.0) * g1)};
}

/// d/dt Xi(0) from product_state(p, q) along general_direction(p, q, alpha,
/// beta, vartheta); the vartheta coefficient is identically zero.
inline double dxi0_general(double p, double q, double alpha, double beta,
                           const ModelParams& params)
{
    if (!(std::abs(p) <= 1.0) || !(std::abs(q) <= 1.0))
        throw ConfigError("p and q must lie in [-1, 1]");
    const auto f = witness_form(p, q, params);
    return f.a * alpha * alpha + f.b * alpha * beta + f.c * beta * beta;
}

struct EntanglingVerdict {
    bool entangling;
    double excess; // B^2 - 4AC
};

/// A real (alpha, beta) with negative d/dt Xi(0) exists iff B^2 - 4AC > 0.
/// The boundary (excess == 0) is not entangling.
inline EntanglingVerdict is_entangling(double p, double q, const ModelParams& params)
{
    if (!(std::abs(p) <= 1.0) || !(std::abs(q) <= 1.0))
        throw ConfigError("p and q must lie in [-1, 1]");
    const auto f = witness_form(p, q, params);
    const double excess = f.b * f.b - 4.0 * f.a * f.c;
    return {excess > 0.0, excess};
}

/// Unit (alpha, beta) minimizing the witness form; the minimum is the smaller
/// eigenvalue of [[A, B/2], [B/2, C]].
inline std::pair<std::array<double, 2>, double> optimal_witness_direction(
    double p, double q, const ModelParams& params)
{
    const auto f = witness_form(p, q, params);
    Eigen::Matrix2d m;
    m << f.a, 0.5 * f.b, 0.5 * f.b, f.c;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(m);
    const Eigen::Vector2d v = solver.eigenvectors().col(0);
    return {{v(0), v(1)}, solver.eigenvalues()(0)};
}

struct WitnessReport {
    double xi0 = 0.0;
    double dxi0 = 0.0;
    bool entangling = false;
    std::string basis;                  // "kappa" or "alpha_beta_vartheta"
    std::array<double, 3> coefficients{}; // (k1, k2, k3) or (alpha, beta, vartheta)
    std::optional<double> p, q;
};

inline constexpr double xi0_zero_tolerance = 1e-12;

/// Initial state |0>_Q|1>_HO, direction kappa1|00> + kappa2|10> + kappa3|11>.
/// dxi0 is the quadratic form at the given (unnormalized) coefficients.
inline WitnessReport witness_kappa(double kappa1, double kappa2, double kappa3,
                                   const ModelParams& params)
{
    const ComplexVector dir = kappa_direction(kappa1, kappa2, kappa3);
    const double norm = dir.norm();
    if (!(norm > 0.0))
        throw ConfigError("kappa coefficients must not all be zero");
    WitnessReport r;
    r.xi0 = xi(product_state(1.0, 0.0), dir / norm);
    r.dxi0 = dxi0_quadratic(kappa1, kappa3, params);
    r.entangling = std::abs(r.xi0) <= xi0_zero_tolerance && r.dxi0 < 0.0;
    r.basis = "kappa";
    r.coefficients = {kappa1, kappa2, kappa3};
    return r;
}

inline WitnessReport witness_general(double p, double q, double alpha, double beta,
                                     double vartheta, const ModelParams& params)
{
    const ComplexVector dir = general_direction(p, q, alpha, beta, vartheta);
    const double norm = dir.norm();
    if (!(norm > 0.0))
        throw ConfigError("alpha, beta, vartheta must not all be zero");
    WitnessReport r;
    r.xi0 = xi(product_state(p, q), dir / norm);
    r.dxi0 = dxi0_general(p, q, alpha, beta, params);
    r.entangling = std::abs(r.xi0) <= xi0_zero_tolerance && r.dxi0 < 0.0;
    r.basis = "alpha_beta_vartheta";
    r.coefficients = {alpha, beta, vartheta};
    r.p = p;
    r.q = q;
    return r;
}

inline constexpr double confirmation_time = 1e-4;
inline constexpr double confirmation_threshold = 1e-10;

struct RegionPoint {
    double p;
    double q;
    bool entangling;
    double excess;
    std::optional<double> negativity; // at tau = confirmation_time
};

struct SpotCheck {
    double p;
    double q;
    double negativity;
    bool passed; // negativity > confirmation_threshold
};

struct RegionScan {
    int n = 0;
    std::vector<RegionPoint> grid; // row-major: p outer, q inner
    std::vector<SpotCheck> spot_checks;
};

struct RegionScanOptions {
    bool confirm_dynamics = false; // negativity at tau = 1e-4 for every point
    int spot_checks = 10;
    unsigned seed = 12345;
    unsigned threads = 0;
};

/// Grid coordinate i of n on [-1, 1], exactly antisymmetric in i -> n-1-i.
inline double grid_coordinate(int i, int n)
{
    return static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
}

inline RegionScan region_scan(const ModelParams& params, int n, const RegionScanOptions& opt = {})
{
    if (n < 2)
        throw ConfigError("region grid resolution must be at least 2");
    params.validate();

    RegionScan scan;
    scan.n = n;
    scan.grid.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double p = grid_coordinate(i, n), q = grid_coordinate(k, n);
            const auto v = is_entangling(p, q, params);
            scan.grid[static_cast<std::size_t>(i * n + k)] = {p, q, v.entangling, v.excess, {}};
        }

    const auto l = build_liouvillian(params);
    const ComplexMatrix propagator = matrix_exp(l.superop, confirmation_time);
    auto short_time_negativity = [&](double p, double q) {
        const ComplexMatrix rho =
            hermitian_part(unvec(propagator * vec(product_state(p, q).matrix()), 4));
        return negativity(rho);
    };

    if (opt.confirm_dynamics) {
        parallel_for(
            scan.grid.size(),
            [&](std::size_t idx) {
                auto& pt = scan.grid[idx];
                pt.negativity = short_time_negativity(pt.p, pt.q);
            },
            opt.threads);
    }

    std::vector<std::size_t> entangling;
    for (std::size_t idx = 0; idx < scan.grid.size(); ++idx)
        if (scan.grid[idx].entangling)
            entangling.push_back(idx);
    std::mt19937 rng(opt.seed);
    std::shuffle(entangling.begin(), entangling.end(), rng);
    const auto checks = std::min<std::size_t>(entangling.size(),
                                              static_cast<std::size_t>(std::max(0, opt.spot_checks)));
    for (std::size_t c = 0; c < checks; ++c) {
        const auto& pt = scan.grid[entangling[c]];
        const double neg = short_time_negativity(pt.p, pt.q);
        scan.spot_checks.push_back({pt.p, pt.q, neg, neg > confirmation_threshold});
    }
    return scan;
}

} // namespace cbath
