#pragma once

// Negativity, von Neumann entropy, mutual information and quantum discord of
// two-qubit states. Entropies are in bits. Discord is measured on the second
// (HO) factor with projective measurements.

#include "dynamics.hpp"
#include "matqm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace cbath {

/// Sum of |negative eigenvalues| of the partial transpose on HO.
inline double negativity(const ComplexMatrix& rho)
{
    const RealVector ev = hermitian_eigenvalues(partial_transpose_second(rho), 1e-8);
    double n = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        n += 0.5 * (std::abs(ev(i)) - ev(i));
    return n;
}

inline double negativity(const DensityMatrix& rho) { return negativity(rho.matrix()); }

/// (||rho^T||_1 - 1) / 2, using singular values.
inline double negativity_trace_norm(const ComplexMatrix& rho)
{
    return 0.5 * (trace_norm(partial_transpose_second(rho)) - 1.0);
}

namespace detail {

inline double entropy_term(double lambda)
{
    return lambda > 0.0 ? -lambda * std::log2(lambda) : 0.0;
}

/// Entropy of a Hermitian PSD 2x2 with given trace, closed-form spectrum.
inline double entropy_2x2(complex a, complex b, complex d)
{
    const double mean = 0.5 * (a.real() + d.real());
    const double half_diff = 0.5 * (a.real() - d.real());
    const double radius = std::sqrt(half_diff * half_diff + std::norm(b));
    return entropy_term(std::max(0.0, mean + radius)) + entropy_term(std::max(0.0, mean - radius));
}

} // namespace detail

/// -sum lambda log2 lambda. Eigenvalues below zero (down to -1e-8) are clipped.
inline double von_neumann_entropy(const ComplexMatrix& rho)
{
    if (rho.rows() != rho.cols())
        throw DimensionError("von_neumann_entropy: matrix is not square");
    if (std::abs(rho.trace() - complex(1.0)) > 1e-6)
        throw InvalidDensityMatrix("von_neumann_entropy: trace deviates from 1 by more than 1e-6");
    const RealVector ev = hermitian_eigenvalues(rho, 1e-8);
    if (ev.minCoeff() < -1e-8)
        throw InvalidDensityMatrix("von_neumann_entropy: matrix is not positive semidefinite");
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        s += detail::entropy_term(std::max(0.0, ev(i)));
    return s;
}

inline double mutual_information(const DensityMatrix& rho)
{
    const ComplexMatrix& m = rho.matrix();
    return von_neumann_entropy(partial_trace(m, Subsystem::first))
           + von_neumann_entropy(partial_trace(m, Subsystem::second)) - von_neumann_entropy(m);
}

/// Bloch angles of the projector axis for a measurement on HO.
struct MeasurementAngles {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2 pi)
};

/// Maps arbitrary real angles to the canonical ranges without changing the
/// projector pair.
inline MeasurementAngles canonical_angles(double theta, double phi)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0)
        theta += two_pi;
    if (theta > std::numbers::pi) {
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0)
        phi += two_pi;
    if (phi >= two_pi)
        phi = 0.0;
    return {theta, phi};
}

/// Pi_0 = |n><n| with n = (cos(theta/2), e^{i phi} sin(theta/2)); Pi_1 = 1 - Pi_0.
inline std::array<ComplexMatrix, 2> measurement_projectors(const MeasurementAngles& a)
{
    Eigen::Vector2cd n(std::cos(0.5 * a.theta), std::polar(std::sin(0.5 * a.theta), a.phi));
    ComplexMatrix p0 = n * n.adjoint();
    ComplexMatrix p1 = ops::identity(2) - p0;
    return {p0, p1};
}

inline constexpr double negligible_outcome_probability = 1e-12;

/// sum_i p_i S(rho_{A|i}) for projective measurement {Pi_i} on HO.
inline double conditional_entropy(const ComplexMatrix& rho, const MeasurementAngles& angles)
{
    const auto proj = measurement_projectors(angles);
    double s = 0.0;
    for (const auto& pi : proj) {
        // Unnormalized conditional state Tr_B[(1 (x) Pi) rho].
        complex c[2][2] = {};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        c[a][b] += pi(k, l) * rho(2 * a + l, 2 * b + k);
        const double p = c[0][0].real() + c[1][1].real();
        if (p < negligible_outcome_probability)
            continue;
        s += p * detail::entropy_2x2(c[0][0] / p, c[0][1] / p, c[1][1] / p);
    }
    return s;
}

inline double conditional_entropy(const DensityMatrix& rho, const MeasurementAngles& angles)
{
    return conditional_entropy(rho.matrix(), angles);
}

struct CorrelationSample {
    double negativity = 0.0;
    double mutual_info = 0.0;    // bits
    double discord = 0.0;        // bits
    double classical_corr = 0.0; // bits, max_Pi J
    MeasurementAngles optimal_angles;
    double grid_classical_corr = 0.0; // best J on the coarse grid
    bool refined = false;             // local search improved on the grid optimum
};

struct DiscordOptions {
    int grid_theta = 64;
    int grid_phi = 64;
    double tolerance = 1e-7; // on J
    int starts = 3;          // number of best grid points refined
    int max_iterations = 2000;
};

namespace detail {

/// Nelder-Mead maximization of f over (theta, phi).
template <class F>
std::pair<std::array<double, 2>, double> nelder_mead_max(F&& f, std::array<double, 2> start,
                                                         double step, double tol, int max_iter)
{
    using Point = std::array<double, 2>;
    std::array<Point, 3> x{start, Point{start[0] + step, start[1]},
                           Point{start[0], start[1] + step}};
    std::array<double, 3> fx{};
    for (int i = 0; i < 3; ++i)
        fx[i] = -f(x[i][0], x[i][1]);

    auto combine = [](const Point& a, const Point& b, double t) {
        return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const Point best = x[order[0]], mid = x[order[1]], worst = x[order[2]];
        const double f_best = fx[order[0]], f_mid = fx[order[1]], f_worst = fx[order[2]];

        const double spread = f_worst - f_best;
        const double size = std::max(std::hypot(mid[0] - best[0], mid[1] - best[1]),
                                     std::hypot(worst[0] - best[0], worst[1] - best[1]));
        if ((spread <= tol * 1e-3 && size < 1e-6) || size < 1e-10)
            break;

        const Point centroid{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
        const Point xr = combine(centroid, worst, -1.0);
        const double fr = -f(xr[0], xr[1]);
        int w = order[2];
        if (fr < f_best) {
            const Point xe = combine(centroid, worst, -2.0);
            const double fe = -f(xe[0], xe[1]);
            if (fe < fr) {
                x[w] = xe;
                fx[w] = fe;
            } else {
                x[w] = xr;
                fx[w] = fr;
            }
        } else if (fr < f_mid) {
            x[w] = xr;
            fx[w] = fr;
        } else {
            const bool outside = fr < f_worst;
            const Point xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, worst, 0.5);
            const double fc = -f(xc[0], xc[1]);
            if (fc < (outside ? fr : f_worst)) {
                x[w] = xc;
                fx[w] = fc;
            } else {
                // shrink towards best
                for (int i : {order[1], order[2]}) {
                    x[i] = combine(best, x[i], 0.5);
                    fx[i] = -f(x[i][0], x[i][1]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (fx[i] < fx[best])
            best = i;
    return {x[best], -fx[best]};
}

} // namespace detail

/// Discord with measurement on HO: I - max_Pi [S(rho_A) - S(A | Pi)].
/// Coarse (theta, phi) grid followed by Nelder-Mead from the best grid points.
inline CorrelationSample discord(const DensityMatrix& state, const DiscordOptions& opt = {})
{
    if (opt.grid_theta < 2 || opt.grid_phi < 1)
        throw ConfigError("discord grid needs at least 2 theta and 1 phi points");
    const ComplexMatrix& rho = state.matrix();
    const double s_a = von_neumann_entropy(partial_trace(rho, Subsystem::first));
    const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::second));
    const double s_ab = von_neumann_entropy(rho);

    auto j_of = [&](double theta, double phi) {
        return s_a - conditional_entropy(rho, MeasurementAngles{theta, phi});
    };

    struct Candidate {
        double j;
        double theta;
        double phi;
    };
    std::vector<Candidate> grid;
    grid.reserve(static_cast<std::size_t>(opt.grid_theta * opt.grid_phi));
    for (int i = 0; i < opt.grid_theta; ++i) {
        const double theta = std::numbers::pi * i / (opt.grid_theta - 1);
        for (int k = 0; k < opt.grid_phi; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / opt.grid_phi;
            grid.push_back({j_of(theta, phi), theta, phi});
        }
    }
    const int starts = std::clamp(opt.starts, 1, static_cast<int>(grid.size()));
    std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                      [](const Candidate& a, const Candidate& b) { return a.j > b.j; });

    CorrelationSample out;
    out.grid_classical_corr = grid.front().j;
    Candidate best = grid.front();
    const double step = std::numbers::pi / (opt.grid_theta - 1);
    for (int s = 0; s < starts; ++s) {
        auto [x, j] = detail::nelder_mead_max(j_of, {grid[s].theta, grid[s].phi}, step,
                                              opt.tolerance, opt.max_iterations);
        if (j > best.j) {
            best = {j, x[0], x[1]};
            out.refined = true;
        }
    }

    out.mutual_info = s_a + s_b - s_ab;
    out.classical_corr = best.j;
    out.discord = out.mutual_info - out.classical_corr;
    out.optimal_angles = canonical_angles(best.theta, best.phi);
    out.negativity = negativity(rho);
    return out;
}

} // namespace cbath
