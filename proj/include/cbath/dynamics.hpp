#pragma once

// Time evolution under the master equation: fixed-step RK4 and the exact
// propagator exp(tau L) of the vectorized generator.

#include "errors.hpp"
#include "matqm.hpp"
#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cbath {

struct StateTolerances {
    double hermiticity = 1e-10;
    double trace = 1e-9;
    double min_eigenvalue = -1e-8;
};

struct InvalidDensityMatrix : std::domain_error {
    using std::domain_error::domain_error;
};

/// 4x4 Hermitian, unit-trace, positive semidefinite operator on Q (x) HO.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(ComplexMatrix m, const StateTolerances& tol = {})
    {
        if (m.rows() != 4 || m.cols() != 4)
            throw InvalidDensityMatrix("density matrix must be 4x4");
        if (hermiticity_defect(m) > tol.hermiticity)
            throw InvalidDensityMatrix("density matrix is not Hermitian");
        if (std::abs(m.trace() - complex(1.0)) > tol.trace)
            throw InvalidDensityMatrix("density matrix does not have unit trace");
        const double min_eig = hermitian_eigenvalues(m, tol.hermiticity).minCoeff();
        if (min_eig < tol.min_eigenvalue)
            throw InvalidDensityMatrix("density matrix has eigenvalue "
                                       + std::to_string(min_eig));
        return DensityMatrix(std::move(m));
    }

    /// |psi><psi| for a normalized 4-vector.
    static DensityMatrix pure(const ComplexVector& psi)
    {
        if (psi.size() != 4)
            throw InvalidDensityMatrix("state vector must have 4 components");
        const double norm = psi.norm();
        if (std::abs(norm - 1.0) > 1e-12)
            throw InvalidDensityMatrix("state vector is not normalized");
        return DensityMatrix(psi * psi.adjoint());
    }

    const ComplexMatrix& matrix() const { return m_; }
    complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// (p|0> + sqrt(1-p^2)|1>)_Q (x) (q|0> + sqrt(1-q^2)|1>)_HO
inline ComplexVector product_state_vector(double p, double q)
{
    if (!(std::abs(p) <= 1.0))
        throw ConfigError("p must lie in [-1, 1]");
    if (!(std::abs(q) <= 1.0))
        throw ConfigError("q must lie in [-1, 1]");
    const double ps = std::sqrt(std::max(0.0, 1.0 - p * p));
    const double qs = std::sqrt(std::max(0.0, 1.0 - q * q));
    ComplexVector v(4);
    v << p * q, p * qs, ps * q, ps * qs;
    return v;
}

inline DensityMatrix product_state(double p, double q)
{
    const ComplexVector v = product_state_vector(p, q);
    return DensityMatrix::pure(v / v.norm());
}

struct RkDiagnostics {
    int steps = 0;                        // effective internal steps
    double step_size = 0.0;
    double max_trace_correction = 0.0;    // max |Tr rho - 1| removed per step
    double max_hermiticity_correction = 0.0;
    bool insufficient_steps = false;      // trace corrections exceeded 1e-7
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    ModelParams params;
    std::string initial_state;
    RkDiagnostics diagnostics;
};

inline constexpr int default_samples = 400;
inline constexpr double trace_correction_limit = 1e-7;

inline std::vector<double> uniform_times(double t_max, int samples)
{
    if (samples < 1)
        throw ConfigError("samples must be at least 1");
    if (samples == 1 || t_max == 0.0)
        return {0.0};
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        t[static_cast<std::size_t>(k)] = t_max * k / (samples - 1);
    return t;
}

namespace detail {

inline void check_sample(const ComplexMatrix& rho, double t, const StateTolerances& tol)
{
    const double herm = hermiticity_defect(rho);
    const double tr = std::abs(rho.trace() - complex(1.0));
    if (herm > tol.hermiticity || tr > tol.trace)
        throw NumericalError("state at t=" + std::to_string(t)
                             + " violates Hermiticity/trace tolerance");
    const double min_eig = hermitian_eigenvalues(rho, tol.hermiticity).minCoeff();
    if (min_eig < tol.min_eigenvalue)
        throw NumericalError("state at t=" + std::to_string(t) + " has eigenvalue "
                             + std::to_string(min_eig) + " below "
                             + std::to_string(tol.min_eigenvalue));
}

} // namespace detail

/// Classical RK4 on d vec(rho)/dtau = L vec(rho).
///
/// `steps` is rounded up to a multiple of (samples - 1) so every sample falls
/// on a step boundary. Each step's result is re-Hermitized and renormalized to
/// unit trace; the size of both corrections is tracked in the diagnostics.
/// Throws ConfigError when h * spectral_radius(L) >= 1.
inline Trajectory evolve_rk(const Liouvillian& l, const DensityMatrix& rho0, double t_max,
                            int steps, int samples = default_samples,
                            std::string initial_state = {})
{
    if (!(t_max >= 0.0) || !std::isfinite(t_max))
        throw ConfigError("t_max must be a non-negative finite number");
    if (steps < 1)
        throw ConfigError("steps must be at least 1");
    if (samples < 1)
        throw ConfigError("samples must be at least 1");

    Trajectory traj;
    traj.params = l.params;
    traj.initial_state = std::move(initial_state);
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    if (t_max == 0.0 || samples == 1)
        return traj;

    const int intervals = samples - 1;
    const int per_sample = (steps + intervals - 1) / intervals;
    const int total = per_sample * intervals;
    const double h = t_max / total;

    const double radius = spectral_radius(l);
    if (h * radius >= 1.0)
        throw ConfigError("RK4 stability guard: step " + std::to_string(h)
                          + " times spectral radius " + std::to_string(radius)
                          + " is not below 1; increase steps");

    traj.diagnostics.steps = total;
    traj.diagnostics.step_size = h;

    const ComplexMatrix& a = l.superop;
    ComplexVector v = vec(rho0.matrix());
    const StateTolerances tol;
    for (int s = 1; s <= intervals; ++s) {
        for (int k = 0; k < per_sample; ++k) {
            const ComplexVector k1 = a * v;
            const ComplexVector k2 = a * (v + 0.5 * h * k1);
            const ComplexVector k3 = a * (v + 0.5 * h * k2);
            const ComplexVector k4 = a * (v + h * k3);
            v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            ComplexMatrix rho = unvec(v, 4);
            ComplexMatrix herm = hermitian_part(rho);
            const double herm_fix = max_abs(rho - herm);
            const complex tr = herm.trace();
            const double trace_fix = std::abs(tr - complex(1.0));
            herm /= tr.real();
            v = vec(herm);

            auto& d = traj.diagnostics;
            d.max_hermiticity_correction = std::max(d.max_hermiticity_correction, herm_fix);
            d.max_trace_correction = std::max(d.max_trace_correction, trace_fix);
        }
        const double t = t_max * s / intervals;
        ComplexMatrix rho = unvec(v, 4);
        detail::check_sample(rho, t, tol);
        traj.times.push_back(t);
        traj.states.push_back(DensityMatrix::from_matrix(std::move(rho), tol));
    }
    traj.diagnostics.insufficient_steps =
        traj.diagnostics.max_trace_correction > trace_correction_limit;
    return traj;
}

/// exp(t L) applied to an arbitrary operator; t may be negative.
inline ComplexMatrix propagate_exact(const Liouvillian& l, const ComplexMatrix& rho, double t)
{
    return unvec(matrix_exp(l.superop, t) * vec(rho), 4);
}

inline Trajectory evolve_exact(const Liouvillian& l, const DensityMatrix& rho0,
                               std::span<const double> times, std::string initial_state = {})
{
    if (times.empty() || times.front() != 0.0)
        throw ConfigError("times must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]) || !std::isfinite(times[i]))
            throw ConfigError("times must be strictly increasing and finite");

    Trajectory traj;
    traj.params = l.params;
    traj.initial_state = std::move(initial_state);
    const ComplexVector v0 = vec(rho0.matrix());
    const StateTolerances tol;
    for (double t : times) {
        ComplexMatrix rho = hermitian_part(unvec(matrix_exp(l.superop, t) * v0, 4));
        detail::check_sample(rho, t, tol);
        traj.times.push_back(t);
        traj.states.push_back(DensityMatrix::from_matrix(std::move(rho), tol));
    }
    return traj;
}

} // namespace cbath
