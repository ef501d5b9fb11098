#pragma once

// Physical parameters, thermal rates, Kossakowski matrix and the GKSL
// generator for a qubit (Q) and a single-excitation oscillator (HO) that
// share one bath.
//
// Time is dimensionless, tau = zeta * t. Rates are per unit tau.
//
// Temperature enters only through exp(1/T): T is taken as dimensionless in
// the exponent (i.e. measured in units of the system frequency with
// hbar = k_B = 1). Omega itself does not appear in the rates.

#include "errors.hpp"
#include "matqm.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace cbath {

struct ThermalRates {
    double gamma1; // decay (lowering) rate
    double gamma2; // absorption (raising) rate
};

/// gamma1 = zeta e^{1/T} / (e^{1/T} - 1), gamma2 = zeta / (e^{1/T} - 1).
inline ThermalRates rates_from_temperature(double zeta, double temperature)
{
    if (!(zeta > 0.0) || !std::isfinite(zeta))
        throw ConfigError("zeta must be a positive finite number");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw ConfigError("temperature must be a positive finite number");
    // expm1 keeps gamma2 accurate at high T; gamma1 = zeta + gamma2 exactly.
    const double occupation = 1.0 / std::expm1(1.0 / temperature);
    const double gamma2 = zeta * occupation;
    return {zeta + gamma2, gamma2};
}

struct ModelParams {
    double omega = 0.001;
    double zeta = 1.0;
    double gamma1 = 1.01;
    double gamma2 = 0.01;
    double eta = 1.0;
    std::optional<double> temperature;

    static ModelParams from_rates(double gamma1, double gamma2, double eta, double omega = 0.001,
                                  double zeta = 1.0)
    {
        ModelParams p;
        p.omega = omega;
        p.zeta = zeta;
        p.gamma1 = gamma1;
        p.gamma2 = gamma2;
        p.eta = eta;
        p.validate();
        return p;
    }

    static ModelParams from_temperature(double zeta, double temperature, double eta,
                                        double omega = 0.001)
    {
        const auto rates = rates_from_temperature(zeta, temperature);
        ModelParams p;
        p.omega = omega;
        p.zeta = zeta;
        p.gamma1 = rates.gamma1;
        p.gamma2 = rates.gamma2;
        p.eta = eta;
        p.temperature = temperature;
        p.validate();
        return p;
    }

    void validate() const
    {
        auto finite = [](double v) { return std::isfinite(v); };
        if (!(omega > 0.0) || !finite(omega))
            throw ConfigError("omega must be a positive finite number");
        if (!(zeta > 0.0) || !finite(zeta))
            throw ConfigError("zeta must be a positive finite number");
        if (!(gamma1 >= 0.0) || !finite(gamma1))
            throw ConfigError("gamma1 must be a non-negative finite number");
        if (!(gamma2 >= 0.0) || !finite(gamma2))
            throw ConfigError("gamma2 must be a non-negative finite number");
        if (!(eta >= 0.0) || !finite(eta))
            throw ConfigError("eta must be a non-negative finite number");
        if (temperature && (!(*temperature > 0.0) || !finite(*temperature)))
            throw ConfigError("temperature must be a positive finite number");
    }
};

/// Flat JSON: {omega, zeta, eta} plus either {temperature} or {gamma1, gamma2}.
inline nlohmann::json params_to_json(const ModelParams& p)
{
    nlohmann::json j{{"omega", p.omega}, {"zeta", p.zeta}, {"eta", p.eta}};
    if (p.temperature)
        j["temperature"] = *p.temperature;
    else {
        j["gamma1"] = p.gamma1;
        j["gamma2"] = p.gamma2;
    }
    return j;
}

inline ModelParams params_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ConfigError("model parameters must be a JSON object");
    auto number = [&](const char* key, double fallback) {
        if (!j.contains(key))
            return fallback;
        if (!j.at(key).is_number())
            throw ConfigError(std::string(key) + " must be a number");
        return j.at(key).get<double>();
    };
    const bool has_rates = j.contains("gamma1") || j.contains("gamma2");
    const bool has_temperature = j.contains("temperature");
    if (has_rates && has_temperature)
        throw ConfigError("give either temperature (with zeta) or gamma1/gamma2, not both");
    const double omega = number("omega", 0.001);
    const double zeta = number("zeta", 1.0);
    const double eta = number("eta", 1.0);
    if (has_temperature)
        return ModelParams::from_temperature(zeta, number("temperature", 0.0), eta, omega);
    if (!(j.contains("gamma1") && j.contains("gamma2")))
        throw ConfigError("both gamma1 and gamma2 are required (or temperature instead)");
    return ModelParams::from_rates(number("gamma1", 0.0), number("gamma2", 0.0), eta, omega, zeta);
}

namespace detail {

inline ComplexMatrix q_op(const ComplexMatrix& a) { return kron(a, ops::identity(2)); }
inline ComplexMatrix ho_op(const ComplexMatrix& a) { return kron(ops::identity(2), a); }

} // namespace detail

/// H_S = (Omega/2) sigma_z (x) 1 + Omega 1 (x) sigma_+ sigma_-.
inline ComplexMatrix system_hamiltonian(const ModelParams& p)
{
    using namespace ops;
    return 0.5 * p.omega * detail::q_op(sigma_z())
           + p.omega * detail::ho_op(sigma_plus() * sigma_minus());
}

/// Dissipator basis (G1, G2, G3, G4) = (s+^Q, s-^Q, s-^HO, s+^HO).
inline std::array<ComplexMatrix, 4> dissipator_basis()
{
    using namespace ops;
    return {detail::q_op(sigma_plus()), detail::q_op(sigma_minus()),
            detail::ho_op(sigma_minus()), detail::ho_op(sigma_plus())};
}

inline ComplexMatrix kossakowski_matrix(const ModelParams& p)
{
    const double g1 = p.gamma1, g2 = p.gamma2, eta = p.eta;
    ComplexMatrix k = ComplexMatrix::Zero(4, 4);
    k(0, 0) = 2.0 * g2;
    k(0, 3) = k(3, 0) = 2.0 * eta * g2;
    k(3, 3) = 2.0 * eta * eta * g2;
    k(1, 1) = 2.0 * g1;
    k(1, 2) = k(2, 1) = 2.0 * eta * g1;
    k(2, 2) = 2.0 * eta * eta * g1;
    return k;
}

struct Liouvillian {
    ModelParams params;
    ComplexMatrix hamiltonian; // 4x4
    ComplexMatrix superop;     // 16x16, column-stacking vectorization

    /// L[rho] through the matrix representation.
    ComplexMatrix apply(const ComplexMatrix& rho) const { return unvec(superop * vec(rho), 4); }
};

/// Vectorized generator: -i[H, .] + sum_ij K_ij (G_i . G_j^+ - 1/2 {G_j^+ G_i, .}).
inline Liouvillian build_liouvillian(const ModelParams& params)
{
    params.validate();
    const ComplexMatrix h = system_hamiltonian(params);
    const ComplexMatrix id = ops::identity(4);
    const complex i_unit(0.0, 1.0);

    ComplexMatrix l = -i_unit * (superop_sandwich(h, id) - superop_sandwich(id, h));

    const ComplexMatrix k = kossakowski_matrix(params);
    const auto g = dissipator_basis();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (k(i, j) == complex(0.0))
                continue;
            const ComplexMatrix gj_dag = g[j].adjoint();
            const ComplexMatrix gjg = gj_dag * g[i];
            l += k(i, j) * (superop_sandwich(g[i], gj_dag) - 0.5 * superop_sandwich(gjg, id)
                            - 0.5 * superop_sandwich(id, gjg));
        }
    }
    return {params, h, std::move(l)};
}

/// Right-hand side of the master equation, written out term by term
/// (Hamiltonian, qubit dissipator, oscillator dissipator, bath-induced cross
/// terms) without going through the superoperator. Accepts any operator.
inline ComplexMatrix apply_generator(const ModelParams& p, const ComplexMatrix& rho)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionError("apply_generator: expected a 4x4 operator");
    using namespace ops;
    const ComplexMatrix sp_q = detail::q_op(sigma_plus());
    const ComplexMatrix sm_q = detail::q_op(sigma_minus());
    const ComplexMatrix sp_h = detail::ho_op(sigma_plus());
    const ComplexMatrix sm_h = detail::ho_op(sigma_minus());
    const complex i_unit(0.0, 1.0);

    auto comm = [](const ComplexMatrix& a, const ComplexMatrix& b) -> ComplexMatrix {
        return a * b - b * a;
    };
    auto anti = [](const ComplexMatrix& a, const ComplexMatrix& b) -> ComplexMatrix {
        return a * b + b * a;
    };

    const double g1 = p.gamma1, g2 = p.gamma2, eta = p.eta;

    ComplexMatrix out = -i_unit * comm(0.5 * p.omega * detail::q_op(sigma_z()), rho)
                        - i_unit * comm(p.omega * sp_h * sm_h, rho);

    // qubit
    out += g1 * (2.0 * sm_q * rho * sp_q - anti(sp_q * sm_q, rho));
    out += g2 * (2.0 * sp_q * rho * sm_q - anti(sm_q * sp_q, rho));

    // oscillator
    out += g1 * eta * eta * (2.0 * sm_h * rho * sp_h - anti(sp_h * sm_h, rho));
    out += g2 * eta * eta * (2.0 * sp_h * rho * sm_h - anti(sm_h * sp_h, rho));

    // bath-induced cross terms
    out += g1 * eta * (2.0 * sm_q * rho * sp_h - anti(sp_h * sm_q, rho));
    out += g1 * eta * (2.0 * sm_h * rho * sp_q - anti(sp_q * sm_h, rho));
    out += g2 * eta
           * (2.0 * sp_q * rho * sm_h + 2.0 * sp_h * rho * sm_q - anti(sm_h * sp_q, rho)
              - anti(sm_q * sp_h, rho));
    return out;
}

inline ComplexMatrix apply_liouvillian(const ModelParams& p, const ComplexMatrix& rho,
                                       double tol = default_tolerance)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionError("apply_liouvillian: expected a 4x4 operator");
    if (hermiticity_defect(rho) > tol)
        throw NotHermitianError("apply_liouvillian: input is not Hermitian");
    return apply_generator(p, rho);
}

/// diag(r^2, r, r, 1) / (1 + r)^2 with r = gamma1 / gamma2.
inline ComplexMatrix steady_state_analytic(const ModelParams& p)
{
    if (!(p.gamma2 > 0.0))
        throw ConfigError("gamma2 = 0: the closed-form steady state needs a finite "
                          "gamma1/gamma2 ratio (zero-temperature bath is not covered)");
    const double r = p.gamma1 / p.gamma2;
    // Normalize by (1 + r)^2 written in a form that stays finite for huge r.
    const double a = r / (1.0 + r);
    const double b = 1.0 / (1.0 + r);
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = a * a;
    rho(1, 1) = a * b;
    rho(2, 2) = a * b;
    rho(3, 3) = b * b;
    return rho;
}

inline constexpr double null_eigenvalue_threshold = 1e-8;

/// Eigenvalues of the 16x16 superoperator.
inline Eigen::VectorXcd liouvillian_spectrum(const Liouvillian& l)
{
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(l.superop, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Liouvillian eigensolver did not converge");
    return solver.eigenvalues();
}

inline int kernel_dimension(const Liouvillian& l)
{
    const auto ev = liouvillian_spectrum(l);
    int n = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) < null_eigenvalue_threshold)
            ++n;
    return n;
}

inline double spectral_radius(const Liouvillian& l)
{
    return liouvillian_spectrum(l).cwiseAbs().maxCoeff();
}

/// The kernel of the generator is not one-dimensional, so there is no unique
/// steady state to return.
struct DegenerateSteadyState : NumericalError {
    int null_dimension;
    explicit DegenerateSteadyState(int dim)
        : NumericalError("steady state is not unique: Liouvillian kernel has dimension "
                         + std::to_string(dim)),
          null_dimension(dim)
    {
    }
};

struct NumericSteadyState {
    ComplexMatrix state;
    int null_dimension;
};

inline NumericSteadyState steady_state_numeric(const Liouvillian& l)
{
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(l.superop, true);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Liouvillian eigensolver did not converge");
    const auto& ev = solver.eigenvalues();

    int dim = 0;
    Eigen::Index nearest = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) < null_eigenvalue_threshold)
            ++dim;
        if (std::abs(ev(i)) < std::abs(ev(nearest)))
            nearest = i;
    }
    if (dim != 1)
        throw DegenerateSteadyState(dim);

    ComplexMatrix rho = unvec(solver.eigenvectors().col(nearest), 4);
    const complex tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw NumericalError("kernel vector of the Liouvillian is traceless");
    rho = hermitian_part(rho / tr);
    return {rho, dim};
}

} // namespace cbath
