#pragma once

// Dense complex matrix kernel for the two-qubit (Q, HO) problem.
//
// Basis convention, used everywhere in the library: |Q> (x) |HO>, with
// index = 2 * q_state + ho_state, i.e. (|00>, |01>, |10>, |11>), and
// |0> the ground state of each factor.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cbath {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double default_tolerance = 1e-9;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotHermitianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HermitianEigenDecomposition {
    RealVector eigenvalues;       // ascending
    ComplexMatrix eigenvectors;   // columns, orthonormal
};

namespace ops {

/// sigma_+ = |1><0|
inline ComplexMatrix sigma_plus()
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

/// sigma_- = |0><1|
inline ComplexMatrix sigma_minus()
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

/// sigma_z = |1><1| - |0><0|
inline ComplexMatrix sigma_z()
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

inline ComplexMatrix sigma_x()
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix sigma_y()
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = complex(0.0, -1.0);
    m(1, 0) = complex(0.0, 1.0);
    return m;
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

/// |i><j| on a space of dimension n.
inline ComplexMatrix ket_bra(Eigen::Index n, Eigen::Index i, Eigen::Index j)
{
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

} // namespace ops

/// Largest absolute entry.
inline double max_abs(const ComplexMatrix& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    return max_abs(a - b) <= tol;
}

inline double hermiticity_defect(const ComplexMatrix& a)
{
    return max_abs(a - a.adjoint());
}

inline bool is_hermitian(const ComplexMatrix& a, double tol)
{
    return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a)
{
    return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Partial transpose on the second (HO) factor of a 4x4 operator: each 2x2
/// block B_ij (indexed by the Q state) is transposed in place.
inline ComplexMatrix partial_transpose_second(const ComplexMatrix& rho)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionError("partial_transpose_second: expected a 4x4 matrix");
    ComplexMatrix out(4, 4);
    for (int qi = 0; qi < 2; ++qi)
        for (int qj = 0; qj < 2; ++qj)
            out.block<2, 2>(2 * qi, 2 * qj) = rho.block<2, 2>(2 * qi, 2 * qj).transpose();
    return out;
}

enum class Subsystem { first, second };

/// Reduced 2x2 state of a 4x4 operator. `keep == first` traces out HO.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionError("partial_trace: expected a 4x4 matrix");
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (keep == Subsystem::first)
                    out(i, j) += rho(2 * i + k, 2 * j + k);
                else
                    out(i, j) += rho(2 * k + i, 2 * k + j);
            }
    return out;
}

inline HermitianEigenDecomposition hermitian_eigen(const ComplexMatrix& a, double tol = default_tolerance)
{
    if (a.rows() != a.cols())
        throw DimensionError("hermitian_eigen: matrix is not square");
    if (hermiticity_defect(a) > tol)
        throw NotHermitianError("hermitian_eigen: matrix is not Hermitian within "
                                + std::to_string(tol));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigen: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector hermitian_eigenvalues(const ComplexMatrix& a, double tol = default_tolerance)
{
    if (a.rows() != a.cols())
        throw DimensionError("hermitian_eigenvalues: matrix is not square");
    if (hermiticity_defect(a) > tol)
        throw NotHermitianError("hermitian_eigenvalues: matrix is not Hermitian within "
                                + std::to_string(tol));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

/// exp(t A), Pade scaling-and-squaring.
inline ComplexMatrix matrix_exp(const ComplexMatrix& a, double t)
{
    if (a.rows() != a.cols())
        throw DimensionError("matrix_exp: matrix is not square");
    if (t == 0.0)
        return ComplexMatrix::Identity(a.rows(), a.cols());
    ComplexMatrix scaled = t * a;
    return scaled.exp();
}

/// Sum of singular values.
inline double trace_norm(const ComplexMatrix& a)
{
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().sum();
}

/// Column-stacking vectorization; Eigen storage is column-major so this is a copy.
inline ComplexVector vec(const ComplexMatrix& a)
{
    return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows)
{
    if (rows <= 0 || v.size() % rows != 0)
        throw DimensionError("unvec: vector length is not a multiple of the row count");
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, v.size() / rows);
}

/// Superoperator of X -> A X B under column stacking: (B^T kron A).
inline ComplexMatrix superop_sandwich(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return kron(b.transpose(), a);
}

// JSON: {rows, cols, entries: [[re, im], ...]} row-major.

inline nlohmann::json matrix_to_json(const ComplexMatrix& m)
{
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j)
{
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows <= 0 || cols <= 0)
        throw DimensionError("matrix JSON: rows and cols must be positive");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
        throw DimensionError("matrix JSON: entries length must equal rows * cols");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
        const auto& e = entries[static_cast<std::size_t>(k)];
        if (!e.is_array() || e.size() != 2)
            throw DimensionError("matrix JSON: each entry must be [re, im]");
        m(k / cols, k % cols) = complex(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

} // namespace cbath
