#pragma once

// =============================================================================
// Gaussian steady state and bipartite entanglement
// =============================================================================
// V_ij = <u_i u_j + u_j u_i>/2 in the quadrature ordering of dynamics.hpp.
// With X = (a + a^dag)/sqrt(2) the vacuum has V = I/2 and a state is physical
// iff V + (i/2) Omega >= 0, Omega = (+)_4 [[0, 1], [-1, 0]].
// =============================================================================

#include "omech/constants.hpp"
#include "omech/dynamics.hpp"
#include "omech/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string_view>
#include <type_traits>
#include <utility>

namespace omech {

struct CovarianceMatrix {
    Matrix8 v = Matrix8::Zero();
};

enum class Subsystem { Mecha = 0, Opto = 1, Micro1 = 2, Micro2 = 3 };

inline constexpr std::array<Subsystem, 4> kAllSubsystems{
    Subsystem::Mecha, Subsystem::Opto, Subsystem::Micro1, Subsystem::Micro2};

/// First quadrature index of the mode; the pair is (i, i + 1).
constexpr int quadrature_offset(Subsystem s) noexcept { return 2 * static_cast<int>(s); }

std::string_view subsystem_name(Subsystem s) noexcept;

/// Inverse of subsystem_name; throws std::invalid_argument for unknown labels.
Subsystem parse_subsystem(std::string_view name);

using Bipartition = std::pair<Subsystem, Subsystem>;

/// All six unordered pairs, in a fixed reporting order.
inline constexpr std::array<Bipartition, 6> kAllBipartitions{{
    {Subsystem::Mecha, Subsystem::Opto},
    {Subsystem::Mecha, Subsystem::Micro1},
    {Subsystem::Mecha, Subsystem::Micro2},
    {Subsystem::Opto, Subsystem::Micro1},
    {Subsystem::Opto, Subsystem::Micro2},
    {Subsystem::Micro1, Subsystem::Micro2},
}};

// -----------------------------------------------------------------------------
// Lyapunov steady state
// -----------------------------------------------------------------------------

enum class LyapunovMethod {
    Kronecker,  ///< dense solve of (I (x) A + A (x) I) vec V = -vec D, 64 unknowns
    Schur,      ///< complex Schur decomposition and triangular back-substitution
};

/// Solves A V + V A^T = -D for a Hurwitz A. Both matrices are normalized by
/// omega_m internally. Throws UnstableSystemError if A is not stable,
/// SingularSolveError if the linear system is numerically singular or the
/// residual exceeds kLyapunovResidualTolerance * max(2 ||A|| ||V|| + ||D||, 1),
/// all Frobenius norms in omega_m units.
CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d,
                                LyapunovMethod method = LyapunovMethod::Kronecker);

/// ||A V + V A^T + D||_F with A and D in omega_m units.
double lyapunov_residual(const DriftMatrix& a, const DiffusionMatrix& d, const CovarianceMatrix& v);

/// Verification path: V = int_0^inf M(s) D M(s)^T ds, obtained by integrating
/// dV/dt = A V + V A^T + D from V(0) = 0. The flow over `step` seconds is
/// integrated with fine RK4 substeps; longer times are reached by composing
/// the flow with itself (t -> 2t). Throws ConvergenceError if the tail has not
/// decayed by `horizon` seconds.
CovarianceMatrix integrate_covariance_oracle(const DriftMatrix& a, const DiffusionMatrix& d,
                                             double horizon, double step);

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega.
double min_uncertainty_eigenvalue(const CovarianceMatrix& v);

// -----------------------------------------------------------------------------
// Bipartitions
// -----------------------------------------------------------------------------

/// Two-mode reduction [[v1, v3], [v3^T, v2]].
template <typename Scalar>
struct BasicBipartiteCM {
    using Block = Eigen::Matrix<Scalar, 2, 2>;
    using Full = Eigen::Matrix<Scalar, 4, 4>;

    Block v1 = Block::Zero();
    Block v2 = Block::Zero();
    Block v3 = Block::Zero();

    [[nodiscard]] Full assembled() const {
        Full out;
        out << v1, v3, v3.transpose(), v2;
        return out;
    }

    [[nodiscard]] BasicBipartiteCM swapped() const { return {v2, v1, v3.transpose()}; }
};

using BipartiteCM = BasicBipartiteCM<double>;

/// Extracts the rows and columns of s1 then s2. Throws std::invalid_argument
/// if s1 == s2.
BipartiteCM reduce_bipartite(const CovarianceMatrix& v, Subsystem s1, Subsystem s2);

namespace detail {

/// Smaller root of x^2 - s x + det = 0, without cancellation for s > 0.
template <typename Scalar>
Scalar smaller_symplectic_sq(Scalar s, Scalar det_v) {
    using std::sqrt;
    const Scalar floor = Scalar(kRadicandFloor);
    Scalar radicand = s * s - Scalar(4) * det_v;
    if (!(radicand >= -floor)) {
        throw UnphysicalStateError("bipartite covariance matrix is unphysical (Sigma^2 - 4 det V < 0)");
    }
    if (radicand < Scalar(0)) {
        radicand = Scalar(0);
    }
    const Scalar root = sqrt(radicand);
    return s > Scalar(0) ? Scalar(2) * det_v / (s + root) : (s - root) / Scalar(2);
}

/// Double inputs are evaluated in long double: the determinants of strongly
/// correlated thermal blocks cancel to many digits.
template <typename Scalar>
using Working =
    std::conditional_t<std::is_same_v<Scalar, double> || std::is_same_v<Scalar, float>, long double, Scalar>;

template <typename W, typename Scalar>
BasicBipartiteCM<W> promote(const BasicBipartiteCM<Scalar>& b) {
    return {b.v1.template cast<W>(), b.v2.template cast<W>(), b.v3.template cast<W>()};
}

template <typename Scalar>
Scalar min_pt_eta(const BasicBipartiteCM<Scalar>& b) {
    using std::sqrt;
    const Scalar quarter = Scalar(kVacuumVariance) * Scalar(kVacuumVariance);
    const Scalar tol = Scalar(kUncertaintyTolerance);
    const Scalar det_v1 = b.v1.determinant();
    const Scalar det_v2 = b.v2.determinant();
    const Scalar det_v3 = b.v3.determinant();
    if (!(det_v1 >= quarter - tol) || !(det_v2 >= quarter - tol)) {
        throw UnphysicalStateError("bipartite covariance matrix violates the single-mode uncertainty relation");
    }
    // det V through both Schur complements, averaged so the result does not
    // depend on the order of the parties.
    const Scalar via_1 = det_v1 * (b.v2 - b.v3.transpose() * b.v1.inverse() * b.v3).determinant();
    const Scalar via_2 = det_v2 * (b.v1 - b.v3 * b.v2.inverse() * b.v3.transpose()).determinant();
    const Scalar det_v = (via_1 + via_2) / Scalar(2);

    const Scalar eta_sq = smaller_symplectic_sq(det_v1 + det_v2 - Scalar(2) * det_v3, det_v);
    if (!(eta_sq > -Scalar(kRadicandFloor))) {
        throw UnphysicalStateError("bipartite covariance matrix is unphysical (negative eta^2)");
    }
    if (!(eta_sq > Scalar(0))) {
        throw UnphysicalStateError("bipartite covariance matrix has a vanishing symplectic eigenvalue");
    }
    return sqrt(eta_sq);
}

}  // namespace detail

/// Smallest symplectic eigenvalue of the partially transposed state,
/// eta^2 = (Sigma - sqrt(Sigma^2 - 4 det V)) / 2 with
/// Sigma = det V1 + det V2 - 2 det V3.
///
/// For Sigma > 0 the difference is evaluated as 2 det V / (Sigma + sqrt(...)),
/// which avoids the cancellation that otherwise destroys strongly squeezed
/// states. Radicands down to -kRadicandFloor are clamped to zero; anything
/// more negative throws UnphysicalStateError, as do reduced blocks
/// with det V_i < 1/4.
template <typename Scalar>
Scalar min_pt_symplectic_eigenvalue(const BasicBipartiteCM<Scalar>& b) {
    using W = detail::Working<Scalar>;
    return static_cast<Scalar>(detail::min_pt_eta(detail::promote<W>(b)));
}

/// E_N = max(0, -ln(2 eta^-)). Values within kRadicandFloor of zero are
/// reported as exactly zero.
template <typename Scalar>
Scalar log_negativity(const BasicBipartiteCM<Scalar>& b) {
    using std::log;
    using W = detail::Working<Scalar>;
    const W eta = detail::min_pt_eta(detail::promote<W>(b));
    const W en = -log(eta / W(kVacuumVariance));
    return en > W(kRadicandFloor) ? static_cast<Scalar>(en) : Scalar(0);
}

}  // namespace omech
