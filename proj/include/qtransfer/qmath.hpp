#pragma once

// Dense complex linear algebra and the handful of quantum-state primitives the
// transfer protocols need: Bloch kets, Bell states, Werner states, tensor
// products, partial traces, local unitaries and projective measurements.
//
// Conventions: qubit 0 is the leftmost tensor factor, so for two qubits the
// computational basis is ordered |00>, |01>, |10>, |11>.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qtransfer {

using Complex = std::complex<double>;
using Ket = std::vector<Complex>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr std::size_t kMaxDim = 256;

/// Square complex matrix stored row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    /// |a><b|
    static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
    std::span<const Complex> entries() const noexcept { return a_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    Ket apply(std::span<const Complex> v) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t dim_ = 0;
    std::vector<Complex> a_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
Ket kron(std::span<const Complex> a, std::span<const Complex> b);

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    std::vector<Ket> vectors;    // vectors[k] pairs with values[k]
};
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

// Gates.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// exp(-i angle X / 2)
ComplexMatrix rotation_x(double angle);
/// Control is the first (left) qubit.
ComplexMatrix cnot();
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);

/// Pure qubit direction on the Bloch sphere. theta is clamped to [0, pi] and
/// phi reduced modulo 2 pi; non-finite input is rejected.
class BlochAngles {
public:
    BlochAngles() = default;
    BlochAngles(double theta, double phi);
    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>
Ket bloch_to_ket(const BlochAngles& angles);
/// sin(theta/2)|0> - cos(theta/2) e^{i phi}|1>
Ket orthogonal_ket(const BlochAngles& angles);

enum class BellLabel { phi_plus, psi_plus, phi_minus, psi_minus };
inline constexpr BellLabel kBellLabels[] = {BellLabel::phi_plus, BellLabel::psi_plus,
                                            BellLabel::phi_minus, BellLabel::psi_minus};
BellLabel parse_bell_label(std::string_view label);
std::string_view to_string(BellLabel label);
Ket bell_state(BellLabel label);

/// Hermitian, unit-trace, positive semidefinite matrix on 2^n dimensions.
class DensityOperator {
public:
    /// Throws InputError when the invariants do not hold.
    explicit DensityOperator(ComplexMatrix m);
    static DensityOperator pure(std::span<const Complex> psi);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    int qubits() const noexcept;
    Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    ComplexMatrix m_;
};

/// Reason the invariants fail, or nullopt when m is a valid density matrix.
std::optional<std::string_view> density_violation(const ComplexMatrix& m);

/// Weights on the Bell basis. Validated: each in [0, 1], sum 1 within 1e-12.
struct BellDiagonal {
    double phi_plus = 1.0;
    double psi_plus = 0.0;
    double phi_minus = 0.0;
    double psi_minus = 0.0;

    static BellDiagonal make(double phi_plus, double psi_plus, double phi_minus,
                             double psi_minus);
    double weight(BellLabel label) const;
};

/// Werner parameter lambda in [0, 1].
class WernerParam {
public:
    WernerParam() = default;
    /// Throws DomainError outside [0, 1] or on non-finite input.
    explicit WernerParam(double lambda);
    double value() const noexcept { return lambda_; }

private:
    double lambda_ = 1.0;
};

/// Below this a Werner channel is worse than no channel at all.
inline constexpr double kLambdaCrit = 0.25;
/// Throws DomainError unless lambda >= 1/4.
void require_protocol_range(const WernerParam& lam, std::string_view who);

DensityOperator werner_density(const WernerParam& lam);
DensityOperator bell_diagonal_density(const BellDiagonal& bd);
/// Diagonal of a two-qubit state in the Bell basis.
BellDiagonal bell_weights(const DensityOperator& rho);
/// Local random rotations equalize the three non-phi+ weights; lambda is the phi+ weight.
WernerParam twirl_to_werner(const BellDiagonal& bd);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
/// Result keeps the listed qubits in ascending order.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
/// Lift an operator on `targets` (in the given order) to the full n-qubit space.
ComplexMatrix embed(const ComplexMatrix& u, std::span<const int> targets, int n_qubits);
DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u,
                              std::span<const int> targets);

struct MeasurementBranch {
    double probability = 0.0;
    std::optional<DensityOperator> state;  // absent when probability is zero
};
std::vector<MeasurementBranch> measure_projective(const DensityOperator& rho,
                                                  std::span<const ComplexMatrix> projectors);
/// Projector onto `qubit` being in computational state `bit`, on n qubits.
ComplexMatrix computational_projector(int n_qubits, int qubit, int bit);

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity_pure(std::span<const Complex> psi, const DensityOperator& rho);

}  // namespace qtransfer
