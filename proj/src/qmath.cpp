#include "qtransfer/qmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "qtransfer/errors.hpp"

namespace qtransfer {

namespace {

using std::numbers::pi;

bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }

int log2_dim(std::size_t d) { return std::countr_zero(d); }

// Bit of `index` holding qubit q in an n-qubit register (qubit 0 is most significant).
int qubit_bit(std::size_t index, int q, int n) {
    return static_cast<int>((index >> (n - 1 - q)) & 1U);
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    const auto d = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd e(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) e(r, c) = m(r, c);
    return e;
}

void validate_qubit_list(std::span<const int> qs, int n, std::string_view who) {
    if (qs.empty()) throw InputError(std::string(who) + ": empty qubit list");
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int q : qs) {
        if (q < 0 || q >= n)
            throw InputError(std::string(who) + ": qubit index " + std::to_string(q) +
                             " out of range for " + std::to_string(n) + " qubits");
        if (seen[static_cast<std::size_t>(q)]++)
            throw InputError(std::string(who) + ": repeated qubit index " + std::to_string(q));
    }
}

// Hermitian part rescaled to unit trace; absorbs rounding left over after division
// by a small branch probability.
ComplexMatrix renormalized(const ComplexMatrix& m) {
    ComplexMatrix h = (m + m.adjoint()) * Complex(0.5);
    const double tr = h.trace().real();
    return h * Complex(1.0 / tr);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim_ * dim_)
        throw InputError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                         " entries, got " + std::to_string(a_.size()));
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw InputError("outer: vector sizes differ");
    ComplexMatrix m(a.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < b.size(); ++c) m(r, c) = a[r] * std::conj(b[c]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Ket ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw InputError("apply: dimension mismatch");
    Ket out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex s = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw InputError("matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw InputError("matrix difference: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw InputError("matrix product: dimension mismatch");
    const std::size_t d = a.dim();
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex(0.0)) continue;
            for (std::size_t c = 0; c < d; ++c) m(r, c) += ark * b(k, c);
        }
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw InputError("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix m(da * db);
    for (std::size_t r1 = 0; r1 < da; ++r1)
        for (std::size_t c1 = 0; c1 < da; ++c1) {
            const Complex x = a(r1, c1);
            if (x == Complex(0.0)) continue;
            for (std::size_t r2 = 0; r2 < db; ++r2)
                for (std::size_t c2 = 0; c2 < db; ++c2)
                    m(r1 * db + r2, c1 * db + c2) = x * b(r2, c2);
        }
    return m;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw InputError("inner: dimension mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Ket kron(std::span<const Complex> a, std::span<const Complex> b) {
    Ket out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    HermitianEigensystem out;
    const auto& ev = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    out.values.assign(ev.data(), ev.data() + ev.size());
    out.vectors.reserve(m.dim());
    for (Eigen::Index k = 0; k < vecs.cols(); ++k)
        out.vectors.emplace_back(vecs.col(k).data(), vecs.col(k).data() + vecs.rows());
    return out;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() {
    return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
}
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix rotation_x(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return ComplexMatrix(2, {c, Complex(0.0, -s), Complex(0.0, -s), c});
}

ComplexMatrix cnot() {
    ComplexMatrix m(4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.dim())) <= tol;
}

BlochAngles::BlochAngles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw InputError("BlochAngles: non-finite angle");
    theta_ = std::clamp(theta, 0.0, pi);
    phi_ = std::fmod(phi, 2 * pi);
    if (phi_ < 0) phi_ += 2 * pi;
    if (phi_ >= 2 * pi) phi_ = 0.0;
}

Ket bloch_to_ket(const BlochAngles& a) {
    return {std::cos(a.theta() / 2), std::sin(a.theta() / 2) * std::polar(1.0, a.phi())};
}

Ket orthogonal_ket(const BlochAngles& a) {
    return {std::sin(a.theta() / 2), -std::cos(a.theta() / 2) * std::polar(1.0, a.phi())};
}

BellLabel parse_bell_label(std::string_view label) {
    for (BellLabel l : kBellLabels)
        if (label == to_string(l)) return l;
    throw InputError("unknown Bell label '" + std::string(label) + "'");
}

std::string_view to_string(BellLabel label) {
    switch (label) {
        case BellLabel::phi_plus: return "phi+";
        case BellLabel::psi_plus: return "psi+";
        case BellLabel::phi_minus: return "phi-";
        case BellLabel::psi_minus: return "psi-";
    }
    return "?";
}

Ket bell_state(BellLabel label) {
    const double h = std::numbers::sqrt2 / 2;
    switch (label) {
        case BellLabel::phi_plus: return {h, 0.0, 0.0, h};
        case BellLabel::phi_minus: return {h, 0.0, 0.0, -h};
        case BellLabel::psi_plus: return {0.0, h, h, 0.0};
        case BellLabel::psi_minus: return {0.0, h, -h, 0.0};
    }
    throw InputError("bell_state: invalid label");
}

std::optional<std::string_view> density_violation(const ComplexMatrix& m) {
    if (!is_power_of_two(m.dim()) || m.dim() > kMaxDim) return "dimension is not 2^n <= 256";
    for (Complex x : m.entries())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return "non-finite entry";
    if (max_abs_diff(m, m.adjoint()) > kHermitianTol) return "not Hermitian";
    if (std::abs(m.trace() - Complex(1.0)) > kTraceTol) return "trace differs from 1";
    const auto ev = hermitian_eigenvalues(m);
    if (!ev.empty() && ev.front() < kPsdFloor) return "negative eigenvalue";
    return std::nullopt;
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
    if (auto why = density_violation(m_))
        throw InputError("DensityOperator: " + std::string(*why));
}

DensityOperator DensityOperator::pure(std::span<const Complex> psi) {
    return DensityOperator(ComplexMatrix::outer(psi, psi));
}

int DensityOperator::qubits() const noexcept { return log2_dim(m_.dim()); }

BellDiagonal BellDiagonal::make(double phi_plus, double psi_plus, double phi_minus,
                                double psi_minus) {
    const double w[] = {phi_plus, psi_plus, phi_minus, psi_minus};
    double sum = 0.0;
    for (double x : w) {
        if (!std::isfinite(x) || x < -1e-12 || x > 1.0 + 1e-12)
            throw InputError("BellDiagonal: weight outside [0, 1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InputError("BellDiagonal: weights do not sum to 1");
    auto clip = [](double x) { return std::clamp(x, 0.0, 1.0); };
    return {clip(phi_plus), clip(psi_plus), clip(phi_minus), clip(psi_minus)};
}

double BellDiagonal::weight(BellLabel label) const {
    switch (label) {
        case BellLabel::phi_plus: return phi_plus;
        case BellLabel::psi_plus: return psi_plus;
        case BellLabel::phi_minus: return phi_minus;
        case BellLabel::psi_minus: return psi_minus;
    }
    return 0.0;
}

WernerParam::WernerParam(double lambda) : lambda_(lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda > 1.0)
        throw DomainError("Werner parameter " + std::to_string(lambda) + " outside [0, 1]");
}

void require_protocol_range(const WernerParam& lam, std::string_view who) {
    if (lam.value() < kLambdaCrit)
        throw DomainError(std::string(who) + ": lambda " + std::to_string(lam.value()) +
                          " below 1/4, channel is worse than useless");
}

DensityOperator bell_diagonal_density(const BellDiagonal& bd) {
    ComplexMatrix m(4);
    for (BellLabel l : kBellLabels) {
        const Ket b = bell_state(l);
        m += ComplexMatrix::outer(b, b) * Complex(bd.weight(l));
    }
    return DensityOperator(std::move(m));
}

DensityOperator werner_density(const WernerParam& lam) {
    const double l = lam.value();
    const double rest = (1.0 - l) / 3.0;
    return bell_diagonal_density({l, rest, rest, rest});
}

BellDiagonal bell_weights(const DensityOperator& rho) {
    if (rho.dim() != 4) throw InputError("bell_weights: expected a two-qubit state");
    double w[4];
    for (int k = 0; k < 4; ++k) {
        const Ket b = bell_state(kBellLabels[k]);
        w[k] = inner(b, rho.matrix().apply(b)).real();
    }
    return BellDiagonal::make(w[0], w[1], w[2], w[3]);
}

WernerParam twirl_to_werner(const BellDiagonal& bd) { return WernerParam(bd.phi_plus); }

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() * b.dim() > kMaxDim)
        throw ResourceError("tensor: product dimension " + std::to_string(a.dim() * b.dim()) +
                            " exceeds 256");
    return DensityOperator(kron(a.matrix(), b.matrix()));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
    const int n = rho.qubits();
    validate_qubit_list(keep, n, "partial_trace");
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

    const int nk = static_cast<int>(kept.size());
    const int nt = static_cast<int>(traced.size());
    auto compose = [&](std::size_t ki, std::size_t ti) {
        std::size_t full = 0;
        for (int a = 0; a < nk; ++a)
            if ((ki >> (nk - 1 - a)) & 1U) full |= std::size_t{1} << (n - 1 - kept[a]);
        for (int a = 0; a < nt; ++a)
            if ((ti >> (nt - 1 - a)) & 1U) full |= std::size_t{1} << (n - 1 - traced[a]);
        return full;
    };

    const std::size_t dk = std::size_t{1} << nk, dt = std::size_t{1} << nt;
    ComplexMatrix out(dk);
    for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c) {
            Complex s = 0.0;
            for (std::size_t t = 0; t < dt; ++t) s += rho(compose(r, t), compose(c, t));
            out(r, c) = s;
        }
    return DensityOperator(std::move(out));
}

ComplexMatrix embed(const ComplexMatrix& u, std::span<const int> targets, int n_qubits) {
    validate_qubit_list(targets, n_qubits, "embed");
    const int nt = static_cast<int>(targets.size());
    if (u.dim() != (std::size_t{1} << nt))
        throw InputError("embed: operator dimension does not match target count");
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::size_t target_mask = 0;
    for (int q : targets) target_mask |= std::size_t{1} << (n_qubits - 1 - q);
    auto sub = [&](std::size_t full) {
        std::size_t s = 0;
        for (int q : targets) s = (s << 1) | static_cast<std::size_t>(qubit_bit(full, q, n_qubits));
        return s;
    };
    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if ((r & ~target_mask) == (c & ~target_mask)) out(r, c) = u(sub(r), sub(c));
    return out;
}

DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u,
                              std::span<const int> targets) {
    if (!is_unitary(u)) throw InputError("apply_unitary: operator is not unitary");
    const ComplexMatrix full = embed(u, targets, rho.qubits());
    return DensityOperator(full * rho.matrix() * full.adjoint());
}

ComplexMatrix computational_projector(int n_qubits, int qubit, int bit) {
    if (qubit < 0 || qubit >= n_qubits || (bit != 0 && bit != 1))
        throw InputError("computational_projector: bad qubit or bit");
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix p(dim);
    for (std::size_t i = 0; i < dim; ++i)
        if (qubit_bit(i, qubit, n_qubits) == bit) p(i, i) = 1.0;
    return p;
}

std::vector<MeasurementBranch> measure_projective(const DensityOperator& rho,
                                                  std::span<const ComplexMatrix> projectors) {
    if (projectors.empty()) throw InputError("measure_projective: no projectors");
    ComplexMatrix sum(rho.dim());
    for (const auto& p : projectors) {
        if (p.dim() != rho.dim()) throw InputError("measure_projective: dimension mismatch");
        if (max_abs_diff(p, p.adjoint()) > kHermitianTol || max_abs_diff(p * p, p) > 1e-12)
            throw InputError("measure_projective: operator is not an orthogonal projector");
        sum += p;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(rho.dim())) > 1e-12)
        throw InputError("measure_projective: projectors do not sum to identity");

    std::vector<MeasurementBranch> out;
    out.reserve(projectors.size());
    for (const auto& p : projectors) {
        MeasurementBranch br;
        const ComplexMatrix post = p * rho.matrix() * p;
        br.probability = std::max(0.0, post.trace().real());
        if (br.probability > 1e-14) br.state.emplace(renormalized(post));
        out.push_back(std::move(br));
    }
    return out;
}

double fidelity_pure(std::span<const Complex> psi, const DensityOperator& rho) {
    if (psi.size() != rho.dim()) throw InputError("fidelity_pure: dimension mismatch");
    if (std::abs(inner(psi, psi).real() - 1.0) > 1e-12)
        throw InputError("fidelity_pure: state is not normalized");
    const double f = inner(psi, rho.matrix().apply(psi)).real();
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace qtransfer
