#pragma once

// Dense complex matrices and the random and structured unitaries the
// representation-variety models are built from.

#include "ymstrata/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace ymstrata::repvar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

inline Matrix inverse_unitary(const Matrix& u) { return u.adjoint(); }

/// Group commutator a b a^{-1} b^{-1}; inverses taken as adjoints.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b * a.adjoint() * b.adjoint(); }

/// diag(1, w, ..., w^{n-1}), w = e^{2 pi i / n}.
inline Matrix clock(int n) {
    Matrix c = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) c(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    return c;
}

/// Cyclic shift e_j -> e_{j+1 mod n}; clock * shift * clock^{-1} = w * shift.
inline Matrix shift(int n) {
    Matrix s = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) s((j + 1) % n, j) = 1.0;
    return s;
}

inline Matrix matrix_power(const Matrix& m, int p) {
    Matrix out = identity(static_cast<int>(m.rows()));
    Matrix base = p >= 0 ? m : Matrix(m.adjoint());
    for (int e = p >= 0 ? p : -p; e > 0; e >>= 1) {
        if (e & 1) out = out * base;
        base = base * base;
    }
    return out;
}

/// A pair (a, b) in U(n) with [a, b] = e^{-2 pi i k / n} I.
inline std::pair<Matrix, Matrix> central_pair(int n, long long k) {
    const long long p = ((-k) % n + n) % n;
    return {clock(n), matrix_power(shift(n), static_cast<int>(p))};
}

/// exp of a skew-Hermitian matrix through the spectral decomposition of iX.
inline Matrix expm_skew(const Matrix& x) {
    const Matrix h = Complex(0.0, 1.0) * x;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    const auto& ev = es.eigenvalues();
    Matrix d = Matrix::Zero(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < ev.size(); ++j) d(j, j) = std::polar(1.0, -ev(j));
    return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

/// Ad(g) X = g X g^{-1}.
inline Matrix adjoint_action(const Matrix& g, const Matrix& x) { return g * x * g.adjoint(); }

inline Matrix diagonal(const std::vector<Complex>& entries) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(entries.size()));
    for (std::size_t j = 0; j < entries.size(); ++j) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = entries[j];
    return m;
}

/// Frobenius norm of m^* m - I.
inline double unitarity_residual(const Matrix& m) {
    return (m.adjoint() * m - identity(static_cast<int>(m.rows()))).norm();
}

inline double distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

/// Haar-distributed U(n): QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
inline Matrix haar_unitary(int n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) z(r, c) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0) q.col(j) *= d / a;
    }
    return q;
}

/// Rotation matrix of a unit quaternion (w, x, y, z), as a complex matrix.
inline Matrix rotation_from_quaternion(double w, double x, double y, double z) {
    Eigen::Quaterniond q(w, x, y, z);
    q.normalize();
    return q.toRotationMatrix().cast<Complex>();
}

/// Haar-distributed SO(3), from a uniform unit quaternion.
inline Matrix haar_so3(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double w = 0, x = 0, y = 0, z = 0, s = 0;
    do {
        w = normal(rng);
        x = normal(rng);
        y = normal(rng);
        z = normal(rng);
        s = w * w + x * x + y * y + z * z;
    } while (s < 1e-12);
    return rotation_from_quaternion(w, x, y, z);
}

/// Rotation by angle theta about the unit axis (x, y, z).
inline Matrix so3_rotation(double x, double y, double z, double theta) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    const double s = std::sin(theta / 2) / norm;
    return rotation_from_quaternion(std::cos(theta / 2), x * s, y * s, z * s);
}

/// A Haar-random element of the stabilizer G_X = {g in U(n) : Ad(g) X = X}
/// of a skew-Hermitian X: random unitaries on the eigenspaces of iX.
inline Matrix random_stabilizer(const Matrix& x, Rng& rng, double cluster_tol = 1e-8) {
    const int n = static_cast<int>(x.rows());
    const Matrix h = Complex(0.0, 1.0) * x;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    const auto& ev = es.eigenvalues();
    Matrix block = Matrix::Zero(n, n);
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(ev(end) - ev(start)) < cluster_tol) ++end;
        block.block(start, start, end - start, end - start) = haar_unitary(end - start, rng);
        start = end;
    }
    return es.eigenvectors() * block * es.eigenvectors().adjoint();
}

/// A random element of G_X commuting with the given element of G_X:
/// both are diagonal in a common basis.
inline Matrix random_torus_partner(const Matrix& g, Rng& rng) {
    Eigen::ComplexEigenSolver<Matrix> es(g);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const int n = static_cast<int>(g.rows());
    // eigenvectors of a unitary with distinct eigenvalues are orthogonal;
    // orthonormalize to absorb rounding and degenerate clusters
    Eigen::HouseholderQR<Matrix> qr(es.eigenvectors());
    Matrix q = qr.householderQ();
    std::vector<Complex> phases(static_cast<std::size_t>(n));
    for (auto& p : phases) p = std::polar(1.0, angle(rng));
    return q * diagonal(phases) * q.adjoint();
}

} // namespace ymstrata::repvar
