#pragma once

// Explicit points on the Yang-Mills strata, built from clock and shift
// matrices block by block.

#include "ymstrata/errors.hpp"
#include "ymstrata/hn_types.hpp"
#include "ymstrata/repvar/matrix.hpp"
#include "ymstrata/repvar/point.hpp"
#include "ymstrata/repvar/varieties.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace ymstrata::repvar {

inline Matrix x_mu_matrix(const HNType& mu) { return diagonal(x_mu(mu)); }

namespace detail {

inline std::vector<int> block_offsets(const HNType& mu) {
    std::vector<int> out;
    int at = 0;
    for (const auto& b : mu.blocks()) {
        out.push_back(at);
        at += b.size;
    }
    return out;
}

inline void set_block(Matrix& m, int offset, const Matrix& block) {
    m.block(offset, offset, block.rows(), block.cols()) = block;
}

inline Complex half_phase(const Block& b) {
    return std::polar(1.0, -std::numbers::pi * static_cast<double>(b.degree) / b.size);
}

inline bool all_integral(const HNType& mu) {
    for (const auto& b : mu.blocks())
        if (b.degree % b.size != 0) return false;
    return true;
}

/// One handle whose commutator is e^{-2 pi i k_j / n_j} on the blocks in
/// `use` and the identity elsewhere.
inline std::pair<Matrix, Matrix> central_handle(const HNType& mu, const std::vector<bool>& use) {
    const int n = mu.rank();
    Matrix a = identity(n), b = identity(n);
    const auto offs = block_offsets(mu);
    for (std::size_t j = 0; j < mu.blocks().size(); ++j) {
        if (!use[j]) continue;
        const auto& blk = mu.blocks()[j];
        const auto [cj, sj] = central_pair(blk.size, blk.degree);
        set_block(a, offs[j], cj);
        set_block(b, offs[j], sj);
    }
    return {a, b};
}

inline std::vector<Matrix> handles_with_first(const std::pair<Matrix, Matrix>& first, int ell, int n) {
    std::vector<Matrix> V{first.first, first.second};
    for (int h = 1; h < ell; ++h) {
        V.push_back(identity(n));
        V.push_back(identity(n));
    }
    return V;
}

} // namespace detail

/// The anti-diagonal involution exchanging each block of nu with its mirror
/// block and fixing the zero block; Ad(e_mu) X_mu = -X_mu.
inline Matrix e_mu(const SymmetricTypeClass& cls) {
    const auto& blocks = cls.mu.blocks();
    const int n = cls.mu.rank();
    const auto offs = detail::block_offsets(cls.mu);
    Matrix e = Matrix::Zero(n, n);
    const std::size_t r = blocks.size();
    for (std::size_t j = 0; j < r; ++j) {
        const std::size_t m = r - 1 - j;
        e.block(offs[m], offs[j], blocks[j].size, blocks[j].size) = identity(blocks[j].size);
    }
    return e;
}

/// A point of YM_0 over a closed orientable surface of the given genus with
/// X = X_mu: the first handle carries the central pairs, the rest are trivial.
inline GroupTuplePoint witness_point(const HNType& mu, int genus) {
    if (genus < 0) throw InvalidInput("genus must be nonnegative");
    if (genus == 0 && !detail::all_integral(mu))
        throw Unsupported("genus 0 carries only types with integral slopes");
    const int n = mu.rank();
    GroupTuplePoint p;
    p.kind = PointKind::YM0;
    p.X = x_mu_matrix(mu);
    if (genus >= 1) {
        const std::vector<bool> all(mu.blocks().size(), true);
        p.V = detail::handles_with_first(detail::central_handle(mu, all), genus, n);
    }
    return p;
}

/// A point of YM_i over the nonorientable surface with l handles and
/// i = cls.cross crosscaps, with X = X_mu / 2 and bundle sign `sign`
/// (det c for i = 1, det d for i = 2).
inline GroupTuplePoint witness_point(const SymmetricTypeClass& cls, int ell, int sign) {
    const int i = cls.cross;
    if (i != 1 && i != 2) throw InvalidInput("nonorientable witness needs i in {1,2}");
    if (sign != 1 && sign != -1) throw InvalidInput("bundle sign must be +1 or -1");
    if (ell < 0) throw InvalidInput("l must be nonnegative");
    if (cls.classification != SymmetricClass::ZeroBlock && sign != cls.parity_sign())
        throw EmptyStratumError("type " + cls.mu.str() + " carries no stratum on bundle sign " + std::to_string(sign));
    if (ell == 0 && i == 1) throw Unsupported("no witness construction for l = 0, i = 1");
    if (ell == 0 && !detail::all_integral(cls.mu))
        throw Unsupported("l = 0 witnesses need integral slopes");

    const auto& blocks = cls.mu.blocks();
    const std::size_t r = blocks.size();
    const std::size_t s = cls.positive_blocks.size();
    const int n = cls.mu.rank();
    const auto offs = detail::block_offsets(cls.mu);
    const Matrix e = e_mu(cls);

    GroupTuplePoint p;
    p.kind = i == 1 ? PointKind::YM1 : PointKind::YM2;
    p.X = 0.5 * x_mu_matrix(cls.mu);
    if (ell >= 1) {
        std::vector<bool> use(r, false);
        for (std::size_t j = 0; j < s; ++j) use[j] = true;
        p.V = detail::handles_with_first(detail::central_handle(cls.mu, use), ell, n);
    }

    // block j: I, mirror of j: e^{-pi i k_j / n_j} I, zero block: diag(delta, 1, ...)
    const int parity = ((cls.nu_degree + (i == 1 ? cls.n_prime : 0)) % 2 == 0) ? 1 : -1;
    const int delta = sign * parity;
    Matrix t = identity(n);
    for (std::size_t j = 0; j < s; ++j) {
        const std::size_t m = r - 1 - j;
        detail::set_block(t, offs[m], detail::half_phase(blocks[j]) * identity(blocks[m].size));
    }
    if (cls.n0 > 0) t(cls.n_prime, cls.n_prime) = static_cast<double>(delta);

    if (i == 1) {
        p.c = e * t;
    } else {
        p.c = e;
        p.d = t;
    }
    return p;
}

/// det c (i = 1) or det d (i = 2), rounded to the nearest sign.
inline int bundle_sign(const GroupTuplePoint& p) {
    const int i = cross_of(p.kind);
    if (i == 0) throw InvalidInput("bundle sign needs a nonorientable point");
    const Complex det = (i == 1 ? *p.c : *p.d).determinant();
    return det.real() >= 0 ? 1 : -1;
}

/// The determinant relations between c (or d) and its zero-block part:
/// det c = (-1)^{n'+k} det C with C the zero block of e_mu c, or
/// det d = (-1)^k det D with D the zero block of d; det C, det D = +-1.
inline ResidualReport det_reduction_check(const GroupTuplePoint& p, const SymmetricTypeClass& cls, double tol = 1e-9) {
    detail::check_shape(p);
    const int i = cross_of(p.kind);
    if (i == 0 || is_symmetric(p.kind)) throw InvalidInput("det reduction needs a point of X_YM or X_fl with i in {1,2}");
    if (p.group != GroupTag::U || p.dim() != cls.mu.rank()) throw InvalidInput("point does not match the type");
    ResidualReport rep(tol);
    const int lo = cls.n_prime;
    const int n0 = cls.n0;
    const Matrix full = i == 1 ? Matrix(e_mu(cls) * *p.c) : *p.d;
    const Complex det_mid = n0 > 0 ? Complex(full.block(lo, lo, n0, n0).determinant()) : Complex(1.0, 0.0);
    const Complex det_full = (i == 1 ? *p.c : *p.d).determinant();
    const std::int64_t e = cls.nu_degree + (i == 1 ? cls.n_prime : 0);
    const double parity = e % 2 == 0 ? 1.0 : -1.0;
    const std::string name = i == 1 ? "c" : "d";
    const std::string mid = i == 1 ? "C" : "D";
    rep.add("det " + name + " = " + (i == 1 ? "(-1)^{n'+k}" : "(-1)^k") + " det " + mid,
            std::abs(det_full - parity * det_mid));
    rep.add("det " + mid + " = +-1", std::min(std::abs(det_mid - 1.0), std::abs(det_mid + 1.0)));
    return rep;
}

} // namespace ymstrata::repvar
