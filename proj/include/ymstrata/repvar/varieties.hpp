#pragma once

// Defining equations, constructive maps and group actions on the
// representation varieties.

#include "ymstrata/errors.hpp"
#include "ymstrata/repvar/matrix.hpp"
#include "ymstrata/repvar/point.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace ymstrata::repvar {

/// m(V) = [a_1, b_1] ... [a_l, b_l]; identity of size n for l = 0.
inline Matrix m_product(const std::vector<Matrix>& V, int n) {
    if (V.size() % 2 != 0) throw InvalidInput("handle tuple must have even length");
    Matrix out = identity(n);
    for (std::size_t j = 0; j < V.size(); j += 2) {
        if (V[j].rows() != n || V[j].cols() != n || V[j + 1].rows() != n || V[j + 1].cols() != n)
            throw InvalidInput("handle matrix dimension mismatch");
        out = out * commutator(V[j], V[j + 1]);
    }
    return out;
}

inline Matrix m_product(const std::vector<Matrix>& V) {
    if (V.empty()) throw InvalidInput("empty handle tuple needs an explicit dimension");
    return m_product(V, static_cast<int>(V.front().rows()));
}

/// r(V) = (b_l, a_l, ..., b_1, a_1).
inline std::vector<Matrix> r_reverse(const std::vector<Matrix>& V) {
    if (V.size() % 2 != 0) throw InvalidInput("handle tuple must have even length");
    return {V.rbegin(), V.rend()};
}

struct ResidualReport {
    std::vector<std::pair<std::string, double>> residuals;
    double max_residual = 0.0;
    double tol = 1e-9;
    bool pass = true;

    explicit ResidualReport(double tolerance = 1e-9) : tol(tolerance) {}

    void add(std::string label, double value) {
        max_residual = std::max(max_residual, value);
        pass = max_residual < tol;
        residuals.emplace_back(std::move(label), value);
    }

    void merge(const ResidualReport& other, const std::string& prefix = {}) {
        for (const auto& [label, value] : other.residuals) add(prefix + label, value);
    }

    nlohmann::json to_json() const {
        auto list = nlohmann::json::array();
        for (const auto& [label, value] : residuals) list.push_back({{"label", label}, {"residual", value}});
        return {{"max_residual", max_residual}, {"tol", tol}, {"pass", pass}, {"residuals", list}};
    }
};

namespace detail {

inline void require_shape(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput("point shape: " + what);
}

inline double group_residual(GroupTag g, const Matrix& m) {
    double r = unitarity_residual(m);
    if (g == GroupTag::SO3) {
        r = std::max(r, m.imag().norm());
        r = std::max(r, std::abs(m.determinant() - Complex(1.0, 0.0)));
    }
    return r;
}

inline double stabilizer_residual(const Matrix& g, const Matrix& x) { return distance(adjoint_action(g, x), x); }

inline std::string indexed(const std::string& name, std::size_t j) { return name + "[" + std::to_string(j) + "]"; }

inline void check_shape(const GroupTuplePoint& p) {
    const auto n = p.X.rows();
    require_shape(n >= 1 && p.X.cols() == n, "X must be a nonempty square matrix");
    require_shape(p.group == GroupTag::U || n == 3, "SO(3) points are 3x3");
    require_shape(p.V.size() % 2 == 0, "V must have even length");
    auto sq = [n](const Matrix& m) { return m.rows() == n && m.cols() == n; };
    for (const auto& m : p.V) require_shape(sq(m), "V entries must match X");
    const int i = p.kind == PointKind::Ext ? p.ext_cross : cross_of(p.kind);
    require_shape(i >= 0 && i <= 2, "crosscap index must be 0, 1 or 2");
    require_shape(p.c.has_value() == (i >= 1), "c present exactly when i >= 1");
    require_shape(p.d.has_value() == (i == 2), "d present exactly when i = 2");
    if (p.c) require_shape(sq(*p.c), "c must match X");
    if (p.d) require_shape(sq(*p.d), "d must match X");
    if (is_symmetric(p.kind)) {
        require_shape(p.Vbar.size() == p.V.size(), "Vbar must match V");
        for (const auto& m : p.Vbar) require_shape(sq(m), "Vbar entries must match X");
        require_shape(p.cbar.has_value(), "cbar required");
        require_shape(sq(*p.cbar), "cbar must match X");
        require_shape(p.dbar.has_value() == (i == 2), "dbar present exactly when i = 2");
        if (p.dbar) require_shape(sq(*p.dbar), "dbar must match X");
    } else {
        require_shape(p.Vbar.empty() && !p.cbar && !p.dbar, "barred data only on symmetric kinds");
    }
    if (p.kind == PointKind::Ext) {
        require_shape(!p.boundary_X.empty(), "extended points need X_1");
        require_shape(p.boundary_k.size() + 1 == p.boundary_X.size(), "need k_2..k_r for X_1..X_r");
        for (const auto& m : p.boundary_X) require_shape(sq(m), "boundary X_j must match X");
        for (const auto& m : p.boundary_k) require_shape(sq(m), "boundary k_j must match X");
    } else {
        require_shape(p.boundary_X.empty() && p.boundary_k.empty(), "boundary data only on EXT");
    }
}

/// The word W with m(V) = exp(X) W: I, c^2 or c d c^-1 d.
inline Matrix crosscap_word(const GroupTuplePoint& p, int i) {
    if (i == 1) return *p.c * *p.c;
    if (i == 2) return *p.c * *p.d * p.c->adjoint() * *p.d;
    return identity(p.dim());
}

} // namespace detail

/// Residuals of every defining equation of p's variety. Shape errors throw;
/// failing equations only show up in the report.
inline ResidualReport membership(const GroupTuplePoint& p, double tol = 1e-9) {
    detail::check_shape(p);
    const int n = p.dim();
    const Matrix& X = p.X;
    ResidualReport rep(tol);

    for (std::size_t j = 0; j < p.V.size(); ++j) rep.add(detail::indexed("group V", j), detail::group_residual(p.group, p.V[j]));
    for (std::size_t j = 0; j < p.Vbar.size(); ++j)
        rep.add(detail::indexed("group Vbar", j), detail::group_residual(p.group, p.Vbar[j]));
    if (p.c) rep.add("group c", detail::group_residual(p.group, *p.c));
    if (p.d) rep.add("group d", detail::group_residual(p.group, *p.d));
    if (p.cbar) rep.add("group cbar", detail::group_residual(p.group, *p.cbar));
    if (p.dbar) rep.add("group dbar", detail::group_residual(p.group, *p.dbar));
    rep.add("X skew-Hermitian", (X + X.adjoint()).norm());
    if (is_flat(p.kind)) rep.add("X = 0", X.norm());

    const Matrix mV = m_product(p.V, n);
    auto stabilizes = [&](const std::string& label, const Matrix& g) {
        rep.add("Ad(" + label + ")X = X", detail::stabilizer_residual(g, X));
    };
    auto stabilizes_V = [&](const std::string& name, const std::vector<Matrix>& V) {
        for (std::size_t j = 0; j < V.size(); ++j) stabilizes(detail::indexed(name, j), V[j]);
    };

    switch (p.kind) {
    case PointKind::Flat0:
    case PointKind::Flat1:
    case PointKind::Flat2:
    case PointKind::YM0:
    case PointKind::YM1:
    case PointKind::YM2: {
        const int i = cross_of(p.kind);
        if (p.kind == PointKind::YM0 || p.kind == PointKind::YM1 || p.kind == PointKind::YM2) {
            stabilizes_V("V", p.V);
            if (p.d) stabilizes("d", *p.d);
            if (p.c) rep.add("Ad(c)X = -X", distance(adjoint_action(*p.c, X), -X));
        }
        rep.add("m(V) = exp(X) W", distance(mV, expm_skew(X) * detail::crosscap_word(p, i)));
        break;
    }
    case PointKind::ZFlat1:
    case PointKind::ZYM1: {
        const Matrix& c = *p.c;
        const Matrix& cb = *p.cbar;
        const Matrix h = expm_skew(0.5 * X);
        stabilizes_V("V", p.V);
        for (std::size_t j = 0; j < p.Vbar.size(); ++j)
            stabilizes(detail::indexed("c Vbar c^-1 ", j), c * p.Vbar[j] * c.adjoint());
        stabilizes("c cbar", c * cb);
        rep.add("m(V) = exp(X/2) c cbar", distance(mV, h * c * cb));
        rep.add("m(Vbar) = cbar exp(-X/2) c", distance(m_product(p.Vbar, n), cb * h.adjoint() * c));
        break;
    }
    case PointKind::ZFlat2:
    case PointKind::ZYM2: {
        const Matrix& c = *p.c;
        const Matrix& d = *p.d;
        const Matrix& cb = *p.cbar;
        const Matrix& db = *p.dbar;
        const Matrix h = expm_skew(0.5 * X);
        stabilizes_V("V", p.V);
        for (std::size_t j = 0; j < p.Vbar.size(); ++j)
            stabilizes(detail::indexed("d^-1 c Vbar c^-1 d ", j), d.adjoint() * c * p.Vbar[j] * c.adjoint() * d);
        stabilizes("d", d);
        stabilizes("c cbar", c * cb);
        rep.add("m(V) = exp(X/2) c dbar c^-1 d", distance(mV, h * c * db * c.adjoint() * d));
        rep.add("m(Vbar) = cbar d exp(-X/2) cbar^-1 dbar",
                distance(m_product(p.Vbar, n), cb * d * h.adjoint() * cb.adjoint() * db));
        break;
    }
    case PointKind::Ext: {
        for (std::size_t j = 0; j < p.boundary_X.size(); ++j) {
            const Matrix& xj = p.boundary_X[j];
            rep.add(detail::indexed("X_j skew-Hermitian ", j + 1), (xj + xj.adjoint()).norm());
        }
        for (std::size_t j = 0; j < p.boundary_k.size(); ++j)
            rep.add(detail::indexed("group k", j + 2), detail::group_residual(p.group, p.boundary_k[j]));
        Matrix rhs = expm_skew(p.boundary_X[0]);
        for (std::size_t j = 0; j < p.boundary_k.size(); ++j)
            rhs = rhs * expm_skew(adjoint_action(p.boundary_k[j], p.boundary_X[j + 1]));
        rep.add("m(V) = exp(X_1) prod exp(Ad(k_j)X_j) W", distance(mV, rhs * detail::crosscap_word(p, p.ext_cross)));
        break;
    }
    }
    return rep;
}

/// Phi: a symmetric point to an orientable point over the double cover.
inline GroupTuplePoint phi(const GroupTuplePoint& p) {
    detail::check_shape(p);
    if (!is_symmetric(p.kind)) throw InvalidInput("phi needs a symmetric point");
    const Matrix& c = *p.c;
    GroupTuplePoint q;
    q.group = p.group;
    q.kind = is_flat(p.kind) ? PointKind::Flat0 : PointKind::YM0;
    q.X = p.X;
    q.V = p.V;
    const auto rbar = r_reverse(p.Vbar);
    if (cross_of(p.kind) == 1) {
        for (const auto& m : rbar) q.V.push_back(c * m * c.adjoint());
    } else {
        const Matrix& d = *p.d;
        const Matrix w = d.adjoint() * c;
        for (const auto& m : rbar) q.V.push_back(w * m * w.adjoint());
        q.V.push_back(d.adjoint());
        q.V.push_back(c * *p.cbar);
    }
    return q;
}

/// A section of phi: q = (V_1, V_2, X) for i = 1, (V_1, V_2, a, b, X) for
/// i = 2, with V_1 and V_2 of equal length.
inline GroupTuplePoint phi_section(const GroupTuplePoint& q, int i) {
    detail::check_shape(q);
    if (q.kind != PointKind::YM0 && q.kind != PointKind::Flat0) throw InvalidInput("phi_section needs an orientable point");
    if (i != 1 && i != 2) throw InvalidInput("phi_section needs i in {1,2}");
    const std::size_t total = q.V.size() - (i == 2 ? 2 : 0);
    if (q.V.size() < static_cast<std::size_t>(2 * (i - 1)) || total % 4 != 0)
        throw InvalidInput("phi_section needs genus 2l + i - 1");
    const std::size_t half = total / 2;
    const int n = q.dim();
    const std::vector<Matrix> V1(q.V.begin(), q.V.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<Matrix> V2(q.V.begin() + static_cast<std::ptrdiff_t>(half),
                                 q.V.begin() + static_cast<std::ptrdiff_t>(total));
    const Matrix h = expm_skew(-0.5 * q.X) * m_product(V1, n);

    GroupTuplePoint p;
    p.group = q.group;
    p.X = q.X;
    p.V = V1;
    p.Vbar = r_reverse(V2);
    const bool flat = q.kind == PointKind::Flat0;
    if (i == 1) {
        p.kind = flat ? PointKind::ZFlat1 : PointKind::ZYM1;
        p.c = identity(n);
        p.cbar = h;
    } else {
        p.kind = flat ? PointKind::ZFlat2 : PointKind::ZYM2;
        const Matrix& a = q.V[total];
        const Matrix& b = q.V[total + 1];
        p.d = a.adjoint();
        p.dbar = a * h;
        p.c = a.adjoint();
        p.cbar = a * b;
    }
    return p;
}

/// The involution exchanging the two halves: X goes to -Ad(cbar)X.
inline GroupTuplePoint tau_involution(const GroupTuplePoint& p) {
    detail::check_shape(p);
    if (!is_symmetric(p.kind)) throw InvalidInput("tau needs a symmetric point");
    GroupTuplePoint t = p;
    std::swap(t.V, t.Vbar);
    std::swap(t.c, t.cbar);
    std::swap(t.d, t.dbar);
    t.X = -adjoint_action(*p.cbar, p.X);
    return t;
}

/// The fixed-locus embedding (V, c[, d], X) -> (V, c[, d], V, c[, d], 2X).
inline GroupTuplePoint embed_fixed(const GroupTuplePoint& x) {
    detail::check_shape(x);
    GroupTuplePoint p = x;
    switch (x.kind) {
    case PointKind::Flat1: p.kind = PointKind::ZFlat1; break;
    case PointKind::Flat2: p.kind = PointKind::ZFlat2; break;
    case PointKind::YM1: p.kind = PointKind::ZYM1; break;
    case PointKind::YM2: p.kind = PointKind::ZYM2; break;
    default: throw InvalidInput("embed_fixed needs a nonorientable point");
    }
    p.Vbar = x.V;
    p.cbar = x.c;
    p.dbar = x.d;
    p.X = 2.0 * x.X;
    return p;
}

/// Largest entrywise-Frobenius distance between two points of equal shape.
inline double point_distance(const GroupTuplePoint& a, const GroupTuplePoint& b) {
    if (a.kind != b.kind || a.V.size() != b.V.size() || a.Vbar.size() != b.Vbar.size() ||
        a.boundary_k.size() != b.boundary_k.size() || a.boundary_X.size() != b.boundary_X.size() ||
        a.c.has_value() != b.c.has_value() || a.d.has_value() != b.d.has_value() ||
        a.cbar.has_value() != b.cbar.has_value() || a.dbar.has_value() != b.dbar.has_value() || a.dim() != b.dim())
        throw InvalidInput("points have different shapes");
    double r = distance(a.X, b.X);
    auto lists = [&r](const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
        for (std::size_t j = 0; j < u.size(); ++j) r = std::max(r, distance(u[j], v[j]));
    };
    auto opt = [&r](const std::optional<Matrix>& u, const std::optional<Matrix>& v) {
        if (u) r = std::max(r, distance(*u, *v));
    };
    lists(a.V, b.V);
    lists(a.Vbar, b.Vbar);
    lists(a.boundary_k, b.boundary_k);
    lists(a.boundary_X, b.boundary_X);
    opt(a.c, b.c);
    opt(a.d, b.d);
    opt(a.cbar, b.cbar);
    opt(a.dbar, b.dbar);
    return r;
}

enum class OrbitMode { Full, Diagonal };

inline Matrix random_group_element(GroupTag g, int n, Rng& rng) {
    return g == GroupTag::SO3 ? haar_so3(rng) : haar_unitary(n, rng);
}

/// Act by g1 on orientable and extended points; by (g1, g2) on symmetric
/// points, with g2 = g1 in diagonal mode.
inline GroupTuplePoint act(const GroupTuplePoint& p, const Matrix& g1, const Matrix& g2) {
    detail::check_shape(p);
    GroupTuplePoint out = p;
    auto conj = [](const Matrix& g, const Matrix& m) { return Matrix(g * m * g.adjoint()); };
    for (auto& m : out.V) m = conj(g1, m);
    out.X = conj(g1, p.X);
    if (p.d) out.d = conj(g1, *p.d);
    if (is_symmetric(p.kind)) {
        out.c = g1 * *p.c * g2.adjoint();
        for (auto& m : out.Vbar) m = conj(g2, m);
        if (p.dbar) out.dbar = conj(g2, *p.dbar);
        out.cbar = g2 * *p.cbar * g1.adjoint();
    } else if (p.c) {
        out.c = conj(g1, *p.c);
    }
    for (auto& m : out.boundary_k) m = conj(g1, m);
    for (auto& m : out.boundary_X) m = conj(g1, m);
    return out;
}

/// A Haar-random point of the orbit of p; deterministic in the seed.
inline GroupTuplePoint sample_orbit(const GroupTuplePoint& p, std::uint64_t seed, OrbitMode mode = OrbitMode::Full) {
    Rng rng(seed);
    const Matrix g1 = random_group_element(p.group, p.dim(), rng);
    const Matrix g2 = mode == OrbitMode::Full ? random_group_element(p.group, p.dim(), rng) : g1;
    return act(p, g1, g2);
}

} // namespace ymstrata::repvar
