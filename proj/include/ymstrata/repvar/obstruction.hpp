#pragma once

// The obstruction class of flat SO(3) points, computed through unit
// quaternion lifts to the double cover SU(2).

#include "ymstrata/errors.hpp"
#include "ymstrata/repvar/point.hpp"
#include "ymstrata/repvar/varieties.hpp"

#include <Eigen/Geometry>

#include <string>
#include <vector>

namespace ymstrata::repvar {

inline constexpr double kLiftTolerance = 1e-6;

/// Either unit quaternion over a rotation matrix.
inline Eigen::Quaterniond lift_so3(const Matrix& m) {
    if (m.rows() != 3 || m.cols() != 3) throw InvalidInput("SO(3) lift needs a 3x3 matrix");
    const double r = detail::group_residual(GroupTag::SO3, m);
    if (r > kLiftTolerance) throw InvalidInput("matrix is not in SO(3): residual " + std::to_string(r));
    const Eigen::Matrix3d real = m.real();
    Eigen::Quaterniond q(real);
    q.normalize();
    return q;
}

namespace detail {

inline Eigen::Quaterniond lifted_m_product(const std::vector<Matrix>& V) {
    Eigen::Quaterniond out = Eigen::Quaterniond::Identity();
    for (std::size_t j = 0; j < V.size(); j += 2) {
        const auto a = lift_so3(V[j]);
        const auto b = lift_so3(V[j + 1]);
        out = out * a * b * a.conjugate() * b.conjugate();
    }
    return out;
}

} // namespace detail

/// o(V) = m(lift V) in {+1, -1} for a FLAT_0 point; o' = o . phi for a
/// ZFLAT point.
inline int obstruction_so3(const GroupTuplePoint& p) {
    if (p.group != GroupTag::SO3) throw InvalidInput("obstruction_so3 needs an SO(3) point");
    if (p.kind != PointKind::Flat0) {
        if (p.kind == PointKind::ZFlat1 || p.kind == PointKind::ZFlat2) return obstruction_so3(phi(p));
        throw InvalidInput("obstruction_so3 needs a FLAT_0 or ZFLAT point");
    }
    detail::check_shape(p);
    const auto q = detail::lifted_m_product(p.V);
    if (q.vec().norm() > kLiftTolerance) throw ConsistencyError("lifted product is not central: the point is not flat");
    return q.w() >= 0 ? 1 : -1;
}

/// The obstruction over U(n) is trivial since SU(n) is simply connected.
inline int obstruction_unitary(const GroupTuplePoint&) { return 1; }

/// o'(tau(y)) = o'(y)^{-1} for y, and o'(I(x)) = +1 for each flat point x.
/// Residuals are |o_1 - o_2|, so each is 0 or 2.
inline ResidualReport obstruction_laws(const GroupTuplePoint& y, const std::vector<GroupTuplePoint>& flat_points,
                                       double tol = 1e-9) {
    ResidualReport rep(tol);
    const int o = obstruction_so3(y);
    const int ot = obstruction_so3(tau_involution(y));
    rep.add("o'(tau(y)) = o'(y)^-1", std::abs(ot - o));
    for (std::size_t j = 0; j < flat_points.size(); ++j)
        rep.add(detail::indexed("o'(I(x)) = 1 ", j), std::abs(obstruction_so3(embed_fixed(flat_points[j])) - 1));
    return rep;
}

} // namespace ymstrata::repvar
