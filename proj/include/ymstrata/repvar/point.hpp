#pragma once

// Points of the representation varieties and their JSON form.

#include "ymstrata/errors.hpp"
#include "ymstrata/repvar/matrix.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ymstrata::repvar {

enum class GroupTag { U, SO3 };

enum class PointKind { Flat0, Flat1, Flat2, YM0, YM1, YM2, ZFlat1, ZFlat2, ZYM1, ZYM2, Ext };

inline const char* to_string(GroupTag g) { return g == GroupTag::U ? "U(n)" : "SO(3)"; }

inline const char* to_string(PointKind k) {
    switch (k) {
    case PointKind::Flat0: return "FLAT_0";
    case PointKind::Flat1: return "FLAT_1";
    case PointKind::Flat2: return "FLAT_2";
    case PointKind::YM0: return "YM_0";
    case PointKind::YM1: return "YM_1";
    case PointKind::YM2: return "YM_2";
    case PointKind::ZFlat1: return "ZFLAT_1";
    case PointKind::ZFlat2: return "ZFLAT_2";
    case PointKind::ZYM1: return "ZYM_1";
    case PointKind::ZYM2: return "ZYM_2";
    case PointKind::Ext: return "EXT";
    }
    return "?";
}

inline PointKind kind_from_string(const std::string& s) {
    for (auto k : {PointKind::Flat0, PointKind::Flat1, PointKind::Flat2, PointKind::YM0, PointKind::YM1, PointKind::YM2,
                   PointKind::ZFlat1, PointKind::ZFlat2, PointKind::ZYM1, PointKind::ZYM2, PointKind::Ext})
        if (s == to_string(k)) return k;
    throw InvalidInput("unknown point kind '" + s + "'");
}

inline GroupTag group_from_string(const std::string& s) {
    if (s == "U(n)") return GroupTag::U;
    if (s == "SO(3)") return GroupTag::SO3;
    throw InvalidInput("unknown group tag '" + s + "'");
}

inline bool is_flat(PointKind k) {
    return k == PointKind::Flat0 || k == PointKind::Flat1 || k == PointKind::Flat2 || k == PointKind::ZFlat1 ||
           k == PointKind::ZFlat2;
}

inline bool is_symmetric(PointKind k) {
    return k == PointKind::ZFlat1 || k == PointKind::ZFlat2 || k == PointKind::ZYM1 || k == PointKind::ZYM2;
}

/// Crosscap index i of the kind: 0 for orientable and extended-free kinds.
inline int cross_of(PointKind k) {
    switch (k) {
    case PointKind::Flat1:
    case PointKind::YM1:
    case PointKind::ZFlat1:
    case PointKind::ZYM1: return 1;
    case PointKind::Flat2:
    case PointKind::YM2:
    case PointKind::ZFlat2:
    case PointKind::ZYM2: return 2;
    default: return 0;
    }
}

/// A candidate point. V = (a_1, b_1, ..., a_l, b_l); the barred fields are
/// used by the symmetric kinds only, the boundary fields by EXT only. X is
/// the zero matrix for flat kinds.
struct GroupTuplePoint {
    GroupTag group = GroupTag::U;
    PointKind kind = PointKind::Flat0;
    std::vector<Matrix> V;
    std::optional<Matrix> c;
    std::optional<Matrix> d;
    std::vector<Matrix> Vbar;
    std::optional<Matrix> cbar;
    std::optional<Matrix> dbar;
    Matrix X;
    std::vector<Matrix> boundary_k; ///< k_2, ..., k_r
    std::vector<Matrix> boundary_X; ///< X_1, ..., X_r
    int ext_cross = 0;              ///< i of the extended moduli space

    int dim() const { return static_cast<int>(X.rows()); }
    int handles() const { return static_cast<int>(V.size() / 2); }
};

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InvalidInput("matrix json must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
            throw InvalidInput("matrix json must be square");
        for (Eigen::Index c = 0; c < rows; ++c) {
            const auto& z = row.at(static_cast<std::size_t>(c));
            if (!z.is_array() || z.size() != 2) throw InvalidInput("matrix entries must be [re, im] pairs");
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

inline nlohmann::json list_to_json(const std::vector<Matrix>& ms) {
    auto out = nlohmann::json::array();
    for (const auto& m : ms) out.push_back(matrix_to_json(m));
    return out;
}

inline std::vector<Matrix> list_from_json(const nlohmann::json& j) {
    std::vector<Matrix> out;
    for (const auto& m : j) out.push_back(matrix_from_json(m));
    return out;
}

} // namespace detail

inline nlohmann::json to_json(const GroupTuplePoint& p) {
    nlohmann::json j;
    j["group_tag"] = to_string(p.group);
    j["kind"] = to_string(p.kind);
    j["n"] = p.dim();
    j["V"] = detail::list_to_json(p.V);
    if (p.c) j["c"] = detail::matrix_to_json(*p.c);
    if (p.d) j["d"] = detail::matrix_to_json(*p.d);
    if (is_symmetric(p.kind)) j["Vbar"] = detail::list_to_json(p.Vbar);
    if (p.cbar) j["cbar"] = detail::matrix_to_json(*p.cbar);
    if (p.dbar) j["dbar"] = detail::matrix_to_json(*p.dbar);
    j["X"] = detail::matrix_to_json(p.X);
    if (p.kind == PointKind::Ext) {
        j["ext_cross"] = p.ext_cross;
        j["boundary_k"] = detail::list_to_json(p.boundary_k);
        j["boundary_X"] = detail::list_to_json(p.boundary_X);
    }
    return j;
}

inline GroupTuplePoint point_from_json(const nlohmann::json& j) {
    GroupTuplePoint p;
    try {
        p.group = group_from_string(j.at("group_tag").get<std::string>());
        p.kind = kind_from_string(j.at("kind").get<std::string>());
        p.V = detail::list_from_json(j.at("V"));
        if (j.contains("c")) p.c = detail::matrix_from_json(j.at("c"));
        if (j.contains("d")) p.d = detail::matrix_from_json(j.at("d"));
        if (j.contains("Vbar")) p.Vbar = detail::list_from_json(j.at("Vbar"));
        if (j.contains("cbar")) p.cbar = detail::matrix_from_json(j.at("cbar"));
        if (j.contains("dbar")) p.dbar = detail::matrix_from_json(j.at("dbar"));
        p.X = detail::matrix_from_json(j.at("X"));
        if (j.contains("ext_cross")) p.ext_cross = j.at("ext_cross").get<int>();
        if (j.contains("boundary_k")) p.boundary_k = detail::list_from_json(j.at("boundary_k"));
        if (j.contains("boundary_X")) p.boundary_X = detail::list_from_json(j.at("boundary_X"));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("point json: ") + e.what());
    }
    return p;
}

} // namespace ymstrata::repvar
