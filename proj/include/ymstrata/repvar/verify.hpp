#pragma once

// Seeded random points and the property suites over them: the section and
// involution identities, witness nonemptiness and the SO(3) obstruction laws.

#include "ymstrata/enumerate.hpp"
#include "ymstrata/errors.hpp"
#include "ymstrata/hn_types.hpp"
#include "ymstrata/repvar/matrix.hpp"
#include "ymstrata/repvar/obstruction.hpp"
#include "ymstrata/repvar/point.hpp"
#include "ymstrata/repvar/varieties.hpp"
#include "ymstrata/repvar/witness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ymstrata::repvar {

/// An independent generator per (seed, labels...).
template <typename... Ints>
Rng trial_rng(std::uint64_t seed, Ints... labels) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(labels)...};
    return Rng(seq);
}

/// A random HN type of rank n; genus 0 only gets integral slopes.
inline HNType random_type(int n, int genus, Rng& rng) {
    std::uniform_int_distribution<int> blocks_dist(1, n);
    for (;;) {
        const int r = blocks_dist(rng);
        std::vector<int> cuts;
        for (int c = 1; c < n; ++c) cuts.push_back(c);
        std::shuffle(cuts.begin(), cuts.end(), rng);
        cuts.resize(static_cast<std::size_t>(r - 1));
        cuts.push_back(0);
        cuts.push_back(n);
        std::sort(cuts.begin(), cuts.end());
        std::vector<Block> bs;
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
            const int size = cuts[j + 1] - cuts[j];
            std::int64_t k = 0;
            if (genus == 0) {
                k = size * std::uniform_int_distribution<int>(-2, 2)(rng);
            } else {
                k = std::uniform_int_distribution<int>(-2 * size - 2, 2 * size + 2)(rng);
            }
            bs.push_back(Block{size, k});
        }
        bool ok = true;
        for (std::size_t j = 0; j + 1 < bs.size(); ++j) ok = ok && ymstrata::detail::slope_greater(bs[j], bs[j + 1]);
        if (ok) return HNType(std::move(bs));
    }
}

inline std::vector<Matrix> random_stabilizer_handles(const Matrix& X, int handles, Rng& rng) {
    std::vector<Matrix> out;
    for (int h = 0; h < 2 * handles; ++h) out.push_back(random_stabilizer(X, rng));
    return out;
}

/// A random commuting pair in G_X.
inline std::pair<Matrix, Matrix> random_commuting_pair(const Matrix& X, Rng& rng) {
    Matrix a = random_stabilizer(X, rng);
    return {a, random_torus_partner(a, rng)};
}

/// A random YM_0 point of genus 2l + i - 1 laid out as phi_section expects:
/// (V_1, V_2) for i = 1 and (V_1, V_2, a, b) for i = 2, each V of length 2l.
inline GroupTuplePoint random_section_input(const HNType& mu, int ell, int i, Rng& rng) {
    const Matrix X = x_mu_matrix(mu);
    GroupTuplePoint q;
    q.kind = PointKind::YM0;
    q.X = X;
    const Matrix g = random_stabilizer(X, rng);
    const std::vector<bool> all(mu.blocks().size(), true);
    auto central = detail::central_handle(mu, all);
    central.first = g * central.first * g.adjoint();
    central.second = g * central.second * g.adjoint();
    if (i == 1) {
        if (ell == 0) return q;
        const auto R = random_stabilizer_handles(X, ell - 1, rng);
        q.V = {central.first, central.second};
        q.V.insert(q.V.end(), R.begin(), R.end());
        const auto rR = r_reverse(R);
        q.V.insert(q.V.end(), rR.begin(), rR.end());
        const auto [a, b] = random_commuting_pair(X, rng);
        q.V.push_back(a);
        q.V.push_back(b);
    } else {
        const auto R = random_stabilizer_handles(X, ell, rng);
        q.V = R;
        const auto rR = r_reverse(R);
        q.V.insert(q.V.end(), rR.begin(), rR.end());
        q.V.push_back(central.first);
        q.V.push_back(central.second);
    }
    return q;
}

/// The symmetric classes a random nonorientable point is drawn from.
inline std::vector<SymmetricTypeClass> witness_classes(int n, int ell, int i, std::int64_t max_codim = 12) {
    std::vector<SymmetricTypeClass> out;
    for (const auto& cls : enumerate_symmetric(n, Surface(ell, i), max_codim))
        if (ell >= 1 || (i == 2 && detail::all_integral(cls.mu))) out.push_back(cls);
    return out;
}

/// A random point of X_YM^{l,i}: a witness moved along its orbit, or for
/// l = 0, i = 1 the flat point (c) with c^2 = I.
inline GroupTuplePoint random_nonorientable_point(int n, int ell, int i, const std::vector<SymmetricTypeClass>& classes,
                                                  Rng& rng) {
    GroupTuplePoint x;
    if (classes.empty()) {
        std::uniform_int_distribution<int> coin(0, 1);
        x.kind = i == 1 ? PointKind::YM1 : PointKind::YM2;
        x.X = Matrix::Zero(n, n);
        std::vector<Complex> diag(static_cast<std::size_t>(n), 1.0);
        for (auto& z : diag) z = coin(rng) ? 1.0 : -1.0;
        x.c = diagonal(diag);
        if (i == 2) x.d = identity(n);
        for (int h = 0; h < ell; ++h) {
            const auto [a, b] = random_commuting_pair(x.X, rng);
            x.V.push_back(a);
            x.V.push_back(b);
        }
    } else {
        const auto& cls = classes[std::uniform_int_distribution<std::size_t>(0, classes.size() - 1)(rng)];
        const auto signs = cls.bundle_signs();
        const int sign = signs[std::uniform_int_distribution<std::size_t>(0, signs.size() - 1)(rng)];
        x = witness_point(cls, ell, sign);
    }
    return sample_orbit(x, rng());
}

struct LemmaTolerances {
    double membership = 1e-9;
    double phi_image = 1e-9;
    double round_trip = 1e-10;
    double tau_square = 1e-12;
    double embed_fixed = 1e-12;

    static LemmaTolerances capped(double tol) {
        return {tol, tol, std::min(tol, 1e-10), std::min(tol, 1e-12), std::min(tol, 1e-12)};
    }
};

struct LemmaStats {
    int ell = 0;
    int cross = 1;
    int n = 1;
    int trials = 0;
    int failures = 0;
    double membership = 0;   ///< Z points after a random (g1, g2)
    double phi_image = 0;    ///< phi of those points in YM_0
    double round_trip = 0;   ///< phi(phi_section(q)) against q
    double tau_membership = 0;
    double tau_square = 0;
    double embed_membership = 0;
    double embed_fixed = 0;  ///< tau(I(x)) against I(x)

    bool pass() const { return failures == 0 && trials > 0; }

    nlohmann::json to_json() const {
        return {{"l", ell},
                {"i", cross},
                {"n", n},
                {"trials", trials},
                {"failures", failures},
                {"max_membership", membership},
                {"max_phi_image", phi_image},
                {"max_round_trip", round_trip},
                {"max_tau_membership", tau_membership},
                {"max_tau_square", tau_square},
                {"max_embed_membership", embed_membership},
                {"max_embed_fixed", embed_fixed}};
    }
};

/// Section, involution and embedding identities over `trials` seeded
/// random points for U(n) and the surface with l handles and i crosscaps.
inline LemmaStats lemma_trials(int n, int ell, int i, int trials, std::uint64_t seed,
                               const LemmaTolerances& tol = {}) {
    if (n < 1 || ell < 0 || (i != 1 && i != 2) || trials < 0) throw InvalidInput("lemma_trials: bad parameters");
    LemmaStats st;
    st.ell = ell;
    st.cross = i;
    st.n = n;
    const auto classes = (ell == 0 && i == 1) ? std::vector<SymmetricTypeClass>{} : witness_classes(n, ell, i);
    const int genus = 2 * ell + i - 1;
    for (int t = 0; t < trials; ++t) {
        Rng rng = trial_rng(seed, n, ell, i, t);
        const HNType mu = random_type(n, genus, rng);
        const auto q = sample_orbit(random_section_input(mu, ell, i, rng), rng());
        const auto z0 = phi_section(q, i);
        const double rt = point_distance(phi(z0), q);
        const auto z = sample_orbit(z0, rng());
        const double mem = membership(z).max_residual;
        const double img = membership(phi(z)).max_residual;
        const auto tz = tau_involution(z);
        const double tmem = membership(tz).max_residual;
        const double tsq = point_distance(tau_involution(tz), z);
        const auto ix = embed_fixed(random_nonorientable_point(n, ell, i, classes, rng));
        const double emem = membership(ix).max_residual;
        const double efix = point_distance(tau_involution(ix), ix);

        st.membership = std::max(st.membership, mem);
        st.phi_image = std::max(st.phi_image, img);
        st.round_trip = std::max(st.round_trip, rt);
        st.tau_membership = std::max(st.tau_membership, tmem);
        st.tau_square = std::max(st.tau_square, tsq);
        st.embed_membership = std::max(st.embed_membership, emem);
        st.embed_fixed = std::max(st.embed_fixed, efix);
        ++st.trials;
        const bool ok = mem < tol.membership && img < tol.phi_image && rt < tol.round_trip &&
                        tmem < tol.membership && tsq < tol.tau_square && emem < tol.membership &&
                        efix < tol.embed_fixed;
        if (!ok) ++st.failures;
    }
    return st;
}

struct WitnessStats {
    int n = 1;
    int ell = 1;
    int cross = 1;
    int witnesses = 0;
    int forbidden_checked = 0;
    int failures = 0;
    double membership = 0;
    double det_relation = 0;
    double embed_fixed = 0;
    std::vector<std::string> failed;

    bool pass() const { return failures == 0; }

    nlohmann::json to_json() const {
        return {{"n", n},
                {"l", ell},
                {"i", cross},
                {"witnesses", witnesses},
                {"forbidden_signs_checked", forbidden_checked},
                {"failures", failures},
                {"max_membership", membership},
                {"max_det_relation", det_relation},
                {"max_embed_fixed", embed_fixed},
                {"failed", failed}};
    }
};

/// Every enumerated symmetric type and sign: admissible signs give a witness
/// with the right determinant, forbidden ones raise EmptyStratumError.
inline WitnessStats witness_suite(int n, int ell, int i, std::int64_t max_codim = 12, double tol = 1e-10) {
    WitnessStats st;
    st.n = n;
    st.ell = ell;
    st.cross = i;
    for (const auto& cls : enumerate_symmetric(n, Surface(ell, i), max_codim)) {
        const auto allowed = cls.bundle_signs();
        for (int sign : {1, -1}) {
            const std::string label = cls.mu.str() + (sign > 0 ? "^+" : "^-");
            if (std::find(allowed.begin(), allowed.end(), sign) == allowed.end()) {
                ++st.forbidden_checked;
                bool raised = false;
                try {
                    (void)witness_point(cls, ell, sign);
                } catch (const EmptyStratumError&) {
                    raised = true;
                }
                if (!raised) {
                    ++st.failures;
                    st.failed.push_back(label + " (forbidden sign accepted)");
                }
                continue;
            }
            const auto w = witness_point(cls, ell, sign);
            const double mem = membership(w).max_residual;
            const double det = det_reduction_check(w, cls).max_residual;
            const auto ix = embed_fixed(w);
            const double efix = point_distance(tau_involution(ix), ix);
            ++st.witnesses;
            st.membership = std::max(st.membership, mem);
            st.det_relation = std::max(st.det_relation, det);
            st.embed_fixed = std::max(st.embed_fixed, efix);
            if (!(mem < tol && det < tol && bundle_sign(w) == sign && efix < std::min(tol, 1e-12))) {
                ++st.failures;
                st.failed.push_back(label);
            }
        }
    }
    return st;
}

/// A commuting pair in SO(3): rotations about one axis, or the pi-rotations
/// about two perpendicular axes (whose lifts anticommute).
inline std::pair<Matrix, Matrix> random_commuting_so3(Rng& rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const Matrix h = haar_so3(rng);
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        const Matrix a = so3_rotation(0, 0, 1, angle(rng));
        const Matrix b = so3_rotation(0, 0, 1, angle(rng));
        return {h * a * h.adjoint(), h * b * h.adjoint()};
    }
    const Matrix a = so3_rotation(1, 0, 0, std::numbers::pi);
    const Matrix b = so3_rotation(0, 1, 0, std::numbers::pi);
    return {h * a * h.adjoint(), h * b * h.adjoint()};
}

inline std::vector<Matrix> random_so3_handles(int handles, Rng& rng) {
    std::vector<Matrix> out;
    for (int h = 0; h < 2 * handles; ++h) out.push_back(haar_so3(rng));
    return out;
}

/// A random point of X_fl^{l,i} over SO(3): commuting handles and
/// c a pi-rotation (i = 1), or d a pi-rotation and c a rotation about its
/// axis (i = 2).
inline GroupTuplePoint random_flat_so3(int ell, int i, Rng& rng) {
    GroupTuplePoint x;
    x.group = GroupTag::SO3;
    x.kind = i == 1 ? PointKind::Flat1 : PointKind::Flat2;
    x.X = Matrix::Zero(3, 3);
    for (int h = 0; h < ell; ++h) {
        const auto [a, b] = random_commuting_so3(rng);
        x.V.push_back(a);
        x.V.push_back(b);
    }
    const Matrix g = haar_so3(rng);
    const Matrix pi_z = so3_rotation(0, 0, 1, std::numbers::pi);
    if (i == 1) {
        x.c = g * pi_z * g.adjoint();
    } else {
        const double theta = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
        x.d = g * pi_z * g.adjoint();
        x.c = g * so3_rotation(0, 0, 1, theta) * g.adjoint();
    }
    return x;
}

/// A random FLAT_0 point over SO(3) of genus 2l + i - 1 in phi_section layout.
inline GroupTuplePoint random_flat0_so3(int ell, int i, Rng& rng) {
    GroupTuplePoint q;
    q.group = GroupTag::SO3;
    q.kind = PointKind::Flat0;
    q.X = Matrix::Zero(3, 3);
    if (i == 1) {
        if (ell == 0) return q;
        const auto p1 = random_commuting_so3(rng);
        const auto p2 = random_commuting_so3(rng);
        const auto R = random_so3_handles(ell - 1, rng);
        q.V = {p1.first, p1.second};
        q.V.insert(q.V.end(), R.begin(), R.end());
        const auto rR = r_reverse(R);
        q.V.insert(q.V.end(), rR.begin(), rR.end());
        q.V.push_back(p2.first);
        q.V.push_back(p2.second);
    } else {
        const auto R = random_so3_handles(ell, rng);
        q.V = R;
        const auto rR = r_reverse(R);
        q.V.insert(q.V.end(), rR.begin(), rR.end());
        const auto p = random_commuting_so3(rng);
        q.V.push_back(p.first);
        q.V.push_back(p.second);
    }
    return q;
}

struct ObstructionStats {
    int trials = 0;
    int failures = 0;
    bool identity_trivial = false;
    bool pi_pair_nontrivial = false;
    int nontrivial_seen = 0; ///< trials whose y had o'(y) = -1

    bool pass() const { return failures == 0 && identity_trivial && pi_pair_nontrivial && trials > 0; }

    nlohmann::json to_json() const {
        return {{"trials", trials},
                {"failures", failures},
                {"identity_trivial", identity_trivial},
                {"pi_pair_nontrivial", pi_pair_nontrivial},
                {"nontrivial_seen", nontrivial_seen}};
    }
};

/// o(identity) = +1, o(pi-rotation pair) = -1, and per trial: the tau law,
/// o' . I = +1, conjugation invariance and multiplicativity under
/// concatenation of handle tuples.
inline ObstructionStats obstruction_suite(int trials_per_case, std::uint64_t seed, int max_ell = 3) {
    ObstructionStats st;
    GroupTuplePoint id;
    id.group = GroupTag::SO3;
    id.kind = PointKind::Flat0;
    id.X = Matrix::Zero(3, 3);
    id.V = {identity(3), identity(3)};
    st.identity_trivial = obstruction_so3(id) == 1;
    GroupTuplePoint pi_pair = id;
    pi_pair.V = {diagonal({1.0, -1.0, -1.0}), diagonal({-1.0, 1.0, -1.0})};
    st.pi_pair_nontrivial = obstruction_so3(pi_pair) == -1;

    for (int ell = 0; ell <= max_ell; ++ell) {
        for (int i = 1; i <= 2; ++i) {
            for (int t = 0; t < trials_per_case; ++t) {
                Rng rng = trial_rng(seed, 0x50335, ell, i, t);
                const auto q = random_flat0_so3(ell, i, rng);
                const auto y = sample_orbit(phi_section(q, i), rng());
                const auto x = random_flat_so3(ell, i, rng);
                bool ok = obstruction_laws(y, {x}).pass;
                const int oq = obstruction_so3(q);
                ok = ok && obstruction_so3(y) == oq;
                ok = ok && obstruction_so3(sample_orbit(q, rng())) == oq;
                const auto q2 = random_flat0_so3(ell, i, rng);
                GroupTuplePoint cat = q;
                cat.V.insert(cat.V.end(), q2.V.begin(), q2.V.end());
                ok = ok && obstruction_so3(cat) == oq * obstruction_so3(q2);
                if (oq == -1) ++st.nontrivial_seen;
                ++st.trials;
                if (!ok) ++st.failures;
            }
        }
    }
    return st;
}

} // namespace ymstrata::repvar
