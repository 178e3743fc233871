#pragma once

// Codimensions of Yang-Mills Morse strata.

#include "ymstrata/hn_types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ymstrata {

namespace detail {

/// Sum over index pairs a < b with mu_a > mu_b strictly of (mu_a - mu_b + shift).
/// No sign or integrality checks.
inline Rational strict_pair_sum(const HNType& mu, std::int64_t shift) {
    const auto es = mu.entries();
    Rational total(0);
    const Rational s(shift);
    for (std::size_t a = 0; a < es.size(); ++a)
        for (std::size_t b = a + 1; b < es.size(); ++b)
            if (es[a] > es[b]) total += es[a] - es[b] + s;
    return total;
}

inline std::int64_t checked_codim(const Rational& total, const HNType& mu) {
    if (!is_integral(total))
        throw ConsistencyError("non-integral codimension " + total.str() + " for " + mu.str());
    if (total < 0)
        throw ConsistencyError("negative codimension " + total.str() + " for " + mu.str() +
                               " (surface with nonnegative Euler characteristic?)");
    return static_cast<std::int64_t>(boost::multiprecision::numerator(total));
}

} // namespace detail

/// Complex codimension d_mu of the stratum of type mu over a genus-g surface.
inline std::int64_t codim_orientable(const HNType& mu, int genus) {
    if (genus < 0) throw InvalidInput("genus must be nonnegative");
    return detail::checked_codim(detail::strict_pair_sum(mu, genus - 1), mu);
}

/// Real codimension of the stratum of a symmetric type over Sigma^ell_i,
/// additive constant 2 ell + i - 2 per strict pair.
inline std::int64_t codim_nonorientable(const SymmetricTypeClass& cls, const Surface& surface) {
    if (surface.is_orientable()) throw InvalidInput("codim_nonorientable needs a nonorientable surface");
    if (cls.cross != surface.cross())
        throw InvalidInput("symmetric class was computed for a different crosscap index");
    const std::int64_t shift = 2 * surface.ell() + surface.cross() - 2;
    return detail::checked_codim(detail::strict_pair_sum(cls.mu, shift), cls.mu);
}

/// One row of a stratification report.
struct StratumRecord {
    HNType mu;
    std::optional<int> bundle_sign; ///< +1/-1 over nonorientable surfaces, empty otherwise
    std::int64_t complex_codim = 0; ///< d_mu
    std::int64_t real_codim = 0;    ///< lambda_mu
    Surface surface;
    std::optional<SymmetricClass> classification;
};

/// lambda_mu = 2 d_mu for orientable surfaces.
inline StratumRecord orientable_record(const HNType& mu, const Surface& surface) {
    const auto d = codim_orientable(mu, surface.ell());
    return StratumRecord{mu, std::nullopt, d, 2 * d, surface, std::nullopt};
}

/// lambda_mu equals the complex codimension upstairs for nonorientable surfaces.
inline StratumRecord nonorientable_record(const SymmetricTypeClass& cls, int sign, const Surface& surface) {
    const auto d = codim_nonorientable(cls, surface);
    return StratumRecord{cls.mu, sign, d, d, surface, cls.classification};
}

} // namespace ymstrata
