#pragma once

// Enumeration of I_{n,k} (bounded by codimension) and of its tau0-fixed part.

#include "ymstrata/hn_types.hpp"
#include "ymstrata/morse.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ymstrata {

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

class TypeEnumerator {
public:
    TypeEnumerator(int n, std::int64_t k, int genus, std::int64_t max_codim)
        : n_(n), k_(k), genus_(genus), max_codim_(max_codim) {
        // Every strict pair contributes at least (mu_a - mu_b) + min(0, g-1), so
        // the spread mu_1 - mu_n is at most max_codim plus the worst negative slack.
        const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
        spread_ = max_codim + (genus < 1 ? pairs * (1 - genus) : 0);
    }

    std::vector<HNType> run() {
        extend(n_, k_);
        return std::move(out_);
    }

private:
    // Integer codimension contribution of the block pair (hi, lo), slope(hi) > slope(lo):
    // n_a n_b (k_a/n_a - k_b/n_b + g - 1) = k_a n_b - k_b n_a + n_a n_b (g - 1).
    std::int64_t pair_codim(const Block& hi, const Block& lo) const {
        return hi.degree * lo.size - lo.degree * hi.size +
               static_cast<std::int64_t>(hi.size) * lo.size * (genus_ - 1);
    }

    void extend(int rem_n, std::int64_t rem_k) {
        if (rem_n == 0) {
            if (rem_k == 0) emit();
            return;
        }
        const int used_n = n_ - rem_n;
        for (int size = 1; size <= rem_n; ++size) {
            // Slopes lie within spread_ of k/n on either side.
            const std::int64_t lo = ceil_div(static_cast<std::int64_t>(size) * (k_ - n_ * spread_), n_);
            const std::int64_t hi = floor_div(static_cast<std::int64_t>(size) * (k_ + n_ * spread_), n_);
            if (size == rem_n) {
                if (rem_k >= lo && rem_k <= hi) try_block(Block{size, rem_k}, rem_n, rem_k, used_n);
                continue;
            }
            for (std::int64_t deg = hi; deg >= lo; --deg) try_block(Block{size, deg}, rem_n, rem_k, used_n);
        }
    }

    void try_block(const Block& b, int rem_n, std::int64_t rem_k, int used_n) {
        if (!stack_.empty() && !slope_greater(stack_.back(), b)) return;
        const int new_used = used_n + b.size;
        const std::int64_t new_deg = (k_ - rem_k) + b.degree;
        // A proper prefix of a HN polygon lies strictly above the line of slope k/n.
        if (new_used < n_ && static_cast<__int128>(new_deg) * n_ <= static_cast<__int128>(k_) * new_used) return;

        std::int64_t added = 0;
        for (const auto& prev : stack_) added += pair_codim(prev, b);
        const std::int64_t partial = partial_ + added;
        // Pairs not yet formed can lower the total by at most this much.
        const std::int64_t after = n_ - new_used;
        const std::int64_t future_pairs = after * new_used + after * (after - 1) / 2;
        const std::int64_t slack = genus_ < 1 ? future_pairs * (genus_ - 1) : 0;
        if (partial + slack > max_codim_) return;

        stack_.push_back(b);
        const std::int64_t saved = partial_;
        partial_ = partial;
        extend(rem_n - b.size, rem_k - b.degree);
        partial_ = saved;
        stack_.pop_back();
    }

    void emit() {
        HNType mu(stack_);
        if (strict_pair_sum(mu, genus_ - 1) <= Rational(max_codim_)) out_.push_back(std::move(mu));
    }

    int n_;
    std::int64_t k_;
    int genus_;
    std::int64_t max_codim_;
    std::int64_t spread_ = 0;
    std::int64_t partial_ = 0;
    std::vector<Block> stack_;
    std::vector<HNType> out_;
};

} // namespace detail

/// All mu in I_{n,k} with codimension at most max_codim, in ascending
/// lexicographic order of entries(). Over a nonorientable surface the
/// codimension is the one on the orientable double cover and k must be 0.
inline std::vector<HNType> enumerate_types(int n, std::int64_t k, const Surface& surface, std::int64_t max_codim) {
    if (n <= 0) throw InvalidInput("enumerate_types: rank must be positive");
    if (max_codim < 0) throw InvalidInput("enumerate_types: codimension bound must be nonnegative");
    if (!surface.is_orientable() && k != 0)
        throw InvalidInput("enumerate_types: nonorientable surfaces only carry degree-zero types");
    auto out = detail::TypeEnumerator(n, k, surface.effective_genus(), max_codim).run();
    std::sort(out.begin(), out.end(), entries_less);
    return out;
}

/// All tau0-fixed mu in I_{n,0} with codimension at most max_codim over the
/// nonorientable surface, each classified.
inline std::vector<SymmetricTypeClass> enumerate_symmetric(int n, const Surface& surface, std::int64_t max_codim) {
    if (surface.is_orientable()) throw InvalidInput("enumerate_symmetric needs a nonorientable surface");
    std::vector<SymmetricTypeClass> out;
    for (const auto& mu : enumerate_types(n, 0, surface, max_codim))
        if (is_tau0_fixed(mu)) out.push_back(classify_symmetric(mu, surface.cross()));
    return out;
}

inline std::vector<SymmetricTypeClass> enumerate_symmetric(int n, int cross, const Surface& surface,
                                                           std::int64_t max_codim) {
    if (cross != surface.cross()) throw InvalidInput("enumerate_symmetric: i does not match the surface");
    return enumerate_symmetric(n, surface, max_codim);
}

} // namespace ymstrata
