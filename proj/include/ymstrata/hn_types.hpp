#pragma once

// Harder-Narasimhan / Yang-Mills stratum types for U(n) bundles and the
// surfaces they live on.

#include "ymstrata/errors.hpp"
#include "ymstrata/rational.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ymstrata {

/// Closed surface with `ell` handles and `cross` in {0,1,2}: the orientable
/// genus-ell surface, or its connected sum with RP^2 (1) or a Klein bottle (2).
class Surface {
public:
    constexpr Surface() = default;
    Surface(int ell, int cross) : ell_(ell), cross_(cross) {
        if (ell < 0) throw InvalidInput("surface: handle count must be nonnegative");
        if (cross < 0 || cross > 2) throw InvalidInput("surface: crosscap index must be 0, 1 or 2");
    }

    static Surface orientable(int genus) { return Surface(genus, 0); }

    int ell() const noexcept { return ell_; }
    int cross() const noexcept { return cross_; }
    bool is_orientable() const noexcept { return cross_ == 0; }

    /// Genus of the orientable double cover; only meaningful for cross in {1,2}.
    int double_cover_genus() const {
        if (is_orientable()) throw InvalidInput("double cover genus requested for an orientable surface");
        return 2 * ell_ + cross_ - 1;
    }

    /// Genus used by the codimension formula: the surface itself when
    /// orientable, the double cover otherwise.
    int effective_genus() const { return is_orientable() ? ell_ : double_cover_genus(); }

    int euler_characteristic() const noexcept { return 2 - 2 * ell_ - cross_; }

    friend bool operator==(const Surface&, const Surface&) = default;

private:
    int ell_ = 0;
    int cross_ = 0;
};

/// One block of a type: `size` equal entries of slope degree/size.
struct Block {
    int size = 1;
    std::int64_t degree = 0;

    Rational slope() const { return make_rational(degree, size); }
    friend bool operator==(const Block&, const Block&) = default;
};

namespace detail {

// a.degree/a.size > b.degree/b.size, exactly
inline bool slope_greater(const Block& a, const Block& b) {
    return static_cast<__int128>(a.degree) * b.size > static_cast<__int128>(b.degree) * a.size;
}

} // namespace detail

/// A stratum type mu: blocks (n_j, k_j) with strictly decreasing slopes.
class HNType {
public:
    explicit HNType(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
        if (blocks_.empty()) throw InvalidInput("HN type needs at least one block");
        for (const auto& b : blocks_)
            if (b.size <= 0) throw InvalidInput("HN type block sizes must be positive");
        for (std::size_t j = 1; j < blocks_.size(); ++j)
            if (!detail::slope_greater(blocks_[j - 1], blocks_[j]))
                throw InvalidInput("HN type slopes must be strictly decreasing: " + describe(blocks_));
    }

    /// The semistable type of a bundle of rank n and degree k.
    static HNType semistable(int n, std::int64_t k) { return HNType({Block{n, k}}); }

    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    int rank() const noexcept {
        int n = 0;
        for (const auto& b : blocks_) n += b.size;
        return n;
    }

    std::int64_t degree() const noexcept {
        std::int64_t k = 0;
        for (const auto& b : blocks_) k += b.degree;
        return k;
    }

    bool is_semistable() const noexcept { return blocks_.size() == 1; }

    /// The length-n weakly decreasing vector of slopes with multiplicity.
    std::vector<Rational> entries() const {
        std::vector<Rational> out;
        out.reserve(static_cast<std::size_t>(rank()));
        for (const auto& b : blocks_) {
            const Rational s = b.slope();
            for (int r = 0; r < b.size; ++r) out.push_back(s);
        }
        return out;
    }

    /// "(1/2,1/2)" style rendering of entries().
    std::string str() const {
        std::ostringstream os;
        os << '(';
        bool first = true;
        for (const auto& e : entries()) {
            if (!first) os << ',';
            os << e.str();
            first = false;
        }
        os << ')';
        return os.str();
    }

    friend bool operator==(const HNType&, const HNType&) = default;

private:
    static std::string describe(const std::vector<Block>& bs) {
        std::ostringstream os;
        for (const auto& b : bs) os << '[' << b.size << ',' << b.degree << ']';
        return os.str();
    }

    std::vector<Block> blocks_;
};

/// Lexicographic comparison of entries(); used as the canonical listing order.
inline bool entries_less(const HNType& a, const HNType& b) {
    const auto ea = a.entries();
    const auto eb = b.entries();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

/// (mu_1,...,mu_n) -> (-mu_n,...,-mu_1).
inline HNType tau0(const HNType& mu) {
    std::vector<Block> out(mu.blocks().rbegin(), mu.blocks().rend());
    for (auto& b : out) b.degree = -b.degree;
    return HNType(std::move(out));
}

inline bool is_tau0_fixed(const HNType& mu) { return tau0(mu) == mu; }

enum class SymmetricClass { ZeroBlock, PairedPlus, PairedMinus };

inline const char* to_string(SymmetricClass c) {
    switch (c) {
    case SymmetricClass::ZeroBlock: return "ZERO_BLOCK";
    case SymmetricClass::PairedPlus: return "PAIRED_PLUS";
    case SymmetricClass::PairedMinus: return "PAIRED_MINUS";
    }
    return "?";
}

/// A tau0-fixed degree-zero type mu = (nu, 0^{n0}, tau0(nu)) together with
/// its position in the splitting I_n = I_n^0 u I_n^{i,+} u I_n^{i,-}.
struct SymmetricTypeClass {
    HNType mu;
    std::vector<Block> positive_blocks; ///< blocks of nu (all slopes > 0); may be empty
    int n0 = 0;                         ///< size of the zero-slope block
    int n_prime = 0;                    ///< rank of nu
    std::int64_t nu_degree = 0;         ///< degree of nu
    int cross = 1;                      ///< i of the surface the class was computed for
    SymmetricClass classification = SymmetricClass::ZeroBlock;

    /// (-1)^{n' i + k}: the only bundle sign a paired stratum lives on, and the
    /// twist applied to the flat factor of a zero-block stratum.
    int parity_sign() const {
        const std::int64_t e = static_cast<std::int64_t>(n_prime) * cross + nu_degree;
        return (e % 2 == 0) ? 1 : -1;
    }

    /// Bundle signs carrying a stratum of this type.
    std::vector<int> bundle_signs() const {
        switch (classification) {
        case SymmetricClass::ZeroBlock: return {1, -1};
        case SymmetricClass::PairedPlus: return {1};
        case SymmetricClass::PairedMinus: return {-1};
        }
        return {};
    }
};

/// Splits a tau0-fixed degree-zero type and classifies it for crosscap index i.
inline SymmetricTypeClass classify_symmetric(const HNType& mu, int cross) {
    if (cross != 1 && cross != 2) throw InvalidInput("symmetric classification needs i in {1,2}");
    if (mu.degree() != 0 || !is_tau0_fixed(mu))
        throw InvalidInput("type " + mu.str() + " is not tau0-fixed of degree zero");

    SymmetricTypeClass cls{mu, {}, 0, 0, 0, cross, SymmetricClass::ZeroBlock};
    for (const auto& b : mu.blocks()) {
        if (b.degree > 0) {
            cls.positive_blocks.push_back(b);
            cls.n_prime += b.size;
            cls.nu_degree += b.degree;
        } else if (b.degree == 0) {
            cls.n0 = b.size;
        }
    }
    if (cls.n0 > 0)
        cls.classification = SymmetricClass::ZeroBlock;
    else
        cls.classification = cls.parity_sign() == 1 ? SymmetricClass::PairedPlus : SymmetricClass::PairedMinus;
    return cls;
}

/// Diagonal of X_mu = -2 pi sqrt(-1) diag(mu_1, ..., mu_n).
inline std::vector<std::complex<double>> x_mu(const HNType& mu) {
    std::vector<std::complex<double>> out;
    for (const auto& e : mu.entries())
        out.emplace_back(0.0, -2.0 * std::numbers::pi * static_cast<double>(e));
    return out;
}

/// Power sums (sum mu_i, sum mu_i^2, ..., sum mu_i^n); injective on types of rank n.
inline std::vector<Rational> separating_invariant(const HNType& mu) {
    const auto es = mu.entries();
    std::vector<Rational> out(es.size(), Rational(0));
    for (const auto& e : es) {
        Rational p = e;
        for (auto& s : out) {
            s += p;
            p *= e;
        }
    }
    return out;
}

} // namespace ymstrata
