#pragma once

// Equivariant Poincare series of Yang-Mills strata: the Atiyah-Bott
// recursion over orientable surfaces and the product reductions over
// nonorientable ones.

#include "ymstrata/enumerate.hpp"
#include "ymstrata/errors.hpp"
#include "ymstrata/hn_types.hpp"
#include "ymstrata/morse.hpp"
#include "ymstrata/series.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace ymstrata {

/// P_t(BG(P)) for a U(n)-bundle over a genus-g surface:
/// prod_{k<=n} (1+t^{2k-1})^{2g} / (prod_{k<n} (1-t^{2k})^2 (1-t^{2n})).
inline TruncatedSeries bg_series(int n, int genus, int degree) {
    if (n < 1) throw InvalidInput("bg_series: rank must be positive");
    if (genus < 0) throw InvalidInput("bg_series: genus must be nonnegative");
    std::vector<SeriesFactor> num, den;
    for (int k = 1; k <= n; ++k) num.push_back({1, 2 * k - 1, 2 * genus});
    for (int k = 1; k < n; ++k) den.push_back({-1, 2 * k, 2});
    den.push_back({-1, 2 * n, 1});
    return expand_rational(num, den, degree);
}

namespace detail {

// series of lower degree, multiplied by t^shift and placed in degree D
inline TruncatedSeries place(const TruncatedSeries& s, int shift, int degree) {
    TruncatedSeries out(degree);
    for (int j = 0; j <= s.degree() && j + shift <= degree; ++j) out[j + shift] = s[j];
    return out;
}

inline void require_poincare_shape(const TruncatedSeries& s, const std::string& what) {
    if (s[0] != 1) throw ConsistencyError(what + ": constant term is " + s[0].str() + ", expected 1");
    for (int j = 0; j <= s.degree(); ++j)
        if (s[j] < 0 || !is_integral(s[j]))
            throw ConsistencyError(what + ": coefficient of t^" + std::to_string(j) + " is " + s[j].str());
}

inline std::int64_t mod_floor(std::int64_t k, std::int64_t n) {
    const auto r = k % n;
    return r < 0 ? r + n : r;
}

} // namespace detail

/// Memoized Atiyah-Bott recursion for P_t^{U(n)}(V_ss(P^{n,k})) over a
/// genus-g surface. Lookups take a shared lock; insertions an exclusive one.
/// Two threads may compute the same entry; the results agree.
class PoincareEngine {
public:
    TruncatedSeries vss_series(int n, std::int64_t k, int genus, int degree) {
        if (n < 1) throw InvalidInput("vss_series: rank must be positive");
        if (genus < 1) throw InvalidInput("vss_series: genus must be at least 1");
        if (degree < 0) throw InvalidInput("vss_series: degree must be nonnegative");
        const Key key{n, detail::mod_floor(k, n), genus};
        {
            std::shared_lock lock(mutex_);
            const auto it = memo_.find(key);
            if (it != memo_.end() && it->second.degree() >= degree) return it->second.truncated(degree);
        }
        auto result = compute(n, std::get<1>(key), genus, degree);
        detail::require_poincare_shape(result, "vss_series(" + std::to_string(n) + "," + std::to_string(k) + ")");
        {
            std::unique_lock lock(mutex_);
            const auto [it, inserted] = memo_.try_emplace(key, result);
            if (!inserted && it->second.degree() < degree) it->second = result;
        }
        return result;
    }

    /// Product of vss_series over the blocks of mu.
    TruncatedSeries stratum_series_orientable(const HNType& mu, int genus, int degree) {
        auto out = TruncatedSeries::one(degree);
        for (const auto& b : mu.blocks()) out *= vss_series(b.size, b.degree, genus, degree);
        return out;
    }

    void clear() {
        std::unique_lock lock(mutex_);
        memo_.clear();
    }

    std::size_t cache_size() const {
        std::shared_lock lock(mutex_);
        return memo_.size();
    }

private:
    using Key = std::tuple<int, std::int64_t, int>;

    TruncatedSeries compute(int n, std::int64_t k, int genus, int degree) {
        auto out = bg_series(n, genus, degree);
        for (const auto& mu : enumerate_types(n, k, Surface::orientable(genus), degree / 2)) {
            if (mu.is_semistable()) continue;
            const auto shift = 2 * codim_orientable(mu, genus);
            const int rest = degree - static_cast<int>(shift);
            out -= detail::place(stratum_series_orientable(mu, genus, rest), static_cast<int>(shift), degree);
        }
        return out;
    }

    mutable std::shared_mutex mutex_;
    std::map<Key, TruncatedSeries> memo_;
};

inline PoincareEngine& default_engine() {
    static PoincareEngine engine;
    return engine;
}

inline TruncatedSeries vss_series(int n, std::int64_t k, int genus, int degree) {
    return default_engine().vss_series(n, k, genus, degree);
}

inline TruncatedSeries stratum_series_orientable(const HNType& mu, int genus, int degree) {
    return default_engine().stratum_series_orientable(mu, genus, degree);
}

/// Key of a flat factor P_t^{U(n0)}(V_ss(Sigma^ell_i, P^{n0,sign})).
struct FlatKey {
    int n0 = 1;
    int ell = 0;
    int cross = 1;
    int sign = 1;
    auto operator<=>(const FlatKey&) const = default;
};

/// A flat factor given either as an exact polynomial or as a factored
/// rational function.
struct FlatEntry {
    std::optional<std::vector<Rational>> poly;
    std::optional<FactoredRational> rat;

    TruncatedSeries expand(int degree) const {
        if (poly) return TruncatedSeries(degree, *poly);
        return rat->expand(degree);
    }
};

/// Externally supplied flat-part series of the nonorientable strata. A
/// missing entry is reported as unknown; the rank-one factor
/// (1+t)^{2 ell + i - 1}/(1-t^2) is built in and an explicit entry overrides it.
class FlatSeriesTable {
public:
    void set(const FlatKey& key, FlatEntry entry) {
        validate(key);
        if (!entry.poly && !entry.rat) throw InvalidInput("flat table entry has no series");
        entries_[key] = std::move(entry);
    }

    void set_polynomial(const FlatKey& key, std::vector<Rational> coeffs) { set(key, FlatEntry{std::move(coeffs), std::nullopt}); }
    void set_rational(const FlatKey& key, FactoredRational r) { set(key, FlatEntry{std::nullopt, std::move(r)}); }

    bool contains(const FlatKey& key) const { return entries_.count(key) != 0; }
    std::size_t size() const noexcept { return entries_.size(); }

    std::optional<TruncatedSeries> lookup(const FlatKey& key, int degree) const {
        validate(key);
        if (const auto it = entries_.find(key); it != entries_.end()) return it->second.expand(degree);
        if (key.n0 == 1) return builtin_rank_one(key.ell, key.cross, degree);
        return std::nullopt;
    }

    static TruncatedSeries builtin_rank_one(int ell, int cross, int degree) {
        return expand_rational({{1, 1, 2 * ell + cross - 1}}, {{-1, 2, 1}}, degree);
    }

    /// Reads records "n0 ell i sign poly: c0 c1 ..." or
    /// "n0 ell i sign rat: (1+t)^2 / (1-t^2)"; commas count as blanks and
    /// '#' starts a comment.
    static FlatSeriesTable parse(std::istream& in) {
        FlatSeriesTable table;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
            try {
                table.parse_record(line);
            } catch (const InvalidInput& e) {
                throw InvalidInput("flat table line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        return table;
    }

    static FlatSeriesTable parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    static FlatSeriesTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open flat table '" + path + "'");
        return parse(in);
    }

private:
    static void validate(const FlatKey& k) {
        if (k.n0 < 1 || k.ell < 0 || (k.cross != 1 && k.cross != 2) || (k.sign != 1 && k.sign != -1))
            throw InvalidInput("invalid flat table key");
    }

    static std::string blank_commas(std::string s) {
        for (auto& ch : s)
            if (ch == ',') ch = ' ';
        return s;
    }

    static int parse_sign(const std::string& tok) {
        if (tok == "+" || tok == "+1" || tok == "1") return 1;
        if (tok == "-" || tok == "-1") return -1;
        throw InvalidInput("bad sign '" + tok + "'");
    }

    static int parse_int(const std::string& tok, const char* what) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty()) throw InvalidInput(std::string("bad ") + what + " '" + tok + "'");
        return v;
    }

    void parse_record(const std::string& line) {
        std::size_t tag = line.find("poly:");
        bool is_poly = tag != std::string::npos;
        std::size_t tag_len = 5;
        if (!is_poly) {
            tag = line.find("rat:");
            tag_len = 4;
            if (tag == std::string::npos) throw InvalidInput("expected 'poly:' or 'rat:'");
        }
        std::istringstream head(blank_commas(line.substr(0, tag)));
        std::vector<std::string> toks;
        for (std::string t; head >> t;) toks.push_back(t);
        if (toks.size() != 4) throw InvalidInput("expected four fields n0 ell i sign before the series");
        const FlatKey key{parse_int(toks[0], "n0"), parse_int(toks[1], "ell"), parse_int(toks[2], "i"),
                          parse_sign(toks[3])};
        const std::string body = line.substr(tag + tag_len);
        if (is_poly) {
            std::istringstream cs(blank_commas(body));
            std::vector<Rational> coeffs;
            for (std::string t; cs >> t;) {
                try {
                    coeffs.emplace_back(t);
                } catch (const std::exception&) {
                    throw InvalidInput("bad coefficient '" + t + "'");
                }
            }
            if (coeffs.empty()) throw InvalidInput("empty polynomial");
            set_polynomial(key, std::move(coeffs));
        } else {
            set_rational(key, parse_factored(body));
        }
    }

    std::map<FlatKey, FlatEntry> entries_;
};

/// Series of the nonorientable stratum of type cls on the bundle with the
/// given sign; nullopt when its flat factor is not known.
inline std::optional<TruncatedSeries> stratum_series_nonorientable(const SymmetricTypeClass& cls, int sign,
                                                                   const Surface& surface,
                                                                   const FlatSeriesTable& flat_table, int degree,
                                                                   PoincareEngine& engine = default_engine()) {
    if (surface.is_orientable()) throw InvalidInput("stratum_series_nonorientable needs a nonorientable surface");
    if (cls.cross != surface.cross()) throw InvalidInput("symmetric class was computed for a different crosscap index");
    if (sign != 1 && sign != -1) throw InvalidInput("bundle sign must be +1 or -1");

    const int g = surface.double_cover_genus();
    auto out = TruncatedSeries::one(degree);
    if (cls.classification == SymmetricClass::ZeroBlock) {
        const auto flat =
            flat_table.lookup(FlatKey{cls.n0, surface.ell(), surface.cross(), sign * cls.parity_sign()}, degree);
        if (!flat) return std::nullopt;
        out = *flat;
    } else if (sign != cls.parity_sign()) {
        throw EmptyStratumError("type " + cls.mu.str() + " has no stratum on the bundle of sign " +
                                std::to_string(sign));
    }
    for (const auto& b : cls.positive_blocks) out *= engine.vss_series(b.size, b.degree, g, degree);
    detail::require_poincare_shape(out, "stratum series of " + cls.mu.str());
    return out;
}

struct MorseTerm {
    StratumRecord record;
    std::optional<TruncatedSeries> series; ///< empty when unknown
};

/// Sum of t^{lambda_mu} P_t(stratum) over the strata with lambda_mu <= D.
/// Strata whose series is unknown are listed and left out of the sum.
struct MorseReport {
    TruncatedSeries sum;
    std::vector<MorseTerm> terms;

    bool complete() const {
        for (const auto& t : terms)
            if (!t.series) return false;
        return true;
    }

    std::vector<StratumRecord> unknown() const {
        std::vector<StratumRecord> out;
        for (const auto& t : terms)
            if (!t.series) out.push_back(t.record);
        return out;
    }
};

/// bundle is the degree k over an orientable surface and the sign +1/-1 otherwise.
inline MorseReport morse_series(int n, std::int64_t bundle, const Surface& surface, const FlatSeriesTable& flat_table,
                                int degree, PoincareEngine& engine = default_engine()) {
    if (degree < 0) throw InvalidInput("morse_series: degree must be nonnegative");
    MorseReport report{TruncatedSeries(degree), {}};
    if (surface.is_orientable()) {
        for (const auto& mu : enumerate_types(n, bundle, surface, degree / 2)) {
            auto rec = orientable_record(mu, surface);
            const int lambda = static_cast<int>(rec.real_codim);
            auto s = engine.stratum_series_orientable(mu, surface.ell(), degree - lambda);
            report.sum += detail::place(s, lambda, degree);
            report.terms.push_back({std::move(rec), std::move(s)});
        }
        return report;
    }
    if (bundle != 1 && bundle != -1) throw InvalidInput("morse_series: bundle sign must be +1 or -1");
    const int sign = static_cast<int>(bundle);
    for (const auto& cls : enumerate_symmetric(n, surface, degree)) {
        const auto signs = cls.bundle_signs();
        if (std::find(signs.begin(), signs.end(), sign) == signs.end()) continue;
        auto rec = nonorientable_record(cls, sign, surface);
        const int lambda = static_cast<int>(rec.real_codim);
        auto s = stratum_series_nonorientable(cls, sign, surface, flat_table, degree - lambda, engine);
        if (s) report.sum += detail::place(*s, lambda, degree);
        report.terms.push_back({std::move(rec), std::move(s)});
    }
    return report;
}

} // namespace ymstrata
