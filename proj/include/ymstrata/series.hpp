#pragma once

// Power series in t truncated at a fixed degree, with exact rational
// coefficients, and expansion of products of (1 +- t^a)^b.

#include "ymstrata/errors.hpp"
#include "ymstrata/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ymstrata {

class TruncatedSeries {
public:
    /// The zero series to degree D.
    explicit TruncatedSeries(int degree) : coeffs_(checked_size(degree), Rational(0)) {}

    TruncatedSeries(int degree, const std::vector<Rational>& coeffs) : TruncatedSeries(degree) {
        const auto m = std::min(coeffs.size(), coeffs_.size());
        std::copy_n(coeffs.begin(), m, coeffs_.begin());
    }

    static TruncatedSeries one(int degree) {
        TruncatedSeries s(degree);
        s.coeffs_[0] = 1;
        return s;
    }

    /// t^power truncated; zero if power > degree.
    static TruncatedSeries monomial(int power, int degree) {
        TruncatedSeries s(degree);
        if (power < 0) throw InvalidInput("negative monomial exponent");
        if (power <= degree) s.coeffs_[static_cast<std::size_t>(power)] = 1;
        return s;
    }

    static TruncatedSeries from_integers(int degree, const std::vector<std::int64_t>& cs) {
        TruncatedSeries s(degree);
        for (std::size_t j = 0; j < cs.size() && j < s.coeffs_.size(); ++j) s.coeffs_[j] = cs[j];
        return s;
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    const Rational& operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
    Rational& operator[](int j) { return coeffs_.at(static_cast<std::size_t>(j)); }

    /// Same series, cut down to a lower degree.
    TruncatedSeries truncated(int degree) const {
        if (degree > this->degree()) throw InvalidInput("cannot raise the truncation degree of a series");
        return TruncatedSeries(degree, coeffs_);
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
    }

    /// t^power * this, kept at this degree.
    TruncatedSeries shifted(int power) const {
        if (power < 0) throw InvalidInput("negative shift");
        TruncatedSeries out(degree());
        for (int j = power; j <= degree(); ++j) out.coeffs_[static_cast<std::size_t>(j)] = coeffs_[static_cast<std::size_t>(j - power)];
        return out;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        same_degree(o);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        return *this;
    }

    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        same_degree(o);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
        return *this;
    }

    TruncatedSeries& operator*=(const TruncatedSeries& o) {
        *this = *this * o;
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.same_degree(b);
        const int D = a.degree();
        TruncatedSeries out(D);
        for (int i = 0; i <= D; ++i) {
            const Rational& ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (ai == 0) continue;
            for (int j = 0; i + j <= D; ++j) {
                const Rational& bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (bj != 0) out.coeffs_[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        return out;
    }

    /// this / divisor; the divisor must have a nonzero constant term.
    TruncatedSeries divided_by(const TruncatedSeries& divisor) const {
        same_degree(divisor);
        const Rational& c0 = divisor.coeffs_[0];
        if (c0 == 0) throw InvalidInput("series division by a series with zero constant term");
        TruncatedSeries q(degree());
        for (int j = 0; j <= degree(); ++j) {
            Rational acc = coeffs_[static_cast<std::size_t>(j)];
            for (int i = 1; i <= j; ++i)
                acc -= divisor.coeffs_[static_cast<std::size_t>(i)] * q.coeffs_[static_cast<std::size_t>(j - i)];
            q.coeffs_[static_cast<std::size_t>(j)] = acc / c0;
        }
        return q;
    }

    bool has_nonnegative_integer_coeffs() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const Rational& c) { return c >= 0 && is_integral(c); });
    }

    /// Coefficients as decimal strings (integers stay integers, others "p/q").
    std::vector<std::string> coeff_strings() const {
        std::vector<std::string> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(c.str());
        return out;
    }

    /// "c0 + c1*t + c2*t^2 + ... + O(t^{D+1})"
    std::string to_text() const {
        std::ostringstream os;
        for (int j = 0; j <= degree(); ++j) {
            const auto c = coeffs_[static_cast<std::size_t>(j)].str();
            if (j == 0) os << c;
            else if (j == 1) os << " + " << c << "*t";
            else os << " + " << c << "*t^" << j;
        }
        os << " + O(t^{" << degree() + 1 << "})";
        return os.str();
    }

    nlohmann::json to_json() const { return nlohmann::json{{"degree", degree()}, {"coefficients", coeff_strings()}}; }

    static TruncatedSeries from_json(const nlohmann::json& j) {
        const int D = j.at("degree").get<int>();
        const auto cs = j.at("coefficients").get<std::vector<std::string>>();
        if (cs.size() != static_cast<std::size_t>(D) + 1)
            throw InvalidInput("series json: coefficient count does not match degree");
        TruncatedSeries s(D);
        for (std::size_t i = 0; i < cs.size(); ++i) s.coeffs_[i] = Rational(cs[i]);
        return s;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    static std::size_t checked_size(int degree) {
        if (degree < 0) throw InvalidInput("truncation degree must be nonnegative");
        return static_cast<std::size_t>(degree) + 1;
    }

    void same_degree(const TruncatedSeries& o) const {
        if (o.degree() != degree()) throw InvalidInput("series truncation degrees differ");
    }

    std::vector<Rational> coeffs_;
};

/// The factor (1 + sign * t^exponent)^power.
struct SeriesFactor {
    int sign = 1;     ///< +1 or -1
    int exponent = 1; ///< a >= 0
    int power = 1;    ///< b >= 0
    friend bool operator==(const SeriesFactor&, const SeriesFactor&) = default;
};

namespace detail {

inline void validate(const SeriesFactor& f) {
    if (f.sign != 1 && f.sign != -1) throw InvalidInput("series factor sign must be +1 or -1");
    if (f.exponent < 0 || f.power < 0) throw InvalidInput("series factor exponent and power must be nonnegative");
}

// series *= (1 + s t^a), in place, high degrees first
inline void multiply_binomial(TruncatedSeries& x, int sign, int a) {
    const int D = x.degree();
    if (a == 0) {
        for (int j = 0; j <= D; ++j) x[j] *= (1 + sign);
        return;
    }
    for (int j = D; j >= a; --j) x[j] += sign * x[j - a];
}

// series /= (1 + s t^a), in place, low degrees first
inline void divide_binomial(TruncatedSeries& x, int sign, int a) {
    const int D = x.degree();
    if (a == 0) {
        if (sign == -1) throw InvalidInput("denominator factor (1 - t^0) vanishes");
        for (int j = 0; j <= D; ++j) x[j] /= 2;
        return;
    }
    for (int j = a; j <= D; ++j) x[j] -= sign * x[j - a];
}

} // namespace detail

/// Prod (1 +- t^a)^b over the numerator divided by the same over the
/// denominator, expanded exactly to degree D.
inline TruncatedSeries expand_rational(const std::vector<SeriesFactor>& numerator,
                                       const std::vector<SeriesFactor>& denominator, int degree) {
    for (const auto& f : numerator) detail::validate(f);
    for (const auto& f : denominator) {
        detail::validate(f);
        if (f.exponent == 0 && f.sign == -1 && f.power > 0)
            throw InvalidInput("denominator has zero constant term");
    }
    auto out = TruncatedSeries::one(degree);
    for (const auto& f : numerator)
        for (int r = 0; r < f.power; ++r) detail::multiply_binomial(out, f.sign, f.exponent);
    for (const auto& f : denominator)
        for (int r = 0; r < f.power; ++r) detail::divide_binomial(out, f.sign, f.exponent);
    return out;
}

/// A factored rational function, as read from and written to text.
struct FactoredRational {
    std::vector<SeriesFactor> numerator;
    std::vector<SeriesFactor> denominator;

    TruncatedSeries expand(int degree) const { return expand_rational(numerator, denominator, degree); }
};

namespace detail {

inline std::string factor_text(const SeriesFactor& f) {
    std::ostringstream os;
    os << "(1" << (f.sign > 0 ? '+' : '-') << "t";
    if (f.exponent != 1) os << '^' << f.exponent;
    os << ')';
    if (f.power != 1) os << '^' << f.power;
    return os.str();
}

class FactorParser {
public:
    explicit FactorParser(std::string_view text) : s_(text) {}

    FactoredRational parse() {
        FactoredRational out;
        parse_product(out.numerator);
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            parse_product(out.denominator);
        }
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return out;
    }

private:
    void parse_product(std::vector<SeriesFactor>& into) {
        skip_ws();
        if (peek() == '1') {
            ++pos_;
            return;
        }
        bool any = false;
        while (true) {
            skip_ws();
            if (peek() != '(') break;
            into.push_back(parse_factor());
            any = true;
            skip_ws();
            if (peek() == '*') ++pos_;
        }
        if (!any) fail("expected a factor '(1+t^a)^b' or '1'");
    }

    SeriesFactor parse_factor() {
        SeriesFactor f;
        expect('(');
        skip_ws();
        expect('1');
        skip_ws();
        const char sgn = get();
        if (sgn != '+' && sgn != '-') fail("expected '+' or '-' inside factor");
        f.sign = sgn == '+' ? 1 : -1;
        skip_ws();
        expect('t');
        f.exponent = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            f.exponent = parse_int();
        }
        skip_ws();
        expect(')');
        f.power = 1;
        if (peek() == '^') {
            ++pos_;
            f.power = parse_int();
        }
        validate(f);
        return f;
    }

    int parse_int() {
        skip_ws();
        const bool braced = peek() == '{';
        if (braced) ++pos_;
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        const int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
        if (braced) expect('}');
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    void expect(char c) {
        if (get() != c) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidInput("factor syntax: " + what + " at column " + std::to_string(pos_ + 1) + " in '" +
                           std::string(s_) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses "(1+t)^4 (1+t^3)^4 / (1-t^2)^2 (1-t^4)"; "1" stands for an empty product.
inline FactoredRational parse_factored(std::string_view text) { return detail::FactorParser(text).parse(); }

inline std::string to_text(const FactoredRational& r) {
    std::ostringstream os;
    if (r.numerator.empty()) os << '1';
    for (std::size_t i = 0; i < r.numerator.size(); ++i) os << (i ? " " : "") << detail::factor_text(r.numerator[i]);
    if (!r.denominator.empty()) {
        os << " /";
        for (const auto& f : r.denominator) os << ' ' << detail::factor_text(f);
    }
    return os.str();
}

} // namespace ymstrata
