// One PASS/FAIL line per acceptance criterion; nonzero exit on any FAIL.

#include "oracles.hpp"

#include "ymstrata/cli.hpp"
#include "ymstrata/enumerate.hpp"
#include "ymstrata/hn_types.hpp"
#include "ymstrata/morse.hpp"
#include "ymstrata/poincare.hpp"
#include "ymstrata/repvar/verify.hpp"
#include "ymstrata/series.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ymstrata;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

HNType pair_type(std::int64_t m) { return HNType({Block{1, m}, Block{1, -m}}); }
HNType triple_type(std::int64_t r) { return HNType({Block{1, r}, Block{1, 0}, Block{1, -r}}); }

Outcome codim_regression() {
    Outcome o;
    int checked = 0;
    for (int ell = 1; ell <= 3; ++ell)
        for (int i = 1; i <= 2; ++i) {
            const Surface s(ell, i);
            for (int r = 1; r <= 5; ++r) {
                const std::int64_t even = codim_nonorientable(classify_symmetric(pair_type(2 * r), i), s);
                const std::int64_t odd = codim_nonorientable(classify_symmetric(pair_type(2 * r - 1), i), s);
                const std::int64_t tri = codim_nonorientable(classify_symmetric(triple_type(r), i), s);
                if (even != 4 * r + 2 * ell + i - 2) o.fail("(2r,-2r) at l=" + std::to_string(ell));
                if (odd != 4 * r + 2 * ell + i - 4) o.fail("(2r-1,1-2r) at l=" + std::to_string(ell));
                if (tri != 4 * r + 3 * (2 * ell + i - 2)) o.fail("(r,0,-r) at l=" + std::to_string(ell));
                checked += 3;
            }
        }
    o.detail = o.pass ? std::to_string(checked) + " codimensions exact" : o.detail;
    return o;
}

Outcome stratum_series_regression() {
    Outcome o;
    const FlatSeriesTable empty;
    const int D = 30;
    int checked = 0;
    for (int ell = 1; ell <= 3; ++ell)
        for (int i = 1; i <= 2; ++i) {
            const Surface s(ell, i);
            const int G = 2 * ell + i - 1;
            const auto two = expand_rational({{1, 1, 2 * G}}, {{-1, 2, 1}}, D);
            const auto three = expand_rational({{1, 1, 3 * G}}, {{-1, 2, 2}}, D);
            for (int r = 1; r <= 5; ++r) {
                const auto cls2 = classify_symmetric(pair_type(r), i);
                const auto got2 = stratum_series_nonorientable(cls2, cls2.parity_sign(), s, empty, D);
                if (!got2 || *got2 != two) o.fail("n=2 (r,-r) r=" + std::to_string(r) + " l=" + std::to_string(ell));
                const auto cls3 = classify_symmetric(triple_type(r), i);
                for (int sign : {1, -1}) {
                    const auto got3 = stratum_series_nonorientable(cls3, sign, s, empty, D);
                    if (!got3 || *got3 != three) o.fail("n=3 (r,0,-r) r=" + std::to_string(r));
                }
                checked += 3;
            }
        }
    o.detail = o.pass ? std::to_string(checked) + " series equal to degree 30" : o.detail;
    return o;
}

std::vector<std::string> cli_rows(int n, int ell, int i, std::int64_t bound) {
    const std::vector<std::string> args{"ymstrata", "strata",      "--n",    std::to_string(n), "--ell",
                                        std::to_string(ell), "--i", std::to_string(i), "--max-codim",
                                        std::to_string(bound), "--format", "json"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0) return {"<error: " + err.str() + ">"};
    const auto j = nlohmann::json::parse(out.str());
    std::vector<std::string> rows;
    for (const auto& r : j.at("strata"))
        rows.push_back(r.at("mu").get<std::string>() + (r.at("sign").get<int>() > 0 ? "+" : "-") + " " +
                       r.at("class").get<std::string>());
    std::sort(rows.begin(), rows.end());
    return rows;
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : "; ") + x;
    return out;
}

Outcome component_indexing() {
    Outcome o;
    const std::int64_t bound = 16;
    for (int ell = 1; ell <= 3; ++ell)
        for (int i = 1; i <= 2; ++i) {
            const int c = 2 * ell + i - 2;
            // rank two: (0,0) on both signs; (m,-m) on sign + iff m + i is even
            std::vector<std::string> want2{"(0,0)+ ZERO_BLOCK", "(0,0)- ZERO_BLOCK"};
            for (int m = 1; 2 * m + c <= bound; ++m) {
                const bool plus = (m + i) % 2 == 0;
                want2.push_back(pair_type(m).str() + (plus ? "+ PAIRED_PLUS" : "- PAIRED_MINUS"));
            }
            std::sort(want2.begin(), want2.end());
            if (const auto got = cli_rows(2, ell, i, bound); got != want2)
                o.fail("rank 2 list at l=" + std::to_string(ell) + " i=" + std::to_string(i) + ": " + join(got));
            // rank three: (0,0,0) and (r,0,-r), both signs, all zero-block
            std::vector<std::string> want3;
            for (int r = 0; 4 * r + 3 * c <= bound || r == 0; ++r)
                for (const char* sg : {"+", "-"})
                    want3.push_back((r == 0 ? HNType::semistable(3, 0) : triple_type(r)).str() + sg + " ZERO_BLOCK");
            std::sort(want3.begin(), want3.end());
            if (const auto got = cli_rows(3, ell, i, bound); got != want3)
                o.fail("rank 3 list at l=" + std::to_string(ell) + " i=" + std::to_string(i) + ": " + join(got));
        }
    for (int n : {1, 3, 5})
        for (int ell = 1; ell <= 2; ++ell)
            for (int i = 1; i <= 2; ++i)
                for (const auto& row : cli_rows(n, ell, i, 12))
                    if (row.find("ZERO_BLOCK") == std::string::npos) o.fail("odd rank " + std::to_string(n) + ": " + row);
    if (o.pass) o.detail = "rank 2 and rank 3 lists exact; odd ranks only zero-block";
    return o;
}

Outcome perfectness() {
    Outcome o;
    const int D = 24;
    for (int n : {2, 3})
        for (int k : {0, 1})
            for (int g : {2, 3}) {
                TruncatedSeries sum(D);
                for (const auto& mu : enumerate_types(n, k, Surface::orientable(g), D / 2)) {
                    const int lam = static_cast<int>(2 * codim_orientable(mu, g));
                    TruncatedSeries term = TruncatedSeries::one(D - lam);
                    for (const auto& b : mu.blocks()) term = term * vss_series(b.size, b.degree, g, D - lam);
                    sum = sum + detail::place(term, lam, D);
                }
                if (!(bg_series(n, g, D) - sum).is_zero())
                    o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " g=" + std::to_string(g));
            }
    if (o.pass) o.detail = "difference is zero to degree 24 on 8 cases";
    return o;
}

Outcome duality() {
    Outcome o;
    for (int g : {2, 3}) {
        const int top = 2 * (4 * (g - 1) + 1);
        const int D = top + 12;
        const auto p = vss_series(2, 1, g, D) * expand_rational({{-1, 2, 1}}, {}, D);
        std::vector<Rational> poly(p.coeffs().begin(), p.coeffs().begin() + top + 1);
        for (int j = top + 1; j <= D; ++j)
            if (p[j] != 0) o.fail("g=" + std::to_string(g) + " not a polynomial");
        if (p[top] == 0) o.fail("g=" + std::to_string(g) + " wrong degree");
        if (p[0] != 1) o.fail("g=" + std::to_string(g) + " constant term");
        if (!oracle::is_palindrome(poly)) o.fail("g=" + std::to_string(g) + " not palindromic");
        if (!p.has_nonnegative_integer_coeffs()) o.fail("g=" + std::to_string(g) + " coefficients");
    }
    if (o.pass) o.detail = "palindromic nonnegative polynomials of degree 8g-6";
    return o;
}

Outcome periodicity() {
    Outcome o;
    for (int k : {0, 1})
        for (int g : {2, 3})
            if (vss_series(2, k, g, 24) != vss_series(2, k + 2, g, 24))
                o.fail("k=" + std::to_string(k) + " g=" + std::to_string(g));
    if (o.pass) o.detail = "k and k+2 agree";
    return o;
}

Outcome lemma_suite() {
    Outcome o;
    const repvar::LemmaTolerances tol{1e-9, 1e-9, 1e-10, 1e-12, 1e-12};
    int total = 0;
    double worst_rt = 0, worst_tau = 0, worst_fix = 0, worst_mem = 0;
    for (int n = 1; n <= 3; ++n)
        for (int ell = 0; ell <= 3; ++ell)
            for (int i = 1; i <= 2; ++i) {
                const auto st = repvar::lemma_trials(n, ell, i, 1000, 20261019, tol);
                total += st.trials;
                worst_rt = std::max(worst_rt, st.round_trip);
                worst_tau = std::max(worst_tau, st.tau_square);
                worst_fix = std::max(worst_fix, st.embed_fixed);
                worst_mem = std::max({worst_mem, st.membership, st.phi_image, st.tau_membership, st.embed_membership});
                if (!st.pass())
                    o.fail(st.to_json().dump());
            }
    if (o.pass) {
        std::ostringstream os;
        os << total << " trials, max membership " << cli::detail::fmt(worst_mem) << ", round trip "
           << cli::detail::fmt(worst_rt) << ", tau^2 " << cli::detail::fmt(worst_tau) << ", embed "
           << cli::detail::fmt(worst_fix);
        o.detail = os.str();
    }
    return o;
}

Outcome witness_nonemptiness() {
    Outcome o;
    int points = 0, forbidden = 0;
    for (int n = 1; n <= 4; ++n)
        for (int ell = 1; ell <= 2; ++ell)
            for (int i = 1; i <= 2; ++i) {
                const auto st = repvar::witness_suite(n, ell, i, 12, 1e-10);
                points += st.witnesses;
                forbidden += st.forbidden_checked;
                if (!st.pass()) o.fail(st.to_json().dump());
            }
    if (o.pass)
        o.detail = std::to_string(points) + " witnesses, " + std::to_string(forbidden) + " forbidden signs rejected";
    return o;
}

Outcome obstruction_laws() {
    Outcome o;
    const auto st = repvar::obstruction_suite(1000, 20261019);
    if (!st.identity_trivial) o.fail("o(identity) != +1");
    if (!st.pi_pair_nontrivial) o.fail("pi-rotation pair not -1");
    if (st.failures > 0) o.fail(std::to_string(st.failures) + " trial failures");
    if (st.nontrivial_seen == 0) o.fail("no nontrivial class sampled");
    if (o.pass)
        o.detail = std::to_string(st.trials) + " trials, " + std::to_string(st.nontrivial_seen) + " with o' = -1";
    return o;
}

Outcome series_engine() {
    Outcome o;
    std::mt19937_64 rng(40);
    std::uniform_int_distribution<int> count(0, 4), ex(1, 6), pw(0, 5), sg(0, 1);
    auto factors = [&] {
        std::vector<SeriesFactor> fs(static_cast<std::size_t>(count(rng)));
        for (auto& f : fs) f = SeriesFactor{sg(rng) ? 1 : -1, ex(rng), pw(rng)};
        return fs;
    };
    for (int t = 0; t < 50; ++t) {
        const auto num = factors();
        const auto den = factors();
        if (expand_rational(num, den, 40).coeffs() != oracle::naive_expand(num, den, 40))
            o.fail("case " + std::to_string(t));
    }
    if (o.pass) o.detail = "50 cases equal to degree 40";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"codimension regression", codim_regression},
        {"stratum series regression", stratum_series_regression},
        {"component indexing", component_indexing},
        {"orientable perfectness", perfectness},
        {"coprime duality", duality},
        {"degree periodicity", periodicity},
        {"lemma verification suite", lemma_suite},
        {"witness nonemptiness", witness_nonemptiness},
        {"obstruction laws", obstruction_laws},
        {"series engine sanity", series_engine},
    };
    int failed = 0;
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        Outcome o;
        try {
            o = criteria[j].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << j + 1 << ' ' << criteria[j].first << ": " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
