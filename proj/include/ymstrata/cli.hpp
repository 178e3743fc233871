#pragma once

// Command-line front end: strata tables, series, the verification harness
// and witness points.

#include "ymstrata/enumerate.hpp"
#include "ymstrata/errors.hpp"
#include "ymstrata/hn_types.hpp"
#include "ymstrata/morse.hpp"
#include "ymstrata/poincare.hpp"
#include "ymstrata/rational.hpp"
#include "ymstrata/repvar/verify.hpp"
#include "ymstrata/repvar/witness.hpp"
#include "ymstrata/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ymstrata::cli {

enum class Exit : int { Ok = 0, Invalid = 1, VerifyFailed = 2, MissingFlatData = 3 };

struct RunConfig {
    std::string subcommand;
    int n = 2;
    std::int64_t k = 0;
    int ell = 1;
    int cross = 0;
    std::int64_t max_codim = 12;
    int degree = 20;
    std::uint64_t seed = 2026;
    int trials = 1000;
    double tol = 1e-9;
    std::string flat_table_path;
    std::string format = "text";
    bool strict = false;
    std::string type;  ///< witness only: entries such as "1/2,1/2"
    int sign = 1;      ///< witness only: bundle sign over nonorientable surfaces
    bool n_set = false;
    bool ell_set = false;
    bool cross_set = false;

    bool json() const { return format == "json"; }

    Surface surface() const { return cross == 0 ? Surface::orientable(ell) : Surface(ell, cross); }

    void validate() const {
        if (n < 1) throw InvalidInput("--n must be positive");
        if (ell < 0) throw InvalidInput("--ell must be nonnegative");
        if (cross < 0 || cross > 2) throw InvalidInput("--i must be 0, 1 or 2");
        if (cross == 0 && ell < 0) throw InvalidInput("genus must be nonnegative");
        if (max_codim < 0) throw InvalidInput("--max-codim must be nonnegative");
        if (degree < 0) throw InvalidInput("--degree must be nonnegative");
        if (trials < 1) throw InvalidInput("--trials must be positive");
        if (!(tol > 0)) throw InvalidInput("--tol must be positive");
        if (format != "text" && format != "json") throw InvalidInput("--format must be text or json");
        if (sign != 1 && sign != -1) throw InvalidInput("--sign must be +1 or -1");
    }
};

/// Parses weakly decreasing entries such as "(1/2,1/2)" or "1 0 -1" into a type.
inline HNType parse_type(const std::string& text) {
    std::string s;
    for (char ch : text) s += (ch == '(' || ch == ')' || ch == ',') ? ' ' : ch;
    std::istringstream is(s);
    std::vector<Rational> es;
    for (std::string tok; is >> tok;) {
        const auto slash = tok.find('/');
        try {
            std::size_t used = 0;
            const long long p = std::stoll(tok.substr(0, slash), &used);
            if (used != tok.substr(0, slash).size()) throw InvalidInput("");
            long long q = 1;
            if (slash != std::string::npos) {
                const auto den = tok.substr(slash + 1);
                q = std::stoll(den, &used);
                if (used != den.size() || q <= 0) throw InvalidInput("");
            }
            es.push_back(make_rational(p, q));
        } catch (const std::exception&) {
            throw InvalidInput("bad type entry '" + tok + "'");
        }
    }
    if (es.empty()) throw InvalidInput("empty type");
    std::vector<Block> bs;
    for (std::size_t j = 0; j < es.size();) {
        std::size_t e = j;
        while (e < es.size() && es[e] == es[j]) ++e;
        const Rational deg = es[j] * static_cast<long long>(e - j);
        if (!is_integral(deg)) throw InvalidInput("type entries do not give integral block degrees");
        bs.push_back(Block{static_cast<int>(e - j), static_cast<std::int64_t>(boost::multiprecision::numerator(deg))});
        j = e;
    }
    return HNType(std::move(bs));
}

namespace detail {

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline std::string sign_str(std::optional<int> s) {
    if (!s) return "";
    return *s > 0 ? "+" : "-";
}

inline nlohmann::json record_json(const StratumRecord& r) {
    nlohmann::json j{{"mu", r.mu.str()}, {"d", r.complex_codim}, {"lambda", r.real_codim}};
    j["sign"] = r.bundle_sign ? nlohmann::json(*r.bundle_sign) : nlohmann::json(nullptr);
    j["class"] = r.classification ? nlohmann::json(to_string(*r.classification)) : nlohmann::json(nullptr);
    return j;
}

inline std::string record_text(const StratumRecord& r) {
    std::string s = r.mu.str() + sign_str(r.bundle_sign);
    s += "  d=" + std::to_string(r.complex_codim) + "  lambda=" + std::to_string(r.real_codim);
    if (r.classification) s += "  " + std::string(to_string(*r.classification));
    return s;
}

inline FlatSeriesTable load_table(const RunConfig& cfg) {
    return cfg.flat_table_path.empty() ? FlatSeriesTable{} : FlatSeriesTable::load(cfg.flat_table_path);
}

} // namespace detail

inline Exit cmd_strata(const RunConfig& cfg, std::ostream& out) {
    const Surface surface = cfg.surface();
    std::vector<StratumRecord> rows;
    int zero = 0, plus = 0, minus = 0;
    if (surface.is_orientable()) {
        for (const auto& mu : enumerate_types(cfg.n, cfg.k, surface, cfg.max_codim))
            rows.push_back(orientable_record(mu, surface));
    } else {
        for (const auto& cls : enumerate_symmetric(cfg.n, surface, cfg.max_codim)) {
            if (codim_nonorientable(cls, surface) > cfg.max_codim) continue;
            switch (cls.classification) {
            case SymmetricClass::ZeroBlock: ++zero; break;
            case SymmetricClass::PairedPlus: ++plus; break;
            case SymmetricClass::PairedMinus: ++minus; break;
            }
            for (int sign : cls.bundle_signs()) rows.push_back(nonorientable_record(cls, sign, surface));
        }
    }
    if (cfg.json()) {
        nlohmann::json j{{"n", cfg.n}, {"l", cfg.ell}, {"i", cfg.cross}, {"max_codim", cfg.max_codim}};
        if (surface.is_orientable()) j["k"] = cfg.k;
        auto arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back(detail::record_json(r));
        j["strata"] = arr;
        if (!surface.is_orientable())
            j["components"] = {{"zero_block", zero}, {"paired_plus", plus}, {"paired_minus", minus},
                               {"total", 2 * zero + plus + minus}};
        out << j.dump(2) << '\n';
    } else {
        out << "strata n=" << cfg.n << " l=" << cfg.ell << " i=" << cfg.cross;
        if (surface.is_orientable()) out << " k=" << cfg.k;
        out << " max_codim=" << cfg.max_codim << '\n';
        for (const auto& r : rows) out << detail::record_text(r) << '\n';
        if (!surface.is_orientable())
            out << "components: " << zero << " zero-block x 2 signs, " << plus << " paired(+), " << minus
                << " paired(-), total " << 2 * zero + plus + minus << '\n';
    }
    return Exit::Ok;
}

inline Exit cmd_series(const RunConfig& cfg, std::ostream& out) {
    const Surface surface = cfg.surface();
    const auto table = detail::load_table(cfg);
    nlohmann::json j{{"n", cfg.n}, {"l", cfg.ell}, {"i", cfg.cross}, {"degree", cfg.degree}};
    std::ostringstream text;
    bool missing = false;

    auto emit_report = [&](const MorseReport& rep, nlohmann::json& node) {
        auto terms = nlohmann::json::array();
        for (const auto& t : rep.terms) {
            auto tj = detail::record_json(t.record);
            tj["series"] = t.series ? t.series->to_json() : nlohmann::json("UNKNOWN");
            terms.push_back(tj);
            text << "  t^" << t.record.real_codim << " * P[" << t.record.mu.str()
                 << detail::sign_str(t.record.bundle_sign) << "] = " << (t.series ? t.series->to_text() : "UNKNOWN")
                 << '\n';
        }
        node["terms"] = terms;
        node["sum"] = rep.sum.to_json();
        node["complete"] = rep.complete();
        text << "  sum = " << rep.sum.to_text() << '\n';
        if (!rep.complete()) {
            missing = true;
            text << "  UNKNOWN terms:";
            for (const auto& r : rep.unknown()) text << ' ' << r.mu.str() << detail::sign_str(r.bundle_sign);
            text << '\n';
        }
    };

    if (surface.is_orientable()) {
        const int g = cfg.ell;
        if (g < 1) throw InvalidInput("series over an orientable surface needs genus >= 1");
        j["k"] = cfg.k;
        const auto vss = vss_series(cfg.n, cfg.k, g, cfg.degree);
        const auto bg = bg_series(cfg.n, g, cfg.degree);
        text << "series n=" << cfg.n << " k=" << cfg.k << " g=" << g << " D=" << cfg.degree << '\n';
        text << "P_t(semistable) = " << vss.to_text() << '\n';
        text << "P_t(BG) = " << bg.to_text() << '\n';
        text << "morse sum:\n";
        const auto rep = morse_series(cfg.n, cfg.k, surface, table, cfg.degree);
        nlohmann::json m;
        emit_report(rep, m);
        const auto diff = bg - rep.sum;
        text << "difference = " << (diff.is_zero() ? std::string("0") : diff.to_text()) << '\n';
        j["semistable"] = vss.to_json();
        j["bg"] = bg.to_json();
        j["morse"] = m;
        j["difference_is_zero"] = diff.is_zero();
    } else {
        text << "series n=" << cfg.n << " l=" << cfg.ell << " i=" << cfg.cross << " D=" << cfg.degree << '\n';
        auto bundles = nlohmann::json::array();
        for (int sign : {1, -1}) {
            text << "bundle sign " << (sign > 0 ? "+" : "-") << ":\n";
            nlohmann::json m{{"sign", sign}};
            emit_report(morse_series(cfg.n, sign, surface, table, cfg.degree), m);
            bundles.push_back(m);
        }
        j["bundles"] = bundles;
    }
    if (cfg.json())
        out << j.dump(2) << '\n';
    else
        out << text.str();
    return (missing && cfg.strict) ? Exit::MissingFlatData : Exit::Ok;
}

inline Exit cmd_verify(const RunConfig& cfg, std::ostream& out) {
    using namespace repvar;
    std::vector<int> ns, ells, crosses;
    if (cfg.n_set) ns = {cfg.n}; else ns = {1, 2, 3};
    if (cfg.ell_set) ells = {cfg.ell}; else ells = {0, 1, 2, 3};
    if (cfg.cross_set && cfg.cross != 0) crosses = {cfg.cross}; else crosses = {1, 2};
    if (cfg.cross_set && cfg.cross == 0) throw InvalidInput("verify runs over nonorientable surfaces: --i must be 1 or 2");

    const auto tol = LemmaTolerances::capped(cfg.tol);
    bool ok = true;
    std::ostringstream text;
    nlohmann::json j{{"seed", cfg.seed}, {"trials", cfg.trials}, {"tol", cfg.tol}};

    auto lemmas = nlohmann::json::array();
    for (int n : ns)
        for (int ell : ells)
            for (int i : crosses) {
                const auto st = lemma_trials(n, ell, i, cfg.trials, cfg.seed, tol);
                ok = ok && st.pass();
                lemmas.push_back(st.to_json());
                text << (st.pass() ? "PASS" : "FAIL") << " lemmas n=" << n << " l=" << ell << " i=" << i
                     << " trials=" << st.trials << " failures=" << st.failures
                     << " membership=" << detail::fmt(std::max({st.membership, st.tau_membership, st.embed_membership}))
                     << " phi=" << detail::fmt(st.phi_image) << " round_trip=" << detail::fmt(st.round_trip)
                     << " tau^2=" << detail::fmt(st.tau_square) << " embed_fixed=" << detail::fmt(st.embed_fixed)
                     << '\n';
            }
    j["lemmas"] = lemmas;

    auto witnesses = nlohmann::json::array();
    const std::vector<int> wn = cfg.n_set ? std::vector<int>{cfg.n} : std::vector<int>{1, 2, 3, 4};
    std::vector<int> well;
    for (int ell : (cfg.ell_set ? std::vector<int>{cfg.ell} : std::vector<int>{1, 2}))
        if (ell >= 1) well.push_back(ell);
    for (int n : wn)
        for (int ell : well)
            for (int i : crosses) {
                const auto st = witness_suite(n, ell, i, cfg.max_codim, std::min(cfg.tol, 1e-10));
                ok = ok && st.pass();
                witnesses.push_back(st.to_json());
                text << (st.pass() ? "PASS" : "FAIL") << " witnesses n=" << n << " l=" << ell << " i=" << i
                     << " points=" << st.witnesses << " forbidden=" << st.forbidden_checked
                     << " failures=" << st.failures << " membership=" << detail::fmt(st.membership)
                     << " det=" << detail::fmt(st.det_relation) << '\n';
            }
    j["witnesses"] = witnesses;

    const int max_ell = cfg.ell_set ? cfg.ell : 3;
    const auto ob = obstruction_suite(cfg.trials, cfg.seed, max_ell);
    ok = ok && ob.pass();
    j["obstruction"] = ob.to_json();
    text << (ob.pass() ? "PASS" : "FAIL") << " obstruction SO(3) trials=" << ob.trials << " failures=" << ob.failures
         << " nontrivial=" << ob.nontrivial_seen << '\n';
    j["pass"] = ok;
    text << (ok ? "all checks passed" : "verification FAILED") << '\n';
    if (!ok && cfg.tol < 1e-15) text << "note: tolerance " << detail::fmt(cfg.tol) << " is below the floating-point noise floor\n";

    if (cfg.json())
        out << j.dump(2) << '\n';
    else
        out << text.str();
    return ok ? Exit::Ok : Exit::VerifyFailed;
}

inline Exit cmd_witness(const RunConfig& cfg, std::ostream& out) {
    using namespace repvar;
    GroupTuplePoint p;
    std::optional<SymmetricTypeClass> cls;
    if (cfg.cross == 0) {
        const HNType mu = cfg.type.empty() ? HNType::semistable(cfg.n, cfg.k) : parse_type(cfg.type);
        p = witness_point(mu, cfg.ell);
    } else {
        const HNType mu = cfg.type.empty() ? HNType::semistable(cfg.n, 0) : parse_type(cfg.type);
        cls = classify_symmetric(mu, cfg.cross);
        p = witness_point(*cls, cfg.ell, cfg.sign);
    }
    const auto rep = membership(p, cfg.tol);
    nlohmann::json j{{"point", to_json(p)}, {"report", rep.to_json()}};
    std::optional<ResidualReport> det;
    if (cls) {
        det = det_reduction_check(p, *cls, cfg.tol);
        j["det_report"] = det->to_json();
        j["bundle_sign"] = bundle_sign(p);
    }
    const bool ok = rep.pass && (!det || det->pass);
    if (cfg.json()) {
        out << j.dump(2) << '\n';
    } else {
        out << "witness " << to_string(p.kind) << " n=" << p.dim() << " l=" << cfg.ell;
        if (cls) out << " i=" << cfg.cross << " mu=" << cls->mu.str() << " sign=" << (cfg.sign > 0 ? "+" : "-");
        out << '\n' << "membership max_residual=" << detail::fmt(rep.max_residual) << (rep.pass ? " pass" : " FAIL") << '\n';
        if (det) out << "det relation max_residual=" << detail::fmt(det->max_residual) << (det->pass ? " pass" : " FAIL") << '\n';
        out << to_json(p).dump() << '\n';
    }
    return ok ? Exit::Ok : Exit::VerifyFailed;
}

/// Parses argv, dispatches, and maps errors to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Yang-Mills strata over real curves: enumeration, series and representation checks", "ymstrata"};
    app.require_subcommand(1, 1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "rank")->capture_default_str();
        sub->add_option("--k", cfg.k, "degree (orientable surfaces)")->capture_default_str();
        sub->add_option("--ell", cfg.ell, "handles l (genus when i = 0)")->capture_default_str();
        sub->add_option("--i", cfg.cross, "crosscaps i in {0,1,2}")->capture_default_str();
        sub->add_option("--max-codim", cfg.max_codim, "codimension bound")->capture_default_str();
        sub->add_option("--degree", cfg.degree, "series truncation degree D")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--trials", cfg.trials, "trials per case")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "residual tolerance")->capture_default_str();
        sub->add_option("--flat-table", cfg.flat_table_path, "flat-stratum series table");
        sub->add_option("--format", cfg.format, "text or json")->capture_default_str();
        sub->add_flag("--strict", cfg.strict, "exit 3 when flat-stratum data is missing");
    };
    auto* strata = app.add_subcommand("strata", "list strata with codimensions");
    auto* series = app.add_subcommand("series", "Poincare series of strata and the Morse sum");
    auto* verify = app.add_subcommand("verify", "run the representation-variety property suite");
    auto* witness = app.add_subcommand("witness", "construct a point on a stratum");
    for (auto* sub : {strata, series, verify, witness}) add_common(sub);
    witness->add_option("--type", cfg.type, "type entries, e.g. \"1/2,1/2\"");
    witness->add_option("--sign", cfg.sign, "bundle sign for i in {1,2}")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return static_cast<int>(Exit::Ok);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Invalid);
    }

    for (auto* sub : {strata, series, verify, witness}) {
        if (!sub->parsed()) continue;
        cfg.subcommand = sub->get_name();
        cfg.n_set = sub->count("--n") > 0;
        cfg.ell_set = sub->count("--ell") > 0;
        cfg.cross_set = sub->count("--i") > 0;
    }
    try {
        cfg.validate();
        Exit code = Exit::Ok;
        if (cfg.subcommand == "strata") code = cmd_strata(cfg, out);
        else if (cfg.subcommand == "series") code = cmd_series(cfg, out);
        else if (cfg.subcommand == "verify") code = cmd_verify(cfg, out);
        else code = cmd_witness(cfg, out);
        return static_cast<int>(code);
    } catch (const EmptyStratumError& e) {
        err << "empty stratum: " << e.what() << '\n';
    } catch (const Unsupported& e) {
        err << "unsupported: " << e.what() << '\n';
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
    } catch (const ConsistencyError& e) {
        err << "consistency error: " << e.what() << '\n';
    }
    return static_cast<int>(Exit::Invalid);
}

} // namespace ymstrata::cli
