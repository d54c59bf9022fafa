#pragma once

// Command-line front end. run_cli returns the process exit code:
// 0 success, 1 theorem-level failure (or a flagged finding under --strict), 2 invalid input.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lzero/report.hpp"

namespace lzero {

inline constexpr const char* kCacheEnvVar = "LZERO_CACHE_DIR";

namespace cli_detail {

using report::Json;
using report::to_json;

struct Settings {
    std::optional<std::int64_t> fmax, pmax, p, q, f;
    std::optional<int> rmax;
    std::vector<std::int64_t> chi;
    int precision = kDefaultPrecision;
    std::string format = "json";
    std::string cache_dir;
    unsigned jobs = 1;
    bool strict = false;
};

struct Outcome {
    Json parameters = Json::object();
    Json records = Json::array();
    Json summary = Json::object();
    std::set<TowerDescriptor> towers;
    bool flagged = false; ///< conjecture-level finding, reported as exit 1 under --strict
};

inline std::int64_t need(const std::optional<std::int64_t>& v, const char* flag, const std::string& cmd) {
    if (!v) throw InvalidArgument(cmd + " requires " + flag);
    return *v;
}

inline std::vector<std::int64_t> odd_primes_in(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t p : primes_up_to(hi))
        if (p > 2 && p >= lo) out.push_back(p);
    return out;
}

/// -p alone, or every odd prime up to --pmax.
inline std::vector<std::int64_t> prime_list(const Settings& s, const std::string& cmd, Outcome& o) {
    if (s.p) {
        if (!is_odd_prime(*s.p)) throw InvalidArgument(std::to_string(*s.p) + " is not an odd prime");
        o.parameters["p"] = *s.p;
        return {*s.p};
    }
    if (s.pmax) {
        if (*s.pmax < 3) throw InvalidArgument("--pmax must be at least 3");
        o.parameters["pmax"] = *s.pmax;
        return odd_primes_in(3, *s.pmax);
    }
    throw InvalidArgument(cmd + " requires -p or --pmax");
}

inline Outcome cmd_prop1(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t fmax = s.fmax.value_or(60), pmax = s.pmax.value_or(37);
    o.parameters = Json{{"fmax", fmax}, {"pmax", pmax}, {"precision", s.precision}};
    auto res = prop1_scan(fmax, pmax, opts);
    for (const auto& r : res.records) {
        o.records.push_back(to_json(r));
        o.towers.insert(r.tower);
    }
    Json levels = Json::array();
    for (const auto& [pd, count] : res.summary.poles_by_level)
        levels.push_back(Json{{"p", pd.first}, {"d", pd.second}, {"count", count}});
    o.summary = Json{{"characters", res.summary.characters},
                     {"records", res.summary.records},
                     {"non_integral", res.summary.non_integral},
                     {"poles_by_level", levels},
                     {"vanishing_probes", res.summary.vanishing_probes},
                     {"vanishing_hits", res.summary.vanishing_hits}};
    o.flagged = res.summary.vanishing_hits > 0;
    return o;
}

inline Outcome cmd_lvalue(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t f = need(s.f, "-f", "lvalue");
    if (f < 3) throw InvalidArgument("-f must be at least 3");
    o.parameters["f"] = f;
    std::vector<DirichletChar> chars;
    if (!s.chi.empty()) {
        o.parameters["chi"] = s.chi;
        chars.emplace_back(f, s.chi);
    } else {
        for (auto& c : enumerate_characters(f, true))
            if (!c.is_trivial()) chars.push_back(std::move(c));
    }
    if (s.p) {
        if (!is_odd_prime(*s.p)) throw InvalidArgument(std::to_string(*s.p) + " is not an odd prime");
        o.parameters["p"] = *s.p;
        o.parameters["precision"] = s.precision;
    }
    std::size_t odd = 0;
    for (const auto& chi : chars) {
        auto lv = l_value_at_zero(chi, opts.cache);
        Json j{{"character", to_json(chi.key())},
               {"order", chi.order()},
               {"parity", chi.parity()},
               {"b1chi", to_json(lv.b1chi)},
               {"l0", to_json(lv.l0)},
               {"algebraic_integer", lv.l0.is_algebraic_integer()}};
        if (chi.is_odd()) ++odd;
        if (s.p && chi.is_odd()) {
            auto v = integrality_verdict(chi, *s.p, opts);
            j["tower"] = to_json(v.tower);
            j["valuation"] = v.valuation.to_string();
            j["omega_inverse"] = v.omega_inverse;
            o.towers.insert(v.tower);
        }
        o.records.push_back(std::move(j));
    }
    o.summary = Json{{"characters", chars.size()}, {"odd", odd}};
    return o;
}

inline Outcome cmd_hminus(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t p = need(s.p, "-p", "hminus");
    if (!is_odd_prime(p)) throw InvalidArgument(std::to_string(p) + " is not an odd prime");
    o.parameters["p"] = p;
    BigInt h = minus_class_number(p, opts.cache);
    o.records.push_back(Json{{"p", p}, {"h_minus", Json::parse(h.get_str())}, {"odd_characters", (p - 1) / 2}});
    o.summary = Json{{"h_minus", Json::parse(h.get_str())}};
    return o;
}

inline Outcome cmd_irregular(const Settings& s, const LabOptions&) {
    Outcome o;
    const std::int64_t pmax = s.pmax.value_or(s.p.value_or(150));
    o.parameters["pmax"] = pmax;
    auto pairs = irregular_pairs(pmax);
    std::set<std::int64_t> primes;
    for (const auto& pr : pairs) {
        o.records.push_back(Json{{"p", pr.p}, {"k", pr.k}});
        primes.insert(pr.p);
    }
    o.summary = Json{{"pairs", pairs.size()}, {"irregular_primes", primes.size()}};
    return o;
}

inline Outcome cmd_kummer(const Settings& s, const LabOptions& opts) {
    Outcome o;
    auto primes = prime_list(s, "kummer", o);
    auto rows = parallel_map(primes.size(), opts.jobs, [&](std::size_t i) { return kummer_check(primes[i]); });
    std::size_t checked = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (const auto& r : rows[i]) {
            o.records.push_back(Json{{"p", primes[i]}, {"n", r.n}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}});
            ++checked;
        }
    o.summary = Json{{"primes", primes.size()}, {"congruences", checked}, {"violations", 0}};
    return o;
}

inline Outcome cmd_deligne_ribet(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t fmax = s.fmax.value_or(60);
    if (fmax < 3) throw InvalidArgument("--fmax must be at least 3");
    o.parameters["fmax"] = fmax;
    auto rows = deligne_ribet_scan(fmax, opts);
    for (const auto& r : rows)
        o.records.push_back(Json{{"character", to_json(r.character)},
                                 {"w", r.w},
                                 {"w_l0", to_json(r.scaled)},
                                 {"integral", r.integral}});
    o.summary = Json{{"characters", rows.size()}, {"violations", 0}};
    return o;
}

inline Outcome cmd_remark2(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t p = need(s.p, "-p", "remark2");
    const int rmax = s.rmax.value_or(2);
    o.parameters = Json{{"p", p}, {"rmax", rmax}, {"precision", s.precision}};
    auto rows = remark2_check(p, rmax, opts);
    for (const auto& r : rows) {
        o.records.push_back(Json{{"character", to_json(r.character)},
                                 {"r", r.r},
                                 {"expected", to_fraction_string(r.expected)},
                                 {"computed", r.computed.to_string()},
                                 {"equal", r.equal},
                                 {"tower", to_json(r.tower)}});
        o.towers.insert(r.tower);
    }
    o.summary = Json{{"characters", rows.size()}, {"violations", 0}};
    return o;
}

inline Outcome cmd_star(const Settings& s, const LabOptions& opts) {
    Outcome o;
    auto primes = prime_list(s, "star", o);
    o.parameters["precision"] = s.precision;
    for (std::int64_t p : primes) {
        auto res = equation_star_check(p, opts);
        Json factors = Json::array();
        for (const auto& fct : res.factors) {
            factors.push_back(Json{{"character", to_json(fct.character)},
                                   {"valuation", fct.valuation.to_string()},
                                   {"omega_inverse", fct.omega_inverse}});
            o.towers.insert(fct.tower);
        }
        o.records.push_back(Json{{"p", p},
                                 {"h_minus", Json::parse(res.h_minus.get_str())},
                                 {"unique_pole", res.unique_pole},
                                 {"product_identity", res.product_identity},
                                 {"factors", factors}});
    }
    o.summary = Json{{"primes", primes.size()}, {"violations", 0}};
    return o;
}

inline Outcome cmd_congruence(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t fmax = s.fmax.value_or(60);
    o.parameters["fmax"] = fmax;
    auto primes = prime_list(s, "congruence", o);
    o.parameters["precision"] = s.precision;
    CongruenceSummary total;
    for (std::int64_t p : primes) {
        auto res = congruence_scan(fmax, p, opts);
        for (const auto& r : res.rows)
            o.records.push_back(Json{{"p", p},
                                     {"first", to_json(r.first)},
                                     {"second", to_json(r.second)},
                                     {"residue_first", r.residue_first},
                                     {"residue_second", r.residue_second},
                                     {"equal", r.equal},
                                     {"adjusted_equal", r.adjusted_equal},
                                     {"integral", r.integral},
                                     {"notes", r.notes}});
        o.towers.insert(res.towers.begin(), res.towers.end());
        total.characters = res.summary.characters;
        total.classes += res.summary.classes;
        total.excluded_classes += res.summary.excluded_classes;
        total.excluded_characters += res.summary.excluded_characters;
        total.pairs += res.summary.pairs;
        total.unequal += res.summary.unequal;
        total.adjusted_unequal += res.summary.adjusted_unequal;
        total.non_integral_members += res.summary.non_integral_members;
    }
    o.summary = Json{{"characters", total.characters},
                     {"classes", total.classes},
                     {"excluded_classes", total.excluded_classes},
                     {"excluded_characters", total.excluded_characters},
                     {"pairs", total.pairs},
                     {"unequal", total.unequal},
                     {"anomalies", total.adjusted_unequal},
                     {"non_integral_members", total.non_integral_members}};
    o.flagged = total.adjusted_unequal > 0;
    return o;
}

inline Outcome cmd_corollary1(const Settings& s, const LabOptions& opts) {
    Outcome o;
    const std::int64_t p = need(s.p, "-p", "corollary1"), q = need(s.q, "-q", "corollary1");
    o.parameters = Json{{"p", p}, {"q", q}, {"precision", s.precision}};
    if (!is_prime(q)) throw InvalidArgument(std::to_string(q) + " is not prime");
    auto w = corollary1_witness(p, q, opts);
    Json a = to_json(w.omega_inverse), b = to_json(w.twisted);
    a["role"] = "omega_inverse";
    b["role"] = "twisted";
    o.records.push_back(std::move(a));
    o.records.push_back(std::move(b));
    o.towers.insert(w.omega_inverse.tower);
    o.towers.insert(w.twisted.tower);
    o.summary = Json{{"witness", true}};
    return o;
}

inline void render(std::ostream& out, const std::string& command, const Settings& s, const Outcome& o,
                   const std::string& status) {
    if (s.format == "csv") {
        out << report::to_csv(report::flatten(o.records));
        return;
    }
    Json towers = Json::array();
    for (const auto& t : o.towers) towers.push_back(to_json(t));
    Json env{{"tool", report::kToolName},
             {"version", report::kVersion},
             {"command", command},
             {"parameters", o.parameters},
             {"towers", towers},
             {"records", o.records},
             {"summary", o.summary},
             {"status", status}};
    out << env.dump(2) << '\n';
}

} // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli_detail;
    Settings s;
    CLI::App app{"Exact L(0, chi) values, p-adic integrality verdicts and the checks built on them.\n"
                 "Reports go to standard output. JSON is the source of truth; CSV is a lossy\n"
                 "projection of the record table (nested fields are flattened, the envelope is dropped).\n"
                 "Exit status: 0 ok, 1 theorem-level failure or a --strict finding, 2 invalid input.",
                 "lzero"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--fmax", s.fmax, "largest conductor scanned");
    app.add_option("--pmax", s.pmax, "largest prime scanned");
    app.add_option("-p", s.p, "odd prime");
    app.add_option("-q", s.q, "auxiliary prime (corollary1)");
    app.add_option("-f", s.f, "modulus (lvalue)");
    app.add_option("--rmax", s.rmax, "largest exponent r of p^r (remark2)");
    app.add_option("--chi", s.chi, "character as an exponent vector on the unit-group generators, e.g. 1 or 2,1")
        ->delimiter(',');
    app.add_option("--precision", s.precision, "starting p-adic precision N")->check(CLI::Range(1, kMaxPrecision));
    app.add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", s.cache_dir, std::string("directory of the B_{1,chi} cache (default: $") +
                                                   kCacheEnvVar + ")");
    app.add_option("--jobs", s.jobs, "worker threads; output does not depend on it")->check(CLI::PositiveNumber);
    app.add_flag("--strict", s.strict, "exit 1 on conjecture-level findings");

    struct Sub {
        const char* name;
        const char* help;
        Outcome (*run)(const Settings&, const LabOptions&);
    };
    const Sub subs[] = {
        {"prop1", "integrality verdicts for primitive odd characters (--fmax, --pmax)", cmd_prop1},
        {"lvalue", "L(0, chi) for a modulus (-f, optional --chi, optional -p)", cmd_lvalue},
        {"hminus", "minus class number of Q(zeta_p) (-p)", cmd_hminus},
        {"irregular", "irregular pairs (p, k) up to --pmax", cmd_irregular},
        {"kummer", "Kummer congruence at -p or every odd prime up to --pmax", cmd_kummer},
        {"deligne-ribet", "integrality of w L(0, chi) up to --fmax", cmd_deligne_ribet},
        {"remark2", "pole orders at conductors p^r (-p, --rmax)", cmd_remark2},
        {"star", "odd L-values mod p and the class number product (-p or --pmax)", cmd_star},
        {"congruence", "L-values of congruent characters (--fmax, -p or --pmax)", cmd_congruence},
        {"corollary1", "pole of omega^-1 removed by an order-p twist mod q (-p, -q)", cmd_corollary1},
    };
    std::vector<CLI::App*> handles;
    for (const auto& sub : subs) handles.push_back(app.add_subcommand(sub.name, sub.help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    std::size_t which = 0;
    while (!handles[which]->parsed()) ++which;
    const std::string command = subs[which].name;

    std::unique_ptr<BernoulliCache> cache;
    std::string dir = s.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv(kCacheEnvVar)) dir = env;

    try {
        if (!dir.empty()) cache = std::make_unique<BernoulliCache>(dir);
        LabOptions opts{s.precision, cache.get(), s.jobs};
        Outcome o = subs[which].run(s, opts);
        const bool fail = s.strict && o.flagged;
        render(out, command, s, o, fail ? "flagged" : "ok");
        return fail ? 1 : 0;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n\n" << handles[which]->help();
        return 2;
    } catch (const Error& e) {
        err << "failure: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace lzero
