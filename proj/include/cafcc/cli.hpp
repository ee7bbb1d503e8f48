#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cafcc/verify.hpp"

namespace cafcc {

enum ExitCode { ExitPass = 0, ExitCheckFailure = 1, ExitUsage = 2, ExitInternal = 3 };

namespace cli {

inline std::vector<Scalar> parse_list(const std::string& s, const char* what) {
    std::vector<Scalar> out;
    for (const auto& part : detail::split(s, ',')) out.push_back(Scalar::parse(part));
    if (out.empty()) throw Error(Errc::Parse, std::string("empty ") + what);
    return out;
}

inline std::vector<Scalar> parse_exact(const std::string& s, std::size_t n, const char* what) {
    auto v = parse_list(s, what);
    if (v.size() != n)
        throw Error(Errc::Parse, std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
    return v;
}

inline ParamPair parse_pair(const std::string& s, const char* what) {
    auto v = parse_exact(s, 2, what);
    return {v[0], v[1]};
}

// "1/2,0,1/2", "1,0" or "1": missing trailing entries are zero.
inline Deltas parse_deltas(const std::string& s) {
    auto v = parse_list(s, "deltas");
    if (v.size() > 3) throw Error(Errc::Parse, "deltas take at most three values");
    v.resize(3, Scalar(0));
    return {v[0], v[1], v[2]};
}

inline std::uint64_t parse_seed(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::Parse, "seed must be a non-negative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw Error(Errc::Parse, "seed out of range: '" + s + "'");
    }
}

inline bool usage_error(Errc c) {
    switch (c) {
    case Errc::DegenerateSolve:
    case Errc::RetriesExhausted: return false;
    default: return true;
    }
}

// Options shared by every verb that runs a suite.
struct RunOptions {
    std::string seed, json, fault;
    int trials = 0, height_bound = 12, max_retries = 32;
    bool timing = false;

    void attach(CLI::App* app, bool with_fault) {
        app->add_option("--seed", seed, "64-bit seed (default: $CAFCC_SEED, else 0)");
        app->add_option("--trials", trials, "trials per case (0 = suite default)")->check(CLI::NonNegativeNumber);
        app->add_option("--height-bound", height_bound, "max |numerator| and denominator of samples")
            ->check(CLI::PositiveNumber);
        app->add_option("--max-retries", max_retries, "resampling attempts per trial")->check(CLI::PositiveNumber);
        app->add_option("--json", json, "write the JSON report to a file ('-' for stdout)");
        app->add_flag("--timing", timing, "include wall_time_ms in JSON");
        if (with_fault) app->add_option("--inject-fault", fault, "test hook: corrupt centered equation I (I:offset|I:param)");
    }

    SamplerConfig sampler() const {
        SamplerConfig cfg;
        if (!seed.empty()) cfg.seed = parse_seed(seed);
        else if (const char* env = std::getenv("CAFCC_SEED"); env && *env) cfg.seed = parse_seed(env);
        cfg.height_bound = height_bound;
        cfg.max_retries = max_retries;
        return cfg;
    }
};

inline void print_report(std::ostream& out, const SuiteReport& r, bool timing) {
    out << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << "  cases=" << r.cases << " trials=" << r.trials
        << " checks=" << r.checks << " failed=" << r.failed_checks << " seed=" << r.seed;
    if (timing) out << " wall_time_ms=" << static_cast<long>(r.wall_time_ms);
    out << "\n";
    for (const auto& k : r.known_discrepancies)
        out << "  KNOWN " << k.case_id << " (" << k.confirmed << " trials): " << k.note << "\n";
    Json all = to_json(r)["failures"];
    for (const auto& f : all) out << "  FAIL " << f.dump() << "\n";
}

// One report is emitted as itself; several are wrapped.
inline int emit(std::ostream& out, const std::vector<SuiteReport>& reps, const RunOptions& o, std::uint64_t seed) {
    bool pass = true;
    for (const auto& r : reps) {
        pass = pass && r.pass;
        print_report(out, r, o.timing);
    }
    if (reps.size() > 1) out << "overall: " << (pass ? "PASS" : "FAIL") << "  seed=" << seed << "\n";
    if (!o.json.empty()) {
        Json j;
        if (reps.size() == 1) {
            j = to_json(reps[0], o.timing);
        } else {
            Json list = Json::array();
            for (const auto& r : reps) list.push_back(to_json(r, o.timing));
            j = Json{{"schema", "1"}, {"seed", seed}, {"pass", pass}, {"reports", list}};
        }
        if (o.json == "-") {
            out << j.dump(2) << "\n";
        } else {
            std::ofstream f(o.json);
            if (!f) throw Error(Errc::Parse, "cannot write " + o.json);
            f << j.dump(2) << "\n";
        }
    }
    return pass ? ExitPass : ExitCheckFailure;
}

inline void list_catalogue(std::ostream& out) {
    out << "families:\n";
    for (Family f : all_families()) {
        out << "  " << family_name(f) << " (type " << "ABC"[static_cast<int>(family_type(f))] << "):";
        for (const auto& eq : all_equations())
            if (eq.family() == f) out << " " << eq.id();
        out << "\n";
    }
    out << "systems:\n";
    for (const auto& s : all_systems()) out << "  " << s.id() << "\n";
    out << "lax families:\n";
    for (LaxFamily f : all_lax_families()) {
        out << "  " << lax_family_name(f) << " (approach " << (lax_approach(f) == Approach::A ? "A" : "B") << "):";
        for (const auto& d : lax_regimes(f)) out << " " << detail::regime_str(d);
        out << "\n";
    }
    out << "propositions:\n";
    for (const auto& lc : detail::lax_case_list()) out << "  " << lc.id << "\n";
    out << "suites:\n";
    for (Suite s : all_suites()) out << "  " << suite_name(s) << " (default trials " << default_trials(s) << ")\n";
}

} // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of face-centered quad equations, CAFCC and Lax structure", "cafcc"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "families, regimes, systems, propositions and suites");

    std::string eq_spec, x_str = "0", corners, alpha, beta, point, slot;
    auto* eval = app.add_subcommand("eval", "evaluate one face equation");
    eval->add_option("--eq", eq_spec, "equation id, e.g. A3:d=1, B3:1/2,0,1/2, D1")->required();
    eval->add_option("--x", x_str, "center value (default 0)");
    eval->add_option("--corners", corners, "x_a,x_b,x_c,x_d");
    eval->add_option("--alpha", alpha, "alpha1,alpha2");
    eval->add_option("--beta", beta, "beta1,beta2");
    eval->add_option("--point", point, "x,x_a,x_b,x_c,x_d,alpha1,alpha2,beta1,beta2");

    auto* solve = app.add_subcommand("solve", "solve a face equation for one corner");
    solve->add_option("--eq", eq_spec, "equation id")->required();
    solve->add_option("--slot", slot, "corner to solve for")->required()->check(CLI::IsMember({"a", "b", "c", "d"}));
    solve->add_option("--x", x_str, "center value (default 0)");
    solve->add_option("--corners", corners, "the other three corners, in slot order")->required();
    solve->add_option("--alpha", alpha, "alpha1,alpha2");
    solve->add_option("--beta", beta, "beta1,beta2");

    cli::RunOptions run;
    std::string config;
    auto* cafcc = app.add_subcommand("cafcc", "run the six-step CAFCC check on one system");
    cafcc->add_option("--config", config, "system id, e.g. A3:d=0 or ABC:A2,B2,C2:1,0,1")->required();
    run.attach(cafcc, true);

    std::string prop, deltas, branch;
    int variant = 0, eps = 0, eps2 = 0;
    auto* lax = app.add_subcommand("lax", "on-shell compatibility and off-shell checks for a proposition");
    lax->add_option("--prop", prop, "P4.1 .. P4.8")->required();
    lax->add_option("--variant", variant, "displayed variant (1 or 2)")->check(CLI::IsMember({1, 2}));
    lax->add_option("--eps", eps, "epsilon")->check(CLI::IsMember({-1, 1}));
    lax->add_option("--eps2", eps2, "second epsilon")->check(CLI::IsMember({-1, 1}));
    lax->add_option("--deltas", deltas, "regime, e.g. 1,0,1");
    lax->add_option("--branch", branch, "surd branch")->check(CLI::IsMember({"plus", "minus"}));
    run.attach(lax, false);

    std::string suite_name_opt = "all", family, kind;
    auto* suite = app.add_subcommand("suite", "run property suites");
    suite->add_option("--name", suite_name_opt, "suite name or 'all'");
    suite->add_option("--family", family, "comma-separated family filter");
    suite->add_option("--regime", deltas, "regime filter, e.g. 1/2,0,1/2");
    suite->add_option("--prop", prop, "comma-separated proposition filter");
    suite->add_option("--kind", kind, "comma-separated check-kind filter");
    run.attach(suite, true);

    std::string what;
    auto* cross = app.add_subcommand("crosscheck", "builder vs catalogue matrices, or determinant formulas");
    cross->add_option("--what", what, "builder-vs-catalogue or det")
        ->required()
        ->check(CLI::IsMember({"builder-vs-catalogue", "det"}));
    cross->add_option("--family", family, "Lax family")->required();
    cross->add_option("--deltas", deltas, "regime");
    run.attach(cross, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ExitPass : ExitUsage;
    }

    bool executing = false;
    try {
        if (list->parsed()) {
            cli::list_catalogue(out);
            return ExitPass;
        }
        if (eval->parsed() || solve->parsed()) {
            FaceEquation eq = parse_equation(eq_spec);
            const bool free = eq.family() == Family::D1;
            if ((alpha.empty() || beta.empty()) && point.empty() && !free)
                throw Error(Errc::Parse, "--alpha and --beta are required for " + eq.id());
            ParamPair al = alpha.empty() ? ParamPair{1, 1} : cli::parse_pair(alpha, "--alpha");
            ParamPair be = beta.empty() ? ParamPair{1, 1} : cli::parse_pair(beta, "--beta");
            Scalar x = Scalar::parse(x_str);
            if (eval->parsed()) {
                std::vector<Scalar> c;
                if (!point.empty()) {
                    if (!corners.empty()) throw Error(Errc::Parse, "give either --point or --corners");
                    auto p = cli::parse_exact(point, 9, "--point");
                    x = p[0];
                    c.assign(p.begin() + 1, p.begin() + 5);
                    al = {p[5], p[6]};
                    be = {p[7], p[8]};
                } else {
                    if (corners.empty()) throw Error(Errc::Parse, "--corners or --point is required");
                    c = cli::parse_exact(corners, 4, "--corners");
                }
                out << eq(x, c[0], c[1], c[2], c[3], al, be).str() << "\n";
            } else {
                auto c = cli::parse_exact(corners, 3, "--corners");
                Slot s = static_cast<Slot>(slot[0] - 'a');
                out << solve_corner(eq, s, x, {c[0], c[1], c[2]}, al, be).str() << "\n";
            }
            return ExitPass;
        }

        SamplerConfig cfg = run.sampler();
        std::vector<std::pair<Suite, Scope>> plan;
        SuiteOptions opt;
        if (!run.fault.empty()) opt.fault = parse_fault(run.fault);

        if (cafcc->parsed()) {
            Scope sc;
            sc.cases = {parse_config(config).id()};
            if (opt.fault)
                sc.cases[0] += " fault=" + std::to_string(opt.fault->index) +
                               (opt.fault->kind == Fault::Offset ? ":offset" : ":param");
            plan.push_back({Suite::cafcc, sc});
        } else if (lax->parsed()) {
            PropId p = parse_prop(prop);
            std::optional<Deltas> d;
            if (!deltas.empty()) d = cli::parse_deltas(deltas);
            Scope on, off;
            for (const auto& lc : detail::lax_case_list()) {
                const auto& r = lc.rule;
                if (r.prop != p || (variant && r.variant != variant) || (eps && r.eps != eps) ||
                    (eps2 && r.eps2 != eps2) || (d && !(r.deltas.d1 == d->d1 && r.deltas.d2 == d->d2 && r.deltas.d3 == d->d3)))
                    continue;
                // rules without a surd have a single branch, addressed as "plus"
                if (branch == "minus" && !lc.flip) continue;
                if (branch == "plus" && lc.flip) continue;
                on.cases.push_back(lc.id + " onshell");
                off.cases.push_back(lc.id + " offshell");
                off.cases.push_back(lc.id + " rank1");
            }
            if (on.cases.empty()) throw Error(Errc::EmptyScope, "no normalization rule matches the given filters");
            plan.push_back({Suite::lax_compat, on});
            plan.push_back({Suite::lax_offshell, off});
        } else if (suite->parsed()) {
            Scope sc;
            if (!family.empty()) sc.families = detail::split(family, ',');
            if (!deltas.empty()) sc.regimes = {detail::regime_str(cli::parse_deltas(deltas))};
            if (!prop.empty())
                for (const auto& p : detail::split(prop, ',')) sc.props.push_back(prop_name(parse_prop(p)));
            if (!kind.empty()) sc.kinds = detail::split(kind, ',');
            if (suite_name_opt == "all") {
                for (Suite s : all_suites()) plan.push_back({s, sc});
            } else {
                plan.push_back({parse_suite(suite_name_opt), sc});
            }
        } else if (cross->parsed()) {
            Scope sc;
            sc.families = {lax_family_name(parse_lax_family(family))};
            if (!deltas.empty()) sc.regimes = {detail::regime_str(cli::parse_deltas(deltas))};
            plan.push_back({what == "det" ? Suite::det : Suite::builder_vs_catalogue, sc});
        }

        executing = true;
        std::vector<SuiteReport> reports;
        for (const auto& [s, sc] : plan) {
            try {
                reports.push_back(run_suite(s, sc, run.trials, cfg, opt));
            } catch (const Error& e) {
                // under "all", suites with nothing in scope are skipped
                if (e.code() != Errc::EmptyScope || plan.size() == 1 || lax->parsed()) throw;
            }
        }
        if (reports.empty()) throw Error(Errc::EmptyScope, "no suite has cases in the requested scope");
        return cli::emit(out, reports, run, cfg.seed);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (executing && e.code() != Errc::EmptyScope) return ExitInternal;
        return cli::usage_error(e.code()) ? ExitUsage : ExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return ExitInternal;
    }
}

} // namespace cafcc
