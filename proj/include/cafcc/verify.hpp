#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cafcc/report.hpp"

namespace cafcc {

// ---- deterministic randomness ---------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Counter-derived sub-seed: independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t counter) {
    return splitmix64(splitmix64(seed ^ fnv1a(tag)) + counter);
}

// mt19937_64 with a portable bounded draw (std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = top - top % n;
        std::uint64_t v;
        do v = g_();
        while (v >= limit);
        return v % n;
    }
    long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

private:
    std::mt19937_64 g_;
};

// ---- sampling --------------------------------------------------------------

struct SamplerConfig {
    std::uint64_t seed = 0;
    int height_bound = 12;
    std::set<std::string> nonzero_slots;
    std::map<std::string, SurdKind> surd_slots;
    int max_retries = 32;
};

struct SampledValue {
    Scalar value;
    std::optional<SurdParam> surd;

    LegX leg() const { return surd ? LegX(*surd) : LegX(value); }
};

using SampleAssignment = std::map<std::string, SampledValue>;

inline Scalar draw_rational(Rng& rng, int height) {
    long num = rng.between(-height, height);
    long den = rng.between(1, height);
    return Scalar(num, den);
}

inline SampleAssignment sample_point(const SamplerConfig& cfg, const std::vector<std::string>& shape) {
    if (cfg.height_bound < 1) throw Error(Errc::DomainViolation, "height bound must be positive");
    if (cfg.max_retries < 1) throw Error(Errc::DomainViolation, "max_retries must be positive");
    Rng rng(cfg.seed);
    SampleAssignment out;
    for (const auto& label : shape) {
        auto surd = cfg.surd_slots.find(label);
        const bool nonzero = surd != cfg.surd_slots.end() || cfg.nonzero_slots.count(label) > 0;
        Scalar v = draw_rational(rng, cfg.height_bound);
        for (int k = 0; nonzero && v.is_zero(); ++k) {
            if (k == cfg.max_retries) throw Error(Errc::RetriesExhausted, "no nonzero draw for " + label);
            v = draw_rational(rng, cfg.height_bound);
        }
        if (surd != cfg.surd_slots.end()) {
            SurdParam p = make_surd(surd->second, v);
            out[label] = {p.value, p};
        } else {
            out[label] = {v, std::nullopt};
        }
    }
    return out;
}

inline Snapshot snapshot(const SampleAssignment& s) {
    Snapshot out;
    for (const auto& [k, v] : s) {
        out.emplace_back(k, v.value.str());
        if (v.surd) out.emplace_back(k + ".surd", std::string(surd_kind_name(v.surd->kind)) + ":" + v.surd->seed.str());
    }
    return out;
}

// ---- suites ----------------------------------------------------------------

enum class Suite {
    cafcc,
    symmetry,
    fourleg,
    lax_compat,
    lax_offshell,
    det,
    builder_vs_catalogue,
    proof_oracle,
    leg_unit,
    inverse_law,
    spectral_sweep,
    structure,
    negative,
};

inline const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> s{Suite::cafcc,       Suite::symmetry,     Suite::fourleg,
                                      Suite::lax_compat,  Suite::lax_offshell, Suite::det,
                                      Suite::builder_vs_catalogue, Suite::proof_oracle, Suite::leg_unit,
                                      Suite::inverse_law, Suite::spectral_sweep, Suite::structure,
                                      Suite::negative};
    return s;
}

inline const char* suite_name(Suite s) {
    static const char* names[] = {"cafcc",        "symmetry", "fourleg",     "lax_compat",     "lax_offshell",
                                  "det",          "builder_vs_catalogue",    "proof_oracle",   "leg_unit",
                                  "inverse_law",  "spectral_sweep",          "structure",      "negative"};
    return names[static_cast<int>(s)];
}

inline Suite parse_suite(const std::string& s) {
    for (Suite k : all_suites())
        if (s == suite_name(k)) return k;
    throw Error(Errc::Parse, "unknown suite '" + s + "'");
}

inline int default_trials(Suite s) {
    switch (s) {
    case Suite::cafcc: return 100;
    case Suite::lax_offshell: return 20;
    case Suite::spectral_sweep:
    case Suite::negative: return 5;
    default: return 50;
    }
}

// Empty filter = no restriction.
struct Scope {
    std::vector<std::string> families, regimes, props, kinds, cases;
};

struct SuiteOptions {
    struct FaultSpec {
        int index = 0;
        Fault::Kind kind = Fault::Offset;
    };
    std::optional<FaultSpec> fault; // applied to every system of the cafcc suite
};

inline SuiteOptions::FaultSpec parse_fault(const std::string& s) {
    auto parts = detail::split(s, ':');
    if (parts.size() != 2) throw Error(Errc::Parse, "fault must be I:offset or I:param, got '" + s + "'");
    SuiteOptions::FaultSpec f;
    try {
        std::size_t used = 0;
        f.index = std::stoi(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    } catch (const std::exception&) {
        throw Error(Errc::Parse, "bad fault index '" + parts[0] + "'");
    }
    if (f.index < 1 || f.index > 14) throw Error(Errc::Parse, "fault index must be in 1..14");
    if (parts[1] == "offset") f.kind = Fault::Offset;
    else if (parts[1] == "param") f.kind = Fault::ParamSwap;
    else throw Error(Errc::Parse, "fault kind must be offset or param");
    return f;
}

struct Observation {
    bool holds = false;
    Snapshot residual;
};

enum class Expect {
    Holds,            // identity must vanish at every trial
    Fails,            // identity must be nonzero at generic points
    KnownDiscrepancy, // claimed to hold, documented not to; asserted to fail
};

struct SuiteCase {
    std::string id;
    std::vector<std::string> families;
    std::string regime, prop, kind;
    std::vector<std::string> shape;
    std::set<std::string> nonzero;
    std::map<std::string, SurdKind> surd;
    Expect expect = Expect::Holds;
    std::string note;
    std::function<Observation(const SampleAssignment&)> check;
};

struct FailureRecord {
    std::string case_id;
    int trial = 0;
    std::uint64_t seed = 0;
    Snapshot point, residual;
    std::string message;
};

struct KnownDiscrepancyRecord {
    std::string case_id, note;
    int confirmed = 0;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    int cases = 0;
    long checks = 0;
    long failed_checks = 0;
    std::vector<FailureRecord> failures;
    std::vector<KnownDiscrepancyRecord> known_discrepancies;
    bool pass = true;
    double wall_time_ms = 0;
};

inline bool scope_admits(const Scope& s, const SuiteCase& c) {
    auto hit = [](const std::vector<std::string>& filter, const std::vector<std::string>& tags) {
        if (filter.empty()) return true;
        for (const auto& t : tags)
            if (std::find(filter.begin(), filter.end(), t) != filter.end()) return true;
        return false;
    };
    return hit(s.families, c.families) && hit(s.regimes, {c.regime}) && hit(s.props, {c.prop}) &&
           hit(s.kinds, {c.kind}) && hit(s.cases, {c.id});
}

namespace detail {

inline const std::vector<std::string>& param_labels() {
    static const std::vector<std::string> p{"alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2"};
    return p;
}

inline std::string regime_str(const Deltas& d) { return d.d1.str() + "," + d.d2.str() + "," + d.d3.str(); }

inline const Scalar& val(const SampleAssignment& s, const std::string& k) { return s.at(k).value; }

inline ParamPair pair_of(const SampleAssignment& s, const char* a, const char* b) { return {val(s, a), val(s, b)}; }

inline CubeParams cube_params(const SampleAssignment& s) {
    return {pair_of(s, "alpha1", "alpha2"), pair_of(s, "beta1", "beta2"), pair_of(s, "gamma1", "gamma2")};
}

inline bool multiplicative(Family f) { return f == Family::A3 || f == Family::B3 || f == Family::C3; }

inline std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

inline Observation scalar_obs(const std::string& name, const Scalar& r) { return {r.is_zero(), {{name, r.str()}}}; }

inline Observation matrix_obs(const std::string& name, const Matrix2& m) {
    Snapshot s;
    add_matrix(s, name, m);
    return {m.is_zero(), s};
}

inline const std::vector<std::string> face_vars{"x", "x_a", "x_b", "x_c", "x_d"};
inline const std::vector<std::string> face_params{"alpha1", "alpha2", "beta1", "beta2"};

// ---- case builders ----

inline SuiteCase cafcc_case(const SystemConfig& sc, const std::optional<SuiteOptions::FaultSpec>& fault) {
    SuiteCase c;
    c.id = sc.id();
    if (sc.type_a) {
        c.families = {family_name(sc.a.family())};
        c.regime = regime_str(sc.a.deltas());
    } else {
        c.families = {family_name(sc.a.family()), family_name(sc.b.family()), family_name(sc.c.family())};
        c.regime = regime_str(sc.c.deltas());
    }
    c.kind = "cafcc";
    const std::vector<std::string> init{"x", "x_a", "x_b", "x_c", "z_n", "z_w"};
    c.shape = with(init, param_labels());
    c.nonzero = as_set(param_labels());
    if (multiplicative(sc.a.family())) c.nonzero.insert(init.begin(), init.end());
    EquationSystem sys = assemble_system(sc);
    if (fault) {
        sys.by_index(fault->index).fault.kind = fault->kind;
        c.id += " fault=" + std::to_string(fault->index) + (fault->kind == Fault::Offset ? ":offset" : ":param");
        c.kind = fault->kind == Fault::Offset ? "fault-offset" : "fault-param";
    }
    c.check = [sys](const SampleAssignment& s) {
        CafccInit I{val(s, "x"), val(s, "x_a"), val(s, "x_b"), val(s, "x_c"), val(s, "z_n"), val(s, "z_w")};
        CafccReport r = run_cafcc(sys, I, cube_params(s));
        return Observation{r.pass, cafcc_residuals(r)};
    };
    return c;
}

inline FacePoint face_point(const SampleAssignment& s) {
    return {val(s, "x"), {val(s, "x_a"), val(s, "x_b"), val(s, "x_c"), val(s, "x_d")}, pair_of(s, "alpha1", "alpha2"),
            pair_of(s, "beta1", "beta2")};
}

inline SuiteCase face_case(const FaceEquation& eq, const std::string& kind) {
    SuiteCase c;
    c.id = eq.id() + " " + kind;
    c.families = {family_name(eq.family())};
    c.regime = regime_str(eq.deltas());
    c.kind = kind;
    c.shape = with(face_vars, face_params);
    c.nonzero = as_set(face_params);
    if (multiplicative(eq.family())) c.nonzero.insert(face_vars.begin(), face_vars.end());
    return c;
}

inline std::vector<SuiteCase> symmetry_cases() {
    std::vector<SuiteCase> out;
    for (const auto& eq : all_equations()) {
        for (const char* kind : {"2.9", "2.10", "2.11"}) {
            SuiteCase c = face_case(eq, kind);
            const std::string k = kind;
            const bool claimed = k == "2.9" || (k == "2.10" && eq.type() != EqType::C) ||
                                 (k == "2.11" && eq.type() == EqType::A);
            c.expect = claimed ? Expect::Holds : Expect::Fails;
            if (eq.family() == Family::C1 && k == "2.9") {
                c.expect = Expect::KnownDiscrepancy;
                c.note = "C1 as displayed satisfies C1(x;x_b,x_a,x_d,x_c;alpha,hat beta) = +C1(...): even, not odd";
            }
            c.check = [eq, k](const SampleAssignment& s) {
                FacePoint p = face_point(s);
                const auto& [a, b, cc, d] = p.corners;
                Scalar v = eq(p.x, a, b, cc, d, p.alpha, p.beta);
                if (k == "2.9") v += eq(p.x, b, a, d, cc, p.alpha, p.beta.hat());
                else if (k == "2.10") v += eq(p.x, cc, d, a, b, p.alpha.hat(), p.beta);
                else v += eq(p.x, d, b, cc, a, p.beta, p.alpha);
                return scalar_obs("sum", v);
            };
            out.push_back(std::move(c));
        }
    }
    return out;
}

inline std::vector<SuiteCase> fourleg_cases() {
    std::vector<SuiteCase> out;
    for (const auto& eq : all_equations()) {
        auto surd = fourleg_surd(eq);
        SuiteCase on = face_case(eq, "onshell");
        on.shape = {"x", "x_a", "x_b", "x_c", "alpha1", "alpha2", "beta1", "beta2"};
        if (surd) on.surd["x"] = *surd;
        if (eq.family() == Family::C1) {
            on.expect = Expect::KnownDiscrepancy;
            on.note = "the additive four-leg row for C1 does not vanish on solutions of C1 as displayed";
        }
        on.check = [eq](const SampleAssignment& s) {
            const ParamPair al = pair_of(s, "alpha1", "alpha2"), be = pair_of(s, "beta1", "beta2");
            const Scalar &x = val(s, "x"), &xa = val(s, "x_a"), &xb = val(s, "x_b"), &xc = val(s, "x_c");
            Scalar xd = solve_corner(eq, Slot::d, x, {xa, xb, xc}, al, be);
            Observation o = scalar_obs("fourleg", fourleg_residual(eq, s.at("x").leg(), {xa, xb, xc, xd}, al, be));
            o.residual.emplace_back("x_d", xd.str());
            return o;
        };
        out.push_back(std::move(on));

        SuiteCase off = face_case(eq, "offshell");
        if (surd) off.surd["x"] = *surd;
        off.expect = Expect::Fails;
        off.check = [eq](const SampleAssignment& s) {
            FacePoint p = face_point(s);
            return scalar_obs("fourleg", fourleg_residual(eq, s.at("x").leg(), p.corners, p.alpha, p.beta));
        };
        out.push_back(std::move(off));
    }
    return out;
}

struct LaxCase {
    NormalizationRule rule;
    bool flip = false;
    std::string id;
};

inline std::vector<LaxCase> lax_case_list() {
    std::vector<LaxCase> out;
    for (const auto& r : all_rules()) {
        if (prop_surd(r.prop, r.deltas)) {
            out.push_back({r, false, rule_id(r) + " branch=plus"});
            out.push_back({r, true, rule_id(r) + " branch=minus"});
        } else {
            out.push_back({r, false, rule_id(r)});
        }
    }
    return out;
}

inline const std::vector<std::string> lax_vars{"x_a", "x_b", "x_c", "y_a", "y_b", "y_c", "z_w", "z_n"};

inline SuiteCase lax_case(const LaxCase& lc, const std::string& kind) {
    SuiteCase c;
    c.id = lc.id + (kind.empty() ? "" : " " + kind);
    c.families = {lax_family_name(prop_family(lc.rule.prop))};
    c.regime = regime_str(lc.rule.deltas);
    c.prop = prop_name(lc.rule.prop);
    c.kind = kind;
    c.shape = with(lax_vars, param_labels());
    c.nonzero = as_set(c.shape);
    if (auto k = prop_surd(lc.rule.prop, lc.rule.deltas)) c.surd["z_n"] = *k;
    return c;
}

inline LaxPoint lax_point(const SampleAssignment& s, bool flip) {
    LaxPoint V{val(s, "x_a"), val(s, "x_b"), val(s, "x_c"), val(s, "y_a"),
               val(s, "y_b"), val(s, "y_c"), val(s, "z_w"), s.at("z_n").leg()};
    if (flip && V.zn.surd) V.zn = LegX(flip_branch(*V.zn.surd));
    return V;
}

inline std::vector<SuiteCase> lax_compat_cases() {
    std::vector<SuiteCase> out;
    for (const auto& lc : lax_case_list()) {
        SuiteCase c = lax_case(lc, "onshell");
        c.check = [lc](const SampleAssignment& s) {
            CubeParams P = cube_params(s);
            LaxPoint V = on_shell(lc.rule, lax_point(s, lc.flip), P);
            return matrix_obs("R", residual(assemble_quadruple(lc.rule, V, P)));
        };
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<SuiteCase> lax_offshell_cases() {
    std::vector<SuiteCase> out;
    for (const auto& lc : lax_case_list()) {
        SuiteCase c = lax_case(lc, "offshell");
        c.expect = Expect::Fails;
        c.check = [lc](const SampleAssignment& s) {
            CubeParams P = cube_params(s);
            return matrix_obs("R", residual(assemble_quadruple(lc.rule, lax_point(s, lc.flip), P)));
        };
        out.push_back(std::move(c));
        // every proof residual except the D1 one is a rank-one or triangular nilpotent form
        if (lc.rule.prop == PropId::P4_8) continue;
        SuiteCase r = lax_case(lc, "rank1");
        r.check = [lc](const SampleAssignment& s) {
            CubeParams P = cube_params(s);
            Matrix2 R = residual(assemble_quadruple(lc.rule, lax_point(s, lc.flip), P));
            return scalar_obs("det", R.det());
        };
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<SuiteCase> proof_oracle_cases() {
    std::vector<SuiteCase> out;
    for (const auto& lc : lax_case_list()) {
        for (const char* kind : {"offshell", "onshell"}) {
            SuiteCase c = lax_case(lc, kind);
            const bool shell = std::string(kind) == "onshell";
            c.check = [lc, shell](const SampleAssignment& s) {
                CubeParams P = cube_params(s);
                LaxPoint V = lax_point(s, lc.flip);
                if (shell) V = on_shell(lc.rule, V, P);
                Matrix2 R = residual(assemble_quadruple(lc.rule, V, P));
                Matrix2 D = R - Scalar(printed_sign(lc.rule.prop)) * proof_residual(lc.rule, V, P);
                return matrix_obs("diff", D);
            };
            out.push_back(std::move(c));
        }
    }
    return out;
}

inline std::vector<SuiteCase> spectral_cases() {
    std::vector<SuiteCase> out;
    std::vector<std::string> spectral;
    for (int i = 0; i < 10; ++i) spectral.push_back("spectral" + std::to_string(i));
    for (const auto& lc : lax_case_list()) {
        SuiteCase c = lax_case(lc, "sweep");
        c.shape = with(c.shape, spectral);
        c.nonzero = as_set(c.shape);
        c.check = [lc, spectral](const SampleAssignment& s) {
            CubeParams P = cube_params(s);
            LaxPoint V = on_shell(lc.rule, lax_point(s, lc.flip), P);
            const bool a = lax_approach(prop_family(lc.rule.prop)) == Approach::A;
            Observation o{true, {}};
            for (const auto& k : spectral) {
                CubeParams Q = P;
                (a ? Q.beta.first : Q.alpha.second) = val(s, k);
                Matrix2 R = residual(assemble_quadruple(lc.rule, V, Q));
                if (!R.is_zero()) {
                    o.holds = false;
                    add_matrix(o.residual, "R[" + k + "]", R);
                }
            }
            return o;
        };
        out.push_back(std::move(c));
    }
    return out;
}

inline SuiteCase matrix_family_case(LaxFamily f, const Deltas& d, const std::string& kind) {
    SuiteCase c;
    c.id = std::string(lax_family_name(f)) + ":" + regime_str(d) + " " + kind;
    c.families = {lax_family_name(f)};
    c.regime = regime_str(d);
    c.kind = kind;
    c.shape = {"x", "u", "v", "alpha1", "alpha2", "beta1", "beta2"};
    c.nonzero = as_set(c.shape);
    return c;
}

inline std::vector<SuiteCase> det_cases() {
    std::vector<SuiteCase> out;
    for (LaxFamily f : all_lax_families()) {
        if (f == LaxFamily::C1 || f == LaxFamily::D1) continue;
        for (const auto& d : lax_regimes(f)) {
            SuiteCase c = matrix_family_case(f, d, "det");
            c.check = [f, d](const SampleAssignment& s) {
                const ParamPair al = pair_of(s, "alpha1", "alpha2"), be = pair_of(s, "beta1", "beta2");
                const Scalar &x = val(s, "x"), &u = val(s, "u"), &v = val(s, "v");
                return scalar_obs("diff", catalogue_lax(f, d, x, u, v, al, be).det() - catalogue_det(f, d, x, u, v, al, be));
            };
            out.push_back(std::move(c));
        }
    }
    // the quadratic factor of the B3 (1/2,0,1/2) determinant splits over the surd x_c
    const Scalar h(1, 2);
    SuiteCase c = matrix_family_case(LaxFamily::B3, {h, 0, h}, "surd-factor");
    c.surd["v"] = SurdKind::Hyperbolic;
    c.check = [](const SampleAssignment& s) {
        const Scalar &x = val(s, "x"), &a1 = val(s, "alpha1"), &b1 = val(s, "beta1");
        const SurdParam& xc = *s.at("v").surd;
        Scalar t = xc.bar();
        Scalar split = (b1 * x - a1 * t) * (b1 * x - a1 * inverse(t));
        Scalar factor = Scalar(-2) * a1 * b1 *
                        (x * xc.value - a1 / (Scalar(2) * b1) - b1 / (Scalar(2) * a1) * x * x);
        return scalar_obs("diff", split - factor);
    };
    out.push_back(std::move(c));
    return out;
}

inline std::vector<SuiteCase> builder_cases() {
    std::vector<SuiteCase> out;
    for (LaxFamily f : all_lax_families()) {
        for (const auto& d : lax_regimes(f)) {
            SuiteCase c = matrix_family_case(f, d, "builder");
            c.check = [f, d](const SampleAssignment& s) {
                const ParamPair al = pair_of(s, "alpha1", "alpha2"), be = pair_of(s, "beta1", "beta2");
                const Scalar &x = val(s, "x"), &u = val(s, "u"), &v = val(s, "v");
                Matrix2 diff = catalogue_lax(f, d, x, u, v, al, be) -
                               catalogue_scale(f, d, x, u, v, al, be) * build_lax(f, d, x, u, v, al, be);
                Observation o = matrix_obs("diff", diff);
                if (f == LaxFamily::C1 || f == LaxFamily::D1) return o;
                const Scalar k = catalogue_scale(f, d, x, u, v, al, be);
                auto built = x_coefficients([&](const Scalar& t) { return k * build_lax(f, d, t, u, v, al, be); });
                auto shown = catalogue_blocks(f, d, u, v, al, be).coefficients();
                static const char* names[] = {"x2", "x1", "x0"};
                for (int i = 0; i < 3; ++i) {
                    Matrix2 m = built[i] - shown[i];
                    if (!m.is_zero()) {
                        o.holds = false;
                        add_matrix(o.residual, std::string("coef_") + names[i], m);
                    }
                }
                return o;
            };
            out.push_back(std::move(c));
        }
    }
    return out;
}

inline std::vector<SuiteCase> leg_unit_cases() {
    std::vector<SuiteCase> out;
    for (const auto& eq : all_equations()) {
        if (eq.type() != EqType::A) continue;
        LegInfo info = leg_info(eq, LegRole::A_leg);
        SuiteCase c;
        c.id = eq.id() + " a-leg";
        c.families = {family_name(eq.family())};
        c.regime = regime_str(eq.deltas());
        c.kind = info.additive ? "additive" : "multiplicative";
        c.shape = {"x", "y", "a", "b"};
        c.nonzero = as_set(c.shape);
        if (info.surd) c.surd["x"] = *info.surd;
        c.check = [eq, info](const SampleAssignment& s) {
            LegX X = s.at("x").leg();
            const Scalar &y = val(s, "y"), &a = val(s, "a"), &b = val(s, "b");
            Scalar p = leg(eq, LegRole::A_leg, X, y, a, b), q = leg(eq, LegRole::A_leg, X, y, b, a);
            return scalar_obs(info.additive ? "sum" : "product-1", info.additive ? p + q : p * q - Scalar(1));
        };
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<SuiteCase> inverse_law_cases() {
    std::vector<SuiteCase> out;
    for (const auto& eq : all_equations()) {
        if (eq.type() == EqType::B) continue;
        SuiteCase c = face_case(eq, "builder-A");
        c.shape = {"x", "x_a", "x_b", "alpha1", "alpha2", "beta1", "beta2"};
        c.check = [eq](const SampleAssignment& s) {
            const ParamPair al = pair_of(s, "alpha1", "alpha2"), be = pair_of(s, "beta1", "beta2");
            const Scalar &x = val(s, "x"), &xa = val(s, "x_a"), &xb = val(s, "x_b");
            Matrix2 M = build_lax_A(eq, x, xb, xa, al, be.hat()) * build_lax_A(eq, x, xa, xb, al, be);
            if (M.a.is_zero()) throw Error(Errc::SingularMatrix, "vanishing scalar");
            return matrix_obs("offscalar", {0, M.b, M.c, M.d - M.a});
        };
        const auto shape = c.shape;
        out.push_back(std::move(c));
        if (eq.type() != EqType::C) continue;
        SuiteCase b = face_case(eq, "builder-B");
        b.shape = shape;
        b.check = [eq](const SampleAssignment& s) {
            const ParamPair al = pair_of(s, "alpha1", "alpha2"), be = pair_of(s, "beta1", "beta2");
            const Scalar &x = val(s, "x"), &xa = val(s, "x_a"), &xc = val(s, "x_b");
            Matrix2 M = build_lax_B(eq, x, xa, xc, al, be);
            return matrix_obs("diff", invert(M) * M - Matrix2{1, 0, 0, 1});
        };
        out.push_back(std::move(b));
    }
    return out;
}

inline std::vector<SuiteCase> structure_cases() {
    std::vector<SuiteCase> out;
    for (const auto& eq : all_equations()) {
        SuiteCase a = face_case(eq, "affine");
        a.check = [eq](const SampleAssignment& s) {
            FacePoint p = face_point(s);
            Observation o{true, {}};
            static const char* slots[] = {"x_a", "x_b", "x_c", "x_d"};
            for (int k = 0; k < 4; ++k) {
                auto f = [&](int v) {
                    auto c = p.corners;
                    c[k] = Scalar(v);
                    return eq(p.x, c[0], c[1], c[2], c[3], p.alpha, p.beta);
                };
                Scalar d2 = f(0) - Scalar(2) * f(1) + f(2);
                if (!d2.is_zero()) {
                    o.holds = false;
                    o.residual.emplace_back(std::string("second_difference.") + slots[k], d2.str());
                }
            }
            return o;
        };
        out.push_back(std::move(a));

        SuiteCase d = face_case(eq, "degree");
        d.check = [eq](const SampleAssignment& s) {
            FacePoint p = face_point(s);
            const auto& c = p.corners;
            auto g = [&](const Scalar& x) {
                return pow(x, static_cast<long>(eq.laurent_offset())) * eq(x, c[0], c[1], c[2], c[3], p.alpha, p.beta);
            };
            const Scalar &t = p.x, one(1), two(2), three(3);
            Scalar interp = (t - two) * (t - three) / two * g(one) - (t - one) * (t - three) * g(two) +
                            (t - one) * (t - two) / two * g(three);
            return scalar_obs("diff", g(t) - interp);
        };
        out.push_back(std::move(d));
    }
    return out;
}

inline std::optional<NormalizationRule> wrong_sibling(const NormalizationRule& r) {
    NormalizationRule s = r;
    switch (r.prop) {
    case PropId::P4_1:
    case PropId::P4_2: s.variant = 3 - r.variant; return s;
    case PropId::P4_3: s.eps = -r.eps; return s;
    case PropId::P4_4:
        if (r.deltas.d1.is_zero()) return std::nullopt;
        s.eps = -r.eps;
        return s;
    case PropId::P4_7:
        if (r.deltas.d3.is_zero()) return std::nullopt;
        s.eps = -r.eps;
        return s;
    default: return std::nullopt;
    }
}

inline bool has_normalization(const NormalizationRule& r) {
    switch (r.prop) {
    case PropId::P4_5:
    case PropId::P4_8: return false;
    case PropId::P4_6:
    case PropId::P4_7: return prop_surd(r.prop, r.deltas).has_value();
    default: return true;
    }
}

// Decided at two fixed generic points; an equation affine in each corner that agrees at
// both is treated as β-free (true for D1 and the (0,0,0) type-B equations).
inline bool depends_on_beta(const FaceEquation& eq) {
    const ParamPair al{Scalar(2), Scalar(3)}, be{Scalar(5), Scalar(7)};
    for (const auto& x : {Scalar(3, 7), Scalar(-11, 5)}) {
        const Scalar a(2), b(5, 3), c(-4), d(7, 2);
        if (eq(x, a, b, c, d, al, be) != eq(x, a, b, c, d, al, be.hat())) return true;
    }
    return false;
}

inline std::vector<SuiteCase> negative_cases() {
    std::vector<SuiteCase> out;
    for (const auto& sc : all_systems()) {
        EquationSystem sys = assemble_system(sc);
        for (int i = 1; i <= 14; ++i) {
            for (Fault::Kind k : {Fault::Offset, Fault::ParamSwap}) {
                // swapping β is a no-op on equations that do not depend on β
                if (k == Fault::ParamSwap && !depends_on_beta(sys.by_index(i).equation)) continue;
                SuiteCase c = cafcc_case(sc, SuiteOptions::FaultSpec{i, k});
                c.expect = Expect::Fails;
                out.push_back(std::move(c));
            }
        }
    }
    for (const auto& lc : lax_case_list()) {
        if (has_normalization(lc.rule)) {
            SuiteCase c = lax_case(lc, "unnormalized");
            c.expect = Expect::Fails;
            c.check = [lc](const SampleAssignment& s) {
                CubeParams P = cube_params(s);
                LaxPoint V = on_shell(lc.rule, lax_point(s, lc.flip), P);
                LaxFamily f = prop_family(lc.rule.prop);
                auto L = [&](int, const Scalar& x, const Scalar& u, const LegX& v, const ParamPair& al,
                             const ParamPair& be) { return catalogue_lax(f, lc.rule.deltas, x, u, v.x, al, be); };
                return matrix_obs("R", residual(assemble_quadruple(lax_approach(f), L, V, P)));
            };
            out.push_back(std::move(c));
        }
        auto sib = wrong_sibling(lc.rule);
        const bool surd = prop_surd(lc.rule.prop, lc.rule.deltas).has_value();
        if (!sib && !(surd && lc.rule.prop == PropId::P4_6)) continue;
        SuiteCase c = lax_case(lc, "mixed");
        c.expect = Expect::Fails;
        c.check = [lc, sib](const SampleAssignment& s) {
            CubeParams P = cube_params(s);
            LaxPoint V = on_shell(lc.rule, lax_point(s, lc.flip), P);
            // L1, L3 follow the rule; L2, L4 use a different displayed variant or the other surd branch
            auto L = [&](int i, const Scalar& x, const Scalar& u, const LegX& v, const ParamPair& al,
                         const ParamPair& be) {
                if (i % 2 == 0) return lax_matrix(lc.rule, x, u, v, al, be);
                if (sib) return lax_matrix(*sib, x, u, v, al, be);
                return lax_matrix(lc.rule, x, u, LegX(flip_branch(*v.surd)), al, be);
            };
            return matrix_obs("R", residual(assemble_quadruple(lax_approach(prop_family(lc.rule.prop)), L, V, P)));
        };
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<SuiteCase> suite_cases(Suite s, const SuiteOptions& opt) {
    switch (s) {
    case Suite::cafcc: {
        std::vector<SuiteCase> out;
        for (const auto& sc : all_systems()) out.push_back(cafcc_case(sc, opt.fault));
        return out;
    }
    case Suite::symmetry: return symmetry_cases();
    case Suite::fourleg: return fourleg_cases();
    case Suite::lax_compat: return lax_compat_cases();
    case Suite::lax_offshell: return lax_offshell_cases();
    case Suite::det: return det_cases();
    case Suite::builder_vs_catalogue: return builder_cases();
    case Suite::proof_oracle: return proof_oracle_cases();
    case Suite::leg_unit: return leg_unit_cases();
    case Suite::inverse_law: return inverse_law_cases();
    case Suite::spectral_sweep: return spectral_cases();
    case Suite::structure: return structure_cases();
    case Suite::negative: return negative_cases();
    }
    return {};
}

constexpr std::size_t kMaxFailuresPerCase = 5;

inline void run_case(const SuiteCase& c, int trials, const SamplerConfig& cfg, SuiteReport& rep) {
    int confirmed = 0;
    std::size_t recorded = 0;
    auto record = [&](int t, std::uint64_t seed, const SampleAssignment& pt, Snapshot residual, std::string msg) {
        ++rep.failed_checks;
        if (recorded++ < kMaxFailuresPerCase)
            rep.failures.push_back({c.id, t, seed, snapshot(pt), std::move(residual), std::move(msg)});
    };
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, rep.suite + "/" + c.id, static_cast<std::uint64_t>(t));
        SamplerConfig sc = cfg;
        sc.nonzero_slots.insert(c.nonzero.begin(), c.nonzero.end());
        sc.surd_slots.insert(c.surd.begin(), c.surd.end());
        bool done = false, vanished = false;
        std::string last_error;
        SampleAssignment pt;
        Observation obs;
        for (int attempt = 0; attempt < cfg.max_retries && !done; ++attempt) {
            sc.seed = derive_seed(trial_seed, "attempt", static_cast<std::uint64_t>(attempt));
            try {
                pt = sample_point(sc, c.shape);
                obs = c.check(pt);
            } catch (const Error& e) {
                if (!e.degenerate()) throw;
                last_error = e.what();
                continue;
            }
            // a vanishing residual where non-vanishing is expected is an accidental zero: resample
            if (c.expect != Expect::Holds && obs.holds) vanished = true;
            else done = true;
        }
        ++rep.checks;
        if (!done) {
            if (!vanished)
                throw Error(Errc::RetriesExhausted, c.id + " trial " + std::to_string(t) + ": " + last_error);
            record(t, sc.seed, pt, obs.residual, "expected a nonzero residual; it vanished at every sampled point");
            continue;
        }
        if (c.expect == Expect::Holds && !obs.holds) {
            record(t, sc.seed, pt, obs.residual, "identity does not vanish");
        } else if (c.expect == Expect::KnownDiscrepancy) {
            ++confirmed;
        }
    }
    if (c.expect == Expect::KnownDiscrepancy && confirmed > 0)
        rep.known_discrepancies.push_back({c.id, c.note, confirmed});
}

} // namespace detail

inline SuiteReport run_suite(Suite s, const Scope& scope, int trials, const SamplerConfig& cfg,
                             const SuiteOptions& opt = {}) {
    auto start = std::chrono::steady_clock::now();
    std::vector<SuiteCase> cases;
    for (auto& c : detail::suite_cases(s, opt))
        if (scope_admits(scope, c)) cases.push_back(std::move(c));
    if (cases.empty()) throw Error(Errc::EmptyScope, std::string("no cases of suite ") + suite_name(s) + " in scope");
    SuiteReport rep;
    rep.suite = suite_name(s);
    rep.seed = cfg.seed;
    rep.trials = trials > 0 ? trials : default_trials(s);
    rep.cases = static_cast<int>(cases.size());
    for (const auto& c : cases) detail::run_case(c, rep.trials, cfg, rep);
    rep.pass = rep.failures.empty();
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

inline Json to_json(const SuiteReport& r, bool timing = false) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back(Json{{"case", f.case_id},
                                {"trial", f.trial},
                                {"seed", f.seed},
                                {"point", to_json(f.point)},
                                {"residual", to_json(f.residual)},
                                {"message", f.message}});
    Json known = Json::array();
    for (const auto& k : r.known_discrepancies)
        known.push_back(Json{{"case", k.case_id}, {"note", k.note}, {"confirmed_trials", k.confirmed}});
    Json j{{"schema", "1"},
           {"suite", r.suite},
           {"seed", r.seed},
           {"trials", r.trials},
           {"cases", r.cases},
           {"checks", r.checks},
           {"failed_checks", r.failed_checks},
           {"pass", r.pass},
           {"failures", failures},
           {"known_discrepancies", known}};
    if (timing) j["wall_time_ms"] = static_cast<long>(r.wall_time_ms);
    return j;
}

} // namespace cafcc
