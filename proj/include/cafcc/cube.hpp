#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cafcc/catalogue.hpp"

namespace cafcc {

enum class Vertex { X, Xa, Xb, Xc, Xd, Y, Ya, Yb, Yc, Yd, Zn, Zs, Ze, Zw };

inline const char* vertex_name(Vertex v) {
    static const char* names[] = {"x",  "x_a", "x_b", "x_c", "x_d", "y",  "y_a",
                                  "y_b", "y_c", "y_d", "z_n", "z_s", "z_e", "z_w"};
    return names[static_cast<int>(v)];
}

inline bool is_face_vertex(Vertex v) {
    return v == Vertex::X || v == Vertex::Y || v == Vertex::Zn || v == Vertex::Zs ||
           v == Vertex::Ze || v == Vertex::Zw;
}

enum class Param { A1, A2, B1, B2, G1, G2 };

inline const char* param_name(Param p) {
    static const char* names[] = {"alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2"};
    return names[static_cast<int>(p)];
}

struct CubeParams {
    ParamPair alpha, beta, gamma;

    const Scalar& get(Param p) const {
        switch (p) {
        case Param::A1: return alpha.first;
        case Param::A2: return alpha.second;
        case Param::B1: return beta.first;
        case Param::B2: return beta.second;
        case Param::G1: return gamma.first;
        default: return gamma.second;
        }
    }
    ParamPair pair(std::pair<Param, Param> p) const { return {get(p.first), get(p.second)}; }
};

using Assignment = std::map<Vertex, Scalar>;

struct Fault {
    enum Kind { None, Offset, ParamSwap } kind = None;
};

struct CenteredEquation {
    int index = 0;
    Vertex center = Vertex::X;
    std::array<Vertex, 4> corners{};
    std::pair<Param, Param> alpha, beta;
    FaceEquation equation;
    Fault fault;

    ParamPair alpha_of(const CubeParams& P) const { return P.pair(alpha); }
    ParamPair beta_of(const CubeParams& P) const {
        ParamPair b = P.pair(beta);
        return fault.kind == Fault::ParamSwap ? b.hat() : b;
    }

    Scalar eval(const Scalar& x, const std::array<Scalar, 4>& c, const CubeParams& P) const {
        Scalar v = equation(x, c[0], c[1], c[2], c[3], alpha_of(P), beta_of(P));
        if (fault.kind == Fault::Offset) v += Scalar(1);
        return v;
    }

    Scalar eval(const Assignment& V, const CubeParams& P) const {
        std::array<Scalar, 4> c;
        for (int i = 0; i < 4; ++i) c[i] = V.at(corners[i]);
        return eval(V.at(center), c, P);
    }

    int slot_of(Vertex v) const {
        for (int i = 0; i < 4; ++i)
            if (corners[i] == v) return i;
        return -1;
    }
};

// ---- configurations --------------------------------------------------------

struct SystemConfig {
    bool type_a = true;
    FaceEquation a, b, c; // b, c unused for type-A systems

    std::string id() const {
        if (type_a) return a.id();
        std::string s = std::string("ABC:") + family_name(a.family()) + "," + family_name(b.family()) +
                        "," + family_name(c.family());
        if (c.family() == Family::C1) return s;
        const auto& d = c.deltas();
        return s + ":" + d.d1.str() + "," + d.d2.str() + "," + d.d3.str();
    }
};

inline SystemConfig type_a_config(const FaceEquation& e) {
    if (e.type() != EqType::A) throw Error(Errc::InadmissibleConfig, e.id() + " is not type-A");
    return {true, e, e, e};
}

inline SystemConfig abc_config(Family fa, Family fb, Family fc, const Deltas& d) {
    SystemConfig cfg;
    cfg.type_a = false;
    if (fa == Family::A3 && fb == Family::B3 && fc == Family::C3) {
        cfg.b = make_equation(Family::B3, d);
        cfg.c = make_equation(Family::C3, d);
        cfg.a = make_equation(Family::A3, {Scalar(2) * d.d2, 0, 0});
    } else if (fa == Family::A2 && fb == Family::B2 && fc == Family::C2) {
        cfg.b = make_equation(Family::B2, d);
        cfg.c = make_equation(Family::C2, d);
        cfg.a = make_equation(Family::A2, {d.d1, d.d2, 0});
    } else if (fa == Family::A2 && fb == Family::D1 && fc == Family::C1) {
        cfg.a = make_equation(Family::A2, {0, 0, 0});
        cfg.b = make_equation(Family::D1, {});
        cfg.c = make_equation(Family::C1, {});
    } else {
        throw Error(Errc::InadmissibleConfig, std::string("no CAFCC system (") + family_name(fa) + "," +
                                                  family_name(fb) + "," + family_name(fc) + ")");
    }
    return cfg;
}

// "A3:d=0", "A2:1,1", "ABC:A2,B2,C2:1,0,1", "ABC:A2,D1,C1"
inline SystemConfig parse_config(const std::string& s) {
    if (s.rfind("ABC:", 0) != 0) return type_a_config(parse_equation(s));
    auto parts = detail::split(s.substr(4), ':');
    if (parts.empty() || parts.size() > 2) throw Error(Errc::Parse, "bad config '" + s + "'");
    auto fams = detail::split(parts[0], ',');
    if (fams.size() != 3) throw Error(Errc::Parse, "ABC config needs three families: '" + s + "'");
    Deltas d;
    if (parts.size() == 2) {
        auto ds = detail::split(parts[1], ',');
        if (ds.size() != 3) throw Error(Errc::Parse, "ABC config needs a delta triple: '" + s + "'");
        d = {Scalar::parse(ds[0]), Scalar::parse(ds[1]), Scalar::parse(ds[2])};
    }
    Family fc = detail::parse_family(fams[2]);
    if (parts.size() == 1 && fc != Family::C1)
        throw Error(Errc::Parse, "ABC config needs a delta triple: '" + s + "'");
    return abc_config(detail::parse_family(fams[0]), detail::parse_family(fams[1]), fc, d);
}

inline std::vector<SystemConfig> all_systems() {
    std::vector<SystemConfig> out;
    for (Family f : {Family::A3, Family::A2})
        for (const auto& d : admissible_deltas(f)) out.push_back(type_a_config(FaceEquation(f, d)));
    for (const auto& d : admissible_deltas(Family::C3))
        out.push_back(abc_config(Family::A3, Family::B3, Family::C3, d));
    for (const auto& d : admissible_deltas(Family::C2))
        out.push_back(abc_config(Family::A2, Family::B2, Family::C2, d));
    out.push_back(abc_config(Family::A2, Family::D1, Family::C1, {}));
    return out;
}

struct EquationSystem {
    SystemConfig config;
    std::array<CenteredEquation, 14> equations;

    const CenteredEquation& by_index(int i) const { return equations.at(i - 1); }
    CenteredEquation& by_index(int i) { return equations.at(i - 1); }
    const CenteredEquation& centered_at(Vertex v) const {
        for (const auto& e : equations)
            if (e.center == v) return e;
        throw Error(Errc::InadmissibleConfig, std::string("no equation centered at ") + vertex_name(v));
    }
};

inline EquationSystem assemble_system(const SystemConfig& cfg) {
    using V = Vertex;
    using P = Param;
    struct Row {
        V center;
        std::array<V, 4> c;
        std::pair<P, P> al, be;
    };
    // six face-centered, then eight corner-centered equations
    static const Row rows[14] = {
        {V::X, {V::Xa, V::Xb, V::Xc, V::Xd}, {P::A1, P::A2}, {P::B1, P::B2}},
        {V::Zw, {V::Ya, V::Xa, V::Yc, V::Xc}, {P::A1, P::A2}, {P::G1, P::G2}},
        {V::Zn, {V::Ya, V::Yb, V::Xa, V::Xb}, {P::G1, P::G2}, {P::B1, P::B2}},
        {V::Y, {V::Ya, V::Yb, V::Yc, V::Yd}, {P::A1, P::A2}, {P::B1, P::B2}},
        {V::Ze, {V::Yb, V::Xb, V::Yd, V::Xd}, {P::A1, P::A2}, {P::G1, P::G2}},
        {V::Zs, {V::Yc, V::Yd, V::Xc, V::Xd}, {P::G1, P::G2}, {P::B1, P::B2}},
        {V::Xa, {V::Zw, V::Ya, V::X, V::Zn}, {P::B1, P::G2}, {P::A2, P::G1}},
        {V::Xb, {V::Ze, V::Yb, V::X, V::Zn}, {P::B2, P::G2}, {P::A2, P::G1}},
        {V::Xc, {V::Zw, V::Yc, V::X, V::Zs}, {P::B1, P::G2}, {P::A1, P::G1}},
        {V::Xd, {V::Ze, V::Yd, V::X, V::Zs}, {P::B2, P::G2}, {P::A1, P::G1}},
        {V::Ya, {V::Zw, V::Xa, V::Y, V::Zn}, {P::B1, P::G1}, {P::A2, P::G2}},
        {V::Yb, {V::Ze, V::Xb, V::Y, V::Zn}, {P::B2, P::G1}, {P::A2, P::G2}},
        {V::Yc, {V::Zw, V::Xc, V::Y, V::Zs}, {P::B1, P::G1}, {P::A1, P::G2}},
        {V::Yd, {V::Ze, V::Xd, V::Y, V::Zs}, {P::B2, P::G1}, {P::A1, P::G2}},
    };
    EquationSystem sys;
    sys.config = cfg;
    for (int i = 0; i < 14; ++i) {
        auto& e = sys.equations[i];
        e.index = i + 1;
        e.center = rows[i].center;
        e.corners = rows[i].c;
        e.alpha = rows[i].al;
        e.beta = rows[i].be;
        if (cfg.type_a) {
            e.equation = cfg.a;
        } else {
            int idx = i + 1;
            e.equation = (idx == 2 || idx == 5) ? cfg.a : (idx <= 6 ? cfg.b : cfg.c);
        }
    }
    return sys;
}

// ---- solving ---------------------------------------------------------------

// Root of an affine function f given its values at 0 and 1.
inline Scalar affine_root(const Scalar& f0, const Scalar& f1) {
    if (f0 == f1) throw Error(Errc::DegenerateSlot, "vanishing linear coefficient");
    return f0 / (f0 - f1);
}

enum class Slot { a = 0, b = 1, c = 2, d = 3 };

inline Scalar solve_corner(const FaceEquation& eq, Slot slot, const Scalar& x,
                           const std::array<Scalar, 3>& others, const ParamPair& al, const ParamPair& be) {
    std::array<Scalar, 4> c;
    int s = static_cast<int>(slot);
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != s) c[i] = others[k++];
    auto at = [&](const Scalar& v) {
        c[s] = v;
        return eq(x, c[0], c[1], c[2], c[3], al, be);
    };
    Scalar f0 = at(Scalar(0));
    Scalar f1 = at(Scalar(1));
    return affine_root(f0, f1);
}

struct CafccInit {
    Scalar x, xa, xb, xc, zn, zw;
};

struct CafccReport {
    std::string system;
    std::map<Vertex, Scalar> solved;
    bool step3_agree = false, step4_agree = false, step5_agree = false;
    std::array<Scalar, 2> step3_values, step4_values;
    std::array<Scalar, 4> step5_values;
    Scalar step6_residual;
    bool pass = false;
    std::uint64_t seed = 0;
};

namespace detail {

inline Scalar solve_centered(const CenteredEquation& e, Vertex unknown, const Assignment& V,
                             const CubeParams& P, int step) {
    int s = e.slot_of(unknown);
    if (s < 0) throw Error(Errc::InadmissibleConfig, "unknown is not a corner of its equation");
    std::array<Scalar, 4> c;
    for (int i = 0; i < 4; ++i)
        if (i != s) c[i] = V.at(e.corners[i]);
    try {
        c[s] = Scalar(0);
        Scalar f0 = e.eval(V.at(e.center), c, P);
        c[s] = Scalar(1);
        Scalar f1 = e.eval(V.at(e.center), c, P);
        return affine_root(f0, f1);
    } catch (const Error& err) {
        if (!err.degenerate()) throw;
        throw Error(Errc::DegenerateSolve, "step " + std::to_string(step) + ", equation " +
                                               std::to_string(e.index) + ": " + err.what());
    }
}

} // namespace detail

inline CafccReport run_cafcc(const EquationSystem& sys, const CafccInit& init, const CubeParams& P) {
    using V = Vertex;
    Assignment A{{V::X, init.x}, {V::Xa, init.xa}, {V::Xb, init.xb},
                 {V::Xc, init.xc}, {V::Zn, init.zn}, {V::Zw, init.zw}};
    auto solve = [&](V center, V unknown, int step) {
        return detail::solve_centered(sys.centered_at(center), unknown, A, P, step);
    };
    CafccReport r;
    r.system = sys.config.id();
    // 1
    A[V::Ya] = solve(V::Xa, V::Ya, 1);
    A[V::Xd] = solve(V::X, V::Xd, 1);
    // 2
    A[V::Yc] = solve(V::Zw, V::Yc, 2);
    A[V::Yb] = solve(V::Zn, V::Yb, 2);
    A[V::Y] = solve(V::Ya, V::Y, 2);
    // 3
    r.step3_values = {solve(V::Xb, V::Ze, 3), solve(V::Yb, V::Ze, 3)};
    r.step3_agree = r.step3_values[0] == r.step3_values[1];
    A[V::Ze] = r.step3_values[0];
    // 4
    r.step4_values = {solve(V::Yc, V::Zs, 4), solve(V::Xc, V::Zs, 4)};
    r.step4_agree = r.step4_values[0] == r.step4_values[1];
    A[V::Zs] = r.step4_values[0];
    // 5
    const V centers5[4] = {V::Ze, V::Y, V::Zs, V::Xd};
    for (int i = 0; i < 4; ++i) r.step5_values[i] = solve(centers5[i], V::Yd, 5);
    r.step5_agree = r.step5_values[0] == r.step5_values[1] && r.step5_values[0] == r.step5_values[2] &&
                    r.step5_values[0] == r.step5_values[3];
    A[V::Yd] = r.step5_values[0];
    // 6
    try {
        r.step6_residual = sys.centered_at(V::Yd).eval(A, P);
    } catch (const Error& err) {
        if (!err.degenerate()) throw;
        throw Error(Errc::DegenerateSolve, std::string("step 6: ") + err.what());
    }
    r.solved = A;
    r.pass = r.step3_agree && r.step4_agree && r.step5_agree && r.step6_residual.is_zero();
    return r;
}

} // namespace cafcc
