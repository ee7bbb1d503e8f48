#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cafcc/exactnum.hpp"

namespace cafcc {

enum class Family { A3, A2, B3, B2, C3, C2, C1, D1 };
enum class EqType { A, B, C };

inline const char* family_name(Family f) {
    switch (f) {
    case Family::A3: return "A3";
    case Family::A2: return "A2";
    case Family::B3: return "B3";
    case Family::B2: return "B2";
    case Family::C3: return "C3";
    case Family::C2: return "C2";
    case Family::C1: return "C1";
    case Family::D1: return "D1";
    }
    return "?";
}

inline EqType family_type(Family f) {
    switch (f) {
    case Family::A3:
    case Family::A2: return EqType::A;
    case Family::B3:
    case Family::B2:
    case Family::D1: return EqType::B;
    default: return EqType::C;
    }
}

inline const std::array<Family, 8>& all_families() {
    static const std::array<Family, 8> fs{Family::A3, Family::A2, Family::B3, Family::B2,
                                         Family::C3, Family::C2, Family::C1, Family::D1};
    return fs;
}

struct Deltas {
    Scalar d1, d2, d3;
    friend bool operator==(const Deltas&, const Deltas&) = default;
};

struct ParamPair {
    Scalar first, second;
    ParamPair hat() const { return {second, first}; }
    friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

struct FacePoint {
    Scalar x;
    std::array<Scalar, 4> corners; // x_a, x_b, x_c, x_d
    ParamPair alpha, beta;
};

inline std::vector<Deltas> admissible_deltas(Family f) {
    const Scalar h(1, 2);
    switch (f) {
    case Family::A3: return {{0, 0, 0}, {1, 0, 0}};
    case Family::A2: return {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    case Family::B3:
    case Family::C3: return {{0, 0, 0}, {1, 0, 0}, {h, 0, h}, {h, h, 0}};
    case Family::B2:
    case Family::C2: return {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}};
    case Family::C1:
    case Family::D1: return {{0, 0, 0}};
    }
    return {};
}

class FaceEquation {
public:
    FaceEquation() = default;
    FaceEquation(Family f, Deltas d) : family_(f), deltas_(std::move(d)) {}

    Family family() const { return family_; }
    const Deltas& deltas() const { return deltas_; }
    EqType type() const { return family_type(family_); }
    int laurent_offset() const { return family_ == Family::B3 ? 1 : 0; }

    // "A3:d=1", "A2:1,0", "B3:1/2,0,1/2", "C1"
    std::string id() const {
        std::string s = family_name(family_);
        switch (family_) {
        case Family::A3: return s + ":d=" + deltas_.d1.str();
        case Family::A2: return s + ":" + deltas_.d1.str() + "," + deltas_.d2.str();
        case Family::C1:
        case Family::D1: return s;
        default:
            return s + ":" + deltas_.d1.str() + "," + deltas_.d2.str() + "," + deltas_.d3.str();
        }
    }

    Scalar operator()(const Scalar& x, const Scalar& a, const Scalar& b, const Scalar& c,
                      const Scalar& d, const ParamPair& al, const ParamPair& be) const;

    friend bool operator==(const FaceEquation& p, const FaceEquation& q) {
        return p.family_ == q.family_ && p.deltas_ == q.deltas_;
    }

private:
    Family family_ = Family::D1;
    Deltas deltas_;
};

inline FaceEquation make_equation(Family f, const Deltas& d) {
    for (const auto& ok : admissible_deltas(f))
        if (ok == d) return FaceEquation(f, d);
    throw Error(Errc::InadmissibleDeltas, std::string(family_name(f)) + " does not admit (" +
                                              d.d1.str() + "," + d.d2.str() + "," + d.d3.str() + ")");
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline Family parse_family(const std::string& s) {
    for (Family f : all_families())
        if (s == family_name(f)) return f;
    throw Error(Errc::Parse, "unknown family '" + s + "'");
}

// p/q - q/p, the ubiquitous multiplicative difference
inline Scalar dq(const Scalar& p, const Scalar& q) { return p / q - q / p; }

struct Theta {
    std::array<Scalar, 5> t; // 1-based: α1, α2, β1, β2
    Theta(const ParamPair& al, const ParamPair& be) : t{0, al.first, al.second, be.first, be.second} {}
    Scalar operator()(int i, int j) const { return t[i] - t[j]; }
};

inline void require_nonzero_params(const ParamPair& al, const ParamPair& be, const char* who) {
    if (al.first.is_zero() || al.second.is_zero() || be.first.is_zero() || be.second.is_zero())
        throw Error(Errc::DomainViolation, std::string(who) + " needs nonzero parameters");
}

inline Scalar eval_A3(const Scalar& delta, const Scalar& x, const Scalar& xa, const Scalar& xb,
                      const Scalar& xc, const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    require_nonzero_params(al, be, "A3");
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    // δ enters with weight 1/4
    const Scalar dl = delta / Scalar(4);
    Scalar r = x * (dq(b1, b2) * (xa * xb - xc * xd) + dq(a1, a2) * (xa * xc - xb * xd) -
                    dq(a1 * a2, b1 * b2) * (xa * xd - xb * xc));
    Scalar x2 = x * x;
    r += dq(a2, b1) * (xa * x2 - xb * xc * xd) - dq(a2, b2) * (xb * x2 - xa * xc * xd) -
         dq(a1, b1) * (xc * x2 - xa * xb * xd) + dq(a1, b2) * (xd * x2 - xa * xb * xc);
    if (!dl.is_zero()) {
        r -= dl * dq(a1, a2) * dq(b1, b2) * dq(a1 * a2, b1 * b2) * x;
        r += dl * (dq(a1, b1) * dq(a2, b2) * (dq(a1, b2) * xa + dq(a2, b1) * xd) -
                   dq(a1, b2) * dq(a2, b1) * (dq(a1, b1) * xb + dq(a2, b2) * xc));
    }
    return r;
}

inline Scalar eval_B3(const Deltas& D, const Scalar& x, const Scalar& xa, const Scalar& xb,
                      const Scalar& xc, const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    require_nonzero_params(al, be, "B3");
    if (x.is_zero()) throw Error(Errc::DomainViolation, "B3 is Laurent in x; x must be nonzero");
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    Scalar r = xb * xc - xa * xd;
    r += D.d2 / Scalar(2) * dq(a2, a1) * dq(b1, b2);
    r += D.d2 * (a1 / b2 * xa - a1 / b1 * xb - a2 / b2 * xc + a2 / b1 * xd) * x;
    r += D.d1 * (b2 / a1 * xa - b1 / a1 * xb - b2 / a2 * xc + b1 / a2 * xd) / x;
    r += D.d3 * (xa * xb * a2 * (xd / b2 - xc / b1) + xc * xd * a1 * (xa / b1 - xb / b2)) / x;
    return r;
}

inline Scalar eval_C3(const Deltas& D, const Scalar& x, const Scalar& xa, const Scalar& xb,
                      const Scalar& xc, const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    require_nonzero_params(al, be, "C3");
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    const Scalar a22 = a2 * a2, bb = b1 * b2;
    Scalar c2 = a2 * (b1 * xd - b2 * xc) - D.d3 * (a22 * (b1 * xb - b2 * xa) + bb * (b1 * xa - b2 * xb)) / a1;
    Scalar c1 = a22 * (xb * xc - xa * xd) + bb * (xa * xc - xb * xd) +
                a2 * dq(b2, b1) * (D.d1 * a1 - D.d3 * bb / a1 * xa * xb + D.d2 * bb / a1 * xc * xd);
    Scalar c0 = a2 * xa * xb * (b2 * xd - b1 * xc) +
                D.d1 * a1 * (b1 * xb - b2 * xa + a22 * (xa / b2 - xb / b1));
    if (!D.d2.is_zero()) {
        c0 += D.d2 * ((a22 - b1 * b1) * (a22 - b2 * b2) / (Scalar(2) * a2 * bb) * (b2 * xd - b1 * xc) +
                      xc * xd / a1 * (bb * (b1 * xb - b2 * xa) + a22 * (b1 * xa - b2 * xb)));
    }
    return (c2 * x + c1) * x + c0;
}

inline Scalar eval_A2(const Deltas& D, const Scalar& x, const Scalar& xa, const Scalar& xb,
                      const Scalar& xc, const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    Theta T(al, be);
    const Scalar x2 = x * x;
    Scalar r = T(2, 3) * (xa * x2 - xb * xc * xd) - T(2, 4) * (xb * x2 - xa * xc * xd) -
               T(1, 3) * (xc * x2 - xa * xb * xd) + T(1, 4) * (xd * x2 - xa * xb * xc);
    r += (T(3, 4) * (xa * xb - xc * xd) + T(1, 2) * (xa * xc - xb * xd) -
          (T(1, 3) + T(2, 4)) * (xa * xd - xb * xc)) * x;
    const Scalar &d1 = D.d1, &d2 = D.d2;
    if (!d1.is_zero()) {
        // second product carries θ14 on x_a
        r += d1 * (T(1, 4) * T(2, 3) * (T(1, 3) * xb + T(2, 4) * xc) * pow(Scalar(2) * x - T(1, 2) * T(3, 4), d2) -
                   T(1, 3) * T(2, 4) * (T(1, 4) * xa + T(2, 3) * xd) * pow(Scalar(2) * x + T(1, 2) * T(3, 4), d2));
        r += d1 * x * T(1, 2) * T(3, 4) * (T(1, 3) + T(2, 4)) *
             pow(x + xa + xb + xc + xd - T(1, 2) * T(1, 2) - T(1, 3) * T(2, 3) - T(1, 4) * T(2, 4), d2);
    }
    if (!d2.is_zero()) {
        Scalar prod(1);
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) prod *= T(i, j);
        auto sq = [](const Scalar& v) { return v * v; };
        r += d2 * (xa * T(1, 3) * T(1, 4) * (T(2, 4) * sq(T(1, 4)) - T(3, 4) * xb) -
                   xb * T(1, 3) * T(2, 3) * (T(1, 4) * sq(T(1, 3)) - T(1, 2) * xd) -
                   xc * T(1, 4) * T(2, 4) * (T(2, 3) * sq(T(2, 4)) + T(1, 2) * xa) +
                   xd * T(2, 3) * T(2, 4) * (T(1, 3) * sq(T(2, 3)) + T(3, 4) * xc) +
                   (xa * xd * T(1, 3) * T(4, 2) + xb * xc * T(2, 3) * T(1, 4) + prod) * (T(1, 3) + T(2, 4)));
    }
    return r;
}

inline Scalar eval_B2(const Deltas& D, const Scalar& x, const Scalar& xa, const Scalar& xb,
                      const Scalar& xc, const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    Theta T(al, be);
    const Scalar &d1 = D.d1, &d2 = D.d2, &d3 = D.d3;
    const Scalar e = Scalar(1) + d2;
    Scalar r;
    if (!d1.is_zero()) {
        r += d1 * (T(1, 2) * T(4, 3) * pow(T(1, 2) * T(1, 2) - T(1, 3) * T(1, 4) - T(2, 3) * T(2, 4), d2) *
                       pow(-xa - xb - xc - xd, d3) +
                   (xa * pow(x + T(1, 4) * pow(T(4, 1), d3), e) - xb * pow(x + T(1, 3) * pow(T(3, 1), d3), e) -
                    xc * pow(x + T(2, 4) * pow(T(4, 2), d3), e) + xd * pow(x + T(2, 3) * pow(T(3, 2), d3), e)));
    }
    // δ3 bracket enters with a minus sign
    r -= d3 * ((xa * xc - xb * xd) * T(1, 2) + (xa * xb - xc * xd) * T(3, 4) - xb * xc * (xa + xd) +
               xa * xd * (xb + xc));
    r += Scalar(2) * d2 * T(1, 2) * T(3, 4) * x * x;
    r += (Scalar(2) * d2 * x + d3) * T(1, 2) * T(3, 4) * (T(1, 3) + T(2, 4));
    r += (xa * xd - xb * xc) * pow(T(3, 1) + T(4, 2), d3) * pow(Scalar(-1), d2);
    return r;
}

inline Scalar eval_C2(const Deltas& D, const Scalar& x, const Scalar& xa, const Scalar& xb,
                      const Scalar& xc, const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    Theta T(al, be);
    const Scalar &d1 = D.d1, &d2 = D.d2, &d3 = D.d3;
    const Scalar x2 = x * x;
    const Scalar s13_14 = T(1, 3) + T(1, 4);
    Scalar r = (xd - xc) * (x2 + xa * xb) + T(3, 4) * (x2 - xa * xb) * pow(s13_14, d3) +
               Scalar(2) * d3 * (T(2, 3) * xa - T(2, 4) * xb) * x2;
    r += ((xa + xb + Scalar(2) * d2 * T(2, 3) * T(2, 4)) * (xc - xd) -
          (xa - xb) * (T(2, 3) + T(2, 4)) * pow(s13_14, d3) + Scalar(2) * d3 * T(3, 4) * xa * xb) * x;
    if (!d1.is_zero()) {
        const Scalar e = Scalar(1) + d2 + d3;
        r += d1 * (xa * T(2, 4) - xb * T(2, 3) + T(3, 4) * (d2 * T(2, 3) * T(2, 4) - x)) *
             (pow(T(1, 3), e) + pow(T(1, 4), e) + Scalar(2) * d2 * xc * xd - (xc + xd) * pow(s13_14, d2));
        r += d1 * T(2, 3) * T(2, 4) * (xc - xd + T(3, 4) * pow(s13_14 - Scalar(2) * x, d3)) *
             pow(xa + xb - T(3, 4) * T(3, 4) - T(2, 3) * T(2, 4), d2);
    }
    return r;
}

inline Scalar eval_C1(const Scalar& x, const Scalar& xa, const Scalar& xb, const Scalar& xc,
                      const Scalar& xd, const ParamPair& al, const ParamPair& be) {
    const Scalar &a2 = al.second, &b1 = be.first, &b2 = be.second;
    const Scalar s = xc + xd;
    return s * x * x + (Scalar(2) * (b1 + b2 - Scalar(2) * a2) - (xa + xb) * s) * x +
           Scalar(2) * (a2 * (xa + xb) - b2 * xa - b1 * xb) + xa * xb * s;
}

} // namespace detail

inline Scalar FaceEquation::operator()(const Scalar& x, const Scalar& a, const Scalar& b,
                                       const Scalar& c, const Scalar& d, const ParamPair& al,
                                       const ParamPair& be) const {
    switch (family_) {
    case Family::A3: return detail::eval_A3(deltas_.d1, x, a, b, c, d, al, be);
    case Family::A2: return detail::eval_A2(deltas_, x, a, b, c, d, al, be);
    case Family::B3: return detail::eval_B3(deltas_, x, a, b, c, d, al, be);
    case Family::B2: return detail::eval_B2(deltas_, x, a, b, c, d, al, be);
    case Family::C3: return detail::eval_C3(deltas_, x, a, b, c, d, al, be);
    case Family::C2: return detail::eval_C2(deltas_, x, a, b, c, d, al, be);
    case Family::C1: return detail::eval_C1(x, a, b, c, d, al, be);
    case Family::D1: return a - b - c + d;
    }
    return Scalar();
}

inline Scalar evaluate(const FaceEquation& eq, const FacePoint& p) {
    return eq(p.x, p.corners[0], p.corners[1], p.corners[2], p.corners[3], p.alpha, p.beta);
}

// "A3:d=1", "A3:1", "A2:1,0", "B3:1/2,0,1/2", "C1", "D1"
inline FaceEquation parse_equation(const std::string& spec) {
    auto colon = spec.find(':');
    Family f = detail::parse_family(spec.substr(0, colon));
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (rest.rfind("d=", 0) == 0) rest = rest.substr(2);
    Deltas d;
    if (!rest.empty()) {
        auto parts = detail::split(rest, ',');
        if (parts.size() > 3) throw Error(Errc::Parse, "too many deltas in '" + spec + "'");
        std::size_t want = f == Family::A3 ? 1 : f == Family::A2 ? 2 : (f == Family::C1 || f == Family::D1) ? 0 : 3;
        if (parts.size() != want)
            throw Error(Errc::InadmissibleDeltas, spec + ": expected " + std::to_string(want) + " deltas");
        Scalar* slot[3] = {&d.d1, &d.d2, &d.d3};
        for (std::size_t i = 0; i < parts.size(); ++i) *slot[i] = Scalar::parse(parts[i]);
    } else if (f != Family::C1 && f != Family::D1) {
        throw Error(Errc::InadmissibleDeltas, spec + ": deltas required");
    }
    return make_equation(f, d);
}

inline std::vector<FaceEquation> all_equations() {
    std::vector<FaceEquation> out;
    for (Family f : all_families())
        for (const auto& d : admissible_deltas(f)) out.emplace_back(f, d);
    return out;
}

// ---- four-leg forms --------------------------------------------------------

enum class LegRole { A_leg, B_leg, C_leg };

// The face variable of a leg, optionally carrying its surd companion.
struct LegX {
    Scalar x;
    std::optional<SurdParam> surd;

    LegX() = default;
    LegX(Scalar v) : x(std::move(v)) {}
    LegX(const SurdParam& s) : x(s.value), surd(s) {}
};

struct LegInfo {
    bool additive = false;
    std::optional<SurdKind> surd;
};

namespace detail {

inline bool is(const Deltas& d, const Scalar& a, const Scalar& b, const Scalar& c) {
    return d.d1 == a && d.d2 == b && d.d3 == c;
}

// the A-family whose a-leg accompanies a type-C c-leg
inline FaceEquation paired_a(const FaceEquation& eq) {
    const auto& d = eq.deltas();
    switch (eq.family()) {
    case Family::C3: return FaceEquation(Family::A3, {Scalar(2) * d.d2, 0, 0});
    case Family::C2: return FaceEquation(Family::A2, {d.d1, d.d2, 0});
    case Family::C1: return FaceEquation(Family::A2, {0, 0, 0});
    default: return eq;
    }
}

} // namespace detail

inline LegInfo leg_info(const FaceEquation& eq, LegRole role) {
    const Scalar h(1, 2);
    const auto& d = eq.deltas();
    LegInfo info;
    auto bad = [&] {
        return Error(Errc::NoCatalogueEntry, std::string("no leg of this role for ") + eq.id());
    };
    switch (role) {
    case LegRole::A_leg:
        if (eq.family() == Family::A3) {
            if (d.d1 == 1) info.surd = SurdKind::Hyperbolic;
        } else if (eq.family() == Family::A2) {
            if (d.d2 == 1) info.surd = SurdKind::Square;
            if (d.d1 == 0) info.additive = true;
        } else {
            throw bad();
        }
        break;
    case LegRole::B_leg:
        if (eq.family() == Family::B3) {
            if (detail::is(d, h, 0, h)) info.surd = SurdKind::Hyperbolic;
        } else if (eq.family() == Family::B2) {
            if (detail::is(d, 1, 0, 1)) info.surd = SurdKind::Square;
        } else if (eq.family() == Family::D1) {
            info.additive = true;
        } else {
            throw bad();
        }
        break;
    case LegRole::C_leg:
        if (eq.family() == Family::C3) {
            if (detail::is(d, h, h, 0)) info.surd = SurdKind::Hyperbolic;
        } else if (eq.family() == Family::C2) {
            if (detail::is(d, 1, 1, 0)) info.surd = SurdKind::Square;
            if (detail::is(d, 0, 0, 0)) info.additive = true;
        } else if (eq.family() == Family::C1) {
            info.additive = true;
        } else {
            throw bad();
        }
        break;
    }
    return info;
}

inline Scalar leg(const FaceEquation& eq, LegRole role, const LegX& X, const Scalar& y,
                  const Scalar& a, const Scalar& b) {
    const Scalar h(1, 2);
    LegInfo info = leg_info(eq, role);
    Scalar xb, sq;
    if (info.surd) {
        if (!X.surd) throw Error(Errc::MissingSurd, eq.id() + " leg needs a surd-carrying x");
        if (X.surd->kind != *info.surd || X.surd->value != X.x)
            throw Error(Errc::MissingSurd, eq.id() + " leg got the wrong surd kind");
        xb = X.surd->bar();
        sq = X.surd->root;
    }
    const Scalar& x = X.x;
    const auto& d = eq.deltas();
    switch (role) {
    case LegRole::A_leg:
        if (eq.family() == Family::A3) {
            if (d.d1 == 1)
                return (a * a + b * b * xb * xb - Scalar(2) * a * b * xb * y) /
                       (b * b + a * a * xb * xb - Scalar(2) * a * b * xb * y);
            return (b * x - a * y) / (a * x - b * y);
        }
        if (d.d2 == 1) return ((sq + a - b) * (sq + a - b) - y) / ((sq - a + b) * (sq - a + b) - y);
        if (d.d1 == 1) return (-x + y + a - b) / (x - y + a - b);
        return (a - b) / (x - y);
    case LegRole::B_leg:
        if (eq.family() == Family::D1) return y;
        if (eq.family() == Family::B3) {
            if (detail::is(d, h, h, 0)) return b * b + a * a * x * x - Scalar(2) * a * b * x * y;
            if (detail::is(d, h, 0, h)) return (a * y - b * xb) / (a * xb * y - b);
            if (detail::is(d, 1, 0, 0)) return b - a * x * y;
            return y;
        }
        if (detail::is(d, 1, 1, 0)) return (x + a - b) * (x + a - b) - y;
        if (detail::is(d, 1, 0, 1)) return (sq + y + a - b) / (-sq + y + a - b);
        if (detail::is(d, 1, 0, 0)) return x + y + a - b;
        return y;
    case LegRole::C_leg:
        if (eq.family() == Family::C1) return y;
        if (eq.family() == Family::C3) {
            if (detail::is(d, h, h, 0)) return (a - b * xb * y) / (a * xb - b * y);
            if (detail::is(d, h, 0, h)) return a * a / b + b * x * x - Scalar(2) * a * x * y;
            if (detail::is(d, 1, 0, 0)) return x * y - a / b;
            return y;
        }
        if (detail::is(d, 1, 1, 0)) return (-sq + y - a + b) / (sq + y - a + b);
        if (detail::is(d, 1, 0, 1)) return (x - a + b) * (x - a + b) - y;
        if (detail::is(d, 1, 0, 0)) return x + y - a + b;
        return -(y + b) / (Scalar(2) * x);
    }
    return Scalar();
}

// Which surd kind (if any) the face variable of eq's four-leg form needs.
inline std::optional<SurdKind> fourleg_surd(const FaceEquation& eq) {
    switch (eq.type()) {
    case EqType::A: return leg_info(eq, LegRole::A_leg).surd;
    case EqType::B: return leg_info(eq, LegRole::B_leg).surd;
    case EqType::C: {
        auto c = leg_info(eq, LegRole::C_leg).surd;
        return c ? c : leg_info(detail::paired_a(eq), LegRole::A_leg).surd;
    }
    }
    return std::nullopt;
}

inline bool fourleg_additive(const FaceEquation& eq) {
    switch (eq.type()) {
    case EqType::A: return leg_info(eq, LegRole::A_leg).additive;
    case EqType::B: return leg_info(eq, LegRole::B_leg).additive;
    case EqType::C: return leg_info(eq, LegRole::C_leg).additive;
    }
    return false;
}

// product form: ℓ(x_a;α2,β1)ℓ'(x_d;α1,β2) / (ℓ(x_b;α2,β2)ℓ'(x_c;α1,β1)) − 1
// additive form: ℓ(x_a;α2,β1) + ℓ'(x_d;α1,β2) − ℓ(x_b;α2,β2) − ℓ'(x_c;α1,β1)
inline Scalar fourleg_residual(const FaceEquation& eq, const LegX& X, const std::array<Scalar, 4>& c,
                               const ParamPair& al, const ParamPair& be) {
    FaceEquation first = eq, second = eq;
    LegRole r1, r2;
    switch (eq.type()) {
    case EqType::A: r1 = r2 = LegRole::A_leg; break;
    case EqType::B: r1 = r2 = LegRole::B_leg; break;
    default:
        first = detail::paired_a(eq);
        r1 = LegRole::A_leg;
        r2 = LegRole::C_leg;
        break;
    }
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    Scalar la = leg(first, r1, X, c[0], a2, b1);
    Scalar lb = leg(first, r1, X, c[1], a2, b2);
    Scalar lc = leg(second, r2, X, c[2], a1, b1);
    Scalar ld = leg(second, r2, X, c[3], a1, b2);
    if (fourleg_additive(eq)) return la + ld - lb - lc;
    return la * ld / (lb * lc) - Scalar(1);
}

} // namespace cafcc
