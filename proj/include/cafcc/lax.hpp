#pragma once

#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cafcc/catalogue.hpp"
#include "cafcc/cube.hpp"

namespace cafcc {

// [[a, b], [c, d]]
struct Matrix2 {
    Scalar a, b, c, d;

    Scalar det() const { return a * d - b * c; }
    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
    std::array<Scalar, 4> entries() const { return {a, b, c, d}; }

    friend Matrix2 operator+(const Matrix2& p, const Matrix2& q) {
        return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
    }
    friend Matrix2 operator-(const Matrix2& p, const Matrix2& q) {
        return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
    }
    friend Matrix2 operator*(const Matrix2& p, const Matrix2& q) {
        return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
    }
    friend Matrix2 operator*(const Scalar& s, const Matrix2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Matrix2& m) {
        return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
    }
};

inline Matrix2 outer(const Scalar& u0, const Scalar& u1, const Scalar& v0, const Scalar& v1) {
    return {u0 * v0, u0 * v1, u1 * v0, u1 * v1};
}

inline Matrix2 invert(const Matrix2& m) {
    Scalar D = m.det();
    if (D.is_zero()) throw Error(Errc::SingularMatrix, "determinant vanishes");
    return {m.d / D, -m.b / D, -m.c / D, m.a / D};
}

// ---- generic builders ------------------------------------------------------

// Approach A: the two free slots are (c, d).
inline Matrix2 build_lax_A(const FaceEquation& eq, const Scalar& x, const Scalar& xa, const Scalar& xb,
                           const ParamPair& al, const ParamPair& be) {
    if (eq.type() == EqType::B) throw Error(Errc::TypeBNotAllowed, eq.id() + " cannot seed an approach-A Lax matrix");
    auto A = [&](int j, int k) { return eq(x, xa, xb, Scalar(j), Scalar(k), al, be); };
    Scalar a00 = A(0, 0), a10 = A(1, 0), a01 = A(0, 1), a11 = A(1, 1);
    return {a10 - a00, a00, a10 - a00 - a11 + a01, a00 - a01};
}

// Approach B: the two free slots are (b, d).
inline Matrix2 build_lax_B(const FaceEquation& eq, const Scalar& x, const Scalar& xa, const Scalar& xc,
                           const ParamPair& al, const ParamPair& be) {
    if (eq.type() != EqType::C) throw Error(Errc::NotTypeC, eq.id() + " cannot seed an approach-B Lax matrix");
    auto C = [&](int j, int k) { return eq(x, xa, Scalar(j), xc, Scalar(k), al, be); };
    Scalar c00 = C(0, 0), c10 = C(1, 0), c01 = C(0, 1), c11 = C(1, 1);
    return {c01 - c00, c00, c10 - c00 - c11 + c01, c00 - c10};
}

// ---- displayed matrices ----------------------------------------------------

enum class LaxFamily { A3, A3viaC3, A2, A2viaC2, C1, B3, B2, D1 };
enum class Approach { A, B };

inline const char* lax_family_name(LaxFamily f) {
    static const char* names[] = {"A3", "A3viaC3", "A2", "A2viaC2", "C1", "B3", "B2", "D1"};
    return names[static_cast<int>(f)];
}

inline const std::array<LaxFamily, 8>& all_lax_families() {
    static const std::array<LaxFamily, 8> fs{LaxFamily::A3, LaxFamily::A3viaC3, LaxFamily::A2, LaxFamily::A2viaC2,
                                             LaxFamily::C1, LaxFamily::B3,      LaxFamily::B2, LaxFamily::D1};
    return fs;
}

inline LaxFamily parse_lax_family(const std::string& s) {
    for (LaxFamily f : all_lax_families())
        if (s == lax_family_name(f)) return f;
    throw Error(Errc::Parse, "unknown Lax family '" + s + "'");
}

inline Approach lax_approach(LaxFamily f) {
    return (f == LaxFamily::B3 || f == LaxFamily::B2 || f == LaxFamily::D1) ? Approach::B : Approach::A;
}

// The face equation whose generic builder produces the family's matrix.
inline FaceEquation lax_source(LaxFamily f, const Deltas& d) {
    switch (f) {
    case LaxFamily::A3: return make_equation(Family::A3, d);
    case LaxFamily::A3viaC3:
    case LaxFamily::B3: return make_equation(Family::C3, d);
    case LaxFamily::A2: return make_equation(Family::A2, d);
    case LaxFamily::A2viaC2:
    case LaxFamily::B2: return make_equation(Family::C2, d);
    default: return make_equation(Family::C1, {});
    }
}

inline std::vector<Deltas> lax_regimes(LaxFamily f) {
    switch (f) {
    case LaxFamily::A3: return admissible_deltas(Family::A3);
    case LaxFamily::A2: return admissible_deltas(Family::A2);
    case LaxFamily::A3viaC3:
    case LaxFamily::B3: return admissible_deltas(Family::C3);
    case LaxFamily::A2viaC2:
    case LaxFamily::B2: return admissible_deltas(Family::C2);
    default: return admissible_deltas(Family::C1);
    }
}

inline Matrix2 build_lax(LaxFamily f, const Deltas& d, const Scalar& x, const Scalar& u, const Scalar& v,
                         const ParamPair& al, const ParamPair& be) {
    FaceEquation eq = lax_source(f, d);
    return lax_approach(f) == Approach::A ? build_lax_A(eq, x, u, v, al, be) : build_lax_B(eq, x, u, v, al, be);
}

// catalogue = κ · builder
inline Scalar catalogue_scale(LaxFamily f, const Deltas& d, const Scalar& x, const Scalar& u, const Scalar& v,
                              const ParamPair& al, const ParamPair& be) {
    switch (f) {
    case LaxFamily::A3: return Scalar(4) * al.first * al.second * be.first * be.second;
    case LaxFamily::B3: return Scalar(-1);
    case LaxFamily::B2: return pow(Scalar(-1), d.d2 + d.d3);
    case LaxFamily::C1: return inverse((x - u) * (x - v));
    case LaxFamily::D1: return inverse(x - u);
    default: return Scalar(1);
    }
}

// x²·x2 + x·x1 + x0 + δ·(x²·dx2 + x·dx1 + dx0)
struct LaxBlocks {
    Matrix2 x2, x1, x0, dx2, dx1, dx0;
    Scalar delta;

    Matrix2 at(const Scalar& x) const {
        return (x * x) * x2 + x * x1 + x0 + delta * ((x * x) * dx2 + x * dx1 + dx0);
    }
    // coefficients of x^2, x^1, x^0 of the assembled matrix
    std::array<Matrix2, 3> coefficients() const { return {x2 + delta * dx2, x1 + delta * dx1, x0 + delta * dx0}; }
};

namespace detail {

using Blocks = LaxBlocks;

inline Blocks blocks_A3(const Scalar& dl, const Scalar& xa, const Scalar& xb, const ParamPair& al,
                        const ParamPair& be) {
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    auto sq = [](const Scalar& s) { return s * s; };
    const Scalar pre = Scalar(4) * a1 * a2 * b1 * b2;
    const Scalar ab = a1 * a2, bb = b1 * b2;
    Blocks B;
    B.x2 = pre * Matrix2{dq(b1, a1), dq(a2, b1) * xa + dq(b2, a2) * xb, 0, dq(b2, a1)};
    B.x1 = pre * Matrix2{dq(a1, a2) * xa + dq(ab, bb) * xb, dq(b1, b2) * xa * xb, dq(b1, b2),
                         dq(ab, bb) * xa + dq(a1, a2) * xb};
    B.x0 = pre * Matrix2{dq(b2, a1) * xa * xb, 0, dq(b2, a2) * xa + dq(a2, b1) * xb, dq(b1, a1) * xa * xb};
    B.dx1 = {0, (sq(a2) - sq(a1)) * (sq(b1) - sq(b2)) * dq(ab, bb), 0, 0};
    B.dx0 = {(sq(a2) - sq(b1)) * (sq(a2) - sq(b2)) * (sq(b2) - sq(a1)) / (a2 * b2),
             (sq(a1) - sq(b1)) * (sq(a1) - sq(b2)) * (b1 * (sq(a2) - sq(b2)) * xa + b2 * (sq(b1) - sq(a2)) * xb) /
                 (a1 * b1 * b2),
             0, (sq(a2) - sq(b1)) * (sq(b1) - sq(a1)) * (sq(a2) - sq(b2)) / (a2 * b1)};
    B.delta = dl;
    return B;
}

inline Blocks blocks_A3viaC3(const Deltas& D, const Scalar& xa, const Scalar& xb, const ParamPair& al,
                             const ParamPair& be) {
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    const Scalar &d2 = D.d2, &d3 = D.d3;
    const Scalar a22 = a2 * a2;
    Blocks B;
    B.x2 = (-a2) * Matrix2{b2, 0, 0, b1};
    B.x1 = {b1 * b2 * xa + a22 * xb, 0, 0, a22 * xa + b1 * b2 * xb};
    B.x0 = (-a2 * xa * xb) * Matrix2{b1, 0, 0, b2};
    B.dx2 = (Scalar(2) * d3 * b1 * b2 / a1) * Matrix2{0, a22 * (xa / b1 - xb / b2) + (b2 * xb - b1 * xa), 0, 0};
    B.dx1 = (Scalar(2) * (b1 * b1 - b2 * b2) * a2 / a1) *
            Matrix2{0, d3 * xa * xb - a1 * a1 / (Scalar(2) * b1 * b2), d2, 0};
    B.dx0 = {-d2 * (a22 - b1 * b1) * dq(a2, b2), a1 * (b1 * xb - b2 * xa + a22 * (xa / b2 - xb / b1)),
             Scalar(2) * d2 / a1 * (b1 * b2 * (b2 * xa - b1 * xb) + a22 * (b2 * xb - b1 * xa)),
             -d2 * dq(a2, b1) * (a22 - b2 * b2)};
    B.delta = D.d1;
    return B;
}

inline Blocks blocks_A2(const Deltas& D, const Scalar& xa, const Scalar& xb, const ParamPair& al,
                        const ParamPair& be) {
    detail::Theta T(al, be);
    const Scalar& d2 = D.d2;
    auto sq = [](const Scalar& s) { return s * s; };
    Blocks B;
    B.x2 = {T(3, 1), T(2, 3) * xa - T(2, 4) * xb, 0, T(4, 1)};
    B.x1 = {xa * T(1, 2) + xb * (T(1, 3) + T(2, 4)), T(3, 4) * xa * xb, T(3, 4),
            xb * T(1, 2) + xa * (T(1, 3) + T(2, 4))};
    B.x0 = {xa * xb * T(4, 1), 0, xa * T(4, 2) + xb * T(2, 3), xa * xb * T(3, 1)};
    B.dx2 = {0, d2 * T(1, 2) * T(3, 4) * (T(1, 3) + T(2, 4)), 0, 0};
    B.dx1 = {d2 * (Scalar(2) * T(1, 3) * sq(T(2, 4)) + T(1, 2) * T(3, 4) * (T(1, 2) - T(3, 4))),
             T(1, 2) * T(3, 4) * (T(1, 3) + T(2, 4)) *
                     pow(xa + xb - sq(T(1, 3)) - sq(T(2, 4)) - T(1, 2) * T(3, 4), d2) -
                 Scalar(2) * d2 * T(1, 3) * T(1, 4) * (xa * T(2, 4) + xb * T(3, 2)),
             0, d2 * (Scalar(2) * T(1, 4) * sq(T(2, 3)) - T(1, 2) * T(3, 4) * (T(1, 2) + T(3, 4)))};
    B.dx0 = {T(1, 4) * T(2, 3) * T(2, 4) * pow(xb - T(1, 2) * T(3, 4) - sq(T(2, 4)), d2) -
                 d2 * T(1, 4) * (xa * T(1, 2) * T(2, 4) - xb * T(2, 3) * T(1, 3)),
             T(1, 3) * T(1, 4) *
                 (xb * T(2, 3) * pow(T(1, 2) * T(4, 3) - sq(T(1, 3)), d2) -
                  xa * T(2, 4) * pow(T(1, 2) * T(3, 4) - sq(T(1, 4)), d2) -
                  d2 * T(3, 4) * (xa * xb - (T(1, 3) + T(2, 4)) * T(1, 2) * T(2, 3) * T(2, 4))),
             d2 * T(2, 3) * T(2, 4) * T(4, 3),
             T(1, 3) * T(2, 3) * T(2, 4) * pow(xa + T(1, 2) * T(3, 4) - sq(T(2, 3)), d2) +
                 d2 * T(1, 3) * (xa * T(1, 4) * T(2, 4) - xb * T(1, 2) * T(2, 3))};
    B.delta = D.d1;
    return B;
}

inline Blocks blocks_A2viaC2(const Deltas& D, const Scalar& xa, const Scalar& xb, const ParamPair& al,
                             const ParamPair& be) {
    detail::Theta T(al, be);
    const Scalar &d2 = D.d2, &d3 = D.d3;
    const Scalar e = Scalar(1) + d2 + d3, two(2), one(1);
    const Scalar s = T(1, 3) + T(1, 4);
    auto sq = [](const Scalar& v) { return v * v; };
    Blocks B;
    B.x2 = Scalar(-1) * Matrix2{1, T(4, 3), 0, 1};
    B.x1 = {xa + xb, (T(2, 3) + T(2, 4)) * (xb - xa), 0, xa + xb};
    B.x0 = (-xa * xb) * Matrix2{1, T(3, 4), 0, 1};
    // the bare 1 in (θ13+θ14−1) is as displayed
    B.dx2 = {0, d3 * (T(3, 4) * (s - one) + two * (xa * T(2, 3) - xb * T(2, 4))), 0, 0};
    B.dx1 = {T(3, 4) * pow(two * T(1, 3), d2) + d2 * (sq(T(2, 3)) + sq(T(2, 4))),
             T(4, 3) * (pow(T(1, 3), e) + pow(T(1, 4), e) + two * d3 * (T(2, 3) * T(2, 4) - xa * xb)) -
                 d3 * (s - one) * (T(2, 3) + T(2, 4)) * (xa - xb),
             two * d2 * T(3, 4), T(4, 3) * pow(two * T(1, 4), d2) + d2 * (sq(T(2, 3)) + sq(T(2, 4)))};
    B.dx0 = {T(2, 3) * T(2, 4) * pow(xb - two * T(1, 4) * T(3, 4) - T(2, 3) * T(2, 4), d2) -
                 xa * T(2, 4) * pow(T(1, 2) + T(1, 4), d2) + xb * T(2, 3) * pow(s, d2),
             T(2, 3) * T(2, 4) * T(3, 4) * pow(two * T(1, 3) * T(1, 4) - T(2, 3) * T(2, 4) + xa + xb, d2) *
                     pow(s, d3) +
                 (pow(T(1, 3), e) + pow(T(1, 4), e)) * (xa * T(2, 4) - xb * T(2, 3)) +
                 d3 * T(3, 4) * (one - s) * xa * xb,
             two * d2 * (T(4, 2) * xa + T(2, 3) * xb - T(2, 3) * T(2, 4) * T(3, 4)),
             T(2, 3) * T(2, 4) * pow(xa + two * T(1, 3) * T(3, 4) - T(2, 3) * T(2, 4), d2) +
                 xa * T(2, 4) * pow(s, d2) - xb * T(2, 3) * pow(T(1, 2) + T(1, 3), d2)};
    B.delta = D.d1;
    return B;
}

inline Blocks blocks_B3(const Deltas& D, const Scalar& xa, const Scalar& xc, const ParamPair& al,
                        const ParamPair& be) {
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    const Scalar &d2 = D.d2, &d3 = D.d3;
    const Scalar a22 = a2 * a2, b11 = b1 * b1, b22 = b2 * b2, two(2);
    Blocks B;
    B.x2 = a2 * Matrix2{-b1, b2 * xc, 0, 0};
    B.x1 = Scalar(-1) * Matrix2{-a22 * xa, b1 * b2 * xa * xc, b1 * b2, -a22 * xc};
    B.x0 = (a2 * xa) * Matrix2{0, 0, b2, -b1 * xc};
    B.dx2 = (two * d3 / a1) * Matrix2{0, (b11 - a22) * b2 * xa, 0, (b22 - a22) * b1};
    B.dx1 = (a2 * (b11 - b22) / a1) * Matrix2{two * d2 * xc, a1 * a1 / (b1 * b2), 0, two * d3 * xa};
    B.dx0 = {-d2 * (a22 - b22) * (a1 * (a22 - b11) + two * a2 * b11 * xa * xc) / (a1 * a2 * b1),
             (b2 - a22 / b2) * (a1 * xa - d2 * (a2 - b11 / a2) * xc), two * d2 * (b11 - a22) * xc * b2 / a1,
             a1 * (b1 - a22 / b1)};
    B.delta = D.d1;
    return B;
}

inline Blocks blocks_B2(const Deltas& D, const Scalar& xa, const Scalar& xc, const ParamPair& al,
                        const ParamPair& be) {
    detail::Theta T(al, be);
    const Scalar &d2 = D.d2, &d3 = D.d3;
    const Scalar e = Scalar(1) + d2 + d3, two(2), one(1);
    const Scalar m = pow(Scalar(-1), d3);
    auto sq = [](const Scalar& v) { return v * v; };
    const Scalar t23_24 = T(2, 3) + T(2, 4);
    Blocks B;
    B.x2 = {1, T(3, 4) - xc, 0, 0};
    B.x1 = Scalar(-1) * Matrix2{xa, xa * (t23_24 - xc), -1, t23_24 + xc};
    B.x0 = {0, 0, -xa, xa * (xc + T(3, 4))};
    B.dx2 = {-two * (d2 + d3),
             two * d2 * (xc - T(3, 4)) + d3 * (two * (xc - xa * T(2, 3)) - T(3, 4) * (T(1, 3) + T(1, 4) + one)), 0,
             -two * d3 * T(2, 4)};
    B.dx1 = {T(3, 4) * pow(two * (xc - T(1, 4)), d2) * m + (d2 + d3) * two * xa + d2 * (sq(T(2, 3)) + sq(T(2, 4))),
             (T(3, 4) + d3 * xa) * (xc * pow(T(3, 1) + T(4, 1), d2) * m + two * d3 * sq(T(1, 2)) +
                                    (pow(T(3, 1), one + d2) + pow(T(4, 1), one + d2)) * pow(T(3, 2) + T(4, 2), d3)) +
                 two * d2 * (xa * (T(2, 4) - xc) + T(2, 3) * (xa - xc * T(2, 4))) -
                 d3 * xa * (xc + two * sq(T(1, 2)) - t23_24),
             -two * (d2 + d3),
             two * (d2 + d3) * xc + two * d3 * xa * T(3, 4) +
                 (two * d2 + d3) * t23_24 * pow(T(1, 3) + T(1, 4) + one, d3)};
    B.dx0 = {T(4, 2) *
                 (T(2, 3) * pow(T(4, 3) * (T(1, 2) + T(1, 3) - two * xc) + sq(T(2, 3)) - xa, d2) +
                  xa * pow(two * xc - T(1, 3) - T(1, 4), d2)) *
                 m,
             T(4, 2) * (T(2, 3) * (T(4, 3) * pow(T(2, 3) * T(2, 4) - two * T(1, 3) * T(1, 4), d2) *
                                       pow(T(3, 1) + T(4, 1), d3) -
                                   xc * pow(two * T(1, 4) * T(3, 4) + T(2, 3) * T(2, 4), d2) * m) +
                        xa * (pow(T(3, 1) + T(4, 1), e) + d2 * T(2, 3) * T(3, 4) -
                              (d2 + d3) * two * T(1, 3) * T(1, 4) + xc * pow(T(2, 1) + T(4, 1), d2) * m)),
             T(3, 2) * pow(two * xc - T(1, 2) - T(1, 3), d2) * m + (d2 + d3) * two * xa,
             T(2, 3) * (-(pow(T(3, 1), e) + pow(T(4, 1), e)) - xc * pow(two * T(4, 1) - T(2, 3), d2) * m +
                        d2 * T(2, 4) * T(3, 4)) -
                 (two * d2 + d3) * (xc + T(3, 4)) * xa - d3 * (xc + T(3, 4) * (T(1, 3) + T(1, 4))) * xa};
    B.delta = D.d1;
    return B;
}

} // namespace detail

inline LaxBlocks catalogue_blocks(LaxFamily f, const Deltas& d, const Scalar& u, const Scalar& v,
                                  const ParamPair& al, const ParamPair& be) {
    lax_source(f, d);
    switch (f) {
    case LaxFamily::A3: return detail::blocks_A3(d.d1, u, v, al, be);
    case LaxFamily::A3viaC3: return detail::blocks_A3viaC3(d, u, v, al, be);
    case LaxFamily::A2: return detail::blocks_A2(d, u, v, al, be);
    case LaxFamily::A2viaC2: return detail::blocks_A2viaC2(d, u, v, al, be);
    case LaxFamily::B3: return detail::blocks_B3(d, u, v, al, be);
    case LaxFamily::B2: return detail::blocks_B2(d, u, v, al, be);
    default:
        throw Error(Errc::NoCatalogueEntry, std::string(lax_family_name(f)) + " is displayed as a closed matrix");
    }
}

// Coefficients of x^2, x^1, x^0 of a matrix quadratic in x, by interpolation at x = 0, 1, 2.
template <class Fn>
std::array<Matrix2, 3> x_coefficients(Fn&& m) {
    Matrix2 m0 = m(Scalar(0)), m1 = m(Scalar(1)), m2 = m(Scalar(2));
    const Scalar h(1, 2);
    Matrix2 c2 = h * (m2 - Scalar(2) * m1 + m0);
    Matrix2 c1 = m1 - m0 - c2;
    return {c2, c1, m0};
}

// The displayed matrix with D_L = 1. Arguments are (x; u, v) = (x; x_a, x_b) for
// approach-A families and (x; x_a, x_c) for approach-B families.
inline Matrix2 catalogue_lax(LaxFamily f, const Deltas& d, const Scalar& x, const Scalar& u, const Scalar& v,
                             const ParamPair& al, const ParamPair& be) {
    lax_source(f, d);
    switch (f) {
    case LaxFamily::C1: {
        const Scalar P = (x - u) * (x - v);
        return {1, Scalar(2) * (be.second * (x - u) + be.first * (x - v) + al.second * (u + v - Scalar(2) * x)) / P,
                0, -1};
    }
    case LaxFamily::D1: {
        const Scalar &a2 = al.second, &b1 = be.first, &b2 = be.second, two(2);
        const Scalar xu = x - u;
        return {x, (xu * x * v - two * b2 * u + two * (b1 + b2) * x + two * a2 * (u - two * x)) / xu, 1,
                (xu * v + two * (b1 - a2)) / xu};
    }
    default: return catalogue_blocks(f, d, u, v, al, be).at(x);
    }
}

namespace detail {

inline Scalar quadric(const Scalar& b, const Scalar& a, const Scalar& x, const Scalar& xa, const Scalar& dl) {
    return (b * x - a * xa) * (b * xa - a * x) - dl * a * b * dq(a, b) * dq(a, b);
}

inline Scalar factor_A2(const Theta& T, const Scalar& x, const Scalar& xa, int i, const Scalar& d1,
                        const Scalar& d2) {
    const Scalar t = T(2, i);
    return (x - xa) * (x - xa) - d1 * t * t * pow(Scalar(2) * (x + xa) - t * t, d2);
}

} // namespace detail

inline Scalar catalogue_det(LaxFamily f, const Deltas& D, const Scalar& x, const Scalar& u, const Scalar& v,
                            const ParamPair& al, const ParamPair& be) {
    lax_source(f, D);
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    const Scalar &d1 = D.d1, &d2 = D.d2, &d3 = D.d3, two(2);
    detail::Theta T(al, be);
    switch (f) {
    case LaxFamily::A3:
        return Scalar(16) * (a1 + b1) * (a1 - b1) * detail::quadric(b1, a2, x, u, d1 / Scalar(4)) * (a1 + b2) *
               (a1 - b2) * detail::quadric(b2, a2, x, v, d1 / Scalar(4));
    case LaxFamily::A3viaC3:
        return detail::quadric(b1, a2, x, u, d2 / two) * detail::quadric(b2, a2, x, v, d2 / two);
    case LaxFamily::A2:
        return T(1, 3) * T(1, 4) * detail::factor_A2(T, x, u, 3, d1, d2) * detail::factor_A2(T, x, v, 4, d1, d2);
    case LaxFamily::A2viaC2:
        return detail::factor_A2(T, x, u, 3, d1, d2) * detail::factor_A2(T, x, v, 4, d1, d2);
    case LaxFamily::B3:
        return (a2 * a2 - b2 * b2) *
               ((a2 * x - b1 * u) * (a2 * u - b1 * x) - d2 * a2 * b1 / two * detail::dq(a2, b1) * detail::dq(a2, b1)) *
               (x * v - d1 * a1 / b1 - d2 * b1 / a1 * v * v - d3 * b1 / a1 * x * x);
    case LaxFamily::B2: {
        const Scalar t13 = T(1, 3), t23 = T(2, 3);
        return two * T(2, 4) *
               (x * pow(two * t13 - x, d3) + d1 * v * pow(two * t13 - v, d2) - d1 * pow(t13, Scalar(1) + d2 + d3)) *
               (d1 * t23 * t23 * pow(two * (x + u) - t23 * t23, d2) - (x - u) * (x - u));
    }
    default:
        throw Error(Errc::NoCatalogueEntry, std::string("no displayed determinant for ") + lax_family_name(f));
    }
}

// ---- propositions ----------------------------------------------------------

enum class PropId { P4_1 = 1, P4_2, P4_3, P4_4, P4_5, P4_6, P4_7, P4_8 };

inline const std::array<PropId, 8>& all_props() {
    static const std::array<PropId, 8> ps{PropId::P4_1, PropId::P4_2, PropId::P4_3, PropId::P4_4,
                                          PropId::P4_5, PropId::P4_6, PropId::P4_7, PropId::P4_8};
    return ps;
}

inline std::string prop_name(PropId p) { return "P4." + std::to_string(static_cast<int>(p)); }

inline PropId parse_prop(const std::string& s) {
    for (PropId p : all_props())
        if (s == prop_name(p) || s == "4." + std::to_string(static_cast<int>(p))) return p;
    throw Error(Errc::Parse, "unknown proposition '" + s + "'");
}

inline LaxFamily prop_family(PropId p) {
    static const LaxFamily fs[] = {LaxFamily::A3, LaxFamily::A3viaC3, LaxFamily::A2, LaxFamily::A2viaC2,
                                   LaxFamily::C1, LaxFamily::B3,      LaxFamily::B2, LaxFamily::D1};
    return fs[static_cast<int>(p) - 1];
}

inline std::vector<Deltas> prop_regimes(PropId p) {
    const Scalar h(1, 2);
    switch (p) {
    case PropId::P4_1: return {{0, 0, 0}};
    case PropId::P4_2:
    case PropId::P4_6: return {{0, 0, 0}, {1, 0, 0}, {h, 0, h}};
    case PropId::P4_3: return {{0, 0, 0}, {1, 0, 0}};
    case PropId::P4_4:
    case PropId::P4_7: return {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}};
    default: return {{0, 0, 0}};
    }
}

inline std::optional<SurdKind> prop_surd(PropId p, const Deltas& d) {
    const Scalar h(1, 2);
    if (p == PropId::P4_6 && detail::is(d, h, 0, h)) return SurdKind::Hyperbolic;
    if (p == PropId::P4_7 && detail::is(d, 1, 0, 1)) return SurdKind::Square;
    return std::nullopt;
}

// Sign relating the displayed proof right-hand side to L4·L2 − L3·L1.
inline int printed_sign(PropId p) { return (p == PropId::P4_5 || p == PropId::P4_8) ? 1 : -1; }

struct NormalizationRule {
    PropId prop = PropId::P4_1;
    int variant = 1; // P4.1, P4.2
    int eps = 1;     // P4.1, P4.3, P4.4, P4.7
    int eps2 = 1;    // P4.3
    Deltas deltas;
};

inline std::string rule_id(const NormalizationRule& r) {
    std::string s = prop_name(r.prop) + "[" + r.deltas.d1.str() + "," + r.deltas.d2.str() + "," + r.deltas.d3.str() + "]";
    switch (r.prop) {
    case PropId::P4_1: return s + " v" + std::to_string(r.variant) + " eps=" + std::to_string(r.eps);
    case PropId::P4_2: return s + " v" + std::to_string(r.variant);
    case PropId::P4_3: return s + " eps1=" + std::to_string(r.eps) + " eps2=" + std::to_string(r.eps2);
    case PropId::P4_4:
    case PropId::P4_7: return s + " eps=" + std::to_string(r.eps);
    default: return s;
    }
}

inline std::vector<NormalizationRule> all_rules() {
    std::vector<NormalizationRule> out;
    for (PropId p : all_props())
        for (const auto& d : prop_regimes(p)) {
            switch (p) {
            case PropId::P4_1:
                for (int v : {1, 2})
                    for (int e : {1, -1}) out.push_back({p, v, e, 1, d});
                break;
            case PropId::P4_2:
                for (int v : {1, 2}) out.push_back({p, v, 1, 1, d});
                break;
            case PropId::P4_3:
                for (int e : {1, -1})
                    for (int e2 : {1, -1}) out.push_back({p, 1, e, e2, d});
                break;
            case PropId::P4_4:
            case PropId::P4_7:
                for (int e : {1, -1}) out.push_back({p, 1, e, 1, d});
                break;
            default: out.push_back({p, 1, 1, 1, d});
            }
        }
    return out;
}

inline void check_rule(const NormalizationRule& r) {
    bool ok = false;
    for (const auto& d : prop_regimes(r.prop)) ok = ok || d == r.deltas;
    if (!ok)
        throw Error(Errc::RegimeMismatch, prop_name(r.prop) + " has no normalisation at (" + r.deltas.d1.str() + "," +
                                              r.deltas.d2.str() + "," + r.deltas.d3.str() + ")");
    if ((r.eps != 1 && r.eps != -1) || (r.eps2 != 1 && r.eps2 != -1) || (r.variant != 1 && r.variant != 2))
        throw Error(Errc::RegimeMismatch, "sign choices must be ±1 and variants 1 or 2");
}

namespace detail {

inline bool require_surd(const NormalizationRule& r, const LegX& v) {
    auto kind = prop_surd(r.prop, r.deltas);
    if (!kind) return false;
    if (!v.surd || v.surd->kind != *kind || v.surd->value != v.x)
        throw Error(Errc::MissingSurd,
                    rule_id(r) + " needs a " + surd_kind_name(*kind) + " surd carried by the shared vertex");
    return true;
}

} // namespace detail

// D_L relative to the displayed matrix. v carries the surd for approach-B rules that need one.
inline Scalar normalization(const NormalizationRule& r, const Scalar& x, const Scalar& u, const LegX& v,
                            const ParamPair& al, const ParamPair& be) {
    check_rule(r);
    const Scalar &a1 = al.first, &a2 = al.second, &b1 = be.first, &b2 = be.second;
    const Scalar& d1 = r.deltas.d1;
    const Scalar e(r.eps), e2(r.eps2), two(2), one(1);
    const bool surd = detail::require_surd(r, v);
    const Scalar& w = v.x;
    switch (r.prop) {
    case PropId::P4_1:
        if (r.variant == 1) return inverse((a1 - e * b1) * (a1 + e * b2) * (a2 * x - b1 * u) * (b2 * x - a2 * w));
        return inverse((a1 - e * b1) * (a1 + e * b2) * (a2 * x - b2 * w) * (b1 * x - a2 * u));
    case PropId::P4_2:
        if (r.variant == 1) return inverse((b1 * x - a2 * u) * (b2 * w - a2 * x));
        return inverse((b1 * u - a2 * x) * (b2 * x - a2 * w));
    case PropId::P4_3: {
        detail::Theta T(al, be);
        return inverse((a1 + (e - one) / two * b1 - (e + one) / two * b2) * (u - x - e2 * d1 * T(2, 3)) *
                       (w - x + e2 * d1 * T(2, 4)));
    }
    case PropId::P4_4: {
        detail::Theta T(al, be);
        return inverse((x - u - e * d1 * T(2, 3)) * (x - w + e * d1 * T(2, 4)));
    }
    case PropId::P4_6:
        if (surd) return inverse(b1 * x - a1 * v.surd->bar());
        return one;
    case PropId::P4_7:
        if (surd) return inverse(x + b1 - a1 + e * v.surd->root);
        return one;
    default: return one;
    }
}

inline Matrix2 lax_matrix(const NormalizationRule& r, const Scalar& x, const Scalar& u, const LegX& v,
                          const ParamPair& al, const ParamPair& be) {
    return normalization(r, x, u, v, al, be) * catalogue_lax(prop_family(r.prop), r.deltas, x, u, v.x, al, be);
}

// ---- quadruples ------------------------------------------------------------

// Vertex values around the central face; z_n may carry a surd.
struct LaxPoint {
    Scalar xa, xb, xc, ya, yb, yc, zw;
    LegX zn;
};

inline FaceEquation central_equation(PropId p, const Deltas& d) {
    switch (p) {
    case PropId::P4_1: return make_equation(Family::A3, {0, 0, 0});
    case PropId::P4_2: return make_equation(Family::A3, {Scalar(2) * d.d2, 0, 0});
    case PropId::P4_3: return make_equation(Family::A2, {d.d1, d.d2, 0});
    case PropId::P4_4: return make_equation(Family::A2, {d.d1, d.d2, 0});
    case PropId::P4_5: return make_equation(Family::A2, {0, 0, 0});
    case PropId::P4_6: return make_equation(Family::B3, d);
    case PropId::P4_7: return make_equation(Family::B2, d);
    default: return make_equation(Family::D1, {});
    }
}

// A(z_w; y_a, x_a, y_c, x_c; α, γ) or B(z_n; y_a, y_b, x_a, x_b; γ, β)
inline Scalar central_value(const NormalizationRule& r, const LaxPoint& V, const CubeParams& P) {
    FaceEquation E = central_equation(r.prop, r.deltas);
    if (lax_approach(prop_family(r.prop)) == Approach::A) return E(V.zw, V.ya, V.xa, V.yc, V.xc, P.alpha, P.gamma);
    return E(V.zn.x, V.ya, V.yb, V.xa, V.xb, P.gamma, P.beta);
}

// Solve the central equation for its last corner (x_c or x_b).
inline LaxPoint on_shell(const NormalizationRule& r, LaxPoint V, const CubeParams& P) {
    FaceEquation E = central_equation(r.prop, r.deltas);
    if (lax_approach(prop_family(r.prop)) == Approach::A)
        V.xc = solve_corner(E, Slot::d, V.zw, {V.ya, V.xa, V.yc}, P.alpha, P.gamma);
    else
        V.xb = solve_corner(E, Slot::d, V.zn.x, {V.ya, V.yb, V.xa}, P.gamma, P.beta);
    return V;
}

using Quadruple = std::array<Matrix2, 4>;

// L(i, x; u, v; α, β) builds L_{i+1}; v is the vertex that may carry a surd.
using LaxFn = std::function<Matrix2(int, const Scalar&, const Scalar&, const LegX&, const ParamPair&, const ParamPair&)>;

// Wiring of the four transition matrices around the central face.
inline Quadruple assemble_quadruple(Approach ap, const LaxFn& L, const LaxPoint& V, const CubeParams& P) {
    const Scalar &a1 = P.alpha.first, &a2 = P.alpha.second, &b1 = P.beta.first, &b2 = P.beta.second,
                 &g1 = P.gamma.first, &g2 = P.gamma.second;
    if (ap == Approach::A) {
        return {L(0, V.xa, V.zw, V.ya, {b1, g2}, {a2, g1}), L(1, V.xc, V.zw, V.yc, {b1, g2}, {a1, g1}),
                L(2, V.ya, V.xa, V.zw, {b1, g1}, {g2, a2}), L(3, V.yc, V.xc, V.zw, {b1, g1}, {g2, a1})};
    }
    return {L(0, V.xb, V.yb, V.zn, {b2, g2}, {g1, a2}), L(1, V.xa, V.ya, V.zn, {b1, g2}, {g1, a2}),
            invert(L(2, V.yb, V.xb, V.zn, {b2, g1}, {g2, a2})), invert(L(3, V.ya, V.xa, V.zn, {b1, g1}, {g2, a2}))};
}

inline Quadruple assemble_quadruple(const NormalizationRule& r, const LaxPoint& V, const CubeParams& P) {
    return assemble_quadruple(
        lax_approach(prop_family(r.prop)),
        [&](int, const Scalar& x, const Scalar& u, const LegX& v, const ParamPair& al, const ParamPair& be) {
            return lax_matrix(r, x, u, v, al, be);
        },
        V, P);
}

inline Matrix2 residual(const Quadruple& L) { return L[3] * L[1] - L[2] * L[0]; }

// The displayed right-hand side of each proposition's proof, verbatim.
inline Matrix2 proof_residual(const NormalizationRule& r, const LaxPoint& V, const CubeParams& P) {
    check_rule(r);
    const Scalar &a1 = P.alpha.first, &a2 = P.alpha.second, &b1 = P.beta.first, &b2 = P.beta.second,
                 &g1 = P.gamma.first, &g2 = P.gamma.second;
    const Scalar &xa = V.xa, &xb = V.xb, &xc = V.xc, &ya = V.ya, &yb = V.yb, &yc = V.yc, &zw = V.zw, &zn = V.zn.x;
    const Scalar &d1 = r.deltas.d1, &d3 = r.deltas.d3;
    const Scalar e(r.eps), e2(r.eps2), one(1), two(2);
    const bool surd = detail::require_surd(r, V.zn);
    const Scalar val = central_value(r, V, P);
    auto sq = [](const Scalar& s) { return s * s; };
    switch (r.prop) {
    case PropId::P4_1: {
        Scalar pre = Scalar(16) * a1 * a2 * g1 * g2 / ((b1 + e * g1) * (b1 - e * g2)) * val;
        if (r.variant == 1)
            return (pre / ((a1 * zw - g2 * xc) * (a2 * zw - g2 * xa) * (g1 * zw - a2 * ya) * (g1 * zw - a1 * yc))) *
                   Matrix2{-g1 * g2 * zw, b1 * g1 * zw * zw, -b1 * g2, b1 * b1 * zw};
        return (pre / ((a1 * zw - g1 * yc) * (a2 * zw - g1 * ya) * (g2 * zw - a2 * xa) * (g2 * zw - a1 * xc))) *
               Matrix2{-b1 * b1 * zw, b1 * g2 * zw * zw, -b1 * g1, g1 * g2 * zw};
    }
    case PropId::P4_2: {
        Scalar pre = a1 * a2 * g1 * g2 * val;
        if (r.variant == 1)
            return (pre / ((a1 * zw - g1 * yc) * (a2 * zw - g1 * ya) * (g2 * zw - a2 * xa) * (g2 * zw - a1 * xc))) *
                   Matrix2{-zw, d1 * b1 / g2 + d3 * g2 / b1 * zw * zw, 0, 0};
        return (pre / ((a1 * zw - g2 * xc) * (a2 * zw - g2 * xa) * (g1 * zw - a2 * ya) * (g1 * zw - a1 * yc))) *
               Matrix2{0, d1 * b1 / g1 + d3 * g1 / b1 * zw * zw, 0, zw};
    }
    case PropId::P4_3: {
        Scalar den = (b1 - (e + one) / two * g1 + (e - one) / two * g2) * (zw - xa + d1 * e2 * (a2 - g2)) *
                     (zw - xc + d1 * e2 * (a1 - g2)) * (zw - ya + d1 * e2 * (g1 - a2)) *
                     (zw - yc + d1 * e2 * (g1 - a1));
        return (-val / den) * outer(d1 * e2 * (g1 - b1) + zw, one, one, d1 * e2 * (g2 - b1) - zw);
    }
    case PropId::P4_4: {
        Scalar den = (zw - xa + (g2 - a2) * d1 * e) * (zw - xc + (g2 - a1) * d1 * e) *
                     (zw - ya + (a2 - g1) * d1 * e) * (zw - yc + (a1 - g1) * d1 * e);
        return (two * val / den) *
               Matrix2{-d1 * (one + e) / two,
                       pow((b1 + (e - one) / two * g1 - (e + one) / two * g2) * d1 - zw, one + d3), 0,
                       d1 * (one - e) / two};
    }
    case PropId::P4_5:
        return (-two * val / ((zw - xa) * (zw - xc) * (zw - ya) * (zw - yc))) * Matrix2{0, 1, 0, 0};
    case PropId::P4_6: {
        if (!surd) {
            Scalar den = zn * (sq(a2) - sq(g1)) * (ya - d1 * b1 / (g2 * zn)) * (yb - d1 * b2 / (g2 * zn));
            return (val / den) * outer(g2 * zn, a2, -g1, a2 * zn);
        }
        const Scalar zb = V.zn.surd->bar();
        const Scalar A2 = sq(a2), G1 = sq(g1), G2 = sq(g2);
        const Scalar s = g2 * (b2 * ya + b1 * yb) - two * b1 * b2 * zn;
        const Scalar q = ya * yb * G2 - b1 * b2;
        Matrix2 E{two * g1 / a2 * ((zb * (A2 - G2) - two * A2 * zn) * q + s * (G2 * sq(zb) + A2)),
                  (A2 + G1 * G2 / A2) * (g2 * ya - b1 * zb) * (g2 * yb - b2 * zb) +
                      G1 * ((b1 - two * g2 * ya * zn) * (b2 - two * g2 * yb * zn) - two * ya * yb * G2) +
                      g2 * zb *
                          ((G1 - G2 * sq(zb)) * (b2 * ya + b1 * yb) + g2 * (G2 - G1) * ya * yb * zb +
                           b1 * b2 * g2 * zb * sq(zb)),
                  Scalar(4) * g1 * g2 * (b1 * b2 + g2 * ya * (b2 * zb - g2 * yb) + b1 * zb * (g2 * yb - two * b2 * zn)),
                  two * g2 / a2 * ((zb * (A2 - G1) + two * G1 * zn) * q - s * (A2 * sq(zb) + G1))};
        Scalar den = (A2 - G1) * (g1 * xa - b1 * zb) * (g1 * xb - b2 * zb) *
                     (sq(b1) + G2 * sq(ya) - two * b1 * g2 * ya * zn) * (sq(b2) + G2 * sq(yb) - two * b2 * g2 * yb * zn);
        return (b1 * b2 * a2 * g2 * zn * val / den) * E;
    }
    case PropId::P4_7: {
        const Scalar zb = surd ? -e * V.zn.surd->root : Scalar(0);
        const Scalar w = d3.is_zero() ? zn : zb;
        Scalar den = (ya + d1 * (g2 - b1 + w)) * (yb + d1 * (g2 - b2 + w)) * two * (a2 - g1) *
                     pow((xa + g1 - b1 - zb) * (xb + g1 - b2 - zb), d3);
        return (val / den) * outer(pow(g2 - a2 + w, one + d3), one, one, -pow(a2 - g1 + w, one + d3));
    }
    case PropId::P4_8:
        return (val / (two * (g1 - a2))) *
               Matrix2{-zn, Scalar(8) * sq(g1 - g2) / ((xa - ya) * (xb - yb)) - sq(zn), 1, zn};
    }
    return {};
}

} // namespace cafcc
