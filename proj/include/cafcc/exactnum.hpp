#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

#include "cafcc/error.hpp"

namespace cafcc {

// Exact rational, always canonical. Thin wrapper over mpq_class so that
// division by zero surfaces as an exception instead of a GMP trap.
class Scalar {
public:
    Scalar() = default;
    template <std::integral I>
    Scalar(I v) : v_(static_cast<long>(v)) {}
    Scalar(long num, long den) {
        if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Scalar parse(std::string_view s) {
        std::string t(s);
        auto blank = [](char c) { return c == ' ' || c == '\t'; };
        while (!t.empty() && blank(t.front())) t.erase(t.begin());
        while (!t.empty() && blank(t.back())) t.pop_back();
        if (t.empty()) throw Error(Errc::Parse, "empty rational");
        auto slash = t.find('/');
        auto digits = [](const std::string& d, bool allow_sign) {
            if (d.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (d[0] == '-' || d[0] == '+')) i = 1;
            if (i == d.size()) return false;
            for (; i < d.size(); ++i)
                if (d[i] < '0' || d[i] > '9') return false;
            return true;
        };
        std::string num = t.substr(0, slash), den = slash == std::string::npos ? "1" : t.substr(slash + 1);
        if (!digits(num, true) || !digits(den, false))
            throw Error(Errc::Parse, "not a rational: '" + t + "'");
        if (num[0] == '+') num.erase(num.begin());
        mpz_class n(num), d(den);
        if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + t + "'");
        Scalar r;
        r.v_ = mpq_class(n, d);
        r.v_.canonicalize();
        return r;
    }

    std::string str() const { return v_.get_str(); }
    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { Scalar r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    mpq_class v_;
};

inline Scalar inverse(const Scalar& a) { return Scalar(1) / a; }

inline Scalar pow(Scalar base, long e) {
    if (e < 0) {
        base = inverse(base);
        e = -e;
    }
    Scalar r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Exponents such as δ₂ or 1+δ₂+δ₃ are Scalars in the formulas but always integral.
inline Scalar pow(const Scalar& base, const Scalar& e) {
    if (!e.is_integer()) throw Error(Errc::DomainViolation, "non-integral exponent " + e.str());
    return pow(base, e.num().get_si());
}

enum class SurdKind { Hyperbolic, Square };

// A value whose square-root companion is rational by construction.
//   Hyperbolic: value = (t + 1/t)/2, root = (t - 1/t)/2, bar() = t
//   Square:     value = s^2,         root = s
struct SurdParam {
    SurdKind kind = SurdKind::Square;
    Scalar seed;
    Scalar value;
    Scalar root;

    Scalar bar() const { return value + root; }
};

inline SurdParam make_surd(SurdKind kind, const Scalar& seed) {
    if (seed.is_zero()) throw Error(Errc::ZeroSeed, "surd seed must be nonzero");
    SurdParam p;
    p.kind = kind;
    p.seed = seed;
    if (kind == SurdKind::Hyperbolic) {
        Scalar inv = inverse(seed);
        p.value = (seed + inv) / Scalar(2);
        p.root = (seed - inv) / Scalar(2);
    } else {
        p.value = seed * seed;
        p.root = seed;
    }
    return p;
}

inline SurdParam flip_branch(const SurdParam& p) {
    return make_surd(p.kind, p.kind == SurdKind::Hyperbolic ? inverse(p.seed) : -p.seed);
}

inline const char* surd_kind_name(SurdKind k) {
    return k == SurdKind::Hyperbolic ? "Hyperbolic" : "Square";
}

} // namespace cafcc
