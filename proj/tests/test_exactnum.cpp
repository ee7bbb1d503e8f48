#include <gtest/gtest.h>

#include "cafcc/exactnum.hpp"

using namespace cafcc;

TEST(Scalar, FractionArithmetic) {
    EXPECT_EQ(Scalar(1, 2) + Scalar(1, 3), Scalar(5, 6));
    EXPECT_EQ(Scalar(2, 5) * Scalar(5, 2), Scalar(1));
    EXPECT_TRUE((Scalar(7) - Scalar(7)).is_zero());
}

TEST(Scalar, CanonicalStrings) {
    EXPECT_EQ(Scalar(6, -4).str(), "-3/2");
    EXPECT_EQ(Scalar(4, 2).str(), "2");
    EXPECT_EQ(Scalar(0, 5).str(), "0");
    EXPECT_EQ(Scalar::parse("-10/4").str(), "-5/2");
    EXPECT_EQ(Scalar::parse(" 3 ").str(), "3");
}

TEST(Scalar, ParseRejectsGarbage) {
    for (const char* s : {"", "1.5", "abc", "1/0", "1//2", "2/"}) {
        try {
            Scalar::parse(s);
            ADD_FAILURE() << "accepted '" << s << "'";
        } catch (const Error& e) {
            EXPECT_TRUE(e.code() == Errc::Parse || e.code() == Errc::DivisionByZero) << s;
        }
    }
}

TEST(Scalar, DivisionByZeroIsSignalled) {
    try {
        (void)(Scalar(1) / Scalar(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DivisionByZero);
        EXPECT_TRUE(e.degenerate());
    }
    EXPECT_THROW(inverse(Scalar(0)), Error);
}

TEST(Scalar, IntegerPowers) {
    EXPECT_EQ(pow(Scalar(2, 3), 3), Scalar(8, 27));
    EXPECT_EQ(pow(Scalar(2, 3), -2), Scalar(9, 4));
    EXPECT_EQ(pow(Scalar(5), 0), Scalar(1));
    EXPECT_EQ(pow(Scalar(3), Scalar(2)), Scalar(9));
    try {
        pow(Scalar(3), Scalar(1, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DomainViolation);
    }
}

TEST(Scalar, Ordering) {
    EXPECT_LT(Scalar(-1, 2), Scalar(1, 3));
    EXPECT_EQ(Scalar(-3, 4).sign(), -1);
    EXPECT_TRUE(Scalar(4, 2).is_integer());
}

TEST(Surd, HyperbolicSeedTwo) {
    SurdParam p = make_surd(SurdKind::Hyperbolic, Scalar(2));
    EXPECT_EQ(p.value, Scalar(5, 4));
    EXPECT_EQ(p.root, Scalar(3, 4));
    EXPECT_EQ(p.root * p.root, p.value * p.value - Scalar(1));
}

TEST(Surd, HyperbolicBranchPoint) {
    SurdParam p = make_surd(SurdKind::Hyperbolic, Scalar(1));
    EXPECT_EQ(p.value, Scalar(1));
    EXPECT_TRUE(p.root.is_zero());
}

TEST(Surd, SquareSeedThree) {
    SurdParam p = make_surd(SurdKind::Square, Scalar(3));
    EXPECT_EQ(p.value, Scalar(9));
    EXPECT_EQ(p.root, Scalar(3));
}

TEST(Surd, ZeroSeedRejected) {
    try {
        make_surd(SurdKind::Square, Scalar(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ZeroSeed);
    }
}

TEST(Surd, FlipBranchKeepsValueNegatesRoot) {
    for (SurdKind k : {SurdKind::Hyperbolic, SurdKind::Square}) {
        SurdParam p = make_surd(k, Scalar(-7, 3));
        SurdParam q = flip_branch(p);
        EXPECT_EQ(q.value, p.value);
        EXPECT_EQ(q.root, -p.root);
        EXPECT_EQ(flip_branch(q).root, p.root);
    }
}
