#include <gtest/gtest.h>

#include "cafcc/catalogue.hpp"
#include "cafcc/cube.hpp"

using namespace cafcc;

namespace {

const FacePoint kPoint{1, {2, 3, 4, 5}, {1, 2}, {3, 5}};
const FacePoint kPoint2{Scalar(3, 2), {Scalar(-1, 3), Scalar(2, 5), 7, Scalar(-4, 3)},
                        {Scalar(2, 3), Scalar(-5, 2)}, {Scalar(3, 7), Scalar(11, 4)}};

// Frozen from an independent term-by-term transcription.
struct Golden {
    const char* id;
    const char* at_point;
    const char* at_point2;
};
const Golden kGolden[] = {
#include "golden_values.inc"
};

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::Parse;
}

} // namespace

TEST(Catalogue, TwentyThreeEquations) {
    auto all = all_equations();
    EXPECT_EQ(all.size(), 23u);
    std::set<std::string> ids;
    for (const auto& e : all) ids.insert(e.id());
    EXPECT_EQ(ids.size(), 23u);
}

TEST(Catalogue, GoldenValues) {
    ASSERT_EQ(std::size(kGolden), 23u);
    for (const auto& g : kGolden) {
        FaceEquation eq = parse_equation(g.id);
        EXPECT_EQ(eq.id(), g.id);
        EXPECT_EQ(evaluate(eq, kPoint).str(), g.at_point) << g.id;
        EXPECT_EQ(evaluate(eq, kPoint2).str(), g.at_point2) << g.id;
    }
}

TEST(Catalogue, D1Telescopes) { EXPECT_TRUE(evaluate(parse_equation("D1"), kPoint).is_zero()); }

TEST(Catalogue, A3VanishesOnTheDiagonal) {
    FaceEquation eq = parse_equation("A3:d=0");
    for (const Scalar& x : {Scalar(2), Scalar(-3, 7), Scalar(11, 5)})
        EXPECT_TRUE(eq(x, x, x, x, x, {2, 3}, {5, 7}).is_zero());
}

TEST(Catalogue, A2VanishesWhenAllEqual) {
    FaceEquation eq = parse_equation("A2:0,0");
    Scalar x(4, 9);
    EXPECT_TRUE(eq(x, x, x, x, x, {2, 3}, {5, 7}).is_zero());
}

TEST(Catalogue, B3HalfRegimeHasLaurentOffset) {
    EXPECT_EQ(parse_equation("B3:1/2,0,1/2").laurent_offset(), 1);
    EXPECT_EQ(parse_equation("C3:1/2,0,1/2").laurent_offset(), 0);
}

TEST(Catalogue, TypesAndIdentifiers) {
    EXPECT_EQ(family_type(Family::A3), EqType::A);
    EXPECT_EQ(family_type(Family::B2), EqType::B);
    EXPECT_EQ(family_type(Family::C1), EqType::C);
    EXPECT_EQ(family_type(Family::D1), EqType::B);
    EXPECT_EQ(parse_equation("A3:d=1").id(), "A3:d=1");
    EXPECT_EQ(parse_equation("C2:1,0,1").id(), "C2:1,0,1");
    EXPECT_EQ(parse_equation("B3:1/2,0,1/2").id(), "B3:1/2,0,1/2");
}

TEST(Catalogue, InadmissibleRegimes) {
    EXPECT_EQ(code_of([] { parse_equation("A2:1,1,0"); }), Errc::InadmissibleDeltas);
    EXPECT_EQ(code_of([] { make_equation(Family::B3, {1, 1, 1}); }), Errc::InadmissibleDeltas);
    EXPECT_EQ(code_of([] { parse_equation("A3:d=2"); }), Errc::InadmissibleDeltas);
    EXPECT_EQ(code_of([] { parse_equation("E7"); }), Errc::Parse);
}

TEST(Catalogue, MultiplicativeFamiliesRejectZeroParameters) {
    FaceEquation eq = parse_equation("A3:d=0");
    EXPECT_EQ(code_of([&] { eq(1, 2, 3, 4, 5, {0, 3}, {5, 7}); }), Errc::DomainViolation);
}

TEST(Catalogue, B3RejectsZeroCenter) {
    FaceEquation eq = parse_equation("B3:1/2,0,1/2");
    EXPECT_EQ(code_of([&] { eq(0, 2, 3, 4, 5, {2, 3}, {5, 7}); }), Errc::DomainViolation);
}

TEST(Legs, A3TableEntry) {
    FaceEquation eq = parse_equation("A3:d=0");
    EXPECT_EQ(leg(eq, LegRole::A_leg, LegX(Scalar(2)), 3, 1, 5), Scalar(-7, 13));
    EXPECT_EQ(leg(eq, LegRole::A_leg, LegX(Scalar(2)), 3, 4, 4), Scalar(1));
}

TEST(Legs, A2AdditiveLegVanishesForEqualParameters) {
    FaceEquation eq = parse_equation("A2:0,0");
    EXPECT_TRUE(leg_info(eq, LegRole::A_leg).additive);
    EXPECT_TRUE(leg(eq, LegRole::A_leg, LegX(Scalar(2)), 3, 4, 4).is_zero());
}

TEST(Legs, SurdLegNeedsSurd) {
    FaceEquation eq = parse_equation("A3:d=1");
    ASSERT_TRUE(leg_info(eq, LegRole::A_leg).surd.has_value());
    EXPECT_EQ(code_of([&] { leg(eq, LegRole::A_leg, LegX(Scalar(5, 4)), 3, 1, 5); }), Errc::MissingSurd);
    EXPECT_NO_THROW(leg(eq, LegRole::A_leg, LegX(make_surd(SurdKind::Hyperbolic, 2)), 3, 1, 5));
}

TEST(FourLeg, A3OnShellVanishes) {
    FaceEquation eq = parse_equation("A3:d=0");
    const ParamPair al{2, 3}, be{5, 7};
    Scalar x(3, 2), a(-1, 3), b(2, 5), c(7);
    Scalar d = solve_corner(eq, Slot::d, x, {a, b, c}, al, be);
    EXPECT_TRUE(eq(x, a, b, c, d, al, be).is_zero());
    EXPECT_TRUE(fourleg_residual(eq, LegX(x), {a, b, c, d}, al, be).is_zero());
}

TEST(FourLeg, D1AdditiveFormTelescopes) {
    FaceEquation eq = parse_equation("D1");
    EXPECT_TRUE(fourleg_additive(eq));
    EXPECT_TRUE(fourleg_residual(eq, LegX(Scalar(0)), {1, 2, 3, 4}, {1, 1}, {1, 1}).is_zero());
}

TEST(FourLeg, A2OffShellIsNonzero) {
    FaceEquation eq = parse_equation("A2:1,0");
    EXPECT_FALSE(fourleg_residual(eq, LegX(Scalar(3, 2)), {Scalar(-1, 3), Scalar(2, 5), 7, Scalar(-4, 3)},
                                  {Scalar(2, 3), Scalar(-5, 2)}, {Scalar(3, 7), Scalar(11, 4)})
                     .is_zero());
}
