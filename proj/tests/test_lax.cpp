#include <gtest/gtest.h>

#include "cafcc/lax.hpp"

using namespace cafcc;

namespace {

const ParamPair kAl{2, 3}, kBe{5, 7};
const CubeParams kParams{{Scalar(2, 3), Scalar(-5, 2)}, {Scalar(3, 7), Scalar(11, 4)}, {Scalar(7, 5), Scalar(-2, 9)}};
const LaxPoint kPoint{Scalar(3, 2), Scalar(-1, 3), Scalar(2, 5), 7, Scalar(-4, 3), Scalar(5, 11), Scalar(9, 7),
                      LegX(Scalar(-8, 5))};

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::Parse;
}

const NormalizationRule& find_rule(PropId p) {
    static const auto rules = all_rules();
    for (const auto& r : rules)
        if (r.prop == p) return r;
    throw std::logic_error("no rule");
}

} // namespace

TEST(Matrix, InvertExamples) {
    Matrix2 I{1, 0, 0, 1};
    EXPECT_EQ(invert(I), I);
    EXPECT_EQ(invert(Matrix2{1, 2, 3, 4}), (Matrix2{-2, 1, Scalar(3, 2), Scalar(-1, 2)}));
    EXPECT_EQ(code_of([] { invert(Matrix2{1, 2, 2, 4}); }), Errc::SingularMatrix);
    Matrix2 m{Scalar(2, 3), 5, -1, Scalar(7, 4)};
    EXPECT_EQ(m * invert(m), I);
}

TEST(Builders, Preconditions) {
    EXPECT_EQ(code_of([] { build_lax_A(parse_equation("B2:1,0,0"), 1, 2, 3, kAl, kBe); }), Errc::TypeBNotAllowed);
    EXPECT_EQ(code_of([] { build_lax_B(parse_equation("A3:d=0"), 1, 2, 3, kAl, kBe); }), Errc::NotTypeC);
}

TEST(Builders, ApproachATransportsCToD) {
    const Scalar x(3, 2), xa(-1, 3), xb(2, 5), xc(7);
    for (const auto& eq : all_equations()) {
        if (eq.type() == EqType::B) continue;
        Matrix2 M = build_lax_A(eq, x, xa, xb, kAl, kBe);
        Scalar xd = solve_corner(eq, Slot::d, x, {xa, xb, xc}, kAl, kBe);
        Scalar top = M.a * xc + M.b, bottom = M.c * xc + M.d;
        EXPECT_EQ(top, xd * bottom) << eq.id();
        EXPECT_FALSE(bottom.is_zero()) << eq.id();
    }
}

TEST(Builders, ApproachBTransportsDToB) {
    const Scalar x(3, 2), xa(-1, 3), xc(2, 5), xd(7);
    for (const auto& eq : all_equations()) {
        if (eq.type() != EqType::C) continue;
        Matrix2 M = build_lax_B(eq, x, xa, xc, kAl, kBe);
        Scalar xb = solve_corner(eq, Slot::b, x, {xa, xc, xd}, kAl, kBe);
        EXPECT_EQ(M.a * xd + M.b, xb * (M.c * xd + M.d)) << eq.id();
    }
}

TEST(Catalogue, A3LeadingEntry) {
    auto blocks = catalogue_blocks(LaxFamily::A3, {0, 0, 0}, 2, 3, kAl, kBe);
    EXPECT_EQ(blocks.x2.a, Scalar(1764));
}

TEST(Catalogue, ClosedFormFamiliesHaveNoBlocks) {
    EXPECT_EQ(code_of([] { catalogue_blocks(LaxFamily::C1, {0, 0, 0}, 2, 3, kAl, kBe); }), Errc::NoCatalogueEntry);
    EXPECT_EQ(code_of([] { catalogue_det(LaxFamily::D1, {0, 0, 0}, 1, 2, 3, kAl, kBe); }), Errc::NoCatalogueEntry);
}

TEST(Catalogue, MatchesScaledBuilderEverywhere) {
    const Scalar x(3, 2), u(-1, 3), v(2, 5);
    for (LaxFamily f : all_lax_families()) {
        for (const auto& d : lax_regimes(f)) {
            EXPECT_EQ(catalogue_lax(f, d, x, u, v, kAl, kBe),
                      catalogue_scale(f, d, x, u, v, kAl, kBe) * build_lax(f, d, x, u, v, kAl, kBe))
                << lax_family_name(f);
            if (f == LaxFamily::C1 || f == LaxFamily::D1) continue;
            EXPECT_EQ(catalogue_lax(f, d, x, u, v, kAl, kBe).det(), catalogue_det(f, d, x, u, v, kAl, kBe))
                << lax_family_name(f);
        }
    }
}

TEST(Catalogue, RegimesOutsideAFamilyAreRejected) {
    EXPECT_EQ(code_of([] { lax_source(LaxFamily::A2, {1, 1, 1}); }), Errc::InadmissibleDeltas);
}

TEST(Normalization, P41FirstVariant) {
    NormalizationRule r{PropId::P4_1, 1, 1, 1, {0, 0, 0}};
    Scalar want = inverse(Scalar((2 - 5) * (2 + 7) * (3 * 1 - 5 * 2) * (7 * 1 - 3 * 3)));
    EXPECT_EQ(normalization(r, 1, 2, LegX(Scalar(3)), kAl, kBe), want);
}

TEST(Normalization, P46WithoutDelta3IsOne) {
    for (const Deltas& d : {Deltas{0, 0, 0}, Deltas{1, 0, 0}}) {
        NormalizationRule r{PropId::P4_6, 1, 1, 1, d};
        EXPECT_EQ(normalization(r, 1, 2, LegX(Scalar(3)), kAl, kBe), Scalar(1));
    }
}

TEST(Normalization, P44RejectsUnlistedRegime) {
    NormalizationRule r{PropId::P4_4, 1, 1, 1, {Scalar(1, 2), Scalar(1, 2), 0}};
    EXPECT_EQ(code_of([&] { check_rule(r); }), Errc::RegimeMismatch);
}

TEST(Normalization, SurdRulesNeedSurds) {
    const Scalar h(1, 2);
    NormalizationRule r{PropId::P4_6, 1, 1, 1, {h, 0, h}};
    EXPECT_EQ(code_of([&] { normalization(r, 1, 2, LegX(Scalar(5, 4)), kAl, kBe); }), Errc::MissingSurd);
    EXPECT_NO_THROW(normalization(r, 1, 2, LegX(make_surd(SurdKind::Hyperbolic, 2)), kAl, kBe));
}

TEST(Normalization, RuleInventory) {
    EXPECT_EQ(all_rules().size(), 35u);
    for (const auto& r : all_rules()) EXPECT_NO_THROW(check_rule(r)) << rule_id(r);
    EXPECT_EQ(parse_prop("4.3"), PropId::P4_3);
    EXPECT_EQ(parse_prop("P4.7"), PropId::P4_7);
    EXPECT_EQ(code_of([] { parse_prop("P5.1"); }), Errc::Parse);
}

TEST(Quadruple, ApproachAWiring) {
    std::vector<std::string> calls;
    auto L = [&](int i, const Scalar& x, const Scalar& u, const LegX& v, const ParamPair& al, const ParamPair& be) {
        calls.push_back(std::to_string(i) + ":" + x.str() + ";" + u.str() + "," + v.x.str() + ";" + al.first.str() +
                        "," + al.second.str() + ";" + be.first.str() + "," + be.second.str());
        return Matrix2{1, 0, 0, 1};
    };
    assemble_quadruple(Approach::A, L, kPoint, kParams);
    ASSERT_EQ(calls.size(), 4u);
    // L1 = L(x_a; z_w, y_a; (β1, γ2), (α2, γ1))
    EXPECT_EQ(calls[0], "0:3/2;9/7,7;3/7,-2/9;-5/2,7/5");
}

TEST(Quadruple, ApproachBInvertsTheSecondPair) {
    std::vector<std::string> calls;
    Matrix2 M{2, 1, 1, 1};
    auto L = [&](int i, const Scalar& x, const Scalar& u, const LegX& v, const ParamPair& al, const ParamPair& be) {
        calls.push_back(std::to_string(i) + ":" + x.str() + ";" + u.str() + "," + v.x.str() + ";" + al.first.str() +
                        "," + al.second.str() + ";" + be.first.str() + "," + be.second.str());
        return M;
    };
    Quadruple q = assemble_quadruple(Approach::B, L, kPoint, kParams);
    // L3 = invert(L(y_b; x_b, z_n; (β2, γ1), (γ2, α2)))
    EXPECT_EQ(calls[2], "2:-4/3;-1/3,-8/5;11/4,7/5;-2/9,-5/2");
    EXPECT_EQ(q[2], invert(M));
    EXPECT_EQ(q[0], M);
}

TEST(Residual, P41OnShellZeroOffShellRankOne) {
    const auto& r = find_rule(PropId::P4_1);
    Matrix2 off = residual(assemble_quadruple(r, kPoint, kParams));
    EXPECT_FALSE(off.is_zero());
    EXPECT_TRUE(off.det().is_zero());
    EXPECT_EQ(off, Scalar(printed_sign(r.prop)) * proof_residual(r, kPoint, kParams));
    LaxPoint on = on_shell(r, kPoint, kParams);
    EXPECT_TRUE(central_value(r, on, kParams).is_zero());
    EXPECT_TRUE(residual(assemble_quadruple(r, on, kParams)).is_zero());
    EXPECT_TRUE(proof_residual(r, on, kParams).is_zero());
}

TEST(Residual, EveryRuleAtAFixedPoint) {
    for (const auto& r : all_rules()) {
        LaxPoint V = kPoint;
        if (auto k = prop_surd(r.prop, r.deltas)) V.zn = LegX(make_surd(*k, Scalar(-8, 5)));
        Matrix2 off = residual(assemble_quadruple(r, V, kParams));
        EXPECT_FALSE(off.is_zero()) << rule_id(r);
        EXPECT_EQ(off, Scalar(printed_sign(r.prop)) * proof_residual(r, V, kParams)) << rule_id(r);
        EXPECT_TRUE(residual(assemble_quadruple(r, on_shell(r, V, kParams), kParams)).is_zero()) << rule_id(r);
    }
}
