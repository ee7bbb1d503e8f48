#include <gtest/gtest.h>

#include <set>

#include "cafcc/cube.hpp"

using namespace cafcc;

namespace {

const CubeParams kParams{{Scalar(2, 3), Scalar(-5, 2)}, {Scalar(3, 7), Scalar(11, 4)}, {Scalar(7, 5), Scalar(-2, 9)}};
const CafccInit kInit{Scalar(3, 2), Scalar(-1, 3), Scalar(2, 5), 7, Scalar(-4, 3), Scalar(5, 11)};

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

TEST(Systems, FourteenDistinctSystems) {
    auto all = all_systems();
    EXPECT_EQ(all.size(), 14u);
    std::set<std::string> ids;
    for (const auto& s : all) ids.insert(s.id());
    EXPECT_EQ(ids.size(), 14u);
    EXPECT_TRUE(ids.count("A3:d=0"));
    EXPECT_TRUE(ids.count("ABC:A2,B2,C2:1,0,1"));
    EXPECT_TRUE(ids.count("ABC:A2,D1,C1"));
}

TEST(Systems, ConfigIdsRoundTrip) {
    for (const auto& s : all_systems()) EXPECT_EQ(parse_config(s.id()).id(), s.id());
}

TEST(Systems, TypeASystemRepeatsOneEquation) {
    EquationSystem sys = assemble_system(parse_config("A3:d=1"));
    for (int i = 1; i <= 14; ++i) EXPECT_EQ(sys.by_index(i).equation.id(), "A3:d=1") << i;
}

// The A-equation of a three-family system takes delta = 2 delta_2.
TEST(Systems, ABC3HalfRegimeAssignment) {
    EquationSystem sys = assemble_system(parse_config("ABC:A3,B3,C3:1/2,1/2,0"));
    for (int i : {2, 5}) EXPECT_EQ(sys.by_index(i).equation.id(), "A3:d=1") << i;
    for (int i : {1, 3, 4, 6}) EXPECT_EQ(sys.by_index(i).equation.id(), "B3:1/2,1/2,0") << i;
    for (int i = 7; i <= 14; ++i) EXPECT_EQ(sys.by_index(i).equation.id(), "C3:1/2,1/2,0") << i;

    EquationSystem other = assemble_system(parse_config("ABC:A3,B3,C3:1/2,0,1/2"));
    for (int i : {2, 5}) EXPECT_EQ(other.by_index(i).equation.id(), "A3:d=0") << i;
    for (int i : {1, 3, 4, 6}) EXPECT_EQ(other.by_index(i).equation.id(), "B3:1/2,0,1/2") << i;
}

TEST(Systems, OnlyDeltaTwiceDelta2IsConsistent) {
    for (const char* id : {"ABC:A3,B3,C3:1/2,0,1/2", "ABC:A3,B3,C3:1/2,1/2,0"}) {
        SystemConfig cfg = parse_config(id);
        const bool wanted = cfg.a.deltas().d1 == Scalar(1);
        cfg.a = make_equation(Family::A3, {wanted ? 0 : 1, 0, 0});
        EXPECT_FALSE(run_cafcc(assemble_system(cfg), kInit, kParams).pass) << id;
    }
}

TEST(Systems, TableShape) {
    EquationSystem sys = assemble_system(parse_config("A2:0,0"));
    std::set<Vertex> centers;
    for (int i = 1; i <= 14; ++i) {
        const auto& e = sys.by_index(i);
        EXPECT_EQ(e.index, i);
        centers.insert(e.center);
        std::set<Vertex> five(e.corners.begin(), e.corners.end());
        five.insert(e.center);
        EXPECT_EQ(five.size(), 5u) << i;
        EXPECT_EQ(e.equation.type(), EqType::A);
    }
    EXPECT_EQ(centers.size(), 14u);
}

TEST(Systems, MismatchedFamiliesRejected) {
    EXPECT_EQ(code_of([] { abc_config(Family::A3, Family::B3, Family::C2, {0, 0, 0}); }), Errc::InadmissibleConfig);
    EXPECT_EQ(code_of([] { parse_config("ABC:A3,B2,C3:0,0,0"); }), Errc::InadmissibleConfig);
    EXPECT_EQ(code_of([] { type_a_config(parse_equation("C3:0,0,0")); }), Errc::InadmissibleConfig);
}

TEST(Solve, D1Corner) { EXPECT_EQ(solve_corner(parse_equation("D1"), Slot::d, 0, {1, 2, 3}, {1, 1}, {1, 1}), Scalar(4)); }

TEST(Solve, RoundTripEverySlot) {
    const Scalar x(3, 2);
    std::array<Scalar, 4> c{Scalar(-1, 3), Scalar(2, 5), 7, Scalar(-4, 3)};
    const ParamPair al{Scalar(2, 3), Scalar(-5, 2)}, be{Scalar(3, 7), Scalar(11, 4)};
    for (const auto& eq : all_equations()) {
        for (int s = 0; s < 4; ++s) {
            std::array<Scalar, 3> others;
            for (int k = 0, j = 0; k < 4; ++k)
                if (k != s) others[j++] = c[k];
            auto v = c;
            v[s] = solve_corner(eq, static_cast<Slot>(s), x, others, al, be);
            EXPECT_TRUE(eq(x, v[0], v[1], v[2], v[3], al, be).is_zero()) << eq.id() << " slot " << s;
        }
    }
}

TEST(Solve, DegenerateSlotIsFoundAndSignalled) {
    FaceEquation eq = parse_equation("A3:d=0");
    const ParamPair al{2, 3}, be{5, 7};
    int found = 0;
    for (int x = 1; x <= 4 && !found; ++x)
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b)
                for (int c = -4; c <= 4; ++c) {
                    if (eq(x, a, b, c, 0, al, be) == eq(x, a, b, c, 1, al, be)) {
                        EXPECT_EQ(code_of([&] { solve_corner(eq, Slot::d, x, {a, b, c}, al, be); }),
                                  Errc::DegenerateSlot);
                        ++found;
                    }
                }
    EXPECT_GT(found, 0);
}

TEST(Cafcc, TypeA3Passes) {
    CafccReport r = run_cafcc(assemble_system(parse_config("A3:d=0")), kInit, kParams);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.step3_agree && r.step4_agree && r.step5_agree);
    EXPECT_TRUE(r.step6_residual.is_zero());
    EXPECT_EQ(r.solved.size(), 14u);
}

TEST(Cafcc, EverySystemPassesAtAFixedPoint) {
    for (const auto& cfg : all_systems()) {
        CafccReport r = run_cafcc(assemble_system(cfg), kInit, kParams);
        EXPECT_TRUE(r.pass) << cfg.id() << " residual " << r.step6_residual;
    }
}

TEST(Cafcc, UnhattedBetaOnEquation14Fails) {
    EquationSystem sys = assemble_system(parse_config("ABC:A2,B2,C2:1,0,1"));
    sys.by_index(14).fault.kind = Fault::ParamSwap;
    CafccReport r = run_cafcc(sys, kInit, kParams);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.step6_residual.is_zero());
}

TEST(Cafcc, OffsetFaultFails) {
    for (int i : {1, 7, 14}) {
        EquationSystem sys = assemble_system(parse_config("A2:1,0"));
        sys.by_index(i).fault.kind = Fault::Offset;
        EXPECT_FALSE(run_cafcc(sys, kInit, kParams).pass) << i;
    }
}

TEST(Cafcc, DegenerateInitialDataIsReported) {
    EquationSystem sys = assemble_system(parse_config("A2:0,0"));
    int found = 0;
    for (int m = 0; m < 729 && found < 3; ++m) {
        int d[6];
        for (int k = 0, v = m; k < 6; ++k, v /= 3) d[k] = v % 3;
        CafccInit init{d[0], d[1], d[2], d[3], d[4], d[5]};
        try {
            run_cafcc(sys, init, kParams);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::DegenerateSolve) << e.what();
            EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
            ++found;
        }
    }
    EXPECT_GT(found, 0);
}
