#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mobi;

TEST_CASE("the sampler stream is a pure function of seed and carrier") {
    // Stream values recomputed by an independent splitmix64 implementation.
    Carrier unit = Carrier::rational(Domain::UnitInterval);
    Sampler s(unit, SampleSpec{});
    const Rat expected[] = {Rat(19, 35), Rat(18, 25), Rat(7, 53),
                            Rat(51, 53), Rat(26, 49), Rat(6, 17)};
    for (const Rat& r : expected) CHECK(s.next() == Elem::rat(r));

    Carrier five = Carrier::finite({"a", "b", "c", "d", "e"});
    Sampler f(five, SampleSpec{});
    const std::uint32_t pos[] = {2, 4, 0, 3, 2, 0, 4, 4};
    for (std::uint32_t p : pos) CHECK(f.next() == Elem::pos(p));

    Sampler g(five, SampleSpec{});
    Sampler h(five, SampleSpec{.seed = 1});
    CHECK(g.next() == Elem::pos(2));
    CHECK(h.next() != Elem::pos(2)); // seed 1 opens elsewhere
}

TEST_CASE("exhaustive profiles accept the stock finite models") {
    Report three = check_mobi(make_example("three-element"));
    CHECK(three.passed());
    CHECK(three.profile == "mobi-full");
    CHECK(three.find("A2")->checked == 3);
    CHECK(three.find("A6")->checked == 27);
    CHECK(three.find("A7")->checked == 243);
    CHECK(three.find("A8")->checked == 243);

    CHECK(check_mobi(make_example("mod-odd")).passed());
    CHECK(check_imm(make_example("imm1")).passed());
    CHECK(check_imm(make_example("imm2")).passed());
    CHECK(check_imm(make_example("imm3")).passed());
    CHECK(check_imm(make_example("section4-imm")).passed());
    CHECK(check_ring(ring_zn(7)).passed());
}

TEST_CASE("cancellation failures carry their first witness") {
    Report imm2 = check_imm_star(make_example("imm2"));
    CHECK_FALSE(imm2.passed());
    const LawResult* c3 = imm2.find("C3");
    REQUIRE(c3);
    CHECK(c3->status == Status::Fail);
    CHECK(c3->witness == json({"alpha", "0", "1/2"}));
    // Everything else in the star profile still holds.
    for (const auto& r : imm2.results)
        if (r.axiom != "C3") CHECK(r.status == Status::Pass);

    Report nc = check_imm_star(make_example("section4-imm"));
    const LawResult* c3b = nc.find("C3");
    REQUIRE(c3b);
    CHECK(c3b->status == Status::Fail);
    CHECK(c3b->witness == json({"0", "1/2", "1/2"}));
}

TEST_CASE("a single table edit is pinned to its axiom and witness") {
    Structure s = make_example("three-element");
    // p(0,1/2,1/2): cell (0,1,1) in row-major coordinates, value 1 -> 0.
    std::size_t cell = (0 * 3 + 1) * 3 + 1;
    REQUIRE(s.ops["p"].table().entries[cell] == 2);
    s.ops["p"].table().entries[cell] = 0;
    Report rep = check_mobi(s);
    CHECK_FALSE(rep.passed());
    const LawResult* a6 = rep.find("A6");
    REQUIRE(a6);
    CHECK(a6->status == Status::Fail);
    CHECK(a6->witness == json({"0", "1", "1/2"}));
}

TEST_CASE("sampled profiles accept the rational models and repeat exactly") {
    Structure s = make_example("interval");
    Report r1 = check_mobi(s, true, SampleSpec{}, "x");
    Report r2 = check_mobi(s, true, SampleSpec{}, "x");
    CHECK(r1.passed());
    CHECK(r1.to_json().dump() == r2.to_json().dump());
    CHECK(r1.find("A7")->checked == 1000);

    SampleSpec small;
    small.count = 50;
    CHECK(check_mobi(make_example("symmetric-interval"), true, small).passed());
    CHECK(check_mobi(make_example("reciprocal-interval"), true, small).passed());
}

TEST_CASE("evaluation errors fail the law with a note") {
    // The affine rule has no projective extension, so the ray's point at
    // infinity blows it up; the report keeps the message instead of a verdict.
    Structure s;
    s.kind = Kind::Mobi;
    s.carrier = Carrier::rational(Domain::RayOneInf);
    s.constants = {{"zero", Elem::rat(Rat(1))},
                   {"half", Elem::rat(Rat(2))},
                   {"one", Elem::rat(Rat(3))}};
    s.ops["p"] = OpImpl::make_formula(3, "interval");
    Report rep = check_mobi(s);
    bool some_note = false;
    for (const auto& r : rep.results)
        if (r.status == Status::Fail && !r.note.empty()) some_note = true;
    CHECK(some_note);
}

TEST_CASE("the evaluation cap aborts oversized sweeps") {
    Structure z5 = make_example("mod-odd");
    CHECK_THROWS_AS(
        run_laws(z5, "mobi-full", "", mobi_laws(z5, true), SampleSpec{}, 100),
        cap_exceeded_error);
}

TEST_CASE("profile names route to their law sets") {
    Structure z5 = make_example("mod-odd");
    CHECK(run_profile(z5, "mobi-full", {}, "").profile == "mobi-full");
    CHECK(run_profile(z5, "full-medial", {}, "").passed());
    CHECK(run_profile(z5, "derived-mobi-props", {}, "").passed());
    CHECK_THROWS_AS(run_profile(z5, "nope", {}, ""), parse_error);
    CHECK(default_profile(Kind::Mobi) == "mobi-full");
    CHECK(default_profile(Kind::Imm) == "imm");
    CHECK(default_profile(Kind::ImmStar) == "imm-star");
    CHECK(default_profile(Kind::Ring) == "ring");
}

TEST_CASE("derived identity suites hold on the stock models") {
    CHECK(run_profile(make_example("three-element"), "derived-mobi-props", {}, "")
              .passed());
    CHECK(run_profile(make_example("imm1"), "derived-imm-props", {}, "").passed());
    CHECK(run_profile(make_example("imm1"), "derived-immstar-props", {}, "")
              .passed());
    CHECK(run_profile(make_example("imm2"), "derived-imm-props", {}, "").passed());
    CHECK(run_profile(make_example("section4-imm"), "derived-imm-props", {}, "")
              .passed());
    SampleSpec small;
    small.count = 100;
    CHECK(run_profile(make_example("interval"), "derived-mobi-props", small, "")
              .passed());
}
