#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mobi;
using namespace support;

TEST_CASE("stock monoid one derives its companion constants") {
    Structure imm1 = make_example("imm1");
    ImmView v(imm1);
    CHECK(v.one() == at(imm1, "1"));
    CHECK(v.bar_one() == at(imm1, "0"));
    CHECK(v.half() == at(imm1, "1/2"));
    CHECK(monoid_inverse(imm1, at(imm1, "1/2")).inverse == at(imm1, "beta"));
    CHECK(monoid_inverse(imm1, at(imm1, "1/2")).checked == 5);
}

TEST_CASE("both monoid-to-mobi routes agree on the cancellative example") {
    Structure imm1 = make_example("imm1");
    CHECK(check_imm_star(imm1).passed());

    Structure by_eq = imm_star_to_mobi(imm1);
    Structure by_inv = imm_to_mobi_via_half_inverse(imm1);
    CHECK(by_eq == by_inv);
    CHECK(check_mobi(by_eq).passed());

    // Going back recovers the operations exactly.
    CHECK(derive_imm_from_mobi(by_eq) == imm1);

    // The two defining-relation forms also coincide here.
    CHECK(imm_star_to_mobi(imm1, PForm::HalfDot) == by_eq);
}

TEST_CASE("the circle operation matches p against one") {
    Structure imm1 = make_example("imm1");
    Structure with_circ = add_circ(imm1);
    Structure m = imm_star_to_mobi(imm1);
    MobiView mv(m);
    CHECK(eval_op(with_circ, "circ", {at(imm1, "alpha"), at(imm1, "alpha")}) ==
          at(imm1, "beta"));
    for (std::uint32_t a = 0; a < 5; ++a)
        for (std::uint32_t b = 0; b < 5; ++b)
            CHECK(eval_op(with_circ, "circ", {Elem::pos(a), Elem::pos(b)}) ==
                  mv.circ(Elem::pos(a), Elem::pos(b)));
}

TEST_CASE("a table search recovers a p for the non-cancellative monoid") {
    Structure imm2 = make_example("imm2");
    CHECK(check_imm(imm2).passed());
    // The defining relation alone cannot: some triples admit several solutions.
    PEquationScan scan = scan_p_equation(imm2, PForm::HalfDot);
    CHECK(scan.unsolvable.empty());
    CHECK_FALSE(scan.ambiguous.empty());
    CHECK_THROWS_AS(imm_star_to_mobi(imm2, PForm::HalfDot), precondition_error);

    DaggerResult res = mobi_dagger_search(imm2);
    REQUIRE(res.status == DaggerResult::Status::Found);
    REQUIRE(res.model);
    Report weak = check_mobi(*res.model, false);
    CHECK(weak.passed());
    CHECK(weak.profile == "mobi-dagger");

    // The recovered table cannot be cancellative: oplus already glues distinct
    // elements, so the searched model lives strictly below the full laws.
    Report full = check_mobi(*res.model, true);
    const LawResult* a6 = full.find("A6");
    REQUIRE(a6);
    CHECK(a6->status == Status::Fail);
}

TEST_CASE("the third stock monoid admits no compatible p at all") {
    Structure imm3 = make_example("imm3");
    CHECK(check_imm(imm3).passed());
    for (PForm form : {PForm::Oplus, PForm::HalfDot}) {
        PEquationScan scan = scan_p_equation(imm3, form);
        std::array<std::uint32_t, 3> bba{4, 4, 0}; // (beta, beta, alpha)
        CHECK(std::find(scan.unsolvable.begin(), scan.unsolvable.end(), bba) !=
              scan.unsolvable.end());
    }
    CHECK_THROWS_AS(imm_star_to_mobi(imm3), unsolvable_error);
    CHECK_THROWS_AS(imm_star_to_mobi(imm3, PForm::HalfDot), unsolvable_error);
    CHECK(mobi_dagger_search(imm3).status == DaggerResult::Status::None);
}

TEST_CASE("the idempotent-product monoid has no invertible half") {
    Structure nc = make_example("section4-imm");
    CHECK(check_imm(nc).passed());
    const LawResult* c3 = check_imm_star(nc).find("C3");
    REQUIRE(c3);
    CHECK(c3->status == Status::Fail);
    CHECK_THROWS_MATCHES(imm_to_ring(nc), no_inverse_error,
                         Catch::Matchers::Message("no dot inverse for 1/2"));
    CHECK_THROWS_AS(imm_to_mobi_via_half_inverse(nc), no_inverse_error);

    Report rt = roundtrip_check(nc, "section4-imm");
    CHECK(rt.passed());
    REQUIRE(rt.results.size() == 1);
    CHECK(rt.results[0].status == Status::Skipped);
    CHECK(rt.results[0].axiom == "monoid->mobi->monoid (inverse)");
}

TEST_CASE("conversion roundtrips are exact on the stock structures") {
    for (std::int64_t n : {5, 7, 9}) {
        Report rep = roundtrip_check(ring_zn(n), "z" + std::to_string(n));
        CHECK(rep.passed());
        for (const auto& r : rep.results) CHECK(r.status == Status::Pass);
    }
    CHECK(roundtrip_check(make_example("three-element"), "three").passed());
    CHECK(roundtrip_check(make_example("mod-odd"), "z5-mobi").passed());

    Report imm1 = roundtrip_check(make_example("imm1"), "imm1");
    CHECK(imm1.passed());
    for (const auto& r : imm1.results) CHECK(r.status == Status::Pass);
}

TEST_CASE("half inverses agree between the bijection scan and the monoid scan") {
    Structure three = make_example("three-element");
    auto two = half_inverse_by_bijection(three);
    REQUIRE(two);
    CHECK(*two == at(three, "1/2")); // half is its own inverse mod 3

    Structure z5 = make_example("mod-odd");
    auto two5 = half_inverse_by_bijection(z5);
    REQUIRE(two5);
    CHECK(derive_imm_from_mobi(z5).kind == Kind::Imm);
    CHECK(monoid_inverse(derive_imm_from_mobi(z5), MobiView(z5).half()).inverse ==
          *two5);
}

TEST_CASE("ring reconstruction matches the modular model") {
    Structure z5m = make_example("mod-odd"); // mobi on Z5
    Structure ring = mobi_to_ring(z5m);
    CHECK(check_ring(ring).passed());
    Structure back = ring_to_mobi(ring);
    CHECK(back == z5m);

    Structure imm = derive_imm_from_mobi(z5m);
    CHECK(imm_to_ring(imm) == ring);

    // ring_to_imm records the half it inverted; the operations must agree.
    Structure imm_back = ring_to_imm(ring);
    for (const char* op : {"inv", "oplus", "dot"})
        CHECK(table_of(imm_back, op) == table_of(imm, op));
    CHECK(imm_back.constant("one") == imm.constant("one"));
    CHECK(imm_back.constant("half") == MobiView(z5m).half());
}
