#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mobi;
using namespace support;

TEST_CASE("canonical forms identify relabeled copies") {
    Structure three = make_example("three-element");
    Structure z3 = make_example("mod-odd", {{"n", Rat(1)}});
    CHECK(detail::canonical_key(three) == detail::canonical_key(z3));
    CHECK(canonical_form(three) == canonical_form(z3));

    // Constants already occupy the low slots, so only the labels move.
    Structure c = canonical_form(three);
    CHECK(c.carrier.labels() == std::vector<std::string>{"e0", "e1", "e2"});
    CHECK(table_of(c, "p") == table_of(three, "p"));
    CHECK(c.constants == three.constants);
}

TEST_CASE("isomorphism search pins the constant roles") {
    Structure three = make_example("three-element");
    Structure z3 = make_example("mod-odd", {{"n", Rat(1)}});
    auto perm = find_isomorphism(three, z3);
    REQUIRE(perm);
    CHECK(*perm == std::vector<std::uint32_t>{0, 2, 1});
    CHECK(perm_is_isomorphism(three, z3, *perm));
    CHECK_FALSE(perm_is_isomorphism(three, z3, {0, 1, 2}));
    CHECK_FALSE(perm_is_isomorphism(three, z3, {0, 0, 1}));
    CHECK_FALSE(perm_is_isomorphism(three, z3, {0, 2}));

    CHECK_FALSE(find_isomorphism(three, make_example("mod-odd")));

    Structure dented = three;
    dented.ops["p"].table().entries[4] = 0;
    CHECK_FALSE(find_isomorphism(dented, three));
}

TEST_CASE("table enumeration finds exactly the known small models") {
    EnumerationTask t1{.order = 1};
    EnumerationResult r1 = enumerate_mobi(t1);
    CHECK(r1.raw_count == 1);
    CHECK(r1.models.size() == 1);

    CHECK(enumerate_mobi({.order = 2}).raw_count == 0);
    CHECK(enumerate_mobi({.order = 4}).raw_count == 0);

    EnumerationResult r3 = enumerate_mobi({.order = 3, .up_to_iso = false});
    REQUIRE(r3.raw_count == 1);
    CHECK(table_of(r3.models[0], "p") ==
          table_of(make_example("three-element"), "p"));

    CHECK_THROWS_AS(enumerate_mobi({.order = 5, .node_cap = 10}),
                    cap_exceeded_error);
}

TEST_CASE("order five holds a single model up to relabeling") {
    const EnumerationResult& raw = order5_raw();
    CHECK(raw.raw_count == 2);
    const std::vector<Structure>& reps = order5_reps();
    REQUIRE(reps.size() == 1);

    Structure z5 = make_example("mod-odd");
    auto perm = find_isomorphism(reps[0], z5);
    REQUIRE(perm);
    CHECK(perm_is_isomorphism(reps[0], z5, *perm));

    // The two raw tables are relabelings of one another.
    CHECK(find_isomorphism(raw.models[0], raw.models[1]).has_value());
}

TEST_CASE("ring enumeration agrees with the table search") {
    const std::size_t counts[] = {1, 0, 1, 0, 1}; // orders 1..5
    for (std::size_t n = 1; n <= 5; ++n)
        CHECK(enumerate_rings_with_half(n).size() == counts[n - 1]);

    auto r3 = enumerate_rings_with_half(3);
    REQUIRE(r3.size() == 1);
    CHECK(check_ring(r3[0]).passed());
    CHECK(find_isomorphism(r3[0], ring_zn(3)).has_value());

    auto r5 = enumerate_rings_with_half(5);
    REQUIRE(r5.size() == 1);
    CHECK(find_isomorphism(r5[0], ring_zn(5)).has_value());

    // Every ring with an invertible two yields a model the table search saw.
    Structure from_ring = ring_to_mobi(r5[0]);
    CHECK(find_isomorphism(from_ring, order5_reps()[0]).has_value());
    Structure from_ring3 = ring_to_mobi(r3[0]);
    CHECK(find_isomorphism(from_ring3, make_example("three-element")).has_value());
}

TEST_CASE("mediality of p tracks commutativity of the derived product") {
    EnumerationResult r3 = enumerate_mobi({.order = 3, .up_to_iso = false});
    for (const Structure& s : r3.models)
        CHECK(check_full_medial(s).passed() == dot_commutes(s));
    for (const Structure& s : order5_raw().models)
        CHECK(check_full_medial(s).passed() == dot_commutes(s));
}

TEST_CASE("fractional-linear maps apply projectively") {
    Homography phi{Rat(1), Rat(0), Rat(-1), Rat(2)}; // x / (2 - x)
    CHECK(apply_map(phi, Elem::rat(Rat(0))) == Elem::rat(Rat(0)));
    CHECK(apply_map(phi, Elem::rat(Rat(1, 2))) == Elem::rat(Rat(1, 3)));
    CHECK(apply_map(phi, Elem::rat(Rat(1))) == Elem::rat(Rat(1)));
    CHECK(apply_map(phi, Elem::rat(Rat(2))) == Elem::rat(Rat::inf()));

    Homography back = inverse_map(phi); // 2x / (x + 1)
    CHECK(apply_map(back, Elem::rat(Rat(1, 3))) == Elem::rat(Rat(1, 2)));
    CHECK(apply_map(back, apply_map(phi, Elem::rat(Rat(3, 7)))) ==
          Elem::rat(Rat(3, 7)));

    Homography recip{Rat(0), Rat(1), Rat(1), Rat(0)};
    CHECK(apply_map(recip, Elem::rat(Rat(0))) == Elem::rat(Rat::inf()));
    CHECK(apply_map(recip, Elem::rat(Rat::inf())) == Elem::rat(Rat(0)));

    CHECK_THROWS_AS(apply_map(phi, Elem::pos(0)), eval_error);
}

TEST_CASE("map certification accepts the three textbook isomorphisms") {
    SampleSpec spec;
    spec.count = 500;
    Structure interval = make_example("interval");

    Report a = certify_isomorphism(interval, make_example("interval-third"),
                                   {Rat(1), Rat(0), Rat(-1), Rat(2)}, spec);
    CHECK(a.passed());
    CHECK(a.find("preserves-p")->checked == 500);

    Report b = certify_isomorphism(interval, make_example("symmetric-interval"),
                                   {Rat(2), Rat(-1), Rat(0), Rat(1)}, spec);
    CHECK(b.passed());

    Report c = certify_isomorphism(interval, make_example("reciprocal-interval"),
                                   {Rat(0), Rat(1), Rat(1), Rat(0)}, spec);
    CHECK(c.passed());
}

TEST_CASE("map certification rejects a mismatched map") {
    SampleSpec spec;
    spec.count = 100;
    Structure interval = make_example("interval");
    Report r = certify_isomorphism(interval, make_example("interval-third"),
                                   {Rat(1), Rat(0), Rat(0), Rat(1)}, spec);
    CHECK_FALSE(r.passed());
    CHECK(r.find("constants")->status == Status::Fail);

    CHECK_THROWS_AS(certify_isomorphism(interval, interval,
                                        {Rat(1), Rat(1), Rat(1), Rat(1)}, spec),
                    precondition_error);
}
