#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mobi;
using namespace support;
using support::at;

TEST_CASE("element variants order by shape then value") {
    Elem p = Elem::pos(3), r = Elem::rat(Rat(1, 2)), q = Elem::pair(Rat(1), Rat(2));
    CHECK(p == Elem::pos(3));
    CHECK(p != Elem::pos(4));
    CHECK(p < r);
    CHECK(r < q);
    CHECK(Elem::rat(Rat(1, 3)) < Elem::rat(Rat(1, 2)));
    CHECK(Elem::pair(Rat(1), Rat(2)) < Elem::pair(Rat(1), Rat(3)));
    CHECK_THROWS_AS(p.rat(), eval_error);
    CHECK_THROWS_AS(r.pos(), eval_error);
}

TEST_CASE("finite carriers answer by position") {
    Carrier c = Carrier::finite({"a", "b", "c"});
    CHECK(c.is_finite());
    CHECK(c.size() == 3);
    CHECK(c.index_of("b") == 1u);
    CHECK_FALSE(c.index_of("z"));
    CHECK(c.contains(Elem::pos(2)));
    CHECK_FALSE(c.contains(Elem::pos(3)));
    CHECK_FALSE(c.contains(Elem::rat(Rat(0))));
}

TEST_CASE("rational domains test membership exactly") {
    Carrier unit = Carrier::rational(Domain::UnitInterval);
    CHECK(unit.contains(Elem::rat(Rat(1, 2))));
    CHECK(unit.contains(Elem::rat(Rat(0))));
    CHECK(unit.contains(Elem::rat(Rat(1))));
    CHECK_FALSE(unit.contains(Elem::rat(Rat(3, 2))));
    CHECK_FALSE(unit.contains(Elem::rat(Rat(-1, 64))));
    CHECK_FALSE(unit.contains(Elem::rat(Rat::inf())));

    Carrier sym = Carrier::rational(Domain::SymInterval);
    CHECK(sym.contains(Elem::rat(Rat(-1))));
    CHECK_FALSE(sym.contains(Elem::rat(Rat(-3, 2))));

    Carrier ray = Carrier::rational(Domain::RayOneInf);
    CHECK(ray.contains(Elem::rat(Rat(1))));
    CHECK(ray.contains(Elem::rat(Rat(5, 2))));
    CHECK(ray.contains(Elem::rat(Rat::inf())));
    CHECK_FALSE(ray.contains(Elem::rat(Rat(1, 2))));

    Carrier dyadic = Carrier::rational(Domain::DyadicUnit);
    CHECK(dyadic.contains(Elem::rat(Rat(3, 8))));
    CHECK(dyadic.contains(Elem::rat(Rat(6, 12)))); // reduces to 1/2
    CHECK_FALSE(dyadic.contains(Elem::rat(Rat(1, 3))));

    Carrier q = Carrier::rational(Domain::Q);
    CHECK(q.contains(Elem::rat(Rat(-1000, 7))));
    CHECK_FALSE(q.contains(Elem::rat(Rat::inf())));
    CHECK_FALSE(q.contains(Elem::pair(Rat(0), Rat(0))));
}

TEST_CASE("planar region membership is decided on squares") {
    Carrier plane = Carrier::rational(Domain::Q2);
    CHECK(plane.contains(Elem::pair(Rat(-5), Rat(7, 3))));
    CHECK_FALSE(plane.contains(Elem::rat(Rat(0))));

    Carrier region = Carrier::rational(Domain::PlanarRegion, {{"k", Rat(1)}});
    CHECK(region.contains(Elem::pair(Rat(1, 2), Rat(1, 2))));  // boundary
    CHECK(region.contains(Elem::pair(Rat(1, 2), Rat(-1, 2)))); // boundary, below
    CHECK_FALSE(region.contains(Elem::pair(Rat(1, 2), Rat(33, 64))));
    CHECK_FALSE(region.contains(Elem::pair(Rat(2), Rat(0))));
    CHECK(Carrier::in_region(Rat(1, 4), Rat(1, 8), Rat(2)));
    CHECK_FALSE(Carrier::in_region(Rat(1, 4), Rat(1, 4), Rat(2)));
    CHECK_THROWS_AS(Carrier::rational(Domain::PlanarRegion, {{"k", Rat(-1)}}),
                    parse_error);
}

TEST_CASE("table evaluation walks row-major coordinates") {
    Structure s = make_example("three-element");
    CHECK(eval_op(s, "p", {at(s, "0"), at(s, "1/2"), at(s, "1/2")}) == at(s, "1"));
    CHECK(eval_op(s, "p", {at(s, "1"), at(s, "1/2"), at(s, "0")}) == at(s, "1/2"));
    CHECK_THROWS_AS(eval_op(s, "p", {at(s, "0"), at(s, "1")}), eval_error);
    CHECK_THROWS_AS(eval_op(s, "p", {Elem::pos(7), at(s, "0"), at(s, "0")}),
                    eval_error);
    CHECK_THROWS_AS(s.op("nope"), parse_error);
    CHECK_THROWS_AS(s.constant("nope"), parse_error);
}

TEST_CASE("derived operations read off the mobi view") {
    Structure s = make_example("three-element");
    MobiView v(s);
    CHECK(v.inv(at(s, "0")) == at(s, "1"));
    CHECK(v.inv(at(s, "1/2")) == at(s, "1/2"));
    CHECK(v.dot(at(s, "1/2"), at(s, "1/2")) == at(s, "1"));
    CHECK(v.oplus(at(s, "0"), at(s, "1")) == at(s, "1/2"));
    CHECK(v.circ(at(s, "0"), at(s, "0")) == at(s, "0"));
}

TEST_CASE("formula results are checked against the carrier") {
    // The affine formula escapes [-1,1] once b is negative, which the interval
    // shape never exercises; pin the closure check with exactly that setup.
    Structure s;
    s.kind = Kind::Mobi;
    s.carrier = Carrier::rational(Domain::SymInterval);
    s.constants = {{"zero", Elem::rat(Rat(0))},
                   {"half", Elem::rat(Rat(1, 2))},
                   {"one", Elem::rat(Rat(1))}};
    s.ops["p"] = OpImpl::make_formula(3, "interval");
    validate_shape(s);
    CHECK(eval_op(s, "p", {Elem::rat(Rat(0)), Elem::rat(Rat(1, 2)),
                           Elem::rat(Rat(1))}) == Elem::rat(Rat(1, 2)));
    CHECK_THROWS_AS(eval_op(s, "p", {Elem::rat(Rat(-1)), Elem::rat(Rat(-1)),
                                     Elem::rat(Rat(1))}),
                    closure_error);
}

TEST_CASE("shape validation rejects malformed structures") {
    Structure s = make_example("three-element");
    s.ops["p"].table().entries.pop_back();
    CHECK_THROWS_AS(validate_shape(s), parse_error);

    Structure t = make_example("three-element");
    t.ops["p"].table().entries[0] = 9;
    CHECK_THROWS_AS(validate_shape(t), parse_error);

    Structure u = make_example("three-element");
    u.constants["half"] = Elem::pos(5);
    CHECK_THROWS_AS(validate_shape(u), parse_error);

    Structure f = make_example("interval");
    f.ops["p"] = OpImpl::make_table(3, {0});
    CHECK_THROWS_AS(validate_shape(f), parse_error);
}

TEST_CASE("documents serialize canonically and parse back") {
    for (const char* name : {"three-element", "imm1", "interval", "planar-K"}) {
        Structure s = make_example(name);
        json j = serialize_structure(s);
        ParsedDoc doc = parse_structure(j);
        CHECK(doc.structure == s);
        CHECK_FALSE(doc.sampling.has_value());
        CHECK(canonical_bytes(doc.structure) == canonical_bytes(s));
    }
}

TEST_CASE("documents may pin their own sampling plan") {
    json j = serialize_structure(make_example("interval"));
    j["sampling"] = {{"seed", 7}, {"count", 42}};
    ParsedDoc doc = parse_structure(j);
    REQUIRE(doc.sampling.has_value());
    CHECK(doc.sampling->seed == 7);
    CHECK(doc.sampling->count == 42);
    CHECK(doc.sampling->den_limit == 64);
}

TEST_CASE("document parsing rejects malformed input") {
    json good = serialize_structure(make_example("three-element"));

    json j = good;
    j["version"] = 2;
    CHECK_THROWS_AS(parse_structure(j), parse_error);

    j = good;
    j["kind"] = "group";
    CHECK_THROWS_AS(parse_structure(j), parse_error);

    j = good;
    j["carrier"]["finite"] = {"0", "0", "1"};
    CHECK_THROWS_AS(parse_structure(j), parse_error);

    j = good;
    j["ops"]["p"]["table"][0][0][0] = "7";
    CHECK_THROWS_AS(parse_structure(j), parse_error);

    j = good;
    j["ops"]["p"]["table"][0][0] = {"0", "0"};
    CHECK_THROWS_AS(parse_structure(j), parse_error);

    j = serialize_structure(make_example("interval"));
    j["ops"]["p"]["formula"] = "unknown-law";
    CHECK_THROWS_AS(parse_structure(j), parse_error);

    j = serialize_structure(make_example("interval"));
    j["ops"]["p"]["formula"] = "q-add"; // arity two cannot sit under p
    CHECK_THROWS_AS(parse_structure(j), parse_error);
}
