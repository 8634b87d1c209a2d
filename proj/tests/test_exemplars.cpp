#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mobi;
using namespace support;

TEST_CASE("the catalogue constructs every entry or explains why not") {
    CHECK(example_names().size() == 19);
    for (const std::string& name : example_names()) {
        if (name == "semiring-note" || name == "finite-general") {
            CHECK_THROWS_AS(make_example(name), precondition_error);
        } else {
            Structure s = make_example(name);
            CHECK((s.ops.count("p") || s.ops.count("oplus")));
        }
    }
    CHECK(example_stub("finite-general").has_value());
    CHECK_FALSE(example_stub("interval").has_value());
    CHECK_THROWS_AS(make_example("no-such-example"), parse_error);
}

TEST_CASE("parameters default sensibly and reject junk") {
    CHECK(make_example("interval-alpha").constant("half") == Elem::rat(Rat(1, 4)));
    CHECK(make_example("mod-odd").carrier.size() == 5);
    CHECK(make_example("mod-odd", {{"n", Rat(3)}}).carrier.size() == 7);
    CHECK(make_example("planar-K").carrier.domain() == Domain::PlanarRegion);
    CHECK(make_example("planar-K", {{"plane", Rat(1)}}).carrier.domain() == Domain::Q2);
    CHECK(make_example("planar-K", {{"k", Rat(-1)}}).carrier.domain() == Domain::Q2);
    CHECK(make_example("ring-generic") == ring_to_mobi(ring_zn(5)));

    CHECK_THROWS_AS(make_example("interval", {{"alpha", Rat(2)}}), parse_error);
    CHECK_THROWS_AS(make_example("interval-alpha", {{"alpha", Rat(1)}}),
                    parse_error);
    CHECK_THROWS_AS(make_example("mod-odd", {{"n", Rat(1, 2)}}), parse_error);
    CHECK_THROWS_AS(make_example("planar-K", {{"plane", Rat(2)}}), parse_error);
}

TEST_CASE("the alpha family collapses to the fixed examples at 2 and 3") {
    Structure interval = make_example("interval");
    Structure third = make_example("interval-third");
    Structure a2 = make_example("interval-alpha", {{"alpha", Rat(2)}});
    Structure a3 = make_example("interval-alpha", {{"alpha", Rat(3)}});
    CHECK(a2.constant("half") == interval.constant("half"));
    CHECK(a3.constant("half") == third.constant("half"));

    MobiView vi(interval), vt(third), v2(a2), v3(a3);
    Sampler gen(interval.carrier, SampleSpec{});
    for (int t = 0; t < 200; ++t) {
        Elem a = gen.next(), b = gen.next(), c = gen.next();
        CHECK(v2.p(a, b, c) == vi.p(a, b, c));
        CHECK(v3.p(a, b, c) == vt.p(a, b, c));
    }

    SampleSpec spec;
    spec.count = 200;
    Homography id{Rat(1), Rat(0), Rat(0), Rat(1)};
    CHECK(certify_isomorphism(a2, interval, id, spec).passed());
    CHECK(certify_isomorphism(a3, third, id, spec).passed());
}

TEST_CASE("plane points multiply like their matrix images") {
    Rat K(2);
    Structure planar = make_example("planar-K");
    MobiView v(planar);
    Sampler gen(planar.carrier, SampleSpec{});
    for (int t = 0; t < 50; ++t) {
        Elem s = gen.next(), u = gen.next();
        Elem prod = v.dot(s, u);
        auto left = mat2_mul(planar_matrix_embedding(K, s.pair()),
                             planar_matrix_embedding(K, u.pair()));
        CHECK(left == planar_matrix_embedding(K, prod.pair()));
    }

    // Any factorization of K works; an inconsistent one is refused.
    Pair pt{Rat(1, 2), Rat(1, 4)};
    auto e = planar_matrix_embedding(K, pt, Rat(1), Rat(2));
    CHECK(e == std::array<Rat, 4>{Rat(1, 2), Rat(1, 4), Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(planar_matrix_embedding(K, pt, Rat(3)), precondition_error);

    // K = 1 embeds symmetrically.
    CHECK(planar_matrix_embedding(Rat(1), pt) ==
          std::array<Rat, 4>{Rat(1, 2), Rat(1, 4), Rat(1, 4), Rat(1, 2)});
}

TEST_CASE("the whole plane at k = -1 multiplies complex-style") {
    Structure c = make_example("planar-K", {{"k", Rat(-1)}, {"plane", Rat(1)}});
    MobiView v(c);
    Elem i = Elem::pair(Rat(0), Rat(1));
    CHECK(v.dot(i, i) == Elem::pair(Rat(-1), Rat(0)));

    SampleSpec spec;
    spec.count = 200;
    CHECK(check_mobi(c, true, spec).passed());
}

TEST_CASE("the region fixtures verify under their default profiles") {
    SampleSpec spec;
    spec.count = 300;
    CHECK(check_mobi(make_example("planar"), true, spec).passed());
    CHECK(check_mobi(make_example("planar-K"), true, spec).passed());
    CHECK(check_mobi(make_example("dyadic"), true, spec).passed());
    CHECK(check_mobi(make_example("field-line"), true, spec).passed());
}

TEST_CASE("the line mobi is the rational ring in disguise") {
    Structure line = make_example("field-line");
    Structure from_ring = ring_to_mobi(ring_q());
    MobiView v1(line), v2(from_ring);
    CHECK(from_ring.constant("half") == Elem::rat(Rat(1, 2)));
    Sampler gen(line.carrier, SampleSpec{});
    for (int t = 0; t < 200; ++t) {
        Elem a = gen.next(), b = gen.next(), c = gen.next();
        CHECK(v1.p(a, b, c) == v2.p(a, b, c));
    }
}

TEST_CASE("subset closure rebuilds the odd modular model") {
    Structure sub = make_example("subset-closure");
    CHECK(sub.carrier.labels() ==
          std::vector<std::string>{"0", "3", "1", "4", "2"});
    CHECK(sub.constant("zero") == at(sub, "0"));
    CHECK(sub.constant("half") == at(sub, "3"));
    CHECK(sub.constant("one") == at(sub, "1"));
    CHECK(check_mobi(sub).passed());
    CHECK(find_isomorphism(sub, make_example("mod-odd")).has_value());
}

TEST_CASE("closure preconditions are spelled out") {
    Structure z5 = ring_zn(5);
    RingView r(z5);
    CHECK_THROWS_AS(
        closure_generate({z5, {r.zero(), r.one()}}), // half missing
        precondition_error);
    CHECK_THROWS_AS(closure_generate({z5, {Elem::rat(Rat(1)), r.zero(), r.one()}}),
                    precondition_error);
    CHECK_THROWS_AS(make_example("subset-closure", {{"mod", Rat(4)}}),
                    no_inverse_error);
}

TEST_CASE("a closure that cannot stabilize reports itself capped") {
    ClosureTask task{ring_q(),
                     {Elem::rat(Rat(0)), Elem::rat(Rat(1, 2)), Elem::rat(Rat(1))}};
    task.element_cap = 60;
    ClosureResult res = closure_generate(task);
    CHECK_FALSE(res.complete);
    CHECK_FALSE(res.sub_mobi.has_value());
    CHECK(res.elements.size() == 61);
    Carrier dyadic = Carrier::rational(Domain::DyadicUnit);
    for (const Elem& e : res.elements) CHECK(dyadic.contains(e));
}

TEST_CASE("matrix entries place the units where the encoding says") {
    Structure m = ring_mat2_zq(3);
    REQUIRE(m.carrier.size() == 81);
    CHECK(m.carrier.labels()[27] == "1000");
    CHECK(m.carrier.labels()[28] == "1001");
    CHECK(m.constant("one") == Elem::pos(28));
    CHECK(m.constant("zero") == Elem::pos(0));
    RingView r(m);
    CHECK(r.mul(Elem::pos(9), Elem::pos(3)) == Elem::pos(27));  // E12 E21 = E11
    CHECK(r.mul(Elem::pos(3), Elem::pos(9)) == Elem::pos(1));   // E21 E12 = E22
    CHECK(check_ring(m).passed());
}

TEST_CASE("the matrix model breaks mediality with a concrete witness") {
    Structure mm = ring_to_mobi(ring_mat2_zq(3));
    CHECK_FALSE(dot_commutes(mm));
    Report rep = check_full_medial(mm);
    CHECK_FALSE(rep.passed());
    const LawResult& law = rep.results.at(0);
    CHECK(law.status == Status::Fail);
    CHECK(law.witness.is_array());
    CHECK(law.witness.size() == 6);
    CHECK(law.checked < 50'000); // the sweep fails early, far from the cap
}
