#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>

#include "ordmat/error.hpp"
#include "ordmat/ring.hpp"
#include "ordmat/rng.hpp"

using namespace ordmat;

namespace {

RingElem q1(const char* a) {
    return RingElem(std::vector<Rat>{rat_from_string(a)});
}
RingElem q2(const char* a, const char* b) {
    return RingElem(std::vector<Rat>{rat_from_string(a), rat_from_string(b)});
}

const RingDescriptor Q{1};
const RingDescriptor Q2{2};

} // namespace

TEST_CASE("componentwise arithmetic") {
    CHECK(q1("1/2") + q1("1/2") == q1("1"));
    CHECK(q2("2", "0") * q2("0", "3") == q2("0", "0"));
    CHECK(q2("1/3", "2") + q2("1/6", "-1") == q2("1/2", "1"));
    CHECK(q1("3") - q1("5") == q1("-2"));
    CHECK(-q2("1", "-2") == q2("-1", "2"));
    CHECK_THROWS_AS(q1("1") + q2("1", "1"), error);
}

TEST_CASE("inverses") {
    CHECK(inv(q1("2")) == q1("1/2"));
    CHECK(inv(q2("2/3", "-5")) == q2("3/2", "-1/5"));
    CHECK_THROWS_AS(inv(q2("1", "0")), error);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        RingElem a = rng.pos_unit(Q2, 9, 7);
        CHECK(inv(inv(a)) == a);
        CHECK((a * inv(a)).is_one());
    }
}

TEST_CASE("partial order") {
    CHECK(leq(q2("0", "1"), q2("1", "1")));
    CHECK_FALSE(leq(q2("1", "0"), q2("0", "1"))); // incomparable
    CHECK_FALSE(leq(q2("0", "1"), q2("1", "0")));
    CHECK(leq(RingElem::zero(Q), q1("1/7")));
    CHECK(is_nonneg(q2("0", "0")));
    CHECK_FALSE(is_nonneg(q2("1", "-1/9")));
}

TEST_CASE("idempotent enumeration") {
    auto e1 = idempotents(Q);
    REQUIRE(e1.size() == 2);
    CHECK(e1[0] == q1("0"));
    CHECK(e1[1] == q1("1"));

    auto e2 = idempotents(Q2);
    REQUIRE(e2.size() == 4);
    CHECK(e2[0] == q2("0", "0"));
    CHECK(e2[1] == q2("0", "1"));
    CHECK(e2[2] == q2("1", "0"));
    CHECK(e2[3] == q2("1", "1"));

    CHECK(idempotents(RingDescriptor{3}).size() == 8);
    CHECK_THROWS_AS(idempotents(RingDescriptor{9}), error);

    for (const auto& e : e2) CHECK(e * e == e);
    // atoms multiply to zero pairwise and sum to 1
    RingElem sum = RingElem::zero(Q2);
    for (int t = 0; t < 2; ++t) {
        RingElem a = RingElem::atom(Q2, t);
        for (int s = 0; s < 2; ++s)
            if (s != t) CHECK((a * RingElem::atom(Q2, s)).is_zero());
        sum = sum + a;
    }
    CHECK(sum.is_one());
}

TEST_CASE("enumeration bound override") {
    setenv("ORDMAT_MAX_K", "4", 1);
    CHECK_THROWS_AS(idempotents(RingDescriptor{5}), error);
    unsetenv("ORDMAT_MAX_K");
    CHECK(idempotents(RingDescriptor{5}).size() == 32);
}

TEST_CASE("ring automorphisms are the coordinate permutations") {
    auto a1 = ring_automorphisms(Q);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0].is_identity());

    auto a2 = ring_automorphisms(Q2);
    REQUIRE(a2.size() == 2);
    CHECK(a2[0].is_identity());
    CHECK(a2[1].apply(q2("1", "2")) == q2("2", "1"));
    CHECK(a2[1].inverse().apply(a2[1].apply(q2("5", "7"))) == q2("5", "7"));

    // structure preservation and injectivity on a sample set
    const RingDescriptor Q3{3};
    Rng rng(11);
    for (const auto& f : ring_automorphisms(Q3)) {
        std::set<std::vector<Rat>> inputs, outputs;
        for (int i = 0; i < 60; ++i) {
            RingElem a = rng.elem(Q3, 5, 4);
            RingElem b = rng.elem(Q3, 5, 4);
            CHECK(f.apply(a + b) == f.apply(a) + f.apply(b));
            CHECK(f.apply(a * b) == f.apply(a) * f.apply(b));
            if (is_nonneg(a)) CHECK(is_nonneg(f.apply(a)));
            inputs.insert(a.comps());
            outputs.insert(f.apply(a).comps());
        }
        CHECK(f.apply(RingElem::one(Q3)).is_one());
        CHECK(inputs.size() == outputs.size());
    }
}

TEST_CASE("order axiom sampling") {
    AxiomReport rep = check_order_axioms(Q2, 1000, 3);
    CHECK(rep.pass);
    CHECK(rep.samples == 1000);
    CHECK(rep.first_counterexample.empty());

    // explicit instances
    RingElem z = RingElem::zero(Q2);
    CHECK(((z + z).is_zero() && z.is_zero()));
    RingElem x = q2("1", "0");
    RingElem y = q2("0", "1");
    RingElem w = q2("1", "1");
    CHECK(leq(x, x + w));
    CHECK(leq(x + y, x + y + w));
}

TEST_CASE("zero-sum-freeness on nonnegative samples") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        RingElem a = rng.nonneg_elem(Q2, 5, 4);
        RingElem b = rng.nonneg_elem(Q2, 5, 4);
        CHECK(is_nonneg(a * b));
        if ((a + b).is_zero()) {
            CHECK(a.is_zero());
            CHECK(b.is_zero());
        }
    }
}

TEST_CASE("sampled powers of 1/2 are distinct units") {
    std::set<std::vector<Rat>> seen;
    RingElem half = RingElem::scalar(Q2, Rat(1, 2));
    RingElem p = RingElem::one(Q2);
    for (int i = 0; i < 24; ++i) {
        p = p * half;
        CHECK(is_pos_unit(p));
        CHECK(seen.insert(p.comps()).second);
    }
}
