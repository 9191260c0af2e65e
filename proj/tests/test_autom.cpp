#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordmat/autom.hpp"
#include "ordmat/error.hpp"
#include "ordmat/gen.hpp"
#include "ordmat/rng.hpp"

using namespace ordmat;

namespace {

const RingDescriptor Q{1};
const RingDescriptor Q2{2};

RingElem sc(const RingDescriptor& ring, const char* v) {
    return RingElem::scalar(ring, rat_from_string(v));
}
RingElem e2(const char* a, const char* b) {
    return RingElem(std::vector<Rat>{rat_from_string(a), rat_from_string(b)});
}

HomothetySpec absdet(const RingDescriptor& ring) {
    HomothetySpec h = HomothetySpec::trivial(ring);
    for (auto& e : h.exps) e = 1;
    return h;
}

std::vector<GenWord> sample_words(const RingDescriptor& ring, int n, int count, uint64_t seed) {
    Rng rng(seed);
    std::vector<GenWord> out;
    for (int i = 0; i < count; ++i) out.push_back(gen_word(ring, n, 5, rng));
    return out;
}

} // namespace

TEST_CASE("primitive automorphisms") {
    Automorphism ident = make_automorphism({Q, 3, {}});
    Mat b1 = Mat::transvection(Q, 3, 0, 1, sc(Q, "1"));
    CHECK(ident.apply(b1) == b1);

    Automorphism inner = make_automorphism(
        {Q, 3, {InnerFactor{Mat::diagonal(Q, {sc(Q, "2"), sc(Q, "1"), sc(Q, "1")})}}});
    CHECK(inner.apply(b1) == Mat::transvection(Q, 3, 0, 1, sc(Q, "2")));

    Automorphism swap2 = make_automorphism({Q2, 2, {RingMapFactor{RingAutomorphism{{1, 0}}}}});
    Mat d = Mat::diagonal(Q2, {e2("1", "2"), e2("1", "1")});
    CHECK(swap2.apply(d) == Mat::diagonal(Q2, {e2("2", "1"), e2("1", "1")}));

    Automorphism omega = make_automorphism({Q, 3, {HomothetyFactor{absdet(Q)}}});
    CHECK(omega.apply(Mat::diagonal(Q, {sc(Q, "2"), sc(Q, "1"), sc(Q, "1")})) ==
          Mat::diagonal(Q, {sc(Q, "4"), sc(Q, "2"), sc(Q, "2")}));
    Mat s12 = perm_matrix(Q, PermSpec::transposition(3, 0, 1));
    CHECK(omega.apply(s12) == s12); // |det| = 1
}

TEST_CASE("construction and domain errors") {
    CHECK_THROWS_AS(
        make_automorphism({Q, 3, {InnerFactor{Mat::transvection(Q, 3, 0, 1, sc(Q, "1"))}}}),
        error);
    CHECK_THROWS_AS(make_automorphism({Q2, 2, {RingMapFactor{RingAutomorphism{{0, 0}}}}}), error);
    CHECK_THROWS_AS(make_automorphism({Q2, 2, {HomothetyFactor{absdet(Q)}}}), error);

    Automorphism ident = make_automorphism({Q, 2, {}});
    Mat neg(Q, 2);
    neg.at(0, 0) = sc(Q, "1");
    neg.at(1, 1) = sc(Q, "1");
    neg.at(0, 1) = sc(Q, "-1");
    CHECK_THROWS_AS(ident.apply(neg), error);
    CHECK_THROWS_AS(ident.apply(Mat(Q, 2)), error); // singular
}

TEST_CASE("central homothety is an endomorphism") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        GenWord wx = gen_word(Q2, 3, 5, rng);
        GenWord wy = gen_word(Q2, 3, 5, rng);
        Mat x = eval_word(wx), y = eval_word(wy);
        Automorphism omega = make_automorphism({Q2, 3, {HomothetyFactor{absdet(Q2)}}});
        CHECK(omega.apply(x * y) == omega.apply(x) * omega.apply(y));
    }
}

TEST_CASE("inner composition law") {
    Rng rng(43);
    for (int i = 0; i < 20; ++i) {
        Mat m = gen_gamma_element(Q, 4, rng);
        Mat n = gen_gamma_element(Q, 4, rng);
        Automorphism left = make_automorphism({Q, 4, {InnerFactor{m}, InnerFactor{n}}});
        Automorphism right = make_automorphism({Q, 4, {InnerFactor{m * n}}});
        Mat x = eval_word(gen_word(Q, 4, 4, rng));
        CHECK(left.apply(x) == right.apply(x));
    }
}

TEST_CASE("ring maps fix permutation matrices and preserve nonnegativity") {
    Automorphism swap3 = make_automorphism({Q2, 3, {RingMapFactor{RingAutomorphism{{1, 0}}}}});
    Rng rng(47);
    for (int i = 0; i < 30; ++i) {
        PermSpec p = PermSpec::from_images(rng.permutation(3));
        CHECK(swap3.apply(perm_matrix(Q2, p)) == perm_matrix(Q2, p));
        Mat x = eval_word(gen_word(Q2, 3, 4, rng));
        CHECK(entrywise_nonneg(swap3.apply(x)));
    }
}

TEST_CASE("oracle composition helpers") {
    Rng rng(53);
    Mat m = gen_gamma_element(Q, 3, rng);
    Automorphism ident = make_automorphism({Q, 3, {}});
    Oracle base(ident);
    Oracle conj = conjugated(base, m);
    Mat x = eval_word(gen_word(Q, 3, 4, rng));
    CHECK(conj(x) == m * x * mat_inv(m));
    Oracle mapped = ring_mapped(Oracle(make_automorphism({Q2, 2, {}})), RingAutomorphism{{1, 0}});
    Mat d = Mat::diagonal(Q2, {e2("1", "3"), e2("2", "2")});
    CHECK(mapped(d) == Mat::diagonal(Q2, {e2("3", "1"), e2("2", "2")}));
}

TEST_CASE("sample check accepts the shipped kinds") {
    auto words5 = sample_words(Q, 5, 50, 61);
    Rng rng(59);
    Automorphism inner = make_automorphism({Q, 5, {InnerFactor{gen_gamma_element(Q, 5, rng)}}});
    CheckReport rep = sample_check_automorphism(Oracle(inner), words5, 3);
    CHECK(rep.pass);

    Automorphism ident = make_automorphism({Q, 5, {}});
    CHECK(sample_check_automorphism(Oracle(ident), words5, 3).pass);

    Automorphism composite = make_automorphism(
        {Q2, 3,
         {InnerFactor{gen_gamma_element(Q2, 3, rng)}, RingMapFactor{RingAutomorphism{{1, 0}}},
          HomothetyFactor{absdet(Q2)}}});
    CHECK(sample_check_automorphism(Oracle(composite), sample_words(Q2, 3, 50, 67), 3).pass);

    // seeded generator output passes the same checks
    Rng gen_rng(1);
    Automorphism generated = make_automorphism(gen_automorphism_spec(Q2, 3, gen_rng));
    CHECK(sample_check_automorphism(Oracle(generated), sample_words(Q2, 3, 50, 73), 3).pass);
}

TEST_CASE("sample check rejects conjugation by a non-unit of the semigroup") {
    // B_12(1) is in G_n but not Gamma_n; conjugation by it leaves G_n
    Mat b = Mat::transvection(Q, 3, 0, 1, sc(Q, "1"));
    Mat binv = mat_inv(b);
    Oracle broken([b, binv](const Mat& x) { return b * x * binv; }, Q, 3);
    CheckReport rep = sample_check_automorphism(broken, sample_words(Q, 3, 50, 71), 3);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.failures.empty()); // carries a witness
}
