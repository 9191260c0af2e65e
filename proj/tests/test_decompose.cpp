#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordmat/decompose.hpp"
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

HomothetySpec absdet(const RingDescriptor& ring) {
    HomothetySpec h = HomothetySpec::trivial(ring);
    for (auto& e : h.exps) e = 1;
    return h;
}

bool central_ratio(const Mat& a, const Mat& b) {
    Mat r = a * mat_inv(b);
    if (!r.is_diagonal()) return false;
    for (int i = 1; i < r.n(); ++i)
        if (!(r.at(i, i) == r.at(0, 0))) return false;
    return is_pos_unit(r.at(0, 0));
}

} // namespace

TEST_CASE("stage one on the identity") {
    for (int n : {3, 4, 5}) {
        Automorphism ident = make_automorphism({Q, n, {}});
        StageOneResult r = normalize_permutation_images(Oracle(ident));
        CHECK(r.conjugator.is_identity());
        CHECK(r.alpha.is_one());
    }
}

TEST_CASE("stage one undoes an inner twist up to center") {
    for (auto [ring, n] : {std::pair<RingDescriptor, int>{Q, 5}, {Q, 3}, {Q, 4}, {Q2, 3},
                           {Q2, 4}, {Q2, 7}}) {
        Rng rng(83 + n);
        Mat p = gen_gamma_element(ring, n, rng);
        Automorphism phi = make_automorphism({ring, n, {InnerFactor{p}}});
        StageOneResult r = normalize_permutation_images(Oracle(phi));
        CHECK(central_ratio(r.conjugator * p, Mat::identity(ring, n)));
        CHECK(r.alpha.is_one());
        // all adjacent transposition images are normalized exactly
        Mat minv = mat_inv(r.conjugator);
        for (int q = 0; q + 1 < n; ++q) {
            Mat sq = perm_matrix(ring, PermSpec::transposition(n, q, q + 1));
            CHECK(r.conjugator * (p * sq * mat_inv(p)) * minv == sq);
        }
    }
}

TEST_CASE("stage one handles a component-mixed inner twist at n = 3") {
    // e * S_(1,2,3) + (1-e) * I with e = (1,0): a 3-cycle in one component,
    // the identity in the other
    RingElem e = RingElem::atom(Q2, 0);
    RingElem f = RingElem::atom(Q2, 1);
    Mat p(Q2, 3);
    PermSpec three_cycle = PermSpec::from_cycles(3, {{0, 1, 2}});
    Mat s = perm_matrix(Q2, three_cycle);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            p.at(i, j) = e * s.at(i, j) + f * Mat::identity(Q2, 3).at(i, j);
    REQUIRE(is_member(p, MemberClass::gamma_n));

    Automorphism phi = make_automorphism({Q2, 3, {InnerFactor{p}}});
    StageOneResult r = normalize_permutation_images(Oracle(phi));
    Mat minv = mat_inv(r.conjugator);
    for (int q = 0; q < 2; ++q) {
        Mat sq = perm_matrix(Q2, PermSpec::transposition(3, q, q + 1));
        CHECK(r.conjugator * (p * sq * mat_inv(p)) * minv == sq);
    }
}

TEST_CASE("stage one rejects a non-unit conjugation with a witness") {
    Mat b = Mat::transvection(Q, 4, 0, 1, sc(Q, "1"));
    Mat binv = mat_inv(b);
    Oracle broken([b, binv](const Mat& x) { return b * x * binv; }, Q, 4);
    CHECK_THROWS_WITH_AS(normalize_permutation_images(broken),
                         doctest::Contains("not in Gamma_n"), error);
}

TEST_CASE("ring automorphism extraction") {
    ProbeSuite probes = default_probes(Q2, 3, 5);

    Automorphism ident = make_automorphism({Q2, 3, {}});
    CHECK(extract_ring_automorphism(Oracle(ident), probes.units).is_identity());

    Automorphism sw = make_automorphism({Q2, 3, {RingMapFactor{RingAutomorphism{{1, 0}}}}});
    CHECK(extract_ring_automorphism(Oracle(sw), probes.units) == RingAutomorphism{{1, 0}});

    ProbeSuite probes_q = default_probes(Q, 3, 5);
    Automorphism ident_q = make_automorphism({Q, 3, {}});
    CHECK(extract_ring_automorphism(Oracle(ident_q), probes_q.units).is_identity());

    // calling stage 2 before stage 1 on a permutation twist is a stage-order error
    Mat p = perm_matrix(Q, PermSpec::from_cycles(3, {{0, 1, 2}}));
    Automorphism twisted = make_automorphism({Q, 3, {InnerFactor{p}}});
    CHECK_THROWS_AS(extract_ring_automorphism(Oracle(twisted), probes_q.units), error);
}

TEST_CASE("central data extraction") {
    ProbeSuite probes = default_probes(Q, 3, 5);

    Automorphism ident = make_automorphism({Q, 3, {}});
    CentralData cd = extract_central_data(Oracle(ident), probes.units);
    CHECK(cd.mu_sign.is_one());
    REQUIRE(cd.homothety.has_value());
    CHECK(cd.homothety->is_trivial());
    for (const auto& [u, g] : cd.gamma_table) CHECK(g.is_one());

    Automorphism omega = make_automorphism({Q, 3, {HomothetyFactor{absdet(Q)}}});
    cd = extract_central_data(Oracle(omega), probes.units);
    REQUIRE(cd.homothety.has_value());
    CHECK(cd.homothety->exps == std::vector<long>{1});
    for (const auto& [u, g] : cd.gamma_table) CHECK(g == u); // gamma(u) = u for |det|
}

TEST_CASE("decompose the identity") {
    Automorphism ident = make_automorphism({Q, 3, {}});
    Decomposition d = decompose(Oracle(ident), default_probes(Q, 3, 7));
    CHECK(d.m.is_identity());
    CHECK(d.c.is_identity());
    CHECK(d.alpha.is_one());
    REQUIRE(d.central.homothety.has_value());
    CHECK(d.central.homothety->is_trivial());
    CHECK(d.lambda_table.size() >= 60);
}

TEST_CASE("round trip recovers the injected standard form") {
    Rng rng(97);
    Mat m0 = gen_gamma_element(Q2, 4, rng);
    HomothetySpec h = HomothetySpec::trivial(Q2);
    h.exps = {1, 0};
    Automorphism phi = make_automorphism(
        {Q2, 4,
         {InnerFactor{m0}, RingMapFactor{RingAutomorphism{{1, 0}}}, HomothetyFactor{h}}});
    ProbeSuite probes = default_probes(Q2, 4, 11);
    Decomposition d = decompose(Oracle(phi), probes);

    CHECK(d.c == RingAutomorphism{{1, 0}});
    CHECK(central_ratio(d.m, m0));
    REQUIRE(d.central.homothety.has_value());
    CHECK(d.central.homothety->exps == std::vector<long>{1, 0});

    VerifyReport rep = verify_decomposition(Oracle(phi), d, probes.words);
    CHECK(rep.pass);
    CHECK(rep.words >= 60);
}

TEST_CASE("homothety-only oracle over the rationals") {
    Automorphism phi = make_automorphism({Q, 3, {HomothetyFactor{absdet(Q)}}});
    ProbeSuite probes = default_probes(Q, 3, 13);
    Decomposition d = decompose(Oracle(phi), probes);
    CHECK(d.m.is_identity());
    CHECK(d.c.is_identity());
    // lambda on each probe word equals |det| computed independently
    for (const auto& [w, lam] : d.lambda_table) {
        RingElem dd = det(eval_word(w));
        CHECK(lam == RingElem(std::vector<Rat>{rat_abs(dd.comp(0))}));
    }
}

TEST_CASE("scrambled factor order still verifies") {
    Rng rng(101);
    HomothetySpec h = HomothetySpec::trivial(Q2);
    h.exps = {-1, 2};
    Automorphism phi = make_automorphism(
        {Q2, 3,
         {RingMapFactor{RingAutomorphism{{1, 0}}}, HomothetyFactor{h},
          InnerFactor{gen_gamma_element(Q2, 3, rng)}}});
    ProbeSuite probes = default_probes(Q2, 3, 17);
    Decomposition d = decompose(Oracle(phi), probes);
    CHECK(verify_decomposition(Oracle(phi), d, probes.words).pass);
    CHECK(d.c == RingAutomorphism{{1, 0}});

    // the recovered homothety acts as an endomorphism on probe pairs
    REQUIRE(d.central.homothety.has_value());
    Automorphism omega = make_automorphism({Q2, 3, {HomothetyFactor{*d.central.homothety}}});
    for (int i = 0; i < 20; ++i) {
        Mat x = eval_word(gen_word(Q2, 3, 4, rng));
        Mat y = eval_word(gen_word(Q2, 3, 4, rng));
        CHECK(omega.apply(x * y) == omega.apply(x) * omega.apply(y));
    }
}

namespace {

// multiplicative on positive rationals but not a power of |det|: swaps the
// exponents of 2 and 3 in the prime factorization
Rat prime_swap(const Rat& q) {
    mpz_class num = q.get_num(), den = q.get_den();
    long a = 0, b = 0;
    while (num % 2 == 0) { num /= 2; ++a; }
    while (num % 3 == 0) { num /= 3; ++b; }
    while (den % 2 == 0) { den /= 2; --a; }
    while (den % 3 == 0) { den /= 3; --b; }
    Rat rest(num, den);
    rest.canonicalize();
    return rest * rat_pow(Rat(2), b) * rat_pow(Rat(3), a);
}

} // namespace

TEST_CASE("non-power central homomorphisms fall back to the lambda table") {
    // Omega(X) = f(|det X|) X with f multiplicative but not |det|^t
    Oracle omega(
        [](const Mat& x) {
            RingElem lam(std::vector<Rat>{prime_swap(rat_abs(det(x).comp(0)))});
            return scale(lam, x);
        },
        Q, 3);
    ProbeSuite probes = default_probes(Q, 3, 41);
    Decomposition d = decompose(omega, probes);
    CHECK_FALSE(d.central.homothety.has_value());
    CHECK_FALSE(d.central.notes.empty()); // carries the table-only warning
    CHECK(d.m.is_identity());
    CHECK(d.c.is_identity());
    // gamma really is the prime swap, e.g. gamma(2) = 3
    for (const auto& [u, g] : d.central.gamma_table)
        CHECK(g.comp(0) == prime_swap(u.comp(0)));

    // verification works on table-covered words and reports uncovered ones
    VerifyReport rep = verify_decomposition(omega, d, probes.words);
    CHECK(rep.pass);
    GenWord alien{Q, 3, {DiagLetter{{sc(Q, "7"), sc(Q, "1"), sc(Q, "1")}}}};
    VerifyReport missing = verify_decomposition(omega, d, {alien});
    CHECK_FALSE(missing.pass);
    CHECK(missing.failures.size() == 1);
}

TEST_CASE("stage three on an unnormalized oracle is a stage-order error") {
    Automorphism twisted = make_automorphism(
        {Q, 3, {InnerFactor{Mat::diagonal(Q, {sc(Q, "2"), sc(Q, "1"), sc(Q, "1")})}}});
    ProbeSuite probes = default_probes(Q, 3, 43);
    CHECK_THROWS_AS(extract_central_data(Oracle(twisted), probes.units), error);
}

TEST_CASE("dimension below three is rejected") {
    Automorphism ident = make_automorphism({Q, 2, {}});
    CHECK_THROWS_AS(normalize_permutation_images(Oracle(ident)), error);
}

TEST_CASE("verification flags a perturbed conjugator") {
    Automorphism ident = make_automorphism({Q, 3, {}});
    ProbeSuite probes = default_probes(Q, 3, 19);
    Decomposition d = decompose(Oracle(ident), probes);
    d.m = d.m * Mat::diagonal(Q, {sc(Q, "2"), sc(Q, "1"), sc(Q, "1")});
    VerifyReport rep = verify_decomposition(Oracle(ident), d, probes.words);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.failures.empty());

    VerifyReport empty = verify_decomposition(Oracle(ident), d, {});
    CHECK(empty.pass);
    CHECK(empty.vacuous);
}

TEST_CASE("diagonal images keep the one-distinct-entry shape") {
    // after stage 1, diag[a,b,...,b] maps to diag[g,d,...,d] and distinct a
    // produce distinct ratios
    Rng rng(103);
    Mat m0 = gen_gamma_element(Q, 4, rng);
    Automorphism phi = make_automorphism({Q, 4, {InnerFactor{m0}, HomothetyFactor{absdet(Q)}}});
    Oracle oracle(phi);
    StageOneResult s1 = normalize_permutation_images(oracle);
    Oracle phi_prime = conjugated(oracle, s1.conjugator);

    std::vector<RingElem> ratios;
    for (const char* a : {"2", "3", "5", "1/2"}) {
        std::vector<RingElem> dd(4, RingElem::one(Q));
        dd[0] = sc(Q, a);
        Mat img = phi_prime(Mat::diagonal(Q, dd));
        REQUIRE(img.is_diagonal());
        for (int i = 2; i < 4; ++i) CHECK(img.at(i, i) == img.at(1, 1));
        ratios.push_back(img.at(0, 0) * inv(img.at(1, 1)));
    }
    for (size_t i = 0; i < ratios.size(); ++i)
        for (size_t j = i + 1; j < ratios.size(); ++j) CHECK_FALSE(ratios[i] == ratios[j]);
}

TEST_CASE("round trip over a product ring beyond dimension four") {
    // exercises the per-component fast path and the twin-cell recursion
    // cross-check with component-swapping composites
    for (int n : {5, 7}) {
        Rng rng(200 + n);
        Mat m0 = gen_gamma_element(Q2, n, rng);
        HomothetySpec h = HomothetySpec::trivial(Q2);
        h.exps = {2, -1};
        Automorphism phi = make_automorphism(
            {Q2, n,
             {InnerFactor{m0}, RingMapFactor{RingAutomorphism{{1, 0}}}, HomothetyFactor{h}}});
        ProbeSuite probes = default_probes(Q2, n, 300 + n);
        Decomposition d = decompose(Oracle(phi), probes);
        CHECK(d.c == RingAutomorphism{{1, 0}});
        CHECK(central_ratio(d.m, m0));
        CHECK(verify_decomposition(Oracle(phi), d, probes.words).pass);
    }
}

TEST_CASE("two decompositions differ by a central factor") {
    Rng rng(107);
    Mat m0 = gen_gamma_element(Q, 5, rng);
    Automorphism phi = make_automorphism({Q, 5, {InnerFactor{m0}}});
    Decomposition d1 = decompose(Oracle(phi), default_probes(Q, 5, 23));
    Decomposition d2 = decompose(Oracle(phi), default_probes(Q, 5, 29));
    CHECK(central_ratio(d1.m, d2.m));
}
