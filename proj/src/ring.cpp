#include "ordmat/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "ordmat/error.hpp"
#include "ordmat/rng.hpp"

namespace ordmat {

int max_enumeration_k() {
    if (const char* s = std::getenv("ORDMAT_MAX_K")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return 8;
}

namespace {

void require_same_ring(const RingElem& a, const RingElem& b) {
    if (a.k() != b.k())
        throw error(errc::descriptor_mismatch, "ring elements of different width");
}

void require_valid_k(const RingDescriptor& ring) {
    if (ring.k < 1) throw error(errc::input, "ring width must be >= 1");
}

} // namespace

RingElem RingElem::zero(const RingDescriptor& ring) {
    require_valid_k(ring);
    return RingElem(std::vector<Rat>(static_cast<size_t>(ring.k), Rat(0)));
}

RingElem RingElem::one(const RingDescriptor& ring) {
    require_valid_k(ring);
    return RingElem(std::vector<Rat>(static_cast<size_t>(ring.k), Rat(1)));
}

RingElem RingElem::scalar(const RingDescriptor& ring, const Rat& v) {
    require_valid_k(ring);
    return RingElem(std::vector<Rat>(static_cast<size_t>(ring.k), v));
}

RingElem RingElem::atom(const RingDescriptor& ring, int t) {
    RingElem e = zero(ring);
    e.comp(t) = 1;
    return e;
}

bool RingElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool RingElem::is_one() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 1; });
}

RingElem operator+(const RingElem& a, const RingElem& b) {
    require_same_ring(a, b);
    std::vector<Rat> out(a.comps());
    for (int t = 0; t < a.k(); ++t) out[static_cast<size_t>(t)] += b.comp(t);
    return RingElem(std::move(out));
}

RingElem operator-(const RingElem& a, const RingElem& b) {
    require_same_ring(a, b);
    std::vector<Rat> out(a.comps());
    for (int t = 0; t < a.k(); ++t) out[static_cast<size_t>(t)] -= b.comp(t);
    return RingElem(std::move(out));
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    require_same_ring(a, b);
    std::vector<Rat> out(a.comps());
    for (int t = 0; t < a.k(); ++t) out[static_cast<size_t>(t)] *= b.comp(t);
    return RingElem(std::move(out));
}

RingElem operator-(const RingElem& a) {
    std::vector<Rat> out(a.comps());
    for (auto& r : out) r = -r;
    return RingElem(std::move(out));
}

RingElem inv(const RingElem& a) {
    std::vector<Rat> out(a.comps());
    for (int t = 0; t < a.k(); ++t) {
        if (out[static_cast<size_t>(t)] == 0)
            throw error(errc::not_invertible, "zero component at index " + std::to_string(t),
                        to_string(a));
        out[static_cast<size_t>(t)] = 1 / out[static_cast<size_t>(t)];
    }
    return RingElem(std::move(out));
}

bool leq(const RingElem& a, const RingElem& b) {
    require_same_ring(a, b);
    for (int t = 0; t < a.k(); ++t)
        if (b.comp(t) < a.comp(t)) return false;
    return true;
}

bool is_nonneg(const RingElem& a) {
    for (int t = 0; t < a.k(); ++t)
        if (a.comp(t) < 0) return false;
    return true;
}

bool is_unit(const RingElem& a) {
    for (int t = 0; t < a.k(); ++t)
        if (a.comp(t) == 0) return false;
    return true;
}

bool is_pos_unit(const RingElem& a) {
    for (int t = 0; t < a.k(); ++t)
        if (a.comp(t) <= 0) return false;
    return true;
}

bool is_idempotent(const RingElem& a) {
    return a * a == a;
}

std::string to_string(const RingElem& a) {
    std::ostringstream os;
    os << '(';
    for (int t = 0; t < a.k(); ++t) {
        if (t) os << ", ";
        os << rat_to_string(a.comp(t));
    }
    os << ')';
    return os.str();
}

std::vector<RingElem> idempotents(const RingDescriptor& ring) {
    require_valid_k(ring);
    if (ring.k > max_enumeration_k())
        throw error(errc::config_bound,
                    "idempotent enumeration bound exceeded: k = " + std::to_string(ring.k));
    std::vector<RingElem> out;
    const uint64_t total = 1ull << ring.k;
    out.reserve(total);
    for (uint64_t bits = 0; bits < total; ++bits) {
        RingElem e = RingElem::zero(ring);
        // first component is the most significant bit: lexicographic order
        for (int t = 0; t < ring.k; ++t)
            if (bits >> (ring.k - 1 - t) & 1) e.comp(t) = 1;
        out.push_back(std::move(e));
    }
    return out;
}

RingElem RingAutomorphism::apply(const RingElem& x) const {
    if (x.k() != k())
        throw error(errc::descriptor_mismatch, "ring automorphism width mismatch");
    std::vector<Rat> out(static_cast<size_t>(k()));
    for (int i = 0; i < k(); ++i) out[static_cast<size_t>(i)] = x.comp(perm[static_cast<size_t>(i)]);
    return RingElem(std::move(out));
}

RingAutomorphism RingAutomorphism::inverse() const {
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    return RingAutomorphism{std::move(inv)};
}

bool RingAutomorphism::is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i)) return false;
    return true;
}

RingAutomorphism identity_automorphism(const RingDescriptor& ring) {
    std::vector<int> p(static_cast<size_t>(ring.k));
    std::iota(p.begin(), p.end(), 0);
    return RingAutomorphism{std::move(p)};
}

std::vector<RingAutomorphism> ring_automorphisms(const RingDescriptor& ring) {
    require_valid_k(ring);
    if (ring.k > max_enumeration_k())
        throw error(errc::config_bound,
                    "automorphism enumeration bound exceeded: k = " + std::to_string(ring.k));
    std::vector<int> p(static_cast<size_t>(ring.k));
    std::iota(p.begin(), p.end(), 0);
    std::vector<RingAutomorphism> out;
    do {
        out.push_back(RingAutomorphism{p});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

AxiomReport check_order_axioms(const RingDescriptor& ring, long samples, uint64_t seed) {
    require_valid_k(ring);
    AxiomReport rep;
    rep.samples = samples;
    Rng rng(seed);

    auto fail = [&](const std::string& what, const RingElem& a, const RingElem& b,
                    const RingElem& c) {
        if (rep.pass) {
            rep.pass = false;
            rep.first_counterexample =
                what + ": x=" + to_string(a) + " y=" + to_string(b) + " z=" + to_string(c);
        }
    };

    const RingElem zero = RingElem::zero(ring);
    for (long s = 0; s < samples; ++s) {
        // translation invariance: x <= x+d  =>  x+z <= x+d+z for d >= 0
        RingElem x = rng.elem(ring, 6, 4);
        RingElem d = rng.nonneg_elem(ring, 6, 4);
        RingElem z = rng.elem(ring, 6, 4);
        RingElem y = x + d;
        ++rep.checks;
        if (!leq(x, y) || !leq(x + z, y + z)) fail("translation", x, y, z);

        // products of nonnegatives are nonnegative
        RingElem a = rng.nonneg_elem(ring, 6, 4);
        RingElem b = rng.nonneg_elem(ring, 6, 4);
        ++rep.checks;
        if (!is_nonneg(a * b)) fail("product_nonneg", a, b, zero);

        // zero-sum-freeness of R+ (sampled with a zero-heavy generator)
        ++rep.checks;
        if ((a + b).is_zero() && !(a.is_zero() && b.is_zero())) fail("zero_sum_free", a, b, zero);

        // 1/m >= 0 for sampled m
        long m = rng.range(1, 64);
        ++rep.checks;
        if (!is_nonneg(RingElem::scalar(ring, Rat(1, m)))) {
            fail("unit_fraction_nonneg", RingElem::scalar(ring, Rat(1, m)), zero, zero);
        }
    }
    return rep;
}

} // namespace ordmat
