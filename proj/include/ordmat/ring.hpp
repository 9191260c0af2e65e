#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordmat/rat.hpp"

namespace ordmat {

// R = Q^k with the componentwise partial order. k >= 1; k = 1 is a linearly
// ordered field, k >= 2 has nontrivial idempotents and an incomparable order.
struct RingDescriptor {
    int k = 1;

    bool operator==(const RingDescriptor&) const = default;
};

// Bound for the 2^k idempotent / k! automorphism enumerations; default 8,
// overridable through ORDMAT_MAX_K.
int max_enumeration_k();

class RingElem {
public:
    RingElem() = default;
    explicit RingElem(std::vector<Rat> comps) : c_(std::move(comps)) {}

    static RingElem zero(const RingDescriptor& ring);
    static RingElem one(const RingDescriptor& ring);
    static RingElem scalar(const RingDescriptor& ring, const Rat& v);
    // Atom idempotent: 1 in component t, 0 elsewhere.
    static RingElem atom(const RingDescriptor& ring, int t);

    int k() const { return static_cast<int>(c_.size()); }
    const Rat& comp(int t) const { return c_[static_cast<size_t>(t)]; }
    Rat& comp(int t) { return c_[static_cast<size_t>(t)]; }
    const std::vector<Rat>& comps() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    bool operator==(const RingElem&) const = default;

private:
    std::vector<Rat> c_;
};

RingElem operator+(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a, const RingElem& b);
RingElem operator*(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a);

// Multiplicative inverse; throws errc::not_invertible on any zero component.
RingElem inv(const RingElem& a);

// Componentwise partial order: a <= b iff every component of b - a is >= 0.
// Incomparability is a legitimate outcome, not an error.
bool leq(const RingElem& a, const RingElem& b);
bool is_nonneg(const RingElem& a);
bool is_unit(const RingElem& a);
// Membership in R+* = R+ n R*.
bool is_pos_unit(const RingElem& a);
bool is_idempotent(const RingElem& a);

std::string to_string(const RingElem& a);

// All 2^k idempotents (the 0/1 vectors), sorted lexicographically with the
// first component most significant. Throws errc::config_bound past the bound.
std::vector<RingElem> idempotents(const RingDescriptor& ring);

// Order-preserving ring automorphism of Q^k: a permutation of the rational
// factors. apply(x)[i] = x[perm[i]].
struct RingAutomorphism {
    std::vector<int> perm;

    RingElem apply(const RingElem& x) const;
    RingAutomorphism inverse() const;
    bool is_identity() const;
    int k() const { return static_cast<int>(perm.size()); }

    bool operator==(const RingAutomorphism&) const = default;
};

RingAutomorphism identity_automorphism(const RingDescriptor& ring);
// All k! coordinate permutations, identity first (lexicographic order).
std::vector<RingAutomorphism> ring_automorphisms(const RingDescriptor& ring);

struct AxiomReport {
    bool pass = true;
    long samples = 0;
    long checks = 0;
    std::string first_counterexample; // empty when pass
};

// Samples random triples and checks translation invariance of <=, closure of
// R+ under products, zero-sum-freeness of R+, and 1/m >= 0.
AxiomReport check_order_axioms(const RingDescriptor& ring, long samples, uint64_t seed);

} // namespace ordmat
