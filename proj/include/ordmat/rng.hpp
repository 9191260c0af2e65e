#pragma once

#include <cstdint>
#include <vector>

#include "ordmat/ring.hpp"

namespace ordmat {

// Deterministic splitmix64 stream. Every random choice in the project flows
// through an explicitly seeded Rng so generated artifacts are reproducible
// byte for byte.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next();
    uint64_t below(uint64_t bound); // [0, bound), bound > 0
    long range(long lo, long hi);   // inclusive

    Rat rational(long max_abs_num, long max_den);
    Rat positive_rational(long max_num, long max_den);
    Rat nonneg_rational(long max_num, long max_den);

    RingElem elem(const RingDescriptor& ring, long max_abs_num, long max_den);
    RingElem nonneg_elem(const RingDescriptor& ring, long max_num, long max_den);
    RingElem pos_unit(const RingDescriptor& ring, long max_num, long max_den);

    std::vector<int> permutation(int n);

private:
    uint64_t state_;
};

} // namespace ordmat
