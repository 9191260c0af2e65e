#pragma once

#include <cstdint>

#include "ordmat/autom.hpp"
#include "ordmat/rng.hpp"

namespace ordmat {

// Per-component positive monomial matrices assembled by idempotent summation;
// always a member of Gamma_n.
Mat gen_gamma_element(const RingDescriptor& ring, int n, Rng& rng);

// Conjugate of b * S_tau (b = 1 over the shipped rings) by a random Gamma_n
// element; tau is an adjacent-pair involution with a random number of pairs.
// Returns the involution together with the tau used.
struct GeneratedInvolution {
    Mat mat;
    PermSpec tau;
};
GeneratedInvolution gen_involution(const RingDescriptor& ring, int n, Rng& rng);

// Random factor list over the three primitive kinds.
AutomorphismSpec gen_automorphism_spec(const RingDescriptor& ring, int n, Rng& rng);

// Random generator word of the given maximum length.
GenWord gen_word(const RingDescriptor& ring, int n, int max_len, Rng& rng);

} // namespace ordmat
