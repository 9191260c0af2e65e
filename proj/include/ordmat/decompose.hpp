#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordmat/autom.hpp"

namespace ordmat {

struct StageOneResult {
    Mat conjugator; // M1 in Gamma_n: conj(M1) o phi sends S_sigma to alpha^sgn * S_sigma
    RingElem alpha; // involution in R+*; 1 over the shipped rings
};

// Stage 1: normalize the images of the permutation matrices. Dispatches to
// the explicit n=3 / n=4 constructions and, for n>4, to the per-component
// cycle-pairing route cross-checked against the generic idempotent recursion.
StageOneResult normalize_permutation_images(const Oracle& phi);

// Stage 2: read c(x) off the images of B_12(x), check the transvection shape,
// additivity and multiplicativity on probe pairs, and match the table against
// the enumerated coordinate permutations.
RingAutomorphism extract_ring_automorphism(const Oracle& phi_prime,
                                           const std::vector<RingElem>& probe_units);

struct CentralData {
    std::vector<std::pair<RingElem, RingElem>> gamma_table; // (u, gamma(u))
    RingElem mu_sign;                                       // sign involution alpha
    std::optional<HomothetySpec> homothety;                 // absent when unfittable
    std::vector<std::string> notes;
};

// Stage 3: evaluate gamma on probe units from the images of diag[u,1,...,1],
// check multiplicativity and the diagonal shape, read the sign involution off
// the image of S_(12), and fit a determinant-based HomothetySpec.
CentralData extract_central_data(const Oracle& phi_dblprime,
                                 const std::vector<RingElem>& probe_units);

struct ProbeSuite {
    std::vector<RingElem> units;
    std::vector<GenWord> words;
};

ProbeSuite default_probes(const RingDescriptor& ring, int n, uint64_t seed);

struct Decomposition {
    Mat m;               // Gamma_n conjugator, canonicalized up to center
    RingAutomorphism c;
    RingElem alpha;      // sign involution
    CentralData central; // gamma table, mu, fitted homothety
    std::vector<std::pair<GenWord, RingElem>> lambda_table; // lambda on probe words
    std::vector<std::string> transcript;
};

// Runs the three stages, assembles M = M1^{-1}, c and Omega, and verifies
// apply(phi, eval(w)) == M * c(lambda(w) * eval(w)) * M^{-1} exactly for every
// probe word. Throws errc::decomposition_mismatch on the first failing word.
Decomposition decompose(const Oracle& phi, const ProbeSuite& probes);

struct VerifyReport {
    bool pass = true;
    bool vacuous = false;
    long words = 0;
    std::vector<std::string> failures;
};

VerifyReport verify_decomposition(const Oracle& phi, const Decomposition& d,
                                  const std::vector<GenWord>& words);

} // namespace ordmat
