#pragma once

#include <utility>
#include <vector>

#include "ordmat/matrix.hpp"

namespace ordmat {

// Orthogonal idempotent system extracted from an involution of Gamma_n:
// e_i = a_1i * a_i1. The elements are pairwise orthogonal, idempotent, and
// sum to 1.
struct IdempotentSystem {
    std::vector<RingElem> elements;
};

// Pre: a in Gamma_n(R) and a^2 = I. Throws errc::precondition otherwise.
IdempotentSystem idempotent_system(const Mat& a);

struct BlockDiagForm {
    Mat conjugator;              // C in Gamma_n
    Mat result;                  // C * a * C^{-1}
    std::vector<int> block_sizes; // over {1,2}, 2x2 blocks first
};

// Conjugates an involution of Gamma_n to block-diagonal form with blocks of
// size <= 2 via the orthogonal-idempotent recursion, then aligns the
// per-idempotent-branch pairings onto one global partition.
BlockDiagForm block_diagonalize(const Mat& a);

struct ScaledPermForm {
    Mat conjugator; // M with M a M^{-1} = scale * S_tau, canonical
    RingElem scale; // b in R+*, b^2 = 1
};

// tau must be a product of disjoint transpositions (p,p+1) at positions
// 0,2,4,... (the adjacent-pair shape). Runs both the generic idempotent
// recursion and the per-component monomial fast path and requires their
// canonicalized conjugators to agree bitwise.
ScaledPermForm involution_to_scaled_perm(const Mat& a, const PermSpec& tau);

namespace detail {

// One leaf of the pairing recursion: on the components selected by `mask`
// the matrix pairs the listed cells and fixes the rest.
struct LeafPairing {
    RingElem mask;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> fixed;
};

// Orthogonal-idempotent pairing recursion over cells of width w (1 or 2).
// Cells are the index ranges [cell*w, cell*w + w) for cell = 0..m-1; indices
// >= m*w are left untouched (odd tail). Mutates `a` by conjugation and
// accumulates the conjugator into `conj` so that a == conj * a0 * conj^{-1}.
std::vector<LeafPairing> pair_cells(Mat& a, Mat& conj, int w, int m);

// Target pairing the leaves get permuted onto. With pack = true, branches
// with fewer pairs fill leftover pair slots with two fixed cells each.
struct AlignTarget {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> fixed;
    bool pack = false;
};

// One permutation conjugator per leaf, merged by idempotent summation.
// cell_count is the number of width-w cells; indices past cell_count*w are
// fixed. Throws errc::shape on count mismatches.
Mat alignment_conjugator(const RingDescriptor& ring, int n, int w,
                         const std::vector<LeafPairing>& leaves, const AlignTarget& target,
                         int cell_count);

// Adjacent-pair shape target tau with `pairs` transpositions.
PermSpec adjacent_pair_perm(int n, int pairs);

// Canonical conjugator for "monomial involution -> scale * S_tau" built per
// component by pairing 2-cycles in order of smallest moved index. Throws
// errc::shape if some component's cycle count differs from tau's.
ScaledPermForm scaled_perm_fast(const Mat& a, const PermSpec& tau);

// Reduces a valid conjugator (m a m^{-1} = b S_tau) to the canonical coset
// representative modulo the centralizer of S_tau.
Mat canonicalize_conjugator(const Mat& m, const Mat& a, const PermSpec& tau);

} // namespace detail

} // namespace ordmat
