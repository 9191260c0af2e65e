#pragma once

#include <variant>
#include <vector>

#include "ordmat/matrix.hpp"

namespace ordmat {

// Letters of the generator alphabet: permutation matrices, invertible
// nonnegative diagonals, transvections B_ij(x) with x >= 0.
struct PermLetter {
    PermSpec perm;
    bool operator==(const PermLetter&) const = default;
};
struct DiagLetter {
    std::vector<RingElem> d;
    bool operator==(const DiagLetter&) const = default;
};
struct ElemLetter {
    int i = 0, j = 0; // 0-based, i != j
    RingElem x;
    bool operator==(const ElemLetter&) const = default;
};

using Letter = std::variant<PermLetter, DiagLetter, ElemLetter>;

struct GenWord {
    RingDescriptor ring;
    int n = 0;
    std::vector<Letter> letters;

    bool operator==(const GenWord&) const = default;
};

// Throws on malformed letters: non-unit or negative diagonal entries,
// negative transvection parameter, i == j, index out of range.
void validate_word(const GenWord& w);

// Exact product of the letter matrices, left to right; empty word is I.
Mat eval_word(const GenWord& w);

// Product of the permutation letters' signs (+1/-1); diagonal and
// transvection letters count +1.
int word_sign(const GenWord& w);

struct EquivLink {
    GenWord p, p_tilde, q, q_tilde;
    Mat a0, a1;
};

struct EquivChainCert {
    std::vector<EquivLink> links;
};

// Every link must satisfy eval(P) A_i eval(P~) == eval(Q) A_{i+1} eval(Q~)
// exactly, and consecutive links must share the intermediate matrix.
bool verify_equiv_chain(const EquivChainCert& cert);

} // namespace ordmat
