#include "ordmat/rng.hpp"

namespace ordmat {

uint64_t Rng::next() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t bound) {
    return next() % bound; // modulo bias irrelevant at these bounds
}

long Rng::range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
}

Rat Rng::rational(long max_abs_num, long max_den) {
    Rat r(range(-max_abs_num, max_abs_num), range(1, max_den));
    r.canonicalize();
    return r;
}

Rat Rng::positive_rational(long max_num, long max_den) {
    Rat r(range(1, max_num), range(1, max_den));
    r.canonicalize();
    return r;
}

Rat Rng::nonneg_rational(long max_num, long max_den) {
    // zero-heavy so zero-sum-freeness gets exercised at the boundary
    if (below(4) == 0) return Rat(0);
    return positive_rational(max_num, max_den);
}

RingElem Rng::elem(const RingDescriptor& ring, long max_abs_num, long max_den) {
    RingElem e = RingElem::zero(ring);
    for (int t = 0; t < ring.k; ++t) e.comp(t) = rational(max_abs_num, max_den);
    return e;
}

RingElem Rng::nonneg_elem(const RingDescriptor& ring, long max_num, long max_den) {
    RingElem e = RingElem::zero(ring);
    for (int t = 0; t < ring.k; ++t) e.comp(t) = nonneg_rational(max_num, max_den);
    return e;
}

RingElem Rng::pos_unit(const RingDescriptor& ring, long max_num, long max_den) {
    RingElem e = RingElem::zero(ring);
    for (int t = 0; t < ring.k; ++t) e.comp(t) = positive_rational(max_num, max_den);
    return e;
}

std::vector<int> Rng::permutation(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(below(static_cast<uint64_t>(i + 1)));
        std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]);
    }
    return p;
}

} // namespace ordmat
