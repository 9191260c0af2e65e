#include "ordmat/perm.hpp"

#include <algorithm>
#include <sstream>

#include "ordmat/error.hpp"

namespace ordmat {

PermSpec PermSpec::identity(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    return PermSpec(std::move(img));
}

PermSpec PermSpec::transposition(int n, int a, int b) {
    PermSpec p = identity(n);
    std::swap(p.img_[static_cast<size_t>(a)], p.img_[static_cast<size_t>(b)]);
    return p;
}

PermSpec PermSpec::from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int v : images) {
        if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
            throw error(errc::input, "permutation images are not a bijection");
        seen[static_cast<size_t>(v)] = true;
    }
    return PermSpec(std::move(images));
}

PermSpec PermSpec::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    PermSpec p = identity(n);
    for (const auto& cyc : cycles) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i];
            int to = cyc[(i + 1) % cyc.size()];
            if (from < 0 || from >= n) throw error(errc::input, "cycle index out of range");
            p.img_[static_cast<size_t>(from)] = to;
        }
    }
    return from_images(p.img_); // validates disjointness
}

PermSpec PermSpec::compose(const PermSpec& rhs) const {
    if (n() != rhs.n()) throw error(errc::dimension_mismatch, "permutation size mismatch");
    std::vector<int> img(static_cast<size_t>(n()));
    for (int j = 0; j < n(); ++j) img[static_cast<size_t>(j)] = (*this)(rhs(j));
    return PermSpec(std::move(img));
}

PermSpec PermSpec::inverse() const {
    std::vector<int> img(static_cast<size_t>(n()));
    for (int j = 0; j < n(); ++j) img[static_cast<size_t>((*this)(j))] = j;
    return PermSpec(std::move(img));
}

bool PermSpec::is_identity() const {
    for (int j = 0; j < n(); ++j)
        if ((*this)(j) != j) return false;
    return true;
}

int PermSpec::sign() const {
    std::vector<bool> seen(static_cast<size_t>(n()), false);
    int sgn = 1;
    for (int s = 0; s < n(); ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        int len = 0;
        for (int j = s; !seen[static_cast<size_t>(j)]; j = (*this)(j)) {
            seen[static_cast<size_t>(j)] = true;
            ++len;
        }
        if (len % 2 == 0) sgn = -sgn;
    }
    return sgn;
}

std::vector<std::vector<int>> PermSpec::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(static_cast<size_t>(n()), false);
    for (int s = 0; s < n(); ++s) {
        if (seen[static_cast<size_t>(s)] || (*this)(s) == s) {
            seen[static_cast<size_t>(s)] = true;
            continue;
        }
        std::vector<int> cyc;
        for (int j = s; !seen[static_cast<size_t>(j)]; j = (*this)(j)) {
            seen[static_cast<size_t>(j)] = true;
            cyc.push_back(j);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string cycle_string(const PermSpec& p) {
    auto cyc = p.cycles();
    if (cyc.empty()) return "id";
    std::ostringstream os;
    for (const auto& c : cyc) {
        os << '(';
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) os << ',';
            os << (c[i] + 1);
        }
        os << ')';
    }
    return os.str();
}

int BlockLayout::n() const {
    int total = 0;
    for (int s : sizes) total += s;
    return total;
}

int BlockLayout::block_of(int index) const {
    for (int b = 0; b < block_count(); ++b)
        if (index >= offsets[static_cast<size_t>(b)] &&
            index < offsets[static_cast<size_t>(b)] + sizes[static_cast<size_t>(b)])
            return b;
    throw error(errc::input, "index outside layout");
}

int BlockLayout::log2_size(int b) const {
    int s = sizes[static_cast<size_t>(b)];
    int k = 0;
    while ((1 << k) < s) ++k;
    return k;
}

BlockLayout block_decomposition(int n) {
    if (n < 1) throw error(errc::input, "dimension must be >= 1");
    BlockLayout layout;
    int offset = 0;
    for (int bit = 30; bit >= 0; --bit) {
        if (n >> bit & 1) {
            layout.sizes.push_back(1 << bit);
            layout.offsets.push_back(offset);
            offset += 1 << bit;
        }
    }
    return layout;
}

namespace {

// Pair x <-> x + 2^{i-1} for the in-block offsets x < 2^m whose bit (i-1) is
// clear; positions past `limit` stay fixed.
void apply_bit_pairing(std::vector<int>& img, int offset, int limit, int i) {
    const int half = 1 << (i - 1);
    for (int x = 0; x < limit; ++x) {
        if ((x & half) == 0 && x + half < limit) {
            img[static_cast<size_t>(offset + x)] = offset + x + half;
            img[static_cast<size_t>(offset + x + half)] = offset + x;
        }
    }
}

} // namespace

PermSpec substitution_sigma_block(int n, int i, int j) {
    BlockLayout layout = block_decomposition(n);
    if (j < 1 || j > layout.block_count())
        throw error(errc::input, "block index out of range");
    const int kj = layout.log2_size(j - 1);
    if (i < 0 || i > kj) throw error(errc::input, "substitution index out of range for block");
    PermSpec p = PermSpec::identity(n);
    if (i == 0) return p;
    std::vector<int> img = p.images();
    apply_bit_pairing(img, layout.offsets[static_cast<size_t>(j - 1)],
                      layout.sizes[static_cast<size_t>(j - 1)], i);
    return PermSpec::from_images(std::move(img));
}

PermSpec substitution_sigma(int n, int i) {
    BlockLayout layout = block_decomposition(n);
    if (i < 1 || i > layout.log2_size(0))
        throw error(errc::input, "substitution index out of range");
    std::vector<int> img = PermSpec::identity(n).images();
    for (int b = 0; b < layout.block_count(); ++b) {
        int iq = std::min(i, layout.log2_size(b));
        if (iq >= 1)
            apply_bit_pairing(img, layout.offsets[static_cast<size_t>(b)],
                              layout.sizes[static_cast<size_t>(b)], iq);
    }
    return PermSpec::from_images(std::move(img));
}

PermSpec substitution_tau(int n, int i, int p, int m) {
    BlockLayout layout = block_decomposition(n);
    if (i < 1 || i > layout.block_count()) throw error(errc::input, "block index out of range");
    const int ki = layout.log2_size(i - 1);
    if (p < 1 || p > ki || m < p || m > ki)
        throw error(errc::input, "tau parameters out of range");
    std::vector<int> img = PermSpec::identity(n).images();
    apply_bit_pairing(img, layout.offsets[static_cast<size_t>(i - 1)], 1 << m, p);
    return PermSpec::from_images(std::move(img));
}

} // namespace ordmat
