#pragma once

#include <string>
#include <vector>

namespace ordmat {

// Permutation of {0..n-1} stored by images: sigma(j) = images[j].
// Wire format and printed cycles are 1-based.
class PermSpec {
public:
    PermSpec() = default;

    static PermSpec identity(int n);
    static PermSpec transposition(int n, int a, int b);
    static PermSpec from_images(std::vector<int> images); // validated bijection
    static PermSpec from_cycles(int n, const std::vector<std::vector<int>>& cycles);

    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int j) const { return img_[static_cast<size_t>(j)]; }
    const std::vector<int>& images() const { return img_; }

    // (a.compose(b))(j) = a(b(j))
    PermSpec compose(const PermSpec& rhs) const;
    PermSpec inverse() const;
    bool is_identity() const;
    int sign() const; // +1 or -1

    // Nontrivial cycles, each starting at its smallest element, sorted by it.
    std::vector<std::vector<int>> cycles() const;

    bool operator==(const PermSpec&) const = default;

private:
    explicit PermSpec(std::vector<int> img) : img_(std::move(img)) {}
    std::vector<int> img_;
};

// "(1,2)(3,4)" in 1-based indices; "id" for the identity.
std::string cycle_string(const PermSpec& p);

// Binary expansion of n: strictly decreasing powers of two. Offsets 0-based.
struct BlockLayout {
    std::vector<int> sizes;
    std::vector<int> offsets;

    int n() const;
    int block_count() const { return static_cast<int>(sizes.size()); }
    int block_of(int index) const;  // 0-based index -> block number (0-based)
    int log2_size(int b) const;
};

BlockLayout block_decomposition(int n);

// The standard substitutions built over block_decomposition(n).
// Blocks are numbered 1..l, i/p/m as in their defining ranges.

// sigma_i^{(j)}: identical off block j; inside block j the product of
// 2^{k_j-1} transpositions (p, p + 2^{i-1}). i = 0 means identity.
PermSpec substitution_sigma_block(int n, int i, int j);
// sigma_i = sigma_{min(i,k_1)}^{(1)} ... sigma_{min(i,k_l)}^{(l)}
PermSpec substitution_sigma(int n, int i);
// tau(i,p,m): identical outside block i; inside block i coincides with
// sigma_p on the first 2^m elements and is identical elsewhere.
PermSpec substitution_tau(int n, int i, int p, int m);

} // namespace ordmat
