#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordmat/perm.hpp"
#include "ordmat/ring.hpp"

namespace ordmat {

// Dense n x n matrix over RingElem, row-major. All entries share one ring.
class Mat {
public:
    Mat() = default;
    Mat(RingDescriptor ring, int n); // zero matrix

    static Mat identity(const RingDescriptor& ring, int n);
    static Mat diagonal(const RingDescriptor& ring, std::vector<RingElem> d);
    static Mat scalar_mat(const RingDescriptor& ring, int n, const RingElem& v);
    // B_ij(x) = I + x E_ij, 0-based i != j. No sign restriction at this level.
    static Mat transvection(const RingDescriptor& ring, int n, int i, int j, const RingElem& x);

    int n() const { return n_; }
    const RingDescriptor& ring() const { return ring_; }

    const RingElem& at(int i, int j) const { return e_[static_cast<size_t>(i * n_ + j)]; }
    RingElem& at(int i, int j) { return e_[static_cast<size_t>(i * n_ + j)]; }

    bool is_diagonal() const;
    bool is_identity() const;

    bool operator==(const Mat&) const = default;

private:
    RingDescriptor ring_;
    int n_ = 0;
    std::vector<RingElem> e_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat scale(const RingElem& s, const Mat& a);
Mat transpose(const Mat& a);

// Exact inverse, computed independently in each rational component by
// Gauss-Jordan elimination. Throws errc::singular when det is not a unit.
Mat mat_inv(const Mat& a);
// Exact determinant by fraction-free (Bareiss) elimination per component.
RingElem det(const Mat& a);

Mat perm_matrix(const RingDescriptor& ring, const PermSpec& p);

bool entrywise_nonneg(const Mat& a);

enum class MemberClass { gn, gamma_n, dn, block_scalar_involution };

// gn: entries >= 0 and det a unit. gamma_n: gn and inverse entrywise >= 0.
// dn: diagonal with entries in R+*. block_scalar_involution: diagonal, A^2=I,
// scalar inside every block of `layout` (defaults to block_decomposition(n)).
bool is_member(const Mat& a, MemberClass cls, const BlockLayout* layout = nullptr);

std::string to_string(const Mat& a);

// One rational component of the matrix, row-major.
std::vector<Rat> component_of(const Mat& a, int t);
Mat from_components(const RingDescriptor& ring, int n, const std::vector<std::vector<Rat>>& comps);

// Positive monomial form of one component: entry (perm(j), j) = coef[perm(j)],
// everything else zero. Empty result if the component is not monomial with
// positive coefficients.
struct MonomialForm {
    PermSpec perm;
    std::vector<Rat> coef; // indexed by row
};

std::optional<MonomialForm> monomial_form(const std::vector<Rat>& comp, int n);
Mat monomial_matrix(int n, const MonomialForm& m); // single-component helper
// Assemble a Mat from one monomial form per component.
Mat merge_monomials(const RingDescriptor& ring, int n, const std::vector<MonomialForm>& forms);

} // namespace ordmat
