#include "ordmat/involution.hpp"

#include <algorithm>

#include "ordmat/error.hpp"

namespace ordmat {

IdempotentSystem idempotent_system(const Mat& a) {
    if (!is_member(a, MemberClass::gamma_n))
        throw error(errc::precondition, "not a member of Gamma_n", to_string(a));
    if (!(a * a).is_identity())
        throw error(errc::precondition, "not an involution", to_string(a));
    IdempotentSystem sys;
    sys.elements.reserve(static_cast<size_t>(a.n()));
    for (int i = 0; i < a.n(); ++i) sys.elements.push_back(a.at(0, i) * a.at(i, 0));
    return sys;
}

namespace detail {

namespace {

Mat cell_of(const Mat& a, int w, int r, int c) {
    Mat out(a.ring(), w);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j) out.at(i, j) = a.at(r * w + i, c * w + j);
    return out;
}

bool scalar_cell(const Mat& cell, RingElem& out) {
    out = cell.at(0, 0);
    for (int i = 0; i < cell.n(); ++i)
        for (int j = 0; j < cell.n(); ++j) {
            if (i == j && !(cell.at(i, j) == out)) return false;
            if (i != j && !cell.at(i, j).is_zero()) return false;
        }
    return true;
}

// Straight swap of two width-w cells, merged into the identity outside.
PermSpec cell_swap(int n, int w, int c1, int c2) {
    PermSpec p = PermSpec::identity(n);
    std::vector<int> img = p.images();
    for (int r = 0; r < w; ++r) {
        img[static_cast<size_t>(c1 * w + r)] = c2 * w + r;
        img[static_cast<size_t>(c2 * w + r)] = c1 * w + r;
    }
    return PermSpec::from_images(std::move(img));
}

struct CellRec {
    Mat& a;
    Mat& conj;
    int w;
    std::vector<LeafPairing>& leaves;

    void run(const std::vector<int>& cells, size_t from, const RingElem& mask,
             std::vector<std::pair<int, int>> pairs, std::vector<int> fixed) {
        if (mask.is_zero()) return;
        if (from >= cells.size()) {
            leaves.push_back(LeafPairing{mask, std::move(pairs), std::move(fixed)});
            return;
        }
        const int s = cells[from];
        const RingDescriptor& ring = a.ring();

        // e_i = (cell s,i) * (cell i,s): orthogonal idempotents summing to the
        // mask; each must be scalar inside its cell.
        std::vector<RingElem> e(cells.size() - from, RingElem::zero(ring));
        RingElem total = RingElem::zero(ring);
        for (size_t ci = from; ci < cells.size(); ++ci) {
            Mat prod = cell_of(a, w, s, cells[ci]) * cell_of(a, w, cells[ci], s);
            RingElem v;
            if (!scalar_cell(prod, v))
                throw error(errc::shape, "cell product is not scalar", to_string(prod));
            RingElem ei = v * mask;
            if (!is_idempotent(ei))
                throw error(errc::shape, "cell product is not idempotent", to_string(ei));
            total = total + ei;
            e[ci - from] = std::move(ei);
        }
        if (!(total == mask))
            throw error(errc::shape, "cell idempotents do not sum to the mask", to_string(total));

        const RingElem e_s = e[0];
        RingElem moved = mask - e_s;

        if (!moved.is_zero()) {
            if (from + 1 >= cells.size())
                throw error(errc::shape, "unpairable trailing cell", to_string(moved));
            const int s2 = cells[from + 1];
            // bring every partner of s to the slot right after it
            Mat b = Mat::identity(ring, a.n());
            for (size_t ci = from + 1; ci < cells.size(); ++ci) {
                if (cells[ci] == s2 || e[ci - from].is_zero()) continue;
                Mat p = perm_matrix(ring, cell_swap(a.n(), w, s2, cells[ci]));
                b = b + scale(e[ci - from], p) + scale(-e[ci - from], Mat::identity(ring, a.n()));
            }
            a = b * a * b; // b is an idempotent-merged swap, self-inverse
            conj = b * conj;

            auto pairs2 = pairs;
            pairs2.emplace_back(s, s2);
            run(cells, from + 2, moved, std::move(pairs2), fixed);
        }
        if (!e_s.is_zero()) {
            auto fixed2 = fixed;
            fixed2.push_back(s);
            run(cells, from + 1, e_s, std::move(pairs), std::move(fixed2));
        }
    }
};

} // namespace

std::vector<LeafPairing> pair_cells(Mat& a, Mat& conj, int w, int m) {
    std::vector<int> cells(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) cells[static_cast<size_t>(i)] = i;
    std::vector<LeafPairing> leaves;
    CellRec rec{a, conj, w, leaves};
    rec.run(cells, 0, RingElem::one(a.ring()), {}, {});
    return leaves;
}

PermSpec adjacent_pair_perm(int n, int pairs) {
    PermSpec p = PermSpec::identity(n);
    std::vector<int> img = p.images();
    for (int t = 0; t < pairs; ++t) {
        img[static_cast<size_t>(2 * t)] = 2 * t + 1;
        img[static_cast<size_t>(2 * t + 1)] = 2 * t;
    }
    return PermSpec::from_images(std::move(img));
}

Mat alignment_conjugator(const RingDescriptor& ring, int n, int w,
                         const std::vector<LeafPairing>& leaves, const AlignTarget& target,
                         int cell_count) {
    Mat total(ring, n);
    RingElem covered = RingElem::zero(ring);
    for (const LeafPairing& leaf : leaves) {
        auto pairs = leaf.pairs;
        auto fixed = leaf.fixed;
        std::sort(pairs.begin(), pairs.end());
        std::sort(fixed.begin(), fixed.end());

        std::vector<int> cell_img(static_cast<size_t>(cell_count), -1);
        size_t fi = 0;
        if (!target.pack && pairs.size() != target.pairs.size())
            throw error(errc::shape,
                        "pair count mismatch on idempotent branch " + to_string(leaf.mask));
        if (pairs.size() > target.pairs.size())
            throw error(errc::shape, "more pairs than target slots");
        for (size_t t = 0; t < target.pairs.size(); ++t) {
            if (t < pairs.size()) {
                cell_img[static_cast<size_t>(pairs[t].first)] = target.pairs[t].first;
                cell_img[static_cast<size_t>(pairs[t].second)] = target.pairs[t].second;
            } else {
                // leftover pair slot takes two fixed cells
                if (fi + 1 >= fixed.size())
                    throw error(errc::shape, "not enough fixed cells to fill target");
                cell_img[static_cast<size_t>(fixed[fi])] = target.pairs[t].first;
                cell_img[static_cast<size_t>(fixed[fi + 1])] = target.pairs[t].second;
                fi += 2;
            }
        }
        for (int slot : target.fixed) {
            if (fi >= fixed.size()) throw error(errc::shape, "not enough fixed cells to fill target");
            cell_img[static_cast<size_t>(fixed[fi++])] = slot;
        }
        if (fi != fixed.size())
            throw error(errc::shape, "fixed cell count mismatch on idempotent branch");

        std::vector<int> img(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
        for (int c = 0; c < cell_count; ++c)
            for (int r = 0; r < w; ++r)
                img[static_cast<size_t>(c * w + r)] = cell_img[static_cast<size_t>(c)] * w + r;
        Mat p = perm_matrix(ring, PermSpec::from_images(std::move(img)));
        total = total + scale(leaf.mask, p);
        covered = covered + leaf.mask;
    }
    if (!covered.is_one())
        throw error(errc::shape, "idempotent branches do not cover the ring");
    return total;
}

namespace {

// Canonical pairing permutation for one monomial component: 2-cycles of the
// involution sorted by smallest moved index go to the target pairs in order,
// fixed points in ascending order go to the target fixed slots.
PermSpec canonical_pairing(const PermSpec& rho, const PermSpec& tau) {
    auto rc = rho.cycles();
    auto tc = tau.cycles();
    for (const auto& c : rc)
        if (c.size() != 2) throw error(errc::shape, "component permutation is not an involution");
    if (rc.size() != tc.size())
        throw error(errc::shape, "component has " + std::to_string(rc.size()) +
                                     " transpositions, target has " + std::to_string(tc.size()));
    const int n = rho.n();
    std::vector<int> img(static_cast<size_t>(n), -1);
    std::vector<bool> moved(static_cast<size_t>(n), false);
    for (size_t t = 0; t < rc.size(); ++t) {
        int a = std::min(rc[t][0], rc[t][1]);
        int b = std::max(rc[t][0], rc[t][1]);
        img[static_cast<size_t>(a)] = tc[t][0];
        img[static_cast<size_t>(b)] = tc[t][1];
        moved[static_cast<size_t>(a)] = moved[static_cast<size_t>(b)] = true;
    }
    std::vector<int> tau_fixed;
    for (int i = 0; i < n; ++i)
        if (tau(i) == i) tau_fixed.push_back(i);
    size_t fi = 0;
    for (int i = 0; i < n; ++i)
        if (!moved[static_cast<size_t>(i)]) img[static_cast<size_t>(i)] = tau_fixed[fi++];
    return PermSpec::from_images(std::move(img));
}

void require_adjacent_pair_shape(const PermSpec& tau) {
    int m = 0;
    while (2 * m + 1 < tau.n() && tau(2 * m) == 2 * m + 1) ++m;
    if (!(tau == detail::adjacent_pair_perm(tau.n(), m)))
        throw error(errc::input, "tau must be a product of adjacent transpositions (1,2)(3,4)...");
}

void require_involution_input(const Mat& a) {
    if (!is_member(a, MemberClass::gamma_n))
        throw error(errc::precondition, "not a member of Gamma_n", to_string(a));
    if (!(a * a).is_identity())
        throw error(errc::precondition, "not an involution", to_string(a));
}

RingElem read_scale(const Mat& r, const PermSpec& tau) {
    RingElem b = tau.is_identity() ? r.at(0, 0) : r.at(0, tau(0));
    if (!(r == scale(b, perm_matrix(r.ring(), tau))))
        throw error(errc::shape, "result is not a scalar multiple of the target permutation",
                    to_string(r));
    if (!is_pos_unit(b) || !(b * b).is_one())
        throw error(errc::shape, "scale is not a nonnegative involution", to_string(b));
    return b;
}

} // namespace

ScaledPermForm scaled_perm_fast(const Mat& a, const PermSpec& tau) {
    const RingDescriptor& ring = a.ring();
    const int n = a.n();
    std::vector<MonomialForm> forms;
    forms.reserve(static_cast<size_t>(ring.k));
    for (int t = 0; t < ring.k; ++t) {
        auto mono = monomial_form(component_of(a, t), n);
        if (!mono)
            throw error(errc::shape, "component " + std::to_string(t) + " is not monomial");
        PermSpec psi = canonical_pairing(mono->perm, tau);
        // diag part: 1 at each cycle head and fixed point, the pair entry of
        // the source matrix at the second slot of each pair
        std::vector<Rat> coef(static_cast<size_t>(n), Rat(1));
        for (const auto& cyc : mono->perm.cycles()) {
            int lo = std::min(cyc[0], cyc[1]);
            int hi = std::max(cyc[0], cyc[1]);
            coef[static_cast<size_t>(psi(hi))] = mono->coef[static_cast<size_t>(lo)];
        }
        forms.push_back(MonomialForm{std::move(psi), std::move(coef)});
    }
    Mat m = merge_monomials(ring, n, forms);
    Mat result = m * a * mat_inv(m);
    RingElem b = read_scale(result, tau);
    return ScaledPermForm{std::move(m), std::move(b)};
}

Mat canonicalize_conjugator(const Mat& m, const Mat& a, const PermSpec& tau) {
    const RingDescriptor& ring = a.ring();
    const int n = a.n();
    read_scale(m * a * mat_inv(m), tau); // validity of the supplied conjugator
    std::vector<MonomialForm> forms;
    forms.reserve(static_cast<size_t>(ring.k));
    for (int t = 0; t < ring.k; ++t) {
        auto mono = monomial_form(component_of(m, t), n);
        if (!mono) throw error(errc::shape, "conjugator component is not monomial");
        auto amono = monomial_form(component_of(a, t), n);
        if (!amono) throw error(errc::shape, "component is not monomial");
        PermSpec psi = canonical_pairing(amono->perm, tau);
        PermSpec omega = psi.compose(mono->perm.inverse());
        if (!(omega.compose(tau) == tau.compose(omega)))
            throw error(errc::shape, "conjugator does not reduce inside the centralizer");
        // omega-rotated coefficients, then kill the per-cycle diagonal freedom
        std::vector<Rat> d(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            d[static_cast<size_t>(omega(i))] = mono->coef[static_cast<size_t>(i)];
        std::vector<Rat> coef(static_cast<size_t>(n), Rat(1));
        for (const auto& cyc : tau.cycles()) {
            int p = cyc[0], q = cyc[1];
            coef[static_cast<size_t>(q)] = d[static_cast<size_t>(q)] / d[static_cast<size_t>(p)];
        }
        forms.push_back(MonomialForm{std::move(psi), std::move(coef)});
    }
    Mat out = merge_monomials(ring, n, forms);
    read_scale(out * a * mat_inv(out), tau);
    return out;
}

} // namespace detail

BlockDiagForm block_diagonalize(const Mat& a) {
    detail::require_involution_input(a);
    const RingDescriptor& ring = a.ring();
    const int n = a.n();

    Mat work = a;
    Mat conj = Mat::identity(ring, n);
    auto leaves = detail::pair_cells(work, conj, 1, n);

    size_t g = 0;
    for (const auto& leaf : leaves) g = std::max(g, leaf.pairs.size());

    detail::AlignTarget target;
    target.pack = true;
    for (size_t t = 0; t < g; ++t)
        target.pairs.emplace_back(static_cast<int>(2 * t), static_cast<int>(2 * t + 1));
    for (int i = static_cast<int>(2 * g); i < n; ++i) target.fixed.push_back(i);

    Mat p = detail::alignment_conjugator(ring, n, 1, leaves, target, n);
    work = p * work * transpose(p); // permutation per component: inverse = transpose
    conj = p * conj;

    if (!(work == conj * a * mat_inv(conj)))
        throw error(errc::shape, "conjugation identity lost during pairing");
    if (!(work * work).is_identity())
        throw error(errc::shape, "paired form is not an involution");

    BlockDiagForm out;
    out.block_sizes.assign(g, 2);
    out.block_sizes.insert(out.block_sizes.end(), static_cast<size_t>(n) - 2 * g, 1);
    out.conjugator = std::move(conj);
    out.result = std::move(work);
    return out;
}

ScaledPermForm involution_to_scaled_perm(const Mat& a, const PermSpec& tau) {
    if (tau.n() != a.n()) throw error(errc::dimension_mismatch, "tau dimension mismatch");
    detail::require_adjacent_pair_shape(tau);
    detail::require_involution_input(a);
    const RingDescriptor& ring = a.ring();
    const int n = a.n();

    ScaledPermForm fast = detail::scaled_perm_fast(a, tau);

    // generic route: idempotent pairing recursion, alignment onto tau's
    // transpositions, then the per-pair diagonal conjugation
    Mat work = a;
    Mat conj = Mat::identity(ring, n);
    auto leaves = detail::pair_cells(work, conj, 1, n);

    detail::AlignTarget target;
    for (const auto& cyc : tau.cycles()) target.pairs.emplace_back(cyc[0], cyc[1]);
    for (int i = 0; i < n; ++i)
        if (tau(i) == i) target.fixed.push_back(i);

    Mat p = detail::alignment_conjugator(ring, n, 1, leaves, target, n);
    work = p * work * transpose(p);
    conj = p * conj;

    std::vector<RingElem> gdiag(static_cast<size_t>(n), RingElem::one(ring));
    for (const auto& cyc : tau.cycles()) {
        const RingElem& v = work.at(cyc[0], cyc[1]);
        if (!is_unit(v))
            throw error(errc::shape, "pair entry is not invertible", to_string(v));
        gdiag[static_cast<size_t>(cyc[1])] = v;
    }
    Mat gmat = Mat::diagonal(ring, gdiag);
    work = gmat * work * mat_inv(gmat);
    conj = gmat * conj;

    RingElem b = detail::read_scale(work, tau);
    Mat canon = detail::canonicalize_conjugator(conj, a, tau);

    if (!(canon == fast.conjugator))
        throw error(errc::shape, "generic and per-component conjugators disagree");
    if (!(b == fast.scale))
        throw error(errc::shape, "generic and per-component scales disagree");
    return fast;
}

} // namespace ordmat
