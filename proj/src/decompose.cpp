#include "ordmat/decompose.hpp"

#include <algorithm>
#include <set>

#include "ordmat/error.hpp"
#include "ordmat/gen.hpp"
#include "ordmat/involution.hpp"

namespace ordmat {

namespace {

Mat adjacent_transposition_matrix(const RingDescriptor& ring, int n, int p) {
    return perm_matrix(ring, PermSpec::transposition(n, p, p + 1));
}

void require_gamma_involution(const Mat& img, const std::string& what) {
    if (!is_member(img, MemberClass::gamma_n))
        throw error(errc::not_an_automorphism, what + ": image is not in Gamma_n", to_string(img));
    if (!((img * img).is_identity()))
        throw error(errc::not_an_automorphism, what + ": image is not an involution",
                    to_string(img));
}

void verify_stage_one(const Oracle& phi, const StageOneResult& r) {
    const RingDescriptor& ring = phi.ring();
    const int n = phi.n();
    if (!is_pos_unit(r.alpha) || !(r.alpha * r.alpha).is_one())
        throw error(errc::not_an_automorphism, "sign involution is not a nonnegative involution",
                    to_string(r.alpha));
    if (!is_member(r.conjugator, MemberClass::gamma_n))
        throw error(errc::not_an_automorphism, "stage-1 conjugator is not in Gamma_n");
    Mat minv = mat_inv(r.conjugator);
    for (int p = 0; p + 1 < n; ++p) {
        Mat sp = adjacent_transposition_matrix(ring, n, p);
        Mat normalized = r.conjugator * phi(sp) * minv;
        if (!(normalized == scale(r.alpha, sp)))
            throw error(errc::not_an_automorphism,
                        "normalized image of transposition " + std::to_string(p + 1) + "," +
                            std::to_string(p + 2) + " is not alpha * S",
                        to_string(normalized));
    }
}

// Per-component route: the image of every adjacent transposition is a
// positive monomial involution; its permutation part determines the hidden
// relabeling, the coefficients determine the diagonal part of the conjugator
// by a product recurrence. Components are merged by idempotent summation.
StageOneResult stage_one_fast(const Oracle& phi) {
    const RingDescriptor& ring = phi.ring();
    const int n = phi.n();

    std::vector<Mat> images;
    images.reserve(static_cast<size_t>(n - 1));
    for (int p = 0; p + 1 < n; ++p) {
        Mat img = phi(adjacent_transposition_matrix(ring, n, p));
        require_gamma_involution(img, "transposition " + std::to_string(p + 1));
        images.push_back(std::move(img));
    }

    std::vector<MonomialForm> forms;
    forms.reserve(static_cast<size_t>(ring.k));
    for (int t = 0; t < ring.k; ++t) {
        std::vector<std::pair<int, int>> rho;
        std::vector<std::vector<Rat>> comp;
        for (int p = 0; p + 1 < n; ++p) {
            comp.push_back(component_of(images[static_cast<size_t>(p)], t));
            auto mono = monomial_form(comp.back(), n);
            if (!mono)
                throw error(errc::not_an_automorphism,
                            "image component " + std::to_string(t) + " is not monomial");
            auto cyc = mono->perm.cycles();
            if (cyc.size() != 1 || cyc[0].size() != 2)
                throw error(errc::not_an_automorphism,
                            "image permutation part is not a transposition",
                            cycle_string(mono->perm));
            rho.emplace_back(cyc[0][0], cyc[0][1]);
        }

        // recover the relabeling pi from the chain of transposition images
        std::vector<int> pi(static_cast<size_t>(n), -1);
        auto in_pair = [](const std::pair<int, int>& pr, int v) {
            return pr.first == v || pr.second == v;
        };
        {
            const auto& r0 = rho[0];
            const auto& r1 = rho[1];
            int common = -1;
            for (int v : {r0.first, r0.second})
                if (in_pair(r1, v)) {
                    if (common >= 0)
                        throw error(errc::not_an_automorphism,
                                    "consecutive transposition images coincide");
                    common = v;
                }
            if (common < 0)
                throw error(errc::not_an_automorphism,
                            "consecutive transposition images are disjoint");
            pi[1] = common;
            pi[0] = r0.first == common ? r0.second : r0.first;
        }
        for (int p = 1; p + 1 < n; ++p) {
            if (!in_pair(rho[static_cast<size_t>(p)], pi[static_cast<size_t>(p)]))
                throw error(errc::not_an_automorphism, "transposition chain is inconsistent");
            pi[static_cast<size_t>(p + 1)] = rho[static_cast<size_t>(p)].first == pi[static_cast<size_t>(p)]
                                                 ? rho[static_cast<size_t>(p)].second
                                                 : rho[static_cast<size_t>(p)].first;
        }
        PermSpec pi_perm = PermSpec::from_images(pi); // validates bijectivity

        // diagonal recurrence: d_{p+1} = c_p d_p with c_p the (pi(p), pi(p+1))
        // entry of the p-th image
        std::vector<Rat> d(static_cast<size_t>(n), Rat(1));
        for (int p = 0; p + 1 < n; ++p) {
            const Rat& cp =
                comp[static_cast<size_t>(p)][static_cast<size_t>(pi[static_cast<size_t>(p)] * n +
                                                                 pi[static_cast<size_t>(p + 1)])];
            if (cp <= 0)
                throw error(errc::not_an_automorphism, "nonpositive pair entry in image");
            d[static_cast<size_t>(p + 1)] = cp * d[static_cast<size_t>(p)];
        }
        forms.push_back(MonomialForm{pi_perm.inverse(), std::move(d)});
    }

    StageOneResult out;
    out.conjugator = merge_monomials(ring, n, forms);
    out.alpha = RingElem::one(ring);
    return out;
}

// n = 3: after the involution step for (1,2), the image A of S_(2,3) splits
// through the idempotents e1 = a23*a32, e2 = a13*a31; conjugating by
// C = [[e1,e2,0],[e2,e1,0],[0,0,1]] and then by diag[1,1,a13+a23] lands on
// b * S_(2,3).
StageOneResult stage_one_n3(const Oracle& phi) {
    const RingDescriptor& ring = phi.ring();
    const int n = 3;
    PermSpec tau = detail::adjacent_pair_perm(n, 1);
    Mat a_tau = phi(perm_matrix(ring, tau));
    require_gamma_involution(a_tau, "S_(1,2)");
    ScaledPermForm sp = involution_to_scaled_perm(a_tau, tau);
    const RingElem& b = sp.scale;

    Mat ma_inv = mat_inv(sp.conjugator);
    Mat a = sp.conjugator * phi(adjacent_transposition_matrix(ring, n, 1)) * ma_inv;
    require_gamma_involution(a, "S_(2,3)");

    auto expect_zero = [&](int i, int j) {
        if (!a.at(i, j).is_zero())
            throw error(errc::not_an_automorphism,
                        "image of S_(2,3) has unexpected entry at " + std::to_string(i + 1) + "," +
                            std::to_string(j + 1),
                        to_string(a));
    };
    expect_zero(0, 1);
    expect_zero(1, 0);
    expect_zero(2, 2);

    RingElem e1 = a.at(1, 2) * a.at(2, 1);
    RingElem e2 = a.at(0, 2) * a.at(2, 0);
    if (!is_idempotent(e1) || !is_idempotent(e2) || !(e1 * e2).is_zero() || !(e1 + e2).is_one())
        throw error(errc::not_an_automorphism, "S_(2,3) image idempotents are malformed",
                    to_string(e1) + " " + to_string(e2));
    if (!(a.at(0, 0) == b * e1) || !(a.at(1, 1) == b * e2))
        throw error(errc::not_an_automorphism, "S_(2,3) image diagonal is malformed", to_string(a));

    Mat c(ring, n);
    c.at(0, 0) = e1;
    c.at(0, 1) = e2;
    c.at(1, 0) = e2;
    c.at(1, 1) = e1;
    c.at(2, 2) = RingElem::one(ring);
    if (!(c * c).is_identity())
        throw error(errc::not_an_automorphism, "idempotent conjugator is not an involution",
                    to_string(c));

    RingElem c3 = a.at(0, 2) + a.at(1, 2);
    if (!is_unit(c3))
        throw error(errc::not_an_automorphism, "a13 + a23 is not invertible", to_string(c3));
    Mat cprime = Mat::diagonal(
        ring, {RingElem::one(ring), RingElem::one(ring), c3});

    StageOneResult out;
    out.conjugator = cprime * c * sp.conjugator;
    out.alpha = b;
    return out;
}

Mat cell_block(const Mat& a, int ci, int cj) {
    Mat out(a.ring(), 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.at(i, j) = a.at(2 * ci + i, 2 * cj + j);
    return out;
}

// n = 4: normalize S_(13)(24) through its 2x2-cell structure, then the images
// of the 4-cycle and of S_(1,2) through the explicit split conjugators
// z2^2 S_(14)(23) + z1^2 I and a1^2 S_(13)(24) + a2^2 I.
StageOneResult stage_one_n4(const Oracle& phi) {
    const RingDescriptor& ring = phi.ring();
    const int n = 4;
    PermSpec tau = detail::adjacent_pair_perm(n, 2); // (1,2)(3,4)
    Mat a_tau = phi(perm_matrix(ring, tau));
    require_gamma_involution(a_tau, "S_(1,2)(3,4)");
    ScaledPermForm sp = involution_to_scaled_perm(a_tau, tau);
    if (!sp.scale.is_one())
        throw error(errc::shape, "nontrivial scale cannot occur over a product of rationals",
                    to_string(sp.scale));
    Oracle phi1 = conjugated(phi, sp.conjugator);

    PermSpec rho = PermSpec::from_images({2, 3, 0, 1}); // (1,3)(2,4)
    Mat s_rho = perm_matrix(ring, rho);
    Mat x = phi1(s_rho);
    require_gamma_involution(x, "S_(1,3)(2,4)");
    Mat s_tau = perm_matrix(ring, tau);
    if (!(x * s_tau == s_tau * x))
        throw error(errc::not_an_automorphism, "image of S_(1,3)(2,4) does not commute with S_tau",
                    to_string(x));

    Mat cell_a = cell_block(x, 0, 0);
    Mat cell_d = cell_block(x, 1, 1);
    Mat cell_b = cell_block(x, 0, 1);
    Mat cell_c = cell_block(x, 1, 0);
    Mat zero2(ring, 2);
    if (!(cell_a == zero2) || !(cell_d == zero2))
        throw error(errc::not_an_automorphism, "diagonal cells of the S_(1,3)(2,4) image are nonzero",
                    to_string(x));
    Mat i2 = Mat::identity(ring, 2);
    if (!(cell_b * cell_c == i2) || !(cell_c * cell_b == i2))
        throw error(errc::not_an_automorphism, "off-diagonal cells are not mutually inverse",
                    to_string(x));

    Mat mb = Mat::identity(ring, n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) mb.at(i, j) = cell_c.at(i, j);
    if (!is_member(mb, MemberClass::gamma_n))
        throw error(errc::not_an_automorphism, "cell conjugator is not in Gamma_n", to_string(mb));
    Oracle phi2 = conjugated(phi1, mb);
    if (!(phi2(s_rho) == s_rho) || !(phi2(s_tau) == s_tau))
        throw error(errc::not_an_automorphism, "cell conjugation did not normalize S_(1,3)(2,4)");

    // image of the 4-cycle
    PermSpec four_cycle = PermSpec::from_images({3, 0, 1, 2});
    PermSpec four_cycle_inv = four_cycle.inverse();
    Mat y = phi2(perm_matrix(ring, four_cycle));
    RingElem z1 = y.at(0, 1);
    RingElem z2 = y.at(0, 3);
    Mat expected_y = scale(z1, perm_matrix(ring, four_cycle)) +
                     scale(z2, perm_matrix(ring, four_cycle_inv));
    if (!(y == expected_y) || !(z1 * z2).is_zero() || !(z1 * z1 + z2 * z2).is_one())
        throw error(errc::not_an_automorphism, "4-cycle image has the wrong split shape",
                    to_string(y));
    PermSpec p1423 = PermSpec::from_images({3, 2, 1, 0}); // (1,4)(2,3)
    Mat mc = scale(z2 * z2, perm_matrix(ring, p1423)) +
             scale(z1 * z1, Mat::identity(ring, n));
    Oracle phi3 = conjugated(phi2, mc);

    // image of S_(1,2)
    Mat a12 = phi3(adjacent_transposition_matrix(ring, n, 0));
    RingElem a1 = a12.at(0, 0);
    RingElem a2 = a12.at(0, 1);
    Mat expected_a = scale(a2, perm_matrix(ring, PermSpec::transposition(n, 0, 1))) +
                     scale(a1, perm_matrix(ring, PermSpec::transposition(n, 2, 3)));
    if (!(a12 == expected_a) || !(a1 * a2).is_zero() || !(a1 * a1 + a2 * a2).is_one())
        throw error(errc::not_an_automorphism, "S_(1,2) image has the wrong split shape",
                    to_string(a12));
    Mat md = scale(a1 * a1, perm_matrix(ring, rho)) + scale(a2 * a2, Mat::identity(ring, n));

    RingElem alpha = a1 + a2;
    if (!(alpha == z1 + z2))
        throw error(errc::not_an_automorphism, "the two split involutions disagree",
                    to_string(alpha) + " vs " + to_string(z1 + z2));

    StageOneResult out;
    out.conjugator = md * mc * mb * sp.conjugator;
    out.alpha = alpha;
    return out;
}

// Cross-check for n > 4: rerun the sigma_1 normalization through the generic
// idempotent recursion and the sigma_2 normalization through the twin-cell
// recursion over the sigma_1 pairs, and require the renormalized images to
// match the fast path exactly.
void stage_one_crosscheck(const Oracle& phi, const StageOneResult& fast) {
    const RingDescriptor& ring = phi.ring();
    const int n = phi.n();
    PermSpec sigma1 = substitution_sigma(n, 1);
    PermSpec sigma2 = substitution_sigma(n, 2);
    // sigma_1 pairs every even block adjacently; the cell layout below relies
    // on exactly that
    if (!(sigma1 == detail::adjacent_pair_perm(n, n / 2)))
        throw error(errc::shape, "sigma_1 is not the adjacent-pair involution");
    Mat s1 = perm_matrix(ring, sigma1);
    Mat s2 = perm_matrix(ring, sigma2);

    Mat a1 = phi(s1);
    require_gamma_involution(a1, "S_sigma1");
    ScaledPermForm sp = involution_to_scaled_perm(a1, sigma1);
    Oracle phi1 = conjugated(phi, sp.conjugator);

    Mat a2 = phi1(s2);
    require_gamma_involution(a2, "S_sigma2");
    if (!(a2 * scale(sp.scale, s1) == scale(sp.scale, s1) * a2))
        throw error(errc::not_an_automorphism, "sigma_2 image does not commute with S_sigma1",
                    to_string(a2));

    const int m = n / 2;
    if (n % 2 == 1) {
        // the trailing fixed index splits off first
        for (int i = 0; i + 1 < n; ++i)
            if (!a2.at(i, n - 1).is_zero() || !a2.at(n - 1, i).is_zero())
                throw error(errc::not_an_automorphism, "sigma_2 image couples the odd tail",
                            to_string(a2));
        if (!a2.at(n - 1, n - 1).is_one())
            throw error(errc::not_an_automorphism, "sigma_2 image tail entry is not 1",
                        to_string(a2));
    }

    Mat work = a2;
    Mat conj = Mat::identity(ring, n);
    auto leaves = detail::pair_cells(work, conj, 2, m);

    // target cell structure of sigma_2: straight cell pairs plus in-cell swaps
    detail::AlignTarget target;
    std::vector<int> x_cells;
    for (int c = 0; c < m; ++c) {
        int i0 = sigma2(2 * c);
        if (i0 == 2 * c + 1) {
            x_cells.push_back(c);
        } else if (i0 != 2 * c) {
            int c2 = i0 / 2;
            if (sigma2(2 * c + 1) != 2 * c2 + 1)
                throw error(errc::shape, "sigma_2 is not cell-straight");
            if (c < c2) target.pairs.emplace_back(c, c2);
        }
    }
    target.fixed = x_cells;
    Mat p = detail::alignment_conjugator(ring, n, 2, leaves, target, m);
    work = p * work * transpose(p);
    conj = p * conj;

    // per-pair cell-diagonal normalization (cells commute with the in-cell swap)
    Mat g = Mat::identity(ring, n);
    for (const auto& [c, c2] : target.pairs) {
        Mat v = cell_block(work, c, c2);
        if (!(v.at(0, 0) == v.at(1, 1)) || !(v.at(0, 1) == v.at(1, 0)))
            throw error(errc::not_an_automorphism, "pair cell is not symmetric", to_string(v));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.at(2 * c2 + i, 2 * c2 + j) = v.at(i, j);
    }
    work = g * work * mat_inv(g);
    conj = g * conj;

    RingElem alpha2 = work.at(0, sigma2(0));
    if (!(work == scale(alpha2, s2)) || !is_pos_unit(alpha2) || !(alpha2 * alpha2).is_one())
        throw error(errc::not_an_automorphism, "twin-cell recursion did not land on alpha * S_sigma2",
                    to_string(work));

    Oracle phi2 = conjugated(phi1, conj);
    if (!(phi2(s1) == scale(sp.scale, s1)))
        throw error(errc::not_an_automorphism, "sigma_1 image moved during the sigma_2 step");

    // both routes must agree on the normalized generator images
    Oracle phif = conjugated(phi, fast.conjugator);
    if (!(phif(s1) == phi2(s1)) || !(phif(s2) == phi2(s2)))
        throw error(errc::shape, "fast path and generic recursion disagree on generator images");
}

RingElem embed_unit(const RingDescriptor& ring, int t, const Rat& u) {
    RingElem e = RingElem::one(ring);
    e.comp(t) = u;
    return e;
}

std::vector<RingElem> dedup(std::vector<RingElem> xs) {
    std::vector<RingElem> out;
    for (auto& x : xs)
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    return out;
}

Mat first_slot_diag(const RingDescriptor& ring, int n, const RingElem& u) {
    std::vector<RingElem> d(static_cast<size_t>(n), RingElem::one(ring));
    d[0] = u;
    return Mat::diagonal(ring, d);
}

// Central canonicalization: post-multiply by the central scalar making the
// first nonzero entry of row 1 equal to 1 in each component.
Mat central_canonicalize(const Mat& m) {
    const RingDescriptor& ring = m.ring();
    RingElem z = RingElem::one(ring);
    for (int t = 0; t < ring.k; ++t) {
        Rat v;
        bool found = false;
        for (int j = 0; j < m.n() && !found; ++j) {
            if (m.at(0, j).comp(t) != 0) {
                v = m.at(0, j).comp(t);
                found = true;
            }
        }
        if (!found) throw error(errc::shape, "zero row in conjugator");
        z.comp(t) = 1 / v;
    }
    return scale(z, m);
}

} // namespace

StageOneResult normalize_permutation_images(const Oracle& phi) {
    const int n = phi.n();
    if (n < 3) throw error(errc::precondition, "decomposition requires n >= 3");
    StageOneResult r;
    if (n == 3)
        r = stage_one_n3(phi);
    else if (n == 4)
        r = stage_one_n4(phi);
    else {
        r = stage_one_fast(phi);
        stage_one_crosscheck(phi, r);
    }
    verify_stage_one(phi, r);
    return r;
}

RingAutomorphism extract_ring_automorphism(const Oracle& phi_prime,
                                           const std::vector<RingElem>& probe_units) {
    const RingDescriptor& ring = phi_prime.ring();
    const int n = phi_prime.n();

    std::vector<RingElem> probes = probe_units;
    probes.push_back(RingElem::zero(ring));
    probes.push_back(RingElem::one(ring));
    for (int t = 0; t < ring.k; ++t) {
        probes.push_back(embed_unit(ring, t, Rat(2)));
        probes.push_back(embed_unit(ring, t, Rat(3)));
    }
    probes = dedup(std::move(probes));

    auto image_of = [&](const RingElem& x) {
        Mat img = phi_prime(Mat::transvection(ring, n, 0, 1, x));
        RingElem c = img.at(0, 1);
        if (!(img == Mat::transvection(ring, n, 0, 1, c)))
            throw error(errc::pipeline_order, "image of B_12(x) is not a B_12 transvection",
                        to_string(img));
        if (!is_nonneg(c))
            throw error(errc::pipeline_order, "image parameter is negative", to_string(c));
        return c;
    };

    std::vector<RingElem> table;
    table.reserve(probes.size());
    for (const RingElem& x : probes) table.push_back(image_of(x));

    for (size_t i = 0; i < probes.size(); ++i)
        for (size_t j = 0; j < probes.size(); ++j) {
            if (!(image_of(probes[i] + probes[j]) == table[i] + table[j]))
                throw error(errc::pipeline_order, "extracted map is not additive",
                            to_string(probes[i]) + ", " + to_string(probes[j]));
            if (!(image_of(probes[i] * probes[j]) == table[i] * table[j]))
                throw error(errc::pipeline_order, "extracted map is not multiplicative",
                            to_string(probes[i]) + ", " + to_string(probes[j]));
        }

    for (const RingAutomorphism& f : ring_automorphisms(ring)) {
        bool match = true;
        for (size_t i = 0; i < probes.size() && match; ++i)
            match = f.apply(probes[i]) == table[i];
        if (match) return f;
    }
    throw error(errc::unsupported_ring_automorphism,
                "no coordinate permutation matches the extracted map");
}

CentralData extract_central_data(const Oracle& phi_dblprime,
                                 const std::vector<RingElem>& probe_units) {
    const RingDescriptor& ring = phi_dblprime.ring();
    const int n = phi_dblprime.n();
    CentralData out;

    // sign involution off the image of S_(1,2)
    Mat s01 = perm_matrix(ring, PermSpec::transposition(n, 0, 1));
    Mat simg = phi_dblprime(s01);
    RingElem alpha = simg.at(0, 1);
    if (!(simg == scale(alpha, s01)) || !is_pos_unit(alpha) || !(alpha * alpha).is_one())
        throw error(errc::pipeline_order, "image of S_(1,2) is not alpha * S", to_string(simg));
    out.mu_sign = alpha;

    auto gamma_of = [&](const RingElem& u) {
        Mat img = phi_dblprime(first_slot_diag(ring, n, u));
        if (!img.is_diagonal())
            throw error(errc::pipeline_order, "image of diag[u,1,...,1] is not diagonal",
                        to_string(img));
        RingElem g = img.at(1, 1);
        for (int i = 2; i < n; ++i)
            if (!(img.at(i, i) == g))
                throw error(errc::pipeline_order, "trailing diagonal entries differ",
                            to_string(img));
        if (!(img.at(0, 0) == u * g))
            throw error(errc::pipeline_order, "leading diagonal entry is not u * gamma(u)",
                        to_string(img));
        if (!is_pos_unit(g))
            throw error(errc::pipeline_order, "gamma value is not in R+*", to_string(g));
        return g;
    };

    std::vector<RingElem> probes = probe_units;
    for (int t = 0; t < ring.k; ++t) {
        probes.push_back(embed_unit(ring, t, Rat(2)));
        probes.push_back(embed_unit(ring, t, Rat(3)));
    }
    probes = dedup(std::move(probes));
    for (const RingElem& u : probes) {
        if (!is_pos_unit(u)) continue;
        out.gamma_table.emplace_back(u, gamma_of(u));
    }

    for (size_t i = 0; i < out.gamma_table.size(); ++i)
        for (size_t j = i; j < out.gamma_table.size(); ++j) {
            const auto& [u1, g1] = out.gamma_table[i];
            const auto& [u2, g2] = out.gamma_table[j];
            if (!(gamma_of(u1 * u2) == g1 * g2))
                throw error(errc::pipeline_order, "gamma is not multiplicative",
                            to_string(u1) + ", " + to_string(u2));
        }

    // fit per-component |det| exponents from gamma at the component embeddings
    // of 2, then verify the fit on every probed unit
    HomothetySpec fit = HomothetySpec::trivial(ring);
    bool fittable = true;
    for (int t = 0; t < ring.k && fittable; ++t) {
        RingElem g = gamma_of(embed_unit(ring, t, Rat(2)));
        for (int s = 0; s < ring.k && fittable; ++s)
            if (s != t && g.comp(s) != 1) fittable = false;
        if (!fittable) break;
        auto e = log2_exact(g.comp(t));
        if (!e) {
            fittable = false;
            break;
        }
        fit.exps[static_cast<size_t>(t)] = *e;
    }
    if (fittable) {
        for (const auto& [u, g] : out.gamma_table) {
            RingElem pred = RingElem::one(ring);
            for (int t = 0; t < ring.k; ++t)
                pred.comp(t) = rat_pow(rat_abs(u.comp(t)), fit.exps[static_cast<size_t>(t)]);
            if (!(pred == g)) {
                fittable = false;
                break;
            }
        }
    }
    if (fittable)
        out.homothety = fit;
    else
        out.notes.push_back("homothety fit failed; lambda is reported as a table only");
    return out;
}

ProbeSuite default_probes(const RingDescriptor& ring, int n, uint64_t seed) {
    ProbeSuite suite;
    const Rat base_units[] = {Rat(1, 2), Rat(2), Rat(3), Rat(5, 3)};
    for (const Rat& u : base_units) suite.units.push_back(RingElem::scalar(ring, u));
    if (ring.k > 1)
        for (int t = 0; t < ring.k; ++t)
            for (const Rat& u : base_units) suite.units.push_back(embed_unit(ring, t, u));
    suite.units = dedup(std::move(suite.units));

    for (int p = 0; p + 1 < n; ++p) {
        GenWord w{ring, n, {PermLetter{PermSpec::transposition(n, p, p + 1)}}};
        suite.words.push_back(std::move(w));
    }
    const Rat xs[] = {Rat(0), Rat(1), Rat(1, 2), Rat(3)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (const Rat& x : xs) {
                GenWord w{ring, n, {ElemLetter{i, j, RingElem::scalar(ring, x)}}};
                suite.words.push_back(std::move(w));
            }
        }
    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                  37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                  83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
    {
        std::vector<RingElem> d;
        for (int i = 0; i < n; ++i) d.push_back(RingElem::scalar(ring, Rat(primes[i % 32])));
        GenWord w{ring, n, {DiagLetter{std::move(d)}}};
        suite.words.push_back(std::move(w));
    }
    Rng rng(seed);
    for (int i = 0; i < 50; ++i)
        suite.words.push_back(gen_word(ring, n, 6, rng));
    return suite;
}

namespace {

template <typename F>
auto staged(const char* stage, F&& f) {
    try {
        return f();
    } catch (const error& e) {
        throw error(e.kind(), std::string(stage) + ": " + e.what(), e.witness());
    }
}

} // namespace

Decomposition decompose(const Oracle& phi, const ProbeSuite& probes) {
    const RingDescriptor& ring = phi.ring();
    Decomposition d;

    StageOneResult s1 = staged("stage1", [&] { return normalize_permutation_images(phi); });
    d.alpha = s1.alpha;
    d.transcript.push_back("stage1: normalized permutation images, alpha = " + to_string(s1.alpha));

    Oracle phi_prime = conjugated(phi, s1.conjugator);
    d.c = staged("stage2", [&] { return extract_ring_automorphism(phi_prime, probes.units); });
    {
        std::string perm = "[";
        for (size_t i = 0; i < d.c.perm.size(); ++i)
            perm += (i ? "," : "") + std::to_string(d.c.perm[i] + 1);
        d.transcript.push_back("stage2: ring automorphism " + perm + "]");
    }

    Oracle phi_dbl = ring_mapped(phi_prime, d.c.inverse());
    d.central = staged("stage3", [&] { return extract_central_data(phi_dbl, probes.units); });
    d.transcript.push_back(d.central.homothety
                               ? "stage3: homothety fitted"
                               : "stage3: homothety unfittable, table only");
    for (const std::string& note : d.central.notes) d.transcript.push_back("stage3: " + note);

    d.m = central_canonicalize(mat_inv(s1.conjugator));
    Mat m_inv = mat_inv(d.m);

    // lambda on the probe words, read off the normalized oracle; each value
    // must be a central positive unit
    for (const GenWord& w : probes.words) {
        Mat wm = eval_word(w);
        Mat z = phi_dbl(wm) * mat_inv(wm);
        RingElem lam = z.at(0, 0);
        if (!(z == Mat::scalar_mat(ring, phi.n(), lam)) || !is_pos_unit(lam))
            throw error(errc::decomposition_mismatch,
                        "normalized image is not a central homothety on a probe word",
                        to_string(z));
        if (d.central.homothety && !(d.central.homothety->lambda(wm) == lam))
            throw error(errc::decomposition_mismatch,
                        "fitted homothety disagrees with the observed lambda", to_string(lam));
        d.lambda_table.emplace_back(w, lam);
    }

    // defining identity on every probe word
    long idx = 0;
    for (const auto& [w, lam] : d.lambda_table) {
        Mat wm = eval_word(w);
        Mat lhs = phi(wm);
        Mat rhs = d.m * apply_ring_map(d.c, scale(lam, wm)) * m_inv;
        if (!(lhs == rhs))
            throw error(errc::decomposition_mismatch,
                        "defining identity fails on probe word " + std::to_string(idx),
                        to_string(lhs) + " vs " + to_string(rhs));
        ++idx;
    }
    d.transcript.push_back("verified " + std::to_string(idx) + " probe words exactly");
    return d;
}

VerifyReport verify_decomposition(const Oracle& phi, const Decomposition& d,
                                  const std::vector<GenWord>& words) {
    VerifyReport rep;
    if (words.empty()) {
        rep.vacuous = true;
        rep.failures.push_back("warning: empty word list, vacuous pass");
        return rep;
    }
    Mat m_inv = mat_inv(d.m);
    for (size_t i = 0; i < words.size(); ++i) {
        Mat wm = eval_word(words[i]);
        RingElem lam;
        bool have = false;
        if (d.central.homothety) {
            lam = d.central.homothety->lambda(wm);
            have = true;
        } else {
            for (const auto& [w, l] : d.lambda_table)
                if (w == words[i]) {
                    lam = l;
                    have = true;
                    break;
                }
        }
        ++rep.words;
        if (!have) {
            rep.pass = false;
            rep.failures.push_back("word " + std::to_string(i) + ": no lambda available");
            continue;
        }
        Mat lhs = phi(wm);
        Mat rhs = d.m * apply_ring_map(d.c, scale(lam, wm)) * m_inv;
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.failures.push_back("word " + std::to_string(i) + ": identity fails");
        }
    }
    return rep;
}

} // namespace ordmat
