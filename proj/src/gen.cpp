#include "ordmat/gen.hpp"

#include "ordmat/involution.hpp"

namespace ordmat {

Mat gen_gamma_element(const RingDescriptor& ring, int n, Rng& rng) {
    std::vector<MonomialForm> forms;
    forms.reserve(static_cast<size_t>(ring.k));
    for (int t = 0; t < ring.k; ++t) {
        PermSpec p = PermSpec::from_images(rng.permutation(n));
        std::vector<Rat> coef(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) coef[static_cast<size_t>(i)] = rng.positive_rational(6, 4);
        forms.push_back(MonomialForm{std::move(p), std::move(coef)});
    }
    return merge_monomials(ring, n, forms);
}

GeneratedInvolution gen_involution(const RingDescriptor& ring, int n, Rng& rng) {
    int pairs = static_cast<int>(rng.below(static_cast<uint64_t>(n / 2 + 1)));
    PermSpec tau = detail::adjacent_pair_perm(n, pairs);
    Mat g = gen_gamma_element(ring, n, rng);
    Mat j = g * perm_matrix(ring, tau) * mat_inv(g);
    return GeneratedInvolution{std::move(j), std::move(tau)};
}

AutomorphismSpec gen_automorphism_spec(const RingDescriptor& ring, int n, Rng& rng) {
    AutomorphismSpec spec;
    spec.ring = ring;
    spec.n = n;
    int count = static_cast<int>(rng.below(3)) + 1;
    for (int i = 0; i < count; ++i) {
        switch (rng.below(3)) {
        case 0:
            spec.factors.push_back(InnerFactor{gen_gamma_element(ring, n, rng)});
            break;
        case 1:
            spec.factors.push_back(RingMapFactor{RingAutomorphism{rng.permutation(ring.k)}});
            break;
        default: {
            HomothetySpec h = HomothetySpec::trivial(ring);
            for (int t = 0; t < ring.k; ++t) h.exps[static_cast<size_t>(t)] = rng.range(-2, 2);
            spec.factors.push_back(HomothetyFactor{std::move(h)});
            break;
        }
        }
    }
    return spec;
}

GenWord gen_word(const RingDescriptor& ring, int n, int max_len, Rng& rng) {
    GenWord w{ring, n, {}};
    int len = static_cast<int>(rng.below(static_cast<uint64_t>(max_len))) + 1;
    for (int i = 0; i < len; ++i) {
        switch (rng.below(3)) {
        case 0:
            w.letters.push_back(PermLetter{PermSpec::from_images(rng.permutation(n))});
            break;
        case 1: {
            std::vector<RingElem> d;
            d.reserve(static_cast<size_t>(n));
            for (int r = 0; r < n; ++r) d.push_back(rng.pos_unit(ring, 5, 3));
            w.letters.push_back(DiagLetter{std::move(d)});
            break;
        }
        default: {
            int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            int b = static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
            if (b >= a) ++b;
            w.letters.push_back(ElemLetter{a, b, rng.nonneg_elem(ring, 4, 3)});
            break;
        }
        }
    }
    return w;
}

} // namespace ordmat
