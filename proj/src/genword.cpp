#include "ordmat/genword.hpp"

#include "ordmat/error.hpp"

namespace ordmat {

namespace {

struct LetterValidator {
    const GenWord& w;

    void operator()(const PermLetter& l) const {
        if (l.perm.n() != w.n) throw error(errc::dimension_mismatch, "permutation letter size");
    }
    void operator()(const DiagLetter& l) const {
        if (static_cast<int>(l.d.size()) != w.n)
            throw error(errc::dimension_mismatch, "diagonal letter size");
        for (const RingElem& e : l.d) {
            if (e.k() != w.ring.k) throw error(errc::descriptor_mismatch, "diagonal entry ring");
            if (!is_pos_unit(e))
                throw error(errc::input, "diagonal letter entry not in R+*", to_string(e));
        }
    }
    void operator()(const ElemLetter& l) const {
        if (l.i == l.j || l.i < 0 || l.j < 0 || l.i >= w.n || l.j >= w.n)
            throw error(errc::input, "transvection letter indices");
        if (l.x.k() != w.ring.k) throw error(errc::descriptor_mismatch, "transvection entry ring");
        if (!is_nonneg(l.x))
            throw error(errc::input, "transvection parameter negative", to_string(l.x));
    }
};

struct LetterMatrix {
    const GenWord& w;

    Mat operator()(const PermLetter& l) const { return perm_matrix(w.ring, l.perm); }
    Mat operator()(const DiagLetter& l) const { return Mat::diagonal(w.ring, l.d); }
    Mat operator()(const ElemLetter& l) const {
        return Mat::transvection(w.ring, w.n, l.i, l.j, l.x);
    }
};

} // namespace

void validate_word(const GenWord& w) {
    if (w.n < 1) throw error(errc::input, "word dimension must be >= 1");
    for (const Letter& l : w.letters) std::visit(LetterValidator{w}, l);
}

Mat eval_word(const GenWord& w) {
    validate_word(w);
    Mat acc = Mat::identity(w.ring, w.n);
    for (const Letter& l : w.letters) acc = acc * std::visit(LetterMatrix{w}, l);
    return acc;
}

int word_sign(const GenWord& w) {
    int sgn = 1;
    for (const Letter& l : w.letters)
        if (const auto* p = std::get_if<PermLetter>(&l)) sgn *= p->perm.sign();
    return sgn;
}

bool verify_equiv_chain(const EquivChainCert& cert) {
    for (size_t i = 0; i < cert.links.size(); ++i) {
        const EquivLink& link = cert.links[i];
        Mat lhs = eval_word(link.p) * link.a0 * eval_word(link.p_tilde);
        Mat rhs = eval_word(link.q) * link.a1 * eval_word(link.q_tilde);
        if (!(lhs == rhs)) return false;
        if (i + 1 < cert.links.size() && !(link.a1 == cert.links[i + 1].a0)) return false;
    }
    return true;
}

} // namespace ordmat
