#include "ordmat/matrix.hpp"

#include <sstream>

#include "ordmat/error.hpp"

namespace ordmat {

namespace {

void require_compatible(const Mat& a, const Mat& b) {
    if (a.ring() != b.ring()) throw error(errc::descriptor_mismatch, "matrices over different rings");
    if (a.n() != b.n()) throw error(errc::dimension_mismatch, "matrix dimension mismatch");
}

} // namespace

Mat::Mat(RingDescriptor ring, int n) : ring_(ring), n_(n) {
    if (n < 0) throw error(errc::input, "negative dimension");
    e_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), RingElem::zero(ring_));
}

Mat Mat::identity(const RingDescriptor& ring, int n) {
    Mat m(ring, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RingElem::one(ring);
    return m;
}

Mat Mat::diagonal(const RingDescriptor& ring, std::vector<RingElem> d) {
    Mat m(ring, static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m.at(i, i) = std::move(d[static_cast<size_t>(i)]);
    return m;
}

Mat Mat::scalar_mat(const RingDescriptor& ring, int n, const RingElem& v) {
    Mat m(ring, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = v;
    return m;
}

Mat Mat::transvection(const RingDescriptor& ring, int n, int i, int j, const RingElem& x) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw error(errc::input, "transvection indices out of range or equal");
    Mat m = identity(ring, n);
    m.at(i, j) = x;
    return m;
}

bool Mat::is_diagonal() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    return *this == identity(ring_, n_);
}

Mat operator*(const Mat& a, const Mat& b) {
    require_compatible(a, b);
    Mat out(a.ring(), a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) {
            RingElem acc = RingElem::zero(a.ring());
            for (int l = 0; l < a.n(); ++l) acc = acc + a.at(i, l) * b.at(l, j);
            out.at(i, j) = std::move(acc);
        }
    return out;
}

Mat operator+(const Mat& a, const Mat& b) {
    require_compatible(a, b);
    Mat out(a.ring(), a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

Mat scale(const RingElem& s, const Mat& a) {
    Mat out(a.ring(), a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) out.at(i, j) = s * a.at(i, j);
    return out;
}

Mat transpose(const Mat& a) {
    Mat out(a.ring(), a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) out.at(i, j) = a.at(j, i);
    return out;
}

std::vector<Rat> component_of(const Mat& a, int t) {
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(a.n()) * static_cast<size_t>(a.n()));
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) out.push_back(a.at(i, j).comp(t));
    return out;
}

Mat from_components(const RingDescriptor& ring, int n, const std::vector<std::vector<Rat>>& comps) {
    if (static_cast<int>(comps.size()) != ring.k)
        throw error(errc::descriptor_mismatch, "component count mismatch");
    Mat out(ring, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RingElem e = RingElem::zero(ring);
            for (int t = 0; t < ring.k; ++t)
                e.comp(t) = comps[static_cast<size_t>(t)][static_cast<size_t>(i * n + j)];
            out.at(i, j) = std::move(e);
        }
    return out;
}

Mat mat_inv(const Mat& a) {
    const int n = a.n();
    const int k = a.ring().k;
    std::vector<std::vector<Rat>> inv_comps;
    inv_comps.reserve(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) {
        // Gauss-Jordan on [A | I] in the rational component
        std::vector<Rat> m = component_of(a, t);
        std::vector<Rat> r(static_cast<size_t>(n) * static_cast<size_t>(n), Rat(0));
        for (int i = 0; i < n; ++i) r[static_cast<size_t>(i * n + i)] = 1;
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int row = col; row < n; ++row)
                if (m[static_cast<size_t>(row * n + col)] != 0) {
                    pivot = row;
                    break;
                }
            if (pivot < 0)
                throw error(errc::singular, "matrix singular in component " + std::to_string(t));
            if (pivot != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(m[static_cast<size_t>(pivot * n + j)], m[static_cast<size_t>(col * n + j)]);
                    std::swap(r[static_cast<size_t>(pivot * n + j)], r[static_cast<size_t>(col * n + j)]);
                }
            Rat p = m[static_cast<size_t>(col * n + col)];
            for (int j = 0; j < n; ++j) {
                m[static_cast<size_t>(col * n + j)] /= p;
                r[static_cast<size_t>(col * n + j)] /= p;
            }
            for (int row = 0; row < n; ++row) {
                if (row == col) continue;
                Rat f = m[static_cast<size_t>(row * n + col)];
                if (f == 0) continue;
                for (int j = 0; j < n; ++j) {
                    m[static_cast<size_t>(row * n + j)] -= f * m[static_cast<size_t>(col * n + j)];
                    r[static_cast<size_t>(row * n + j)] -= f * r[static_cast<size_t>(col * n + j)];
                }
            }
        }
        inv_comps.push_back(std::move(r));
    }
    return from_components(a.ring(), n, inv_comps);
}

RingElem det(const Mat& a) {
    const int n = a.n();
    if (n == 0) return RingElem::one(a.ring());
    RingElem out = RingElem::zero(a.ring());
    for (int t = 0; t < a.ring().k; ++t) {
        // Bareiss fraction-free elimination; divisions are exact.
        std::vector<Rat> m = component_of(a, t);
        Rat prev(1);
        int sign = 1;
        bool zero = false;
        for (int col = 0; col < n && !zero; ++col) {
            int pivot = -1;
            for (int row = col; row < n; ++row)
                if (m[static_cast<size_t>(row * n + col)] != 0) {
                    pivot = row;
                    break;
                }
            if (pivot < 0) {
                zero = true;
                break;
            }
            if (pivot != col) {
                sign = -sign;
                for (int j = 0; j < n; ++j)
                    std::swap(m[static_cast<size_t>(pivot * n + j)], m[static_cast<size_t>(col * n + j)]);
            }
            for (int row = col + 1; row < n; ++row) {
                for (int j = col + 1; j < n; ++j) {
                    m[static_cast<size_t>(row * n + j)] =
                        (m[static_cast<size_t>(row * n + j)] * m[static_cast<size_t>(col * n + col)] -
                         m[static_cast<size_t>(row * n + col)] * m[static_cast<size_t>(col * n + j)]) /
                        prev;
                }
                m[static_cast<size_t>(row * n + col)] = 0;
            }
            prev = m[static_cast<size_t>(col * n + col)];
        }
        out.comp(t) = zero ? Rat(0) : Rat(sign * m[static_cast<size_t>(n * n - 1)]);
    }
    return out;
}

Mat perm_matrix(const RingDescriptor& ring, const PermSpec& p) {
    Mat m(ring, p.n());
    for (int j = 0; j < p.n(); ++j) m.at(p(j), j) = RingElem::one(ring);
    return m;
}

bool entrywise_nonneg(const Mat& a) {
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (!is_nonneg(a.at(i, j))) return false;
    return true;
}

bool is_member(const Mat& a, MemberClass cls, const BlockLayout* layout) {
    switch (cls) {
    case MemberClass::gn:
        return entrywise_nonneg(a) && is_unit(det(a));
    case MemberClass::gamma_n: {
        if (!entrywise_nonneg(a) || !is_unit(det(a))) return false;
        return entrywise_nonneg(mat_inv(a));
    }
    case MemberClass::dn: {
        if (!a.is_diagonal()) return false;
        for (int i = 0; i < a.n(); ++i)
            if (!is_pos_unit(a.at(i, i))) return false;
        return true;
    }
    case MemberClass::block_scalar_involution: {
        BlockLayout local;
        if (!layout) {
            local = block_decomposition(a.n());
            layout = &local;
        }
        if (layout->n() != a.n()) throw error(errc::input, "layout does not match dimension");
        if (!a.is_diagonal()) return false;
        for (int i = 0; i < a.n(); ++i)
            if (!is_pos_unit(a.at(i, i))) return false;
        if (!(a * a).is_identity()) return false;
        for (int b = 0; b < layout->block_count(); ++b) {
            const int off = layout->offsets[static_cast<size_t>(b)];
            for (int i = 1; i < layout->sizes[static_cast<size_t>(b)]; ++i)
                if (a.at(off + i, off + i) != a.at(off, off)) return false;
        }
        return true;
    }
    }
    return false;
}

std::string to_string(const Mat& a) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < a.n(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < a.n(); ++j) {
            if (j) os << ' ';
            os << to_string(a.at(i, j));
        }
    }
    os << ']';
    return os.str();
}

std::optional<MonomialForm> monomial_form(const std::vector<Rat>& comp, int n) {
    std::vector<int> img(static_cast<size_t>(n), -1);
    std::vector<Rat> coef(static_cast<size_t>(n), Rat(0));
    std::vector<bool> row_used(static_cast<size_t>(n), false);
    for (int j = 0; j < n; ++j) {
        int row = -1;
        for (int i = 0; i < n; ++i) {
            if (comp[static_cast<size_t>(i * n + j)] != 0) {
                if (row >= 0) return std::nullopt; // two nonzeros in a column
                row = i;
            }
        }
        if (row < 0) return std::nullopt;
        if (row_used[static_cast<size_t>(row)]) return std::nullopt;
        if (comp[static_cast<size_t>(row * n + j)] < 0) return std::nullopt;
        row_used[static_cast<size_t>(row)] = true;
        img[static_cast<size_t>(j)] = row;
        coef[static_cast<size_t>(row)] = comp[static_cast<size_t>(row * n + j)];
    }
    return MonomialForm{PermSpec::from_images(std::move(img)), std::move(coef)};
}

Mat monomial_matrix(int n, const MonomialForm& m) {
    Mat out(RingDescriptor{1}, n);
    for (int j = 0; j < n; ++j)
        out.at(m.perm(j), j) = RingElem(std::vector<Rat>{m.coef[static_cast<size_t>(m.perm(j))]});
    return out;
}

Mat merge_monomials(const RingDescriptor& ring, int n, const std::vector<MonomialForm>& forms) {
    if (static_cast<int>(forms.size()) != ring.k)
        throw error(errc::descriptor_mismatch, "one monomial form per component required");
    Mat out(ring, n);
    for (int t = 0; t < ring.k; ++t) {
        const MonomialForm& f = forms[static_cast<size_t>(t)];
        for (int j = 0; j < n; ++j) out.at(f.perm(j), j).comp(t) = f.coef[static_cast<size_t>(f.perm(j))];
    }
    return out;
}

} // namespace ordmat
