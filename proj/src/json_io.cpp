#include "ordmat/json_io.hpp"

#include <nlohmann/json.hpp>

#include "ordmat/error.hpp"

namespace ordmat {

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw error(errc::input, std::string("missing key: ") + key);
    return j.at(key);
}

Rat rat_from_json(const json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw error(errc::input, "rational must be a string or integer: " + j.dump());
}

std::vector<int> perm_images_from_json(const json& j) {
    if (!j.is_array()) throw error(errc::input, "permutation must be an array of 1-based images");
    std::vector<int> img;
    img.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw error(errc::input, "permutation image must be an integer");
        img.push_back(v.get<int>() - 1);
    }
    return img;
}

} // namespace

json to_json(const RingDescriptor& ring) {
    return json{{"kind", "product_rationals"}, {"k", ring.k}};
}

RingDescriptor ring_from_json(const json& j) {
    const json* d = &j;
    if (j.is_object() && j.contains("ring")) d = &j.at("ring");
    if (d->is_string()) {
        // shorthand "q", "q2", ...
        std::string s = d->get<std::string>();
        if (s.empty() || s[0] != 'q') throw error(errc::input, "unknown ring shorthand: " + s);
        int k = s.size() == 1 ? 1 : std::atoi(s.c_str() + 1);
        if (k < 1) throw error(errc::input, "unknown ring shorthand: " + s);
        return RingDescriptor{k};
    }
    if (!d->is_object()) throw error(errc::input, "ring descriptor must be an object");
    if (need(*d, "kind").get<std::string>() != "product_rationals")
        throw error(errc::input, "unsupported ring kind");
    int k = need(*d, "k").get<int>();
    if (k < 1) throw error(errc::input, "ring width must be >= 1");
    return RingDescriptor{k};
}

json to_json(const RingElem& e) {
    if (e.k() == 1) return rat_to_string(e.comp(0));
    json arr = json::array();
    for (int t = 0; t < e.k(); ++t) arr.push_back(rat_to_string(e.comp(t)));
    return arr;
}

RingElem elem_from_json(const json& j, const RingDescriptor& ring) {
    if (j.is_string() || j.is_number_integer()) {
        if (ring.k != 1)
            throw error(errc::input, "bare rational given for a ring of width " +
                                         std::to_string(ring.k));
        return RingElem(std::vector<Rat>{rat_from_json(j)});
    }
    if (!j.is_array() || static_cast<int>(j.size()) != ring.k)
        throw error(errc::input, "ring element must be an array of " + std::to_string(ring.k) +
                                     " rationals");
    std::vector<Rat> comps;
    comps.reserve(j.size());
    for (const auto& v : j) comps.push_back(rat_from_json(v));
    return RingElem(std::move(comps));
}

json to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.n()}, {"entries", std::move(rows)}};
}

Mat mat_from_json(const json& j, const RingDescriptor& ring) {
    int n = need(j, "n").get<int>();
    const json& entries = need(j, "entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != n)
        throw error(errc::input, "entries must be an n x n array");
    Mat m(ring, n);
    for (int i = 0; i < n; ++i) {
        const json& row = entries.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw error(errc::input, "entries must be an n x n array");
        for (int c = 0; c < n; ++c) m.at(i, c) = elem_from_json(row.at(static_cast<size_t>(c)), ring);
    }
    return m;
}

json to_json(const PermSpec& p) {
    json arr = json::array();
    for (int j = 0; j < p.n(); ++j) arr.push_back(p(j) + 1);
    return arr;
}

PermSpec perm_from_json(const json& j) {
    return PermSpec::from_images(perm_images_from_json(j));
}

json to_json(const GenWord& w) {
    json arr = json::array();
    for (const Letter& l : w.letters) {
        if (const auto* p = std::get_if<PermLetter>(&l)) {
            arr.push_back(json{{"perm", to_json(p->perm)}});
        } else if (const auto* d = std::get_if<DiagLetter>(&l)) {
            json dd = json::array();
            for (const RingElem& e : d->d) dd.push_back(to_json(e));
            arr.push_back(json{{"diag", std::move(dd)}});
        } else {
            const auto& e = std::get<ElemLetter>(l);
            arr.push_back(json{
                {"elem", json{{"i", e.i + 1}, {"j", e.j + 1}, {"x", to_json(e.x)}}}});
        }
    }
    return arr;
}

GenWord word_from_json(const json& j, const RingDescriptor& ring, int n) {
    if (!j.is_array()) throw error(errc::input, "word must be an array of letters");
    GenWord w{ring, n, {}};
    for (const json& l : j) {
        if (!l.is_object() || l.size() != 1)
            throw error(errc::input, "letter must be an object with one key");
        if (l.contains("perm")) {
            PermSpec p = perm_from_json(l.at("perm"));
            if (p.n() != n) throw error(errc::input, "permutation letter size mismatch");
            w.letters.push_back(PermLetter{std::move(p)});
        } else if (l.contains("diag")) {
            const json& dd = l.at("diag");
            if (!dd.is_array() || static_cast<int>(dd.size()) != n)
                throw error(errc::input, "diagonal letter must list n entries");
            std::vector<RingElem> d;
            d.reserve(dd.size());
            for (const auto& v : dd) d.push_back(elem_from_json(v, ring));
            w.letters.push_back(DiagLetter{std::move(d)});
        } else if (l.contains("elem")) {
            const json& e = l.at("elem");
            w.letters.push_back(ElemLetter{need(e, "i").get<int>() - 1,
                                           need(e, "j").get<int>() - 1,
                                           elem_from_json(need(e, "x"), ring)});
        } else {
            throw error(errc::input, "unknown letter: " + l.dump());
        }
    }
    validate_word(w);
    return w;
}

json to_json(const EquivChainCert& c) {
    json links = json::array();
    for (const EquivLink& l : c.links) {
        links.push_back(json{{"P", to_json(l.p)},
                             {"Pt", to_json(l.p_tilde)},
                             {"Q", to_json(l.q)},
                             {"Qt", to_json(l.q_tilde)},
                             {"A0", to_json(l.a0)},
                             {"A1", to_json(l.a1)}});
    }
    return links;
}

EquivChainCert chain_from_json(const json& j) {
    RingDescriptor ring = ring_from_json(j);
    int n = need(j, "n").get<int>();
    const json& links = need(j, "links");
    if (!links.is_array()) throw error(errc::input, "links must be an array");
    EquivChainCert cert;
    for (const json& l : links) {
        EquivLink link{word_from_json(need(l, "P"), ring, n),
                       word_from_json(need(l, "Pt"), ring, n),
                       word_from_json(need(l, "Q"), ring, n),
                       word_from_json(need(l, "Qt"), ring, n),
                       mat_from_json(need(l, "A0"), ring),
                       mat_from_json(need(l, "A1"), ring)};
        cert.links.push_back(std::move(link));
    }
    return cert;
}

json to_json(const RingAutomorphism& c) {
    json arr = json::array();
    for (int v : c.perm) arr.push_back(v + 1);
    return arr;
}

RingAutomorphism ring_automorphism_from_json(const json& j, const RingDescriptor& ring) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "identity") return identity_automorphism(ring);
        if (s == "swap") {
            if (ring.k != 2) throw error(errc::input, "\"swap\" requires k = 2");
            return RingAutomorphism{{1, 0}};
        }
        throw error(errc::input, "unknown ring map: " + s);
    }
    std::vector<int> perm = perm_images_from_json(j);
    if (static_cast<int>(perm.size()) != ring.k)
        throw error(errc::input, "ring map width mismatch");
    return RingAutomorphism{std::move(perm)};
}

json to_json(const HomothetySpec& h) {
    return json{{"t", h.exps}, {"sign", h.sign_flags}};
}

HomothetySpec homothety_from_json(const json& j, const RingDescriptor& ring) {
    HomothetySpec h = HomothetySpec::trivial(ring);
    const json& t = need(j, "t");
    if (!t.is_array() || static_cast<int>(t.size()) != ring.k)
        throw error(errc::input, "homothety exponent vector width mismatch");
    for (int i = 0; i < ring.k; ++i) h.exps[static_cast<size_t>(i)] = t.at(static_cast<size_t>(i)).get<long>();
    if (j.contains("sign")) {
        const json& s = j.at("sign");
        if (!s.is_array() || static_cast<int>(s.size()) != ring.k)
            throw error(errc::input, "homothety sign vector width mismatch");
        for (int i = 0; i < ring.k; ++i)
            h.sign_flags[static_cast<size_t>(i)] = s.at(static_cast<size_t>(i)).get<int>();
    }
    return h;
}

json to_json(const AutomorphismSpec& s) {
    json factors = json::array();
    for (const Factor& f : s.factors) {
        if (const auto* inner = std::get_if<InnerFactor>(&f))
            factors.push_back(json{{"inner", to_json(inner->m)}});
        else if (const auto* rm = std::get_if<RingMapFactor>(&f))
            factors.push_back(json{{"ring_map", to_json(rm->c)}});
        else
            factors.push_back(json{{"homothety", to_json(std::get<HomothetyFactor>(f).h)}});
    }
    return json{{"ring", to_json(s.ring)}, {"n", s.n}, {"factors", std::move(factors)}};
}

AutomorphismSpec automorphism_spec_from_json(const json& j) {
    AutomorphismSpec spec;
    spec.ring = ring_from_json(j);
    spec.n = need(j, "n").get<int>();
    const json& factors = need(j, "factors");
    if (!factors.is_array()) throw error(errc::input, "factors must be an array");
    for (const json& f : factors) {
        if (!f.is_object() || f.size() != 1)
            throw error(errc::input, "factor must be an object with one key");
        if (f.contains("inner"))
            spec.factors.push_back(InnerFactor{mat_from_json(f.at("inner"), spec.ring)});
        else if (f.contains("ring_map"))
            spec.factors.push_back(
                RingMapFactor{ring_automorphism_from_json(f.at("ring_map"), spec.ring)});
        else if (f.contains("homothety"))
            spec.factors.push_back(
                HomothetyFactor{homothety_from_json(f.at("homothety"), spec.ring)});
        else
            throw error(errc::input, "unknown factor: " + f.dump());
    }
    return spec;
}

json to_json(const Decomposition& d) {
    json gamma = json::array();
    for (const auto& [u, g] : d.central.gamma_table)
        gamma.push_back(json::array({to_json(u), to_json(g)}));
    json lambda = json::array();
    for (const auto& [w, l] : d.lambda_table)
        lambda.push_back(json{{"word", to_json(w)}, {"lambda", to_json(l)}});
    json h = d.central.homothety ? to_json(*d.central.homothety) : json(nullptr);
    return json{{"m", to_json(d.m)},          {"c", to_json(d.c)},
                {"alpha", to_json(d.alpha)},  {"mu_sign", to_json(d.central.mu_sign)},
                {"gamma_table", std::move(gamma)}, {"homothety", std::move(h)},
                {"lambda_table", std::move(lambda)}, {"transcript", d.transcript}};
}

Decomposition decomposition_from_json(const json& j, const RingDescriptor& ring, int n) {
    Decomposition d;
    d.m = mat_from_json(need(j, "m"), ring);
    d.c = ring_automorphism_from_json(need(j, "c"), ring);
    d.alpha = elem_from_json(need(j, "alpha"), ring);
    if (j.contains("mu_sign"))
        d.central.mu_sign = elem_from_json(j.at("mu_sign"), ring);
    else
        d.central.mu_sign = RingElem::one(ring);
    if (j.contains("gamma_table"))
        for (const json& row : j.at("gamma_table"))
            d.central.gamma_table.emplace_back(elem_from_json(row.at(0), ring),
                                               elem_from_json(row.at(1), ring));
    if (j.contains("homothety") && !j.at("homothety").is_null())
        d.central.homothety = homothety_from_json(j.at("homothety"), ring);
    if (j.contains("lambda_table"))
        for (const json& row : j.at("lambda_table"))
            d.lambda_table.emplace_back(word_from_json(need(row, "word"), ring, n),
                                        elem_from_json(need(row, "lambda"), ring));
    return d;
}

} // namespace ordmat
