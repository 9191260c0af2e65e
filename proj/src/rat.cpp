#include "ordmat/rat.hpp"

#include <cctype>

#include "ordmat/error.hpp"

namespace ordmat {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw error(errc::input, "empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw error(errc::input, "bad rational literal: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw error(errc::input, "bad rational literal: " + s);
    if (q.get_den() == 0)
        throw error(errc::input, "zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

Rat rat_abs(const Rat& r) {
    return r < 0 ? Rat(-r) : r;
}

Rat rat_pow(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    if (r == 0) {
        if (e < 0) throw error(errc::not_invertible, "0 raised to a negative power");
        return Rat(0);
    }
    Rat base = r;
    bool neg = e < 0;
    unsigned long m = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), m);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), m);
    Rat out(num, den);
    out.canonicalize();
    if (neg) {
        if (out == 0) throw error(errc::not_invertible, "0 raised to a negative power");
        out = 1 / out;
    }
    return out;
}

std::optional<long> log2_exact(const Rat& r) {
    if (r <= 0) return std::nullopt;
    const mpz_class& num = r.get_num();
    const mpz_class& den = r.get_den();
    if (den == 1) {
        // power of two iff a single set bit
        if (mpz_popcount(num.get_mpz_t()) != 1) return std::nullopt;
        return static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
    }
    if (num == 1) {
        if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
        return -static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
    }
    return std::nullopt;
}

} // namespace ordmat
