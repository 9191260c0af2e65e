#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordmat/genword.hpp"
#include "ordmat/matrix.hpp"

namespace ordmat {

// Determinant-based central homomorphism: per component j the value
// |det A|_j ^ exps[j], with a reserved sign-character flag per component.
// The sign involution of the shipped rings is 1, so the flags are carried
// through the representation but contribute no factor.
struct HomothetySpec {
    std::vector<long> exps;
    std::vector<int> sign_flags;

    static HomothetySpec trivial(const RingDescriptor& ring);
    RingElem lambda(const Mat& a) const; // central scalar value, in R+*
    bool is_trivial() const;

    bool operator==(const HomothetySpec&) const = default;
};

struct InnerFactor {
    Mat m;
};
struct RingMapFactor {
    RingAutomorphism c;
};
struct HomothetyFactor {
    HomothetySpec h;
};

using Factor = std::variant<InnerFactor, RingMapFactor, HomothetyFactor>;

// Factors are listed outermost first (function-composition order):
// apply(A) = f0(f1(...fm(A))).
struct AutomorphismSpec {
    RingDescriptor ring;
    int n = 0;
    std::vector<Factor> factors;
};

Mat apply_ring_map(const RingAutomorphism& c, const Mat& a);

class Automorphism {
public:
    explicit Automorphism(AutomorphismSpec spec); // validates factors
    Mat apply(const Mat& a) const;                // pre: a in G_n
    const AutomorphismSpec& spec() const { return spec_; }
    const RingDescriptor& ring() const { return spec_.ring; }
    int n() const { return spec_.n; }

private:
    AutomorphismSpec spec_;
    std::vector<Mat> inner_inverse_; // parallel to factors; empty Mat elsewhere
};

Automorphism make_automorphism(AutomorphismSpec spec);

// Uniform oracle view of an automorphism: a pure map G_n -> G_n. Responses
// for the wrapped Automorphism are memoized (evaluation is pure).
class Oracle {
public:
    Oracle(const Automorphism& phi); // keeps a copy; memoizes
    Oracle(std::function<Mat(const Mat&)> f, RingDescriptor ring, int n);

    Mat operator()(const Mat& a) const;
    const RingDescriptor& ring() const { return ring_; }
    int n() const { return n_; }

private:
    std::function<Mat(const Mat&)> f_;
    RingDescriptor ring_;
    int n_ = 0;
    std::shared_ptr<std::map<std::string, Mat>> memo_;
};

// X -> m * base(X) * m^{-1}
Oracle conjugated(const Oracle& base, const Mat& m);
// X -> c(base(X)) entrywise
Oracle ring_mapped(const Oracle& base, const RingAutomorphism& c);

struct CheckReport {
    bool pass = true;
    long checks = 0;
    std::vector<std::string> failures;
};

// Samples evaluated words and checks multiplicativity, preservation of G_n
// nonnegativity, Gamma_n and D_n membership, unit lambda on the center, and
// the diagonal-shape law for diag[a,b,...,b] when the oracle fixes the
// permutation matrices up to scalars.
CheckReport sample_check_automorphism(const Oracle& phi, const std::vector<GenWord>& words,
                                      uint64_t seed);

} // namespace ordmat
