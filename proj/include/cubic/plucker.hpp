#pragma once

// Pluecker coordinates of Gr(3,6), their relations, the signed action of
// S6 and rewriting of binomials modulo the Pluecker ideal.
//
// Coordinates are indexed 0..19 by the sorted triples ijk in lexicographic
// order (123, 124, ..., 456). Monomials in the 20 symbols are exponent
// arrays; text form is `p123*p456 - 2*p124^2*p356`.

#include "cubic/ratfield.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubic {

constexpr int kPl = 20;

using Triple = std::array<int, 3>;

const std::array<Triple, kPl>& plucker_triples();
/// Index of the sorted version of (a,b,c); the entries must be distinct.
int plucker_index(int a, int b, int c);
/// Sign of the permutation sorting (a,b,c).
int triple_sign(int a, int b, int c);
std::string triple_name(int idx);

/// Permutation of {1..6}; img[i-1] = sigma(i).
struct Perm {
    std::array<int, 6> img{1, 2, 3, 4, 5, 6};
    int operator()(int i) const { return img[static_cast<std::size_t>(i - 1)]; }
    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;
};

Perm compose(const Perm& s, const Perm& t); // s after t
Perm inverse(const Perm& s);
int sign(const Perm& s);
/// All 720 permutations in lexicographic order of img.
const std::vector<Perm>& all_perms();
Perm transposition(int i, int j);
std::string to_string(const Perm& s);

/// Induced signed map on Pluecker indices: p_T -> sign[T] * p_{target[T]}.
struct SignedPermutation {
    Perm sigma;
    std::array<int, kPl> target{};
    std::array<int, kPl> sign{};
    explicit SignedPermutation(const Perm& s);
};

using PMono = std::array<std::uint8_t, kPl>;

struct PTerm {
    Rational coef;
    PMono exp{};
};

/// Polynomial in the Pluecker symbols; terms sorted by exponent, no zeros.
class PPoly {
public:
    PPoly() = default;
    explicit PPoly(std::vector<PTerm> terms);
    static PPoly monomial(const Rational& c, const PMono& e);
    static PPoly variable(int idx);

    const std::vector<PTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    friend PPoly operator+(const PPoly& a, const PPoly& b);
    friend PPoly operator-(const PPoly& a, const PPoly& b);
    friend PPoly operator*(const PPoly& a, const PPoly& b);
    PPoly scaled(const Rational& c) const;
    friend bool operator==(const PPoly& a, const PPoly& b);
    friend bool operator<(const PPoly& a, const PPoly& b);

private:
    std::vector<PTerm> terms_;
};

/// A difference u - v of two signed monomials, both nonzero.
struct PluckerBinomial {
    PTerm u, v;
    PPoly poly() const;
    static std::optional<PluckerBinomial> from(const PPoly& p);
};

struct PluckerPoint {
    std::array<RatFn, kPl> coords;
    std::array<std::optional<long>, kPl> vals;
    /// Valuations as a vector; entries of zero coordinates are absent, so
    /// callers must check vals first when the point is not generic.
    IntVec valuation_vector() const;
};

/// 3x3 minors of M (columns i<j<k, fixed row order).
PluckerPoint plucker_from_matrix(const Mat<RatFn>& m);
PluckerPoint plucker_from_coords(std::array<RatFn, kPl> coords);

/// Quadratic Grassmann-Pluecker relations: all three-term relations first,
/// then the four-term ones; together they span the degree-2 part of I_pl.
const std::vector<PPoly>& plucker_relations();
const std::vector<PPoly>& three_term_relations();

RatFn evaluate(const PPoly& p, const PluckerPoint& pt);
Rational evaluate(const PPoly& p, const std::array<Rational, kPl>& pt);
/// Linear functional w -> exponent . w (tropicalized monomial).
IntVec exponent_vector(const PMono& e);
Integer trop_value(const PMono& e, const IntVec& w);

PluckerPoint act(const SignedPermutation& s, const PluckerPoint& p);
IntVec act(const SignedPermutation& s, const IntVec& w);
/// Returns the sign picked up and the permuted exponent.
std::pair<int, PMono> act(const SignedPermutation& s, const PMono& e);
PPoly act(const SignedPermutation& s, const PPoly& p);
PluckerBinomial act(const SignedPermutation& s, const PluckerBinomial& b);

/// Breadth-first rewriting of b by three-term relations. Intermediate
/// polynomials may have up to `max_terms` terms; only two-term results are
/// returned. The input itself is always included.
std::vector<PPoly> equivalent_binomials(const PPoly& b, int depth, int max_terms = 3);

/// Same search, stopping at the first binomial accepted by `accept`.
std::optional<PPoly> find_equivalent_binomial(const PPoly& b, int depth, int max_terms,
                                              const std::function<bool(const PPoly&)>& accept);

/// Membership of p in the degree-matched graded piece of I_pl, by linear
/// algebra over the span of monomial multiples of plucker_relations().
bool in_plucker_ideal(const PPoly& p);

std::string to_string(const PMono& e);
std::string to_string(const PPoly& p);
PPoly parse_ppoly(std::string_view text);

} // namespace cubic
