#pragma once

// Exact scalar types and the Eigen aliases used throughout the library.

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    using Real = mpz_class;
    using NonInteger = mpq_class;
    using Nested = mpz_class;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 40,
        MulCost = 60
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace cubic {

using Integer = mpz_class;
using Rational = mpq_class;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntVec = Vec<Integer>;
using IntMat = Mat<Integer>;
using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;

/// Scales a rational vector to the unique primitive integer vector on the
/// same ray (gcd of entries 1). The zero vector maps to itself.
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);

template <class Scalar>
bool is_zero(const Vec<Scalar>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != 0) return false;
    return true;
}

RatVec to_rational(const IntVec& v);
RatMat to_rational(const IntMat& m);

/// Lexicographic comparison, used for canonical orderings of exact vectors.
template <class Scalar>
bool lex_less(const Vec<Scalar>& a, const Vec<Scalar>& b) {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

template <class Scalar>
bool vec_equal(const Vec<Scalar>& a, const Vec<Scalar>& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
std::string to_string(const IntVec& v);

struct IntVecHash {
    std::size_t operator()(const IntVec& v) const;
};
struct IntVecEq {
    bool operator()(const IntVec& a, const IntVec& b) const { return vec_equal(a, b); }
};

} // namespace cubic
