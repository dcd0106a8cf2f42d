#pragma once

// Exact arithmetic in Q(t) together with the t-adic valuation.
//
// Text format (used by the CLI for witness matrices):
//
//   ratfn   := poly | "(" poly ")" [ "/" "(" poly ")" ]
//   poly    := ["-"] term { ("+" | "-") term }
//   term    := integer [ "*" "t" [ "^" integer ] ] | "t" [ "^" integer ]
//
// Whitespace is ignored. Exponents are non-negative; Laurent terms are
// written as fractions, e.g. `(1)/(t)`. Printing emits terms in increasing
// degree with integer coefficients: `3*t^2 + t^3`, `(2*t)/(4 + t)`.

#include "cubic/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cubic {

class ValuationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense univariate polynomial over Q; coefficient i multiplies t^i.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    explicit QPoly(const Rational& c);

    static QPoly monomial(const Rational& c, std::size_t degree);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    /// Lowest exponent with a nonzero coefficient.
    long trailing_degree() const;
    const Rational& coeff(std::size_t i) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly scaled(const Rational& c) const;
    /// Multiplies by t^-k; requires the k lowest coefficients to vanish.
    QPoly shift_down(std::size_t k) const;

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division, b nonzero.
    static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
    /// Monic gcd; gcd(0, 0) = 0.
    static QPoly gcd(QPoly a, QPoly b);

    Rational evaluate(const Rational& t) const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Element of Q(t), kept reduced with a monic denominator.
class RatFn {
public:
    RatFn() : den_(Rational(1)) {}
    RatFn(long c) : RatFn(Rational(c)) {}
    RatFn(const Rational& c);
    RatFn(QPoly num, QPoly den);

    /// c * t^k for any integer k.
    static RatFn monomial(const Rational& c, long k);
    static RatFn t_power(long k) { return monomial(Rational(1), k); }

    bool is_zero() const { return num_.is_zero(); }
    const QPoly& numerator() const { return num_; }
    const QPoly& denominator() const { return den_; }

    RatFn operator-() const;
    RatFn& operator+=(const RatFn& o);
    RatFn& operator-=(const RatFn& o);
    RatFn& operator*=(const RatFn& o);
    RatFn& operator/=(const RatFn& o);
    friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
    friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
    friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
    friend RatFn operator/(RatFn a, const RatFn& b) { return a /= b; }
    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

private:
    void normalize();
    QPoly num_;
    QPoly den_;
};

/// nu(f); throws ValuationError on f = 0.
long valuation(const RatFn& f);
/// (t^{-nu(f)} f)(0); throws ValuationError on f = 0.
Rational leading_coefficient(const RatFn& f);
/// Valuation if nonzero, nullopt for zero.
std::optional<long> valuation_or_none(const RatFn& f);

enum class FieldOp { add, sub, mul, div };
RatFn field_arithmetic(const RatFn& f, const RatFn& g, FieldOp op);

RatFn parse_ratfn(std::string_view text);
std::string to_string(const QPoly& p);
std::string to_string(const RatFn& f);

} // namespace cubic

namespace Eigen {
template <>
struct NumTraits<cubic::RatFn> : GenericNumTraits<cubic::RatFn> {
    using Real = cubic::RatFn;
    using NonInteger = cubic::RatFn;
    using Nested = cubic::RatFn;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 500,
        MulCost = 500
    };
    static inline Real epsilon() { return Real(); }
    static inline Real dummy_precision() { return Real(); }
    static inline int digits10() { return 0; }
};
} // namespace Eigen
