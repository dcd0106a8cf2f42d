#include "cubic/scalar.hpp"

namespace cubic {

IntVec primitive(const RatVec& v) {
    Integer l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[i].get_den_mpz_t());
    IntVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        out[i] = s.get_num();
    }
    return primitive(out);
}

IntVec primitive(const IntVec& v) {
    Integer g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    if (g == 0 || g == 1) return v;
    IntVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return out;
}

RatVec to_rational(const IntVec& v) {
    RatVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

RatMat to_rational(const IntMat& m) {
    RatMat out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

std::string to_string(const Integer& z) { return z.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

std::size_t IntVecHash::operator()(const IntVec& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::size_t x = mpz_get_si(v[i].get_mpz_t()) ^ (mpz_sizeinbase(v[i].get_mpz_t(), 2) << 40);
        h = (h ^ x) * 1099511628211ull;
    }
    return h;
}

} // namespace cubic
