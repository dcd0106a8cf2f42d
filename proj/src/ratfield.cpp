#include "cubic/ratfield.hpp"

#include <cctype>
#include <utility>

namespace cubic {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
}

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
    if (c == 0) return {};
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long QPoly::trailing_degree() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return static_cast<long>(i);
    return -1;
}

const Rational& QPoly::coeff(std::size_t i) const {
    static const Rational zero(0);
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return QPoly(std::move(v));
}

QPoly QPoly::scaled(const Rational& c) const {
    if (c == 0) return {};
    QPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

QPoly QPoly::shift_down(std::size_t k) const {
    if (k == 0 || is_zero()) return *this;
    for (std::size_t i = 0; i < k && i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) throw std::logic_error("shift_down: nonzero low coefficient");
    return QPoly(std::vector<Rational>(coeffs_.begin() + static_cast<long>(std::min(k, coeffs_.size())), coeffs_.end()));
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs_;
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<Rational> quo(rem.size() > db ? rem.size() - db : 0);
    const Rational lead_inv = 1 / b.leading();
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        Rational c = rem[k] * lead_inv;
        quo[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coeffs_[j];
    }
    q = QPoly(std::move(quo));
    r = QPoly(std::move(rem));
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(1 / a.leading());
}

Rational QPoly::evaluate(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

RatFn::RatFn(const Rational& c) : num_(c), den_(Rational(1)) {}

RatFn::RatFn(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFn: zero denominator");
    normalize();
}

void RatFn::normalize() {
    if (num_.is_zero()) {
        den_ = QPoly(Rational(1));
        return;
    }
    if (den_.degree() > 0) {
        QPoly g = QPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            QPoly q, r;
            QPoly::divmod(num_, g, q, r);
            num_ = q;
            QPoly::divmod(den_, g, q, r);
            den_ = q;
        }
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
        num_ = num_.scaled(1 / lead);
        den_ = den_.scaled(1 / lead);
    }
}

RatFn RatFn::monomial(const Rational& c, long k) {
    if (k >= 0) return RatFn(QPoly::monomial(c, static_cast<std::size_t>(k)), QPoly(Rational(1)));
    return RatFn(QPoly(c), QPoly::monomial(Rational(1), static_cast<std::size_t>(-k)));
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFn& RatFn::operator+=(const RatFn& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ = num_ + o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFn& RatFn::operator-=(const RatFn& o) { return *this += -o; }

RatFn& RatFn::operator*=(const RatFn& o) {
    if (is_zero() || o.is_zero()) return *this = RatFn();
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFn& RatFn::operator/=(const RatFn& o) {
    if (o.is_zero()) throw std::domain_error("RatFn: division by zero");
    if (is_zero()) return *this;
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

long valuation(const RatFn& f) {
    if (f.is_zero()) throw ValuationError("valuation of zero");
    return f.numerator().trailing_degree() - f.denominator().trailing_degree();
}

std::optional<long> valuation_or_none(const RatFn& f) {
    if (f.is_zero()) return std::nullopt;
    return valuation(f);
}

Rational leading_coefficient(const RatFn& f) {
    if (f.is_zero()) throw ValuationError("leading coefficient of zero");
    const auto& n = f.numerator();
    const auto& d = f.denominator();
    return n.coeff(static_cast<std::size_t>(n.trailing_degree())) /
           d.coeff(static_cast<std::size_t>(d.trailing_degree()));
}

RatFn field_arithmetic(const RatFn& f, const RatFn& g, FieldOp op) {
    switch (op) {
    case FieldOp::add: return f + g;
    case FieldOp::sub: return f - g;
    case FieldOp::mul: return f * g;
    case FieldOp::div: return f / g;
    }
    throw std::logic_error("bad FieldOp");
}

// ---- text format ----

namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++i;
        return true;
    }
    bool done() {
        skip();
        return i == s.size();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("ratfn parse error at offset " + std::to_string(i) + ": " + what);
    }
    Integer integer() {
        skip();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail("expected integer");
        Integer z(std::string(s.substr(i, j - i)));
        i = j;
        return z;
    }
    bool digit_next() {
        skip();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
};

QPoly parse_term(Cursor& c) {
    Integer coef = 1;
    bool has_coef = false;
    if (c.digit_next()) {
        coef = c.integer();
        has_coef = true;
        if (!c.eat('*')) return QPoly(Rational(coef));
    }
    if (!c.eat('t')) {
        if (has_coef) c.fail("expected 't' after '*'");
        c.fail("expected term");
    }
    std::size_t e = 1;
    if (c.eat('^')) e = c.integer().get_ui();
    return QPoly::monomial(Rational(coef), e);
}

QPoly parse_poly(Cursor& c) {
    QPoly acc;
    bool neg = c.eat('-');
    QPoly t = parse_term(c);
    acc = neg ? -t : t;
    for (;;) {
        if (c.eat('+')) acc = acc + parse_term(c);
        else if (c.eat('-')) acc = acc - parse_term(c);
        else break;
    }
    return acc;
}

} // namespace

RatFn parse_ratfn(std::string_view text) {
    Cursor c{text};
    QPoly num, den(Rational(1));
    if (c.eat('(')) {
        num = parse_poly(c);
        if (!c.eat(')')) c.fail("expected ')'");
        if (c.eat('/')) {
            if (!c.eat('(')) c.fail("expected '(' after '/'");
            den = parse_poly(c);
            if (!c.eat(')')) c.fail("expected ')'");
        }
    } else {
        num = parse_poly(c);
    }
    if (!c.done()) c.fail("trailing input");
    if (den.is_zero()) c.fail("zero denominator");
    // integer-coefficient text may describe rational functions with a
    // non-monic denominator; RatFn normalizes.
    return RatFn(num, den);
}

std::string to_string(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const Rational& c = p.coeffs()[i];
        if (c == 0) continue;
        Integer a = abs(c.get_num());
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        if (i == 0) s += a.get_str();
        else {
            if (a != 1) s += a.get_str() + "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::string to_string(const RatFn& f) {
    // clear denominators so the text uses integer coefficients
    Integer l = 1;
    for (const auto& c : f.numerator().coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& c : f.denominator().coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    QPoly n = f.numerator().scaled(Rational(l));
    QPoly d = f.denominator().scaled(Rational(l));
    Integer g = 0;
    for (const auto& c : n.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    for (const auto& c : d.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    if (g > 1) {
        n = n.scaled(Rational(1, 1) / Rational(g));
        d = d.scaled(Rational(1, 1) / Rational(g));
    }
    if (d == QPoly(Rational(1))) return to_string(n);
    return "(" + to_string(n) + ")/(" + to_string(d) + ")";
}

} // namespace cubic
