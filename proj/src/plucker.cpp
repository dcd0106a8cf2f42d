#include "cubic/plucker.hpp"

#include "cubic/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <stdexcept>

namespace cubic {

namespace {

std::array<Triple, kPl> make_triples() {
    std::array<Triple, kPl> t{};
    int n = 0;
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            for (int k = j + 1; k <= 6; ++k) t[static_cast<std::size_t>(n++)] = {i, j, k};
    return t;
}

std::array<int, 216> make_index() {
    std::array<int, 216> idx{};
    idx.fill(-1);
    const auto t = make_triples();
    for (int n = 0; n < kPl; ++n) {
        const auto& a = t[static_cast<std::size_t>(n)];
        idx[static_cast<std::size_t>((a[0] - 1) * 36 + (a[1] - 1) * 6 + (a[2] - 1))] = n;
    }
    return idx;
}

} // namespace

const std::array<Triple, kPl>& plucker_triples() {
    static const auto t = make_triples();
    return t;
}

int triple_sign(int a, int b, int c) {
    int s = 1;
    if (a > b) s = -s;
    if (a > c) s = -s;
    if (b > c) s = -s;
    return s;
}

int plucker_index(int a, int b, int c) {
    static const auto idx = make_index();
    if (a == b || a == c || b == c) throw std::invalid_argument("plucker_index: repeated index");
    std::array<int, 3> s{a, b, c};
    std::sort(s.begin(), s.end());
    return idx[static_cast<std::size_t>((s[0] - 1) * 36 + (s[1] - 1) * 6 + (s[2] - 1))];
}

std::string triple_name(int idx) {
    const auto& t = plucker_triples()[static_cast<std::size_t>(idx)];
    return std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
}

Perm compose(const Perm& s, const Perm& t) {
    Perm r;
    for (int i = 1; i <= 6; ++i) r.img[static_cast<std::size_t>(i - 1)] = s(t(i));
    return r;
}

Perm inverse(const Perm& s) {
    Perm r;
    for (int i = 1; i <= 6; ++i) r.img[static_cast<std::size_t>(s(i) - 1)] = i;
    return r;
}

int sign(const Perm& s) {
    int sg = 1;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (s.img[static_cast<std::size_t>(i)] > s.img[static_cast<std::size_t>(j)]) sg = -sg;
    return sg;
}

const std::vector<Perm>& all_perms() {
    static const std::vector<Perm> perms = [] {
        std::vector<Perm> v;
        Perm p;
        do v.push_back(p);
        while (std::next_permutation(p.img.begin(), p.img.end()));
        return v;
    }();
    return perms;
}

Perm transposition(int i, int j) {
    Perm p;
    std::swap(p.img[static_cast<std::size_t>(i - 1)], p.img[static_cast<std::size_t>(j - 1)]);
    return p;
}

std::string to_string(const Perm& s) {
    std::string r = "[";
    for (int i = 0; i < 6; ++i) r += std::to_string(s.img[static_cast<std::size_t>(i)]);
    return r + "]";
}

SignedPermutation::SignedPermutation(const Perm& s) : sigma(s) {
    const auto& t = plucker_triples();
    for (int n = 0; n < kPl; ++n) {
        const auto& a = t[static_cast<std::size_t>(n)];
        const int x = s(a[0]), y = s(a[1]), z = s(a[2]);
        target[static_cast<std::size_t>(n)] = plucker_index(x, y, z);
        sign[static_cast<std::size_t>(n)] = triple_sign(x, y, z);
    }
}

// ---------------- PPoly ----------------

PPoly::PPoly(std::vector<PTerm> terms) {
    std::sort(terms.begin(), terms.end(), [](const PTerm& a, const PTerm& b) { return a.exp < b.exp; });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().exp == t.exp) terms_.back().coef += t.coef;
        else terms_.push_back(std::move(t));
        if (terms_.back().coef == 0) terms_.pop_back();
    }
}

PPoly PPoly::monomial(const Rational& c, const PMono& e) { return PPoly({PTerm{c, e}}); }

PPoly PPoly::variable(int idx) {
    PMono e{};
    e[static_cast<std::size_t>(idx)] = 1;
    return monomial(Rational(1), e);
}

int PPoly::degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (auto x : terms_.front().exp) d += x;
    return d;
}

PPoly operator+(const PPoly& a, const PPoly& b) {
    std::vector<PTerm> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return PPoly(std::move(t));
}

PPoly operator-(const PPoly& a, const PPoly& b) { return a + b.scaled(Rational(-1)); }

PPoly operator*(const PPoly& a, const PPoly& b) {
    std::vector<PTerm> t;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            PTerm z{x.coef * y.coef, {}};
            for (int i = 0; i < kPl; ++i) z.exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x.exp[static_cast<std::size_t>(i)] + y.exp[static_cast<std::size_t>(i)]);
            t.push_back(std::move(z));
        }
    return PPoly(std::move(t));
}

PPoly PPoly::scaled(const Rational& c) const {
    if (c == 0) return {};
    PPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

bool operator==(const PPoly& a, const PPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

bool operator<(const PPoly& a, const PPoly& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.terms_[i].exp != b.terms_[i].exp) return a.terms_[i].exp < b.terms_[i].exp;
        if (a.terms_[i].coef != b.terms_[i].coef) return a.terms_[i].coef < b.terms_[i].coef;
    }
    return a.terms_.size() < b.terms_.size();
}

PPoly PluckerBinomial::poly() const { return PPoly({u, v}); }

std::optional<PluckerBinomial> PluckerBinomial::from(const PPoly& p) {
    if (p.size() != 2) return std::nullopt;
    return PluckerBinomial{p.terms()[0], p.terms()[1]};
}

// ---------------- points ----------------

IntVec PluckerPoint::valuation_vector() const {
    IntVec w(kPl);
    for (int i = 0; i < kPl; ++i) {
        if (!vals[static_cast<std::size_t>(i)]) throw ValuationError("valuation vector: coordinate p" + triple_name(i) + " vanishes");
        w[i] = *vals[static_cast<std::size_t>(i)];
    }
    return w;
}

PluckerPoint plucker_from_coords(std::array<RatFn, kPl> coords) {
    PluckerPoint p;
    p.coords = std::move(coords);
    bool any = false;
    for (int i = 0; i < kPl; ++i) {
        p.vals[static_cast<std::size_t>(i)] = valuation_or_none(p.coords[static_cast<std::size_t>(i)]);
        any = any || p.vals[static_cast<std::size_t>(i)].has_value();
    }
    if (!any) throw std::invalid_argument("Pluecker point with all coordinates zero");
    return p;
}

PluckerPoint plucker_from_matrix(const Mat<RatFn>& m) {
    if (m.rows() != 3 || m.cols() != 6) throw std::invalid_argument("plucker_from_matrix: need a 3x6 matrix");
    std::array<RatFn, kPl> c;
    const auto& t = plucker_triples();
    bool any = false;
    for (int n = 0; n < kPl; ++n) {
        const auto& a = t[static_cast<std::size_t>(n)];
        c[static_cast<std::size_t>(n)] = det3(m, a[0] - 1, a[1] - 1, a[2] - 1);
        any = any || !c[static_cast<std::size_t>(n)].is_zero();
    }
    if (!any) throw std::invalid_argument("plucker_from_matrix: rank < 3");
    return plucker_from_coords(std::move(c));
}

// ---------------- relations ----------------

namespace {

PPoly signed_product(int s, const std::array<int, 3>& x, const std::array<int, 3>& y) {
    const int sg = s * triple_sign(x[0], x[1], x[2]) * triple_sign(y[0], y[1], y[2]);
    PMono e{};
    ++e[static_cast<std::size_t>(plucker_index(x[0], x[1], x[2]))];
    ++e[static_cast<std::size_t>(plucker_index(y[0], y[1], y[2]))];
    return PPoly::monomial(Rational(sg), e);
}

std::vector<PPoly> make_relations() {
    // sum_k (-1)^k p_{a b x_k} p_{x_0 .. ^x_k .. x_3} over 2-sets {a,b} and
    // 4-sets {x_0..x_3}; a product with a repeated index vanishes.
    std::vector<PPoly> three, four;
    std::set<PPoly> seen;
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b)
            for (int x0 = 1; x0 <= 6; ++x0)
                for (int x1 = x0 + 1; x1 <= 6; ++x1)
                    for (int x2 = x1 + 1; x2 <= 6; ++x2)
                        for (int x3 = x2 + 1; x3 <= 6; ++x3) {
                            const std::array<int, 4> x{x0, x1, x2, x3};
                            PPoly r;
                            for (int k = 0; k < 4; ++k) {
                                std::array<int, 3> s{a, b, x[static_cast<std::size_t>(k)]};
                                std::array<int, 3> t{};
                                int n = 0;
                                for (int j = 0; j < 4; ++j)
                                    if (j != k) t[static_cast<std::size_t>(n++)] = x[static_cast<std::size_t>(j)];
                                if (s[2] == a || s[2] == b) continue;
                                r = r + signed_product(k % 2 ? -1 : 1, s, t);
                            }
                            if (r.is_zero()) continue;
                            if (r.terms().front().coef < 0) r = r.scaled(Rational(-1));
                            if (!seen.insert(r).second) continue;
                            (r.size() == 3 ? three : four).push_back(r);
                        }
    three.insert(three.end(), four.begin(), four.end());
    return three;
}

} // namespace

const std::vector<PPoly>& plucker_relations() {
    static const auto rels = make_relations();
    return rels;
}

const std::vector<PPoly>& three_term_relations() {
    static const auto rels = [] {
        std::vector<PPoly> r;
        for (const auto& p : plucker_relations())
            if (p.size() == 3) r.push_back(p);
        return r;
    }();
    return rels;
}

// ---------------- evaluation ----------------

RatFn evaluate(const PPoly& p, const PluckerPoint& pt) {
    RatFn acc;
    for (const auto& t : p.terms()) {
        RatFn m(t.coef);
        for (int i = 0; i < kPl; ++i)
            for (int e = 0; e < t.exp[static_cast<std::size_t>(i)]; ++e) m *= pt.coords[static_cast<std::size_t>(i)];
        acc += m;
    }
    return acc;
}

Rational evaluate(const PPoly& p, const std::array<Rational, kPl>& pt) {
    Rational acc = 0;
    for (const auto& t : p.terms()) {
        Rational m = t.coef;
        for (int i = 0; i < kPl; ++i)
            for (int e = 0; e < t.exp[static_cast<std::size_t>(i)]; ++e) m *= pt[static_cast<std::size_t>(i)];
        acc += m;
    }
    return acc;
}

IntVec exponent_vector(const PMono& e) {
    IntVec v(kPl);
    for (int i = 0; i < kPl; ++i) v[i] = e[static_cast<std::size_t>(i)];
    return v;
}

Integer trop_value(const PMono& e, const IntVec& w) {
    Integer s = 0;
    for (int i = 0; i < kPl; ++i)
        if (e[static_cast<std::size_t>(i)]) s += w[i] * e[static_cast<std::size_t>(i)];
    return s;
}

// ---------------- action ----------------

PluckerPoint act(const SignedPermutation& s, const PluckerPoint& p) {
    std::array<RatFn, kPl> c;
    for (int n = 0; n < kPl; ++n) {
        const auto tn = static_cast<std::size_t>(s.target[static_cast<std::size_t>(n)]);
        c[tn] = s.sign[static_cast<std::size_t>(n)] > 0 ? p.coords[static_cast<std::size_t>(n)] : -p.coords[static_cast<std::size_t>(n)];
    }
    return plucker_from_coords(std::move(c));
}

IntVec act(const SignedPermutation& s, const IntVec& w) {
    IntVec r(w.size());
    for (int n = 0; n < kPl; ++n) r[s.target[static_cast<std::size_t>(n)]] = w[n];
    return r;
}

std::pair<int, PMono> act(const SignedPermutation& s, const PMono& e) {
    PMono r{};
    int sg = 1;
    for (int n = 0; n < kPl; ++n) {
        const auto k = e[static_cast<std::size_t>(n)];
        if (!k) continue;
        r[static_cast<std::size_t>(s.target[static_cast<std::size_t>(n)])] = k;
        if (s.sign[static_cast<std::size_t>(n)] < 0 && (k % 2)) sg = -sg;
    }
    return {sg, r};
}

PPoly act(const SignedPermutation& s, const PPoly& p) {
    std::vector<PTerm> t;
    for (const auto& x : p.terms()) {
        auto [sg, e] = act(s, x.exp);
        t.push_back(PTerm{x.coef * sg, e});
    }
    return PPoly(std::move(t));
}

PluckerBinomial act(const SignedPermutation& s, const PluckerBinomial& b) {
    auto [su, eu] = act(s, b.u.exp);
    auto [sv, ev] = act(s, b.v.exp);
    return PluckerBinomial{PTerm{b.u.coef * su, eu}, PTerm{b.v.coef * sv, ev}};
}

// ---------------- rewriting ----------------

namespace {

bool divides(const PMono& a, const PMono& b) {
    for (int i = 0; i < kPl; ++i)
        if (a[static_cast<std::size_t>(i)] > b[static_cast<std::size_t>(i)]) return false;
    return true;
}

// All polynomials obtained by replacing one divisible monomial of one term
// with the other two terms of a three-term relation.
std::vector<PPoly> rewrite_once(const PPoly& p) {
    std::vector<PPoly> out;
    for (std::size_t ti = 0; ti < p.size(); ++ti) {
        const PTerm& term = p.terms()[ti];
        for (const auto& r : three_term_relations()) {
            for (std::size_t mi = 0; mi < r.size(); ++mi) {
                const PTerm& m = r.terms()[mi];
                if (!divides(m.exp, term.exp)) continue;
                PMono rest{};
                for (int i = 0; i < kPl; ++i)
                    rest[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(term.exp[static_cast<std::size_t>(i)] - m.exp[static_cast<std::size_t>(i)]);
                std::vector<PTerm> t;
                for (std::size_t k = 0; k < p.size(); ++k)
                    if (k != ti) t.push_back(p.terms()[k]);
                // c*m*rest = -(c/mc) * (others)*rest modulo the relation
                const Rational f = -term.coef / m.coef;
                for (std::size_t oi = 0; oi < r.size(); ++oi) {
                    if (oi == mi) continue;
                    PTerm n{f * r.terms()[oi].coef, {}};
                    for (int i = 0; i < kPl; ++i)
                        n.exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rest[static_cast<std::size_t>(i)] + r.terms()[oi].exp[static_cast<std::size_t>(i)]);
                    t.push_back(std::move(n));
                }
                out.emplace_back(std::move(t));
            }
        }
    }
    return out;
}

template <class Visit>
void bfs(const PPoly& b, int depth, int max_terms, Visit&& visit) {
    std::set<PPoly> seen{b};
    std::vector<PPoly> frontier{b};
    if (visit(b)) return;
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<PPoly> next;
        for (const auto& p : frontier) {
            for (auto& q : rewrite_once(p)) {
                if (q.size() < 2 || static_cast<int>(q.size()) > max_terms) continue;
                if (!seen.insert(q).second) continue;
                if (q.size() == 2 && visit(q)) return;
                next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
}

} // namespace

std::vector<PPoly> equivalent_binomials(const PPoly& b, int depth, int max_terms) {
    std::vector<PPoly> out;
    bfs(b, depth, std::max(max_terms, 2), [&](const PPoly& q) {
        out.push_back(q);
        return false;
    });
    return out;
}

std::optional<PPoly> find_equivalent_binomial(const PPoly& b, int depth, int max_terms,
                                              const std::function<bool(const PPoly&)>& accept) {
    std::optional<PPoly> found;
    bfs(b, depth, std::max(max_terms, 2), [&](const PPoly& q) {
        if (q.size() == 2 && accept(q)) {
            found = q;
            return true;
        }
        return false;
    });
    return found;
}

// ---------------- ideal membership ----------------

namespace {

using Multideg = std::array<int, 6>;

Multideg multidegree(const PMono& e) {
    Multideg d{};
    const auto& t = plucker_triples();
    for (int n = 0; n < kPl; ++n)
        for (int c : t[static_cast<std::size_t>(n)]) d[static_cast<std::size_t>(c - 1)] += e[static_cast<std::size_t>(n)];
    return d;
}

void monomials_of_degree(int deg, int start, PMono& cur, std::vector<PMono>& out) {
    if (deg == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < kPl; ++i) {
        ++cur[static_cast<std::size_t>(i)];
        monomials_of_degree(deg - 1, i, cur, out);
        --cur[static_cast<std::size_t>(i)];
    }
}

} // namespace

bool in_plucker_ideal(const PPoly& p) {
    if (p.is_zero()) return true;
    // split into multihomogeneous components; each must lie in I_pl
    std::map<std::pair<int, Multideg>, std::vector<PTerm>> comps;
    for (const auto& t : p.terms()) {
        int deg = 0;
        for (auto x : t.exp) deg += x;
        comps[{deg, multidegree(t.exp)}].push_back(t);
    }
    for (const auto& [key, terms] : comps) {
        const int deg = key.first;
        if (deg < 2) return false;
        std::vector<PMono> mult;
        PMono cur{};
        monomials_of_degree(deg - 2, 0, cur, mult);
        std::vector<PPoly> gens;
        for (const auto& r : plucker_relations()) {
            const Multideg rd = multidegree(r.terms().front().exp);
            for (const auto& m : mult) {
                Multideg md = multidegree(m);
                bool ok = true;
                for (int i = 0; i < 6; ++i) ok = ok && md[static_cast<std::size_t>(i)] + rd[static_cast<std::size_t>(i)] == key.second[static_cast<std::size_t>(i)];
                if (ok) gens.push_back(PPoly::monomial(Rational(1), m) * r);
            }
        }
        std::map<PMono, Eigen::Index> col;
        for (const auto& g : gens)
            for (const auto& t : g.terms()) col.emplace(t.exp, 0);
        for (const auto& t : terms) col.emplace(t.exp, 0);
        Eigen::Index c = 0;
        for (auto& [e, i] : col) i = c++;
        RatMat a(static_cast<Eigen::Index>(col.size()), static_cast<Eigen::Index>(gens.size()));
        a.setConstant(Rational(0));
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (const auto& t : gens[j].terms()) a(col[t.exp], static_cast<Eigen::Index>(j)) = t.coef;
        RatVec b(static_cast<Eigen::Index>(col.size()));
        b.setConstant(Rational(0));
        for (const auto& t : terms) b[col[t.exp]] = t.coef;
        RatVec x;
        if (!solve(a, b, x)) return false;
    }
    return true;
}

// ---------------- text ----------------

std::string to_string(const PMono& e) {
    std::string s;
    for (int n = 0; n < kPl; ++n) {
        const int k = e[static_cast<std::size_t>(n)];
        if (!k) continue;
        if (!s.empty()) s += "*";
        s += "p" + triple_name(n);
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s.empty() ? "1" : s;
}

std::string to_string(const PPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        const Rational a = abs(t.coef);
        if (first) s += t.coef < 0 ? "-" : "";
        else s += t.coef < 0 ? " - " : " + ";
        first = false;
        const std::string m = to_string(t.exp);
        if (m == "1") s += a.get_str();
        else if (a == 1) s += m;
        else s += a.get_str() + "*" + m;
    }
    return s;
}

PPoly parse_ppoly(std::string_view text) {
    std::vector<PTerm> terms;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const char* what) { throw ParseError(std::string("ppoly parse error at offset ") + std::to_string(i) + ": " + what); };
    auto number = [&] {
        std::size_t j = i;
        while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
        Rational q(std::string(text.substr(i, j - i)));
        q.canonicalize();
        i = j;
        return q;
    };
    int sgn = 1;
    skip();
    if (i < text.size() && text[i] == '-') {
        sgn = -1;
        ++i;
    }
    for (;;) {
        skip();
        PTerm t{Rational(sgn), {}};
        bool any = false;
        for (;;) {
            skip();
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                t.coef *= number();
            } else if (i < text.size() && text[i] == 'p') {
                ++i;
                if (i + 3 > text.size()) fail("short Pluecker symbol");
                const int a = text[i] - '0', b = text[i + 1] - '0', c = text[i + 2] - '0';
                if (a < 1 || a > 6 || b < 1 || b > 6 || c < 1 || c > 6) fail("bad Pluecker symbol");
                i += 3;
                int e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    e = static_cast<int>(number().get_num().get_si());
                }
                const int idx = plucker_index(a, b, c);
                if (e % 2 && triple_sign(a, b, c) < 0) t.coef = -t.coef;
                t.exp[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(t.exp[static_cast<std::size_t>(idx)] + e);
            } else {
                fail("expected factor");
            }
            any = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        terms.push_back(t);
        skip();
        if (i == text.size()) break;
        if (text[i] == '+') sgn = 1;
        else if (text[i] == '-') sgn = -1;
        else fail("expected '+' or '-'");
        ++i;
    }
    return PPoly(std::move(terms));
}

} // namespace cubic
