#include "cubic/eeee.hpp"

#include "cubic/tropgrass.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace cubic {

namespace {

constexpr std::array<std::array<int, 3>, 4> kSpecial{{{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 5, 6}}};

int special_index(std::array<int, 3> t) {
    std::sort(t.begin(), t.end());
    for (int i = 0; i < 4; ++i)
        if (kSpecial[static_cast<std::size_t>(i)] == t) return i;
    return -1;
}

// linear forms on (a1..a6, b1..b4, lambda0)
struct Lin {
    std::array<int, kEeeeVars> c{};
    Lin operator+(const Lin& o) const {
        Lin r;
        for (int i = 0; i < kEeeeVars; ++i) r.c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] + o.c[static_cast<std::size_t>(i)];
        return r;
    }
    Lin operator-(const Lin& o) const {
        Lin r;
        for (int i = 0; i < kEeeeVars; ++i) r.c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] - o.c[static_cast<std::size_t>(i)];
        return r;
    }
};

Lin var(int i) {
    Lin l;
    l.c[static_cast<std::size_t>(i)] = 1;
    return l;
}
Lin A(int i) { return var(i - 1); }
Lin B(int i) { return var(5 + i); }
const Lin L0 = var(10);
const Lin Zero{};

IntVec vec(const Lin& l) {
    IntVec v(kEeeeVars);
    for (int i = 0; i < kEeeeVars; ++i) v[i] = l.c[static_cast<std::size_t>(i)];
    return v;
}

struct Builder {
    EeeeRegion r;
    Builder& lt(const Lin& x, const Lin& y) {
        r.strict.push_back(vec(y - x));
        return *this;
    }
    Builder& eq(const Lin& x, const Lin& y) {
        r.equations.push_back(vec(y - x));
        return *this;
    }
};

XYMono mono(std::string_view s) { return parse_xymono(s); }

// x2x3x4x5x6 / (xi xj) style products
XYMono xprod(std::initializer_list<int> num, std::initializer_list<int> den, std::initializer_list<int> ys) {
    XYMono m{};
    for (int i : num) ++m[static_cast<std::size_t>(i - 1)];
    for (int i : den) --m[static_cast<std::size_t>(i - 1)];
    for (int i : ys) ++m[static_cast<std::size_t>(5 + i)];
    return m;
}

void set(MonericClass& c, const std::string& id, const XYMono& m) { c[static_cast<std::size_t>(generator_index(id))] = m; }

std::string fname(int i, int j) { return "F" + std::to_string(i) + std::to_string(j); }

MonericClass case1_common() {
    MonericClass c{};
    for (int i = 1; i <= 6; ++i) {
        XYMono e{};
        e[static_cast<std::size_t>(i - 1)] = 1;
        set(c, "E" + std::to_string(i), e);
    }
    for (int i = 2; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            if (!(i == 2 && j == 3) && !(i == 4 && j == 5)) set(c, fname(i, j), xprod({2, 3, 4, 5, 6}, {i, j}, {1}));
    for (int i = 2; i <= 5; ++i) set(c, fname(1, i), xprod({2, 3, 4, 5}, {i}, {6}));
    set(c, "F16", mono("x3*x4*x5*y2"));
    for (int i = 2; i <= 5; ++i) set(c, "G" + std::to_string(i), xprod({2, 3, 4, 5, i}, {}, {1, 6}));
    set(c, "G1", mono("x2*x3*x4*x5*x6*y1^2"));
    return c;
}

MonericClass case2_common() {
    MonericClass c{};
    for (int i = 1; i <= 6; ++i) {
        XYMono e{};
        e[static_cast<std::size_t>(i - 1)] = 1;
        set(c, "E" + std::to_string(i), e);
    }
    for (int j = 4; j <= 6; ++j) set(c, fname(1, j), xprod({3, 4, 5, 6}, {j}, {2}));
    for (int i = 2; i <= 5; ++i)
        for (int j = std::max(4, i + 1); j <= 6; ++j)
            if (!(i == 4 && j == 5)) set(c, fname(i, j), xprod({2, 3, 4, 5, 6}, {i, j}, {1}));
    set(c, "G1", mono("x2*x3*x4*x5*x6*y1^2"));
    set(c, "G2", mono("x2*x3*x4*x5*x6*y1*y2"));
    set(c, "G3", mono("x3^2*x4*x5*x6*y1*y2"));
    return c;
}

const std::array<std::pair<const char*, std::vector<const char*>>, 7> kX{{
    {"F45", {"x2*x3*x6*y1", "x1*x3*x6*y2"}},
    {"F12", {"x4*x5*x6*y3", "x3*x5*x6*y4", "x3*x4*x6*y5", "x3*x4*x5*y6"}},
    {"F13", {"x4*x5*x6*y2", "x2*x5*x6*y4", "x2*x4*x6*y5", "x2*x4*x5*y6"}},
    {"F23", {"x4*x5*x6*y1", "x1*x5*x6*y4", "x1*x4*x6*y5", "x1*x4*x5*y6"}},
    {"G5", {"x3*x4*x5^2*x6*y1*y2", "x2*x3*x5^2*x6*y1*y4", "x2*x3*x4*x5*x6*y1*y5", "x2*x3*x4*x5^2*y1*y6"}},
    {"G4", {"x3*x4^2*x5*x6*y1*y2", "x2*x4^2*x5*x6*y1*y3", "x2*x3*x4*x5*x6*y1*y4", "x2*x3*x4^2*x6*y1*y5", "x2*x3*x4^2*x5*y1*y6"}},
    {"G6", {"x3*x4*x5*x6^2*y1*y2", "x2*x3*x5*x6^2*y1*y4", "x1*x3*x5*x6^2*y2*y4", "x2*x3*x4*x6^2*y1*y5", "x1*x3*x4*x6^2*y2*y5",
            "x2*x3*x4*x5*x6*y1*y6", "x1*x3*x4*x5*x6*y2*y6"}},
}};

MonericClass case2_class(const std::string& code) {
    MonericClass c = case2_common();
    for (std::size_t j = 0; j < 7; ++j) {
        const auto& [gen, opts] = kX[j];
        const std::size_t k = static_cast<std::size_t>(code[j] - '1');
        if (k >= opts.size()) throw std::logic_error("bad Case 2 code " + code);
        set(c, gen, mono(opts[k]));
    }
    return c;
}

std::vector<EeeeRegion> build_regions() {
    std::vector<EeeeRegion> out;
    auto base1 = [](const std::string& id, bool lam) {
        Builder b;
        b.r.id = id;
        b.r.case_no = 1;
        b.r.uses_lambda = lam;
        b.lt(A(1), A(6)).lt(A(6), A(2)).lt(A(2), A(3)).lt(A(2), A(4)).lt(A(2), A(5));
        for (int i = 1; i <= 4; ++i) b.lt(Zero, B(i));
        if (lam) {
            b.lt(Zero, L0).eq(B(1), B(2)).lt(B(1), A(6) - A(1));
        } else {
            b.eq(L0, Zero);
        }
        return b;
    };
    const XYMono g6_low = mono("x2*x3*x4*x5*x6*y1*y6");
    const XYMono g6_y6sq = mono("x1*x2*x3*x4*x5*y6^2");
    const XYMono g6_mid = mono("x3*x4*x5*x6^2*y1*y2");
    auto finish1 = [&](Builder& b, bool b1_big, bool b2_big, const XYMono& g6) {
        MonericClass c = case1_common();
        set(c, "F23", mono(b1_big ? "x1*x4*x5*y6" : "x4*x5*x6*y1"));
        set(c, "F45", mono(b2_big ? "x1*x2*x3*y6" : "x2*x3*x6*y1"));
        set(c, "G6", g6);
        b.r.cls = c;
        out.push_back(b.r);
    };
    {
        auto b = base1("C1-1", false);
        b.lt(A(6) - A(1), B(1)).lt(A(6) - A(1), B(2));
        finish1(b, true, true, g6_y6sq);
    }
    {
        auto b = base1("C1-2", false);
        b.lt(A(6) - A(1), B(1)).lt(B(2), A(6) - A(1));
        finish1(b, true, false, g6_low);
    }
    {
        auto b = base1("C1-3", false);
        b.lt(B(1), A(6) - A(1)).lt(A(6) - A(1), B(2));
        finish1(b, false, true, g6_low);
    }
    {
        auto b = base1("C1-4", false);
        b.lt(B(1), B(2)).lt(B(2), A(6) - A(1));
        finish1(b, false, false, g6_low);
    }
    {
        auto b = base1("C1-5", false);
        b.lt(B(2), B(1)).lt(B(1), A(6) - A(1));
        finish1(b, false, false, g6_low);
    }
    {
        auto b = base1("C1-L1", true);
        b.lt(L0, A(2) - A(6)).lt(L0, A(6) - A(1) - B(1));
        finish1(b, false, false, g6_low);
    }
    {
        auto b = base1("C1-L2", true);
        b.lt(B(1), (A(6) - A(1)) - (A(2) - A(6))).lt(A(2) - A(6), L0);
        finish1(b, false, false, g6_mid);
    }
    {
        auto b = base1("C1-L3", true);
        b.lt((A(6) - A(1)) - (A(2) - A(6)), B(1)).lt(A(6) - A(1) - B(1), L0);
        finish1(b, false, false, g6_y6sq);
    }

    auto base2 = [](const std::string& code) {
        Builder b;
        b.r.id = code;
        b.r.case_no = 2;
        b.lt(A(1), A(2));
        for (int i = 3; i <= 6; ++i) b.lt(A(2), A(i));
        for (int i = 1; i <= 4; ++i) b.lt(Zero, B(i));
        b.eq(L0, Zero);
        return b;
    };
    auto least = [](Builder& b, int m) {
        for (int k = 4; k <= 6; ++k)
            if (k != m) b.lt(A(m), A(k));
    };
    auto add2 = [&](Builder& b) {
        b.r.cls = case2_class(b.r.id);
        out.push_back(b.r);
    };
    const std::array<std::array<const char*, 2>, 3> rowA{{{"1222232", "2222233"}, {"1333344", "2333345"}, {"1444456", "2444457"}}};
    const std::array<std::array<const char*, 3>, 3> rowB{{{"1221232", "1221231", "2221231"}, {"1331344", "1331341", "2331341"}, {"1441456", "1441451", "2441451"}}};
    const std::array<std::array<const char*, 4>, 3> rowC{{{"1211111", "1211131", "2211111", "2211131"},
                                                          {"1311111", "1311141", "2311111", "2311141"},
                                                          {"1411111", "1411151", "2411111", "2411151"}}};
    for (int m = 4; m <= 6; ++m) {
        const auto r = static_cast<std::size_t>(m - 4);
        for (int col = 0; col < 2; ++col) {
            auto b = base2(rowA[r][static_cast<std::size_t>(col)]);
            least(b, m);
            b.lt(A(m), B(1) + A(1));
            if (col == 0) b.lt(B(2), A(2) - A(1));
            else b.lt(A(2) - A(1), B(2));
            add2(b);
        }
        for (int col = 0; col < 3; ++col) {
            auto b = base2(rowB[r][static_cast<std::size_t>(col)]);
            least(b, m);
            b.lt(B(1) + A(1), A(m)).lt(A(m), B(1) + A(2));
            if (col == 0) b.lt(B(2), A(2) - A(1)).lt(B(2), A(2) + B(1) - A(m));
            if (col == 1) b.lt(B(2), A(2) - A(1)).lt(A(2) + B(1) - A(m), B(2));
            if (col == 2) b.lt(A(2) - A(1), B(2));
            add2(b);
        }
        for (int col = 0; col < 4; ++col) {
            auto b = base2(rowC[r][static_cast<std::size_t>(col)]);
            least(b, m);
            b.lt(B(1) + A(2), A(m)).lt(A(m), B(1) + A(3));
            if (col < 2) b.lt(B(2), A(2) - A(1));
            else b.lt(A(2) - A(1), B(2));
            if (col % 2 == 0) b.lt(B(4), A(m) - A(2) - B(1));
            else b.lt(A(m) - A(2) - B(1), B(4));
            add2(b);
        }
    }
    const std::array<const char*, 4> rowD{"1111111", "1111121", "2111111", "2111121"};
    for (int col = 0; col < 4; ++col) {
        auto b = base2(rowD[static_cast<std::size_t>(col)]);
        for (int k = 4; k <= 6; ++k) b.lt(B(1) + A(3), A(k));
        if (col < 2) b.lt(B(2), A(2) - A(1));
        else b.lt(A(2) - A(1), B(2));
        if (col % 2 == 0) b.lt(B(4), A(3) - A(2));
        else b.lt(A(3) - A(2), B(4));
        add2(b);
    }
    return out;
}

RatVec point(const EeeeParams& p, bool with_lambda) {
    RatVec v(kEeeeVars);
    for (int i = 0; i < 6; ++i) v[i] = p.a[i];
    for (int i = 0; i < 4; ++i) v[6 + i] = p.b[i];
    v[10] = (with_lambda && p.lambda0) ? *p.lambda0 : Rational(0);
    return v;
}

Rational rdot(const IntVec& c, const RatVec& x) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < c.size(); ++i) s += Rational(c[i]) * x[i];
    return s;
}

Integer lcm_den(const EeeeParams& p) {
    Integer d = 1;
    auto take = [&](const Rational& q) { mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t()); };
    for (int i = 0; i < 6; ++i) take(p.a[i]);
    for (int i = 0; i < 4; ++i) take(p.b[i]);
    if (p.lambda0) take(*p.lambda0);
    return d;
}

} // namespace

RatVec eeee_phi_rational(const RatVec& a, const RatVec& b) {
    RatVec w(kPl);
    for (int n = 0; n < kPl; ++n) {
        const auto& t = plucker_triples()[static_cast<std::size_t>(n)];
        w[n] = a[t[0] - 1] + a[t[1] - 1] + a[t[2] - 1];
        const int s = special_index(t);
        if (s >= 0) w[n] += b[s];
    }
    return w;
}

bool stabilizes_eeee(const Perm& s) {
    // stabilizer of (e1^e6)(e2^e5)(e3^e4): pairs go to pairs, signs multiply to +1
    const std::array<std::array<int, 2>, 3> pairs{{{1, 6}, {2, 5}, {3, 4}}};
    int sign = 1;
    for (const auto& pr : pairs) {
        std::array<int, 2> im{s.img[static_cast<std::size_t>(pr[0] - 1)], s.img[static_cast<std::size_t>(pr[1] - 1)]};
        if (im[0] > im[1]) {
            std::swap(im[0], im[1]);
            sign = -sign;
        }
        if (std::find(pairs.begin(), pairs.end(), im) == pairs.end()) return false;
    }
    return sign == 1;
}

const std::vector<Perm>& eeee_cone_stabilizer() {
    static const std::vector<Perm> s = [] {
        std::vector<Perm> v;
        for (const auto& p : all_perms())
            if (stabilizes_eeee(p)) v.push_back(p);
        return v;
    }();
    return s;
}

EeeeCone eeee_cone() { return EeeeCone{eeee_phi_cone(), eeee_cone_stabilizer()}; }

EeeeParams act(const Perm& s, const EeeeParams& p) {
    EeeeParams q = p;
    for (int i = 0; i < 6; ++i) q.a[s.img[static_cast<std::size_t>(i)] - 1] = p.a[i];
    for (int i = 0; i < 4; ++i) {
        const auto& t = kSpecial[static_cast<std::size_t>(i)];
        const int j = special_index({s.img[static_cast<std::size_t>(t[0] - 1)], s.img[static_cast<std::size_t>(t[1] - 1)], s.img[static_cast<std::size_t>(t[2] - 1)]});
        if (j < 0) throw std::invalid_argument("permutation does not stabilize the EEEE cone");
        q.b[j] = p.b[i];
    }
    return q;
}

const std::vector<EeeeRegion>& eeee_regions() {
    static const std::vector<EeeeRegion> r = build_regions();
    return r;
}

const EeeeRegion& eeee_region(const std::string& id) {
    for (const auto& r : eeee_regions())
        if (r.id == id) return r;
    throw std::invalid_argument("unknown EEEE region " + id);
}

bool in_region(const EeeeRegion& r, const EeeeParams& p) {
    if (r.uses_lambda && !p.lambda0) return false;
    const RatVec x = point(p, r.uses_lambda);
    for (const auto& c : r.strict)
        if (rdot(c, x) <= 0) return false;
    for (const auto& c : r.equations)
        if (rdot(c, x) != 0) return false;
    return true;
}

EeeeParams sample_region(const EeeeRegion& r, std::mt19937_64& rng, int spread) {
    std::vector<IntVec> ineqs = r.strict;
    const Cone c = Cone::from_h(kEeeeVars, ineqs, r.equations);
    std::uniform_int_distribution<int> pos(1, spread), any(-spread, spread);
    for (int attempt = 0; attempt < 100; ++attempt) {
        IntVec x = IntVec::Zero(kEeeeVars);
        for (const auto& ray : c.rays()) x += Integer(pos(rng)) * ray;
        for (const auto& l : c.lineality()) x += Integer(any(rng)) * l;
        // regions only see differences of the a_i
        const Integer lo = *std::min_element(x.data(), x.data() + 6);
        EeeeParams p;
        for (int i = 0; i < 6; ++i) p.a[i] = Rational(x[i] - lo);
        for (int i = 0; i < 4; ++i) p.b[i] = Rational(x[6 + i]);
        if (r.uses_lambda) p.lambda0 = Rational(x[10]);
        if (in_region(r, p)) return p;
    }
    throw std::runtime_error("region " + r.id + " has empty interior");
}

std::vector<int> tropical_ties(const RatVec& w) {
    std::vector<int> out;
    const auto& gens = generators();
    for (int g = 0; g < kGens; ++g) {
        std::optional<Rational> best;
        std::set<XYMono> at;
        for (const auto& t : gens[static_cast<std::size_t>(g)].terms) {
            std::optional<Rational> v;
            for (const auto& pt : t.coef.terms()) {
                const Rational x = rdot(exponent_vector(pt.exp), w);
                if (!v || x < *v) v = x;
            }
            if (!best || *v < *best) {
                best = v;
                at = {t.mono};
            } else if (*v == *best) {
                at.insert(t.mono);
            }
        }
        if (at.size() > 1) out.push_back(g);
    }
    return out;
}

std::optional<Perm> eeee_normalizer(const EeeeParams& p) {
    for (const auto& s : eeee_cone_stabilizer()) {
        const EeeeParams q = act(s, p);
        const auto& a = q.a;
        bool ok = a[1] != a[5];
        for (int i = 1; i <= 4; ++i) ok = ok && a[0] < a[i];
        for (int i = 2; i <= 4; ++i) ok = ok && a[1] < a[i];
        if (ok) return s;
    }
    return std::nullopt;
}

Prediction predict_class(const EeeeParams& p) {
    Prediction out;
    for (int i = 0; i < 4; ++i)
        if (p.b[i] <= 0) throw std::invalid_argument("predict_class: b must be positive");
    const RatVec w = eeee_phi_rational(p.a, p.b);
    const auto s = eeee_normalizer(p);
    if (!s) {
        out.violated = tropical_ties(w);
        return out;
    }
    out.normalizer = *s;
    out.normalized = act(*s, p);
    const auto& q = out.normalized;
    const bool lambda_case = q.a[5] < q.a[1] && q.b[0] == q.b[1] && q.b[0] < q.a[5] - q.a[0];
    if (lambda_case && !q.lambda0) {
        out.status = PredictionStatus::needs_lambda0;
        out.violated = {generator_index("G6")};
        return out;
    }
    for (const auto& r : eeee_regions()) {
        if (!in_region(r, q)) continue;
        out.status = PredictionStatus::moneric;
        out.region = r.id;
        out.cls = act(inverse(*s), r.cls);
        return out;
    }
    out.violated = tropical_ties(w);
    if (lambda_case) out.violated.push_back(generator_index("G6"));
    std::sort(out.violated.begin(), out.violated.end());
    out.violated.erase(std::unique(out.violated.begin(), out.violated.end()), out.violated.end());
    return out;
}

// ---------------- witnesses ----------------

namespace {

const GenTerm& g6_term() {
    static const GenTerm* t = [] {
        const XYMono m = parse_xymono("x2*x3*x4*x5*x6*y1*y6");
        for (const auto& term : generators()[static_cast<std::size_t>(generator_index("G6"))].terms)
            if (term.mono == m) return &term;
        throw std::logic_error("G6 has no x2x3x4x5x6y1y6 term");
    }();
    return *t;
}

// coefficient of t^j in f, given nu(f) >= j (or f = 0)
std::optional<Rational> coeff_at(const RatFn& f, long j) {
    if (f.is_zero()) return Rational(0);
    const long v = valuation(f);
    if (v < j) return std::nullopt;
    if (v > j) return Rational(0);
    return leading_coefficient(f);
}

struct Consts {
    Rational x, y, u, v, w, s, m, e;
};

// f / g mod t^k for polynomials with g(0) != 0
QPoly series_div(const QPoly& f, const QPoly& g, long k) {
    std::vector<Rational> q(static_cast<std::size_t>(std::max(k, 0L)), Rational(0));
    std::vector<Rational> r(static_cast<std::size_t>(std::max(k, 0L)), Rational(0));
    for (long i = 0; i < k && i <= f.degree(); ++i) r[static_cast<std::size_t>(i)] = f.coeff(static_cast<std::size_t>(i));
    const Rational g0 = g.coeff(0);
    for (long i = 0; i < k; ++i) {
        const Rational c = r[static_cast<std::size_t>(i)] / g0;
        q[static_cast<std::size_t>(i)] = c;
        if (c == 0) continue;
        for (long j = 0; j <= g.degree() && i + j < k; ++j) r[static_cast<std::size_t>(i + j)] -= c * g.coeff(static_cast<std::size_t>(j));
    }
    return QPoly(q);
}

QPoly poly(const RatFn& f) {
    if (f.denominator().degree() != 0) throw std::logic_error("expected a polynomial");
    return f.numerator().scaled(Rational(1) / f.denominator().coeff(0));
}

// Columns 1, 2, 4 are the unit vectors; column 3 lies in span(e1, e2) up to
// t^b1, column 5 in span(e1, e3) up to t^b2, column 6 in span(e2, e3) up to
// t^b3, and n is chosen so that det(c3, c5, c6) vanishes to order b4.
Mat<RatFn> build_matrix(const std::vector<long>& a, const std::vector<long>& b, const Consts& k, const RatFn& z) {
    const RatFn c3[3] = {k.x, k.y, RatFn::t_power(b[0]) * z};
    const RatFn c5[3] = {k.u, RatFn::t_power(b[1]) * RatFn(k.v), k.w};
    const RatFn c6_0 = RatFn::t_power(b[2]) * RatFn(k.s);
    const RatFn c6_1 = k.m;
    const RatFn lead = c3[0] * c5[1] - c3[1] * c5[0];
    const RatFn rest = RatFn(0) - c3[0] * c5[2] * c6_1 + c3[1] * c5[2] * c6_0 + c3[2] * (c5[0] * c6_1 - c5[1] * c6_0);
    if (lead.is_zero() || poly(lead).coeff(0) == 0) throw WitnessError("degenerate constants");
    const QPoly n0 = series_div(poly(RatFn(0) - rest), poly(lead), b[3]);
    const RatFn n = RatFn(n0, QPoly(Rational(1))) + RatFn::t_power(b[3]) * RatFn(k.e);
    Mat<RatFn> m(3, 6);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 6; ++c) m(r, c) = RatFn(0);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    for (int r = 0; r < 3; ++r) {
        m(r, 2) = c3[r];
        m(r, 4) = c5[r];
    }
    m(0, 5) = c6_0;
    m(1, 5) = c6_1;
    m(2, 5) = n;
    for (int c = 0; c < 6; ++c) {
        const RatFn s = RatFn::t_power(a[static_cast<std::size_t>(c)]);
        for (int r = 0; r < 3; ++r) m(r, c) *= s;
    }
    return m;
}

bool valuations_match(const PluckerPoint& pt, const IntVec& target) {
    for (int n = 0; n < kPl; ++n)
        if (!pt.vals[static_cast<std::size_t>(n)] || Integer(*pt.vals[static_cast<std::size_t>(n)]) != target[n]) return false;
    return true;
}

Mat<RatFn> permute_columns(const Mat<RatFn>& n, const Perm& s) {
    Mat<RatFn> m(3, 6);
    for (int c = 0; c < 6; ++c)
        for (int r = 0; r < 3; ++r) m(r, c) = n(r, s.img[static_cast<std::size_t>(c)] - 1);
    return m;
}

} // namespace

long g6_cancellation(const PluckerPoint& pt, const Perm& sigma) {
    const PluckerPoint q = act(SignedPermutation(sigma), pt);
    const PPoly& c = g6_term().coef;
    IntVec vals(kPl);
    for (int n = 0; n < kPl; ++n) {
        if (!q.vals[static_cast<std::size_t>(n)]) throw std::invalid_argument("g6_cancellation: zero Pluecker coordinate");
        vals[n] = *q.vals[static_cast<std::size_t>(n)];
    }
    const RatFn v = evaluate(c, q);
    if (v.is_zero()) throw std::domain_error("g6_cancellation: coefficient vanishes identically");
    const Integer vu = trop_value(c.terms()[0].exp, vals);
    return valuation(v) - vu.get_si();
}

Witness witness(const EeeeParams& p0, const WitnessOptions& opts) {
    for (int i = 0; i < 4; ++i)
        if (p0.b[i] <= 0) throw std::invalid_argument("witness: b must be positive");
    Witness out;
    out.scale = lcm_den(p0);
    EeeeParams p = p0;
    for (int i = 0; i < 6; ++i) p.a[i] *= out.scale;
    for (int i = 0; i < 4; ++i) p.b[i] *= out.scale;
    Perm sigma; // identity
    if (p.lambda0) {
        if (*p.lambda0 <= 0) throw std::invalid_argument("witness: lambda0 must be positive");
        *p.lambda0 *= out.scale;
        const auto s = eeee_normalizer(p);
        if (!s) throw std::invalid_argument("witness: lambda0 given outside the normalizable range");
        sigma = *s;
        p = act(sigma, p);
        if (!(p.a[5] < p.a[1] && p.b[0] == p.b[1] && p.b[0] < p.a[5] - p.a[0]))
            throw std::invalid_argument("witness: lambda0 only applies on b1 = b2 < a6 - a1 in Case 1");
    }
    std::vector<long> a(6), b(4);
    for (int i = 0; i < 6; ++i) a[static_cast<std::size_t>(i)] = p.a[i].get_num().get_si();
    for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = p.b[i].get_num().get_si();
    const RatVec phi = eeee_phi_rational(p.a, p.b);
    IntVec target(kPl);
    for (int n = 0; n < kPl; ++n) target[n] = phi[n].get_num();

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    auto nz = [&] {
        int v = 0;
        while (v == 0) v = dist(rng);
        return Rational(v);
    };
    const PPoly& g6c = g6_term().coef;
    for (int attempt = 0; attempt < opts.budget; ++attempt) {
        Consts k{nz(), nz(), nz(), nz(), nz(), nz(), nz(), nz()};
        try {
            std::vector<Rational> zc{nz()};
            auto zfn = [&] { return RatFn(QPoly(zc), QPoly(Rational(1))); };
            if (p.lambda0) {
                const long lam = p.lambda0->get_num().get_si();
                const Integer vu = trop_value(g6c.terms()[0].exp, target);
                bool ok = true;
                for (long j = 0; j < lam && ok; ++j) {
                    auto value_at = [&](const Rational& zeta) -> std::optional<Rational> {
                        zc[static_cast<std::size_t>(j)] = zeta;
                        const PluckerPoint pt = plucker_from_matrix(build_matrix(a, b, k, zfn()));
                        return coeff_at(evaluate(g6c, pt), vu.get_si() + j);
                    };
                    const auto f0 = value_at(Rational(0));
                    const auto f1 = value_at(Rational(1));
                    if (!f0 || !f1 || *f0 == *f1) {
                        ok = false;
                        break;
                    }
                    Rational zeta = -*f0 / (*f1 - *f0);
                    const auto fz = value_at(zeta);
                    if (!fz || *fz != 0 || (j == 0 && zeta == 0)) ok = false;
                    zc.push_back(Rational(0));
                }
                if (!ok) continue;
                zc.back() = nz();
            }
            Mat<RatFn> n = build_matrix(a, b, k, zfn());
            PluckerPoint pt = plucker_from_matrix(n);
            if (!valuations_match(pt, target)) continue;
            if (p.lambda0 && g6_cancellation(pt, Perm()) != p.lambda0->get_num().get_si()) continue;
            out.matrix = permute_columns(n, sigma);
            const PluckerPoint fin = plucker_from_matrix(out.matrix);
            IntVec want = act(SignedPermutation(inverse(sigma)), target);
            if (!valuations_match(fin, want)) throw std::logic_error("witness: column permutation broke valuations");
            if (p.lambda0 && g6_cancellation(fin, sigma) != p.lambda0->get_num().get_si())
                throw std::logic_error("witness: column permutation broke the cancellation depth");
            out.valuation = want;
            return out;
        } catch (const WitnessError&) {
            continue;
        } catch (const ValuationError&) {
            continue;
        }
    }
    throw WitnessError("no witness found within the search budget of " + std::to_string(opts.budget) + " attempts");
}

EeeeEnumeration enumerate_regions() {
    EeeeEnumeration e;
    const auto& stab = eeee_cone_stabilizer();
    for (const auto& r : eeee_regions()) {
        ++e.regions;
        for (const auto& s : stab) {
            const std::string k = class_key(act(s, r.cls));
            e.cone_classes.insert(k);
            if (!r.uses_lambda) e.non_lbc_cone_classes.insert(k);
        }
        const std::string ok = orbit_key(r.cls);
        e.orbit_keys.insert(ok);
        if (!r.uses_lambda) e.non_lbc_orbit_keys.insert(ok);
    }
    e.classes = s6_expansion(e.cone_classes).size();
    e.non_lbc_classes = s6_expansion(e.non_lbc_cone_classes).size();
    e.orbits = e.orbit_keys.size();
    e.non_lbc_orbits = e.non_lbc_orbit_keys.size();
    return e;
}

} // namespace cubic
