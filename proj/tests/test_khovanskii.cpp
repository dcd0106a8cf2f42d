#include "doctest.h"
#include "support.hpp"

#include "cubic/eeee.hpp"
#include "cubic/khovanskii.hpp"
#include "cubic/linalg.hpp"

#include <map>
#include <set>

using namespace cubic;
using cubic::testing::rng;

namespace {

MonericClass region_class(const char* id) { return eeee_region(id).cls; }

std::vector<IntVec> columns(const IntMat& a) {
    std::vector<IntVec> v;
    for (Eigen::Index j = 0; j < a.cols(); ++j) v.push_back(a.col(j));
    return v;
}

// dim J_beta - dim (m J)_beta by ranks over the fiber basis
int minimal_count_by_rank(const IntMat& a, const IntVec& beta) {
    const auto f = fiber(a, beta);
    if (f.size() < 2) return 0;
    std::map<ZExp, int> pos;
    for (std::size_t i = 0; i < f.size(); ++i) pos[f[i]] = static_cast<int>(i);
    std::vector<RatVec> rows;
    for (Eigen::Index v = 0; v < a.cols(); ++v) {
        IntVec rest = beta - a.col(v);
        bool ok = true;
        for (Eigen::Index r = 0; r < rest.size(); ++r) ok = ok && rest[r] >= 0;
        if (!ok) continue;
        const auto g = fiber(a, rest);
        for (std::size_t i = 1; i < g.size(); ++i) {
            ZExp x = g[i], y = g[0];
            ++x[static_cast<std::size_t>(v)];
            ++y[static_cast<std::size_t>(v)];
            RatVec row = RatVec::Constant(static_cast<Eigen::Index>(f.size()), Rational(0));
            row[pos.at(x)] += 1;
            row[pos.at(y)] -= 1;
            rows.push_back(row);
        }
    }
    Eigen::Index r = 0;
    if (!rows.empty()) {
        RatMat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(f.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        r = rank(m);
    }
    return static_cast<int>(f.size()) - 1 - static_cast<int>(r);
}

std::map<std::vector<long>, int> counts_by_fine_degree(const ToricIdealPresentation& t) {
    std::map<std::vector<long>, int> m;
    for (const auto& d : t.fine_degree) {
        std::vector<long> k;
        for (Eigen::Index r = 0; r < d.size(); ++r) k.push_back(d[r].get_si());
        ++m[k];
    }
    return m;
}

// ---- lift oracle ----

using XYPoly = std::map<XYMono, RatFn>;

XYPoly evaluated(int g, const PluckerPoint& pt) {
    XYPoly p;
    for (const auto& t : generators()[static_cast<std::size_t>(g)].terms) {
        const RatFn c = evaluate(t.coef, pt);
        if (!c.is_zero()) p[t.mono] = c;
    }
    return p;
}

XYPoly times(const XYPoly& a, const XYPoly& b) {
    XYPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            XYMono m{};
            for (std::size_t i = 0; i < 12; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
            RatFn& s = r[m];
            s += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

struct Lead {
    long val = 0;
    RatVec vec;
};

// lowest part of sum_k v_k f_a f_b: the t^min coefficient of each v_k
// times the leading coefficients of the two initial terms
Lead lead(const Vec<RatFn>& v, const std::vector<long>& w, const std::vector<Rational>& lc) {
    Lead l;
    bool any = false;
    for (Eigen::Index k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) {
            const long x = valuation(v[k]) + w[static_cast<std::size_t>(k)];
            if (!any || x < l.val) l.val = x;
            any = true;
        }
    REQUIRE(any);
    l.vec = RatVec::Constant(v.size(), Rational(0));
    for (Eigen::Index k = 0; k < v.size(); ++k)
        if (!v[k].is_zero() && valuation(v[k]) + w[static_cast<std::size_t>(k)] == l.val)
            l.vec[k] = leading_coefficient(v[k]) * lc[static_cast<std::size_t>(k)];
    return l;
}

struct LiftResult {
    int degrees = 0;
    int lifted = 0;
    std::vector<std::string> missing;
};

// For each reference degree: relations among the evaluated products over
// Q(t), reduced until their lowest parts are independent; every minimal
// binomial of J there must lie in the span of those lowest parts.
LiftResult lift_oracle(const MonericClass& cls, const PluckerPoint& pt) {
    LiftResult res;
    const auto t = toric_ideal(exponent_matrix(cls));
    std::vector<XYPoly> f;
    std::vector<long> om;
    std::vector<Rational> in_lc;
    for (int g = 0; g < kGens; ++g) {
        f.push_back(evaluated(g, pt));
        const RatFn& c = f.back().at(cls[static_cast<std::size_t>(g)]);
        om.push_back(valuation(c));
        in_lc.push_back(leading_coefficient(c));
        for (const auto& [m, d] : f.back()) REQUIRE((m == cls[static_cast<std::size_t>(g)] || valuation(d) > om.back()));
    }
    for (const auto& d : reference_degrees()) {
        ++res.degrees;
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < kGens; ++a)
            for (int b = a; b < kGens; ++b) {
                Degree7 s{};
                for (std::size_t k = 0; k < 7; ++k) s[k] = generators()[static_cast<std::size_t>(a)].degree[k] + generators()[static_cast<std::size_t>(b)].degree[k];
                if (s == d) pairs.push_back({a, b});
            }
        std::vector<XYPoly> prods;
        std::vector<long> w;
        std::vector<Rational> lc;
        std::map<XYMono, int> row;
        for (auto [a, b] : pairs) {
            const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
            prods.push_back(times(f[ua], f[ub]));
            w.push_back(om[ua] + om[ub]);
            lc.push_back(in_lc[ua] * in_lc[ub]);
            for (const auto& kv : prods.back()) row.emplace(kv.first, 0);
        }
        int r = 0;
        for (auto& kv : row) kv.second = r++;
        Mat<RatFn> m(r, static_cast<Eigen::Index>(prods.size()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = RatFn();
        for (std::size_t j = 0; j < prods.size(); ++j)
            for (const auto& [mono, c] : prods[j]) m(row[mono], static_cast<Eigen::Index>(j)) = c;
        const Mat<RatFn> ker = kernel(m);

        // valuated reduction
        std::vector<Vec<RatFn>> basis;
        std::vector<Lead> leads;
        for (Eigen::Index c = 0; c < ker.cols(); ++c) {
            Vec<RatFn> v = ker.col(c);
            for (int guard = 0; guard < 200; ++guard) {
                const Lead l = lead(v, w, lc);
                if (leads.empty()) break;
                RatMat span(l.vec.size(), static_cast<Eigen::Index>(leads.size()));
                for (std::size_t k = 0; k < leads.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = leads[k].vec;
                RatVec coef;
                if (!solve(span, l.vec, coef)) break;
                for (std::size_t k = 0; k < leads.size(); ++k) {
                    if (coef[static_cast<Eigen::Index>(k)] == 0) continue;
                    const RatFn s = RatFn(coef[static_cast<Eigen::Index>(k)]) * RatFn::t_power(l.val - leads[k].val);
                    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] -= s * basis[k][i];
                }
            }
            basis.push_back(v);
            leads.push_back(lead(v, w, lc));
        }
        // lowest parts live in J: products with equal initial monomial cancel
        for (const auto& l : leads) {
            std::map<XYMono, Rational> img;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (l.vec[static_cast<Eigen::Index>(k)] == 0) continue;
                XYMono m2{};
                for (std::size_t i = 0; i < 12; ++i)
                    m2[i] = static_cast<std::uint8_t>(cls[static_cast<std::size_t>(pairs[k].first)][i] + cls[static_cast<std::size_t>(pairs[k].second)][i]);
                img[m2] += l.vec[static_cast<Eigen::Index>(k)];
            }
            for (const auto& kv : img) REQUIRE(kv.second == 0);
        }
        RatMat span(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(leads.size()));
        for (std::size_t k = 0; k < leads.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = leads[k].vec;
        // minimal generators of J in this degree, as vectors over the pairs
        for (const auto& b : t.generators) {
            std::vector<int> plus, minus;
            for (int v = 0; v < kGens; ++v) {
                for (int e = 0; e < b.plus[static_cast<std::size_t>(v)]; ++e) plus.push_back(v);
                for (int e = 0; e < b.minus[static_cast<std::size_t>(v)]; ++e) minus.push_back(v);
            }
            if (plus.size() != 2) continue;
            Degree7 s{};
            for (int v : plus)
                for (std::size_t k = 0; k < 7; ++k) s[k] += generators()[static_cast<std::size_t>(v)].degree[k];
            if (s != d) continue;
            RatVec target = RatVec::Constant(static_cast<Eigen::Index>(pairs.size()), Rational(0));
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (pairs[k] == std::make_pair(plus[0], plus[1])) target[static_cast<Eigen::Index>(k)] += 1;
                if (pairs[k] == std::make_pair(minus[0], minus[1])) target[static_cast<Eigen::Index>(k)] -= 1;
            }
            RatVec coef;
            if (solve(span, target, coef)) ++res.lifted;
            else res.missing.push_back(to_string(b, kGens) + " in " + degree_string(d));
        }
    }
    return res;
}

} // namespace

TEST_SUITE("khovanskii") {

TEST_CASE("lattice helpers") {
    IntMat a(2, 3);
    a << 1, 0, 1, 0, 1, 1;
    const IntMat k = lattice_kernel(a);
    REQUIRE(k.rows() == 1);
    CHECK(((k(0, 0) == 1 && k(0, 1) == 1 && k(0, 2) == -1) || (k(0, 0) == -1 && k(0, 1) == -1 && k(0, 2) == 1)));
    IntMat h(2, 2);
    h << 4, 6, 6, 9;
    const IntMat hn = hermite_normal_form(h);
    CHECK(hn.rows() == 1);
    CHECK(hn(0, 0) == 2);
    CHECK(hn(0, 1) == 3);
}

TEST_CASE("free variables give the zero ideal") {
    const IntMat a = IntMat::Identity(27, 27);
    const auto t = toric_ideal(a);
    CHECK(t.lattice.rows() == 0);
    CHECK(t.generators.empty());
}

TEST_CASE("u, v, uv") {
    IntMat a(2, 3);
    a << 1, 0, 1, 0, 1, 1;
    const auto t = toric_ideal(a);
    REQUIRE(t.generators.size() == 1);
    const auto& b = t.generators[0];
    const bool fwd = b.plus[0] == 1 && b.plus[1] == 1 && b.minus[2] == 1;
    const bool bwd = b.minus[0] == 1 && b.minus[1] == 1 && b.plus[2] == 1;
    CHECK((fwd || bwd));
    CHECK(vanishes(b, a));
}

TEST_CASE("twisted cubic") {
    IntMat a(2, 4);
    a << 3, 2, 1, 0, 0, 1, 2, 3;
    const auto t = toric_ideal(a);
    CHECK(t.generators.size() == 3);
    for (const auto& b : t.generators) CHECK(vanishes(b, a));
    CHECK(t.bound == 2);
}

TEST_CASE("reference degrees") {
    const auto& refs = reference_degrees();
    REQUIRE(refs.size() == 27);
    std::set<Degree7> s(refs.begin(), refs.end());
    CHECK(s.size() == 27);
    for (const auto& d : refs) {
        int n = 0;
        for (int a = 0; a < kGens; ++a)
            for (int b = a + 1; b < kGens; ++b) {
                Degree7 x{};
                for (std::size_t k = 0; k < 7; ++k) x[k] = generators()[static_cast<std::size_t>(a)].degree[k] + generators()[static_cast<std::size_t>(b)].degree[k];
                if (x == d) ++n;
            }
        CHECK(n == 5);
        // total degree in the grading by x (first six entries) minus y
        CHECK(d[6] >= 0);
    }
}

TEST_CASE("generators vanish and are graded-minimal") {
    for (const char* id : {"C1-1", "C1-2", "2222233"}) {
        INFO(id);
        const MonericClass c = region_class(id);
        const IntMat a = exponent_matrix(c);
        const auto t = toric_ideal(a);
        for (const auto& b : t.generators) REQUIRE(vanishes(b, a));
        const auto have = counts_by_fine_degree(t);
        // every quadratic fine degree, plus the listed ones
        std::set<std::vector<long>> betas;
        for (int i = 0; i < kGens; ++i)
            for (int j = i; j < kGens; ++j) {
                std::vector<long> k;
                for (int r = 0; r < 12; ++r) k.push_back(a(r, i).get_si() + a(r, j).get_si());
                betas.insert(k);
            }
        for (const auto& kv : have) betas.insert(kv.first);
        for (const auto& k : betas) {
            IntVec beta(12);
            for (int r = 0; r < 12; ++r) beta[r] = k[static_cast<std::size_t>(r)];
            const int want = minimal_count_by_rank(a, beta);
            const auto it = have.find(k);
            REQUIRE(want == (it == have.end() ? 0 : it->second));
        }
        CHECK(t.bound >= 2);
    }
}

TEST_CASE("no cubic minimal generators on a sample class") {
    const MonericClass c = region_class("C1-1");
    const IntMat a = exponent_matrix(c);
    std::set<std::vector<long>> betas;
    for (int i = 0; i < kGens; ++i)
        for (int j = i; j < kGens; ++j)
            for (int k = j; k < kGens; ++k) {
                std::vector<long> b;
                for (int r = 0; r < 12; ++r) b.push_back(a(r, i).get_si() + a(r, j).get_si() + a(r, k).get_si());
                betas.insert(b);
            }
    int nonzero = 0;
    for (const auto& k : betas) {
        IntVec beta(12);
        for (int r = 0; r < 12; ++r) beta[r] = k[static_cast<std::size_t>(r)];
        if (minimal_count_by_rank(a, beta) != 0) ++nonzero;
    }
    CHECK(nonzero == 0);
}

TEST_CASE("verdicts on EEEE classes") {
    const auto yes = khovanskii_check(region_class("C1-1"));
    CHECK(yes.khovanskii);
    CHECK(yes.failures.empty());
    CHECK(yes.other_counts.empty());
    CHECK(yes.facets == 54);
    for (const auto& [d, n] : yes.reference_counts) CHECK(n == 3);

    const auto no = khovanskii_check(region_class("C1-2"));
    CHECK_FALSE(no.khovanskii);
    CHECK(no.other_counts.empty());
    int four = 0;
    for (const auto& [d, n] : no.reference_counts) {
        CHECK(n >= 3);
        if (n == 4) ++four;
    }
    CHECK(four > 0);
    CHECK(no.facets == 64);
}

TEST_CASE("verdict does not depend on the starting basis") {
    for (const char* id : {"C1-1", "C1-2"}) {
        const MonericClass c = region_class(id);
        const auto v0 = khovanskii_check(c);
        ToricOptions o1;
        o1.seed_lattice_basis = true;
        ToricOptions o2;
        o2.skip_quadrics = true;
        for (const auto& o : {o1, o2}) {
            const auto v = khovanskii_check(c, o);
            CHECK(v.reference_counts == v0.reference_counts);
            CHECK(v.other_counts == v0.other_counts);
            CHECK(v.khovanskii == v0.khovanskii);
        }
    }
}

TEST_CASE("S6 translates get the same verdict") {
    const MonericClass c = region_class("2222233");
    const auto v0 = khovanskii_check(c);
    for (int n = 0; n < 3; ++n) {
        const auto s = testing::random_perm(rng());
        const auto v = khovanskii_check(act(s, c));
        CHECK(v.khovanskii == v0.khovanskii);
        CHECK(v.facets == v0.facets);
        std::multiset<int> h0, h1;
        for (const auto& kv : v0.reference_counts) h0.insert(kv.second);
        for (const auto& kv : v.reference_counts) h1.insert(kv.second);
        CHECK(h0 == h1);
    }
}

TEST_CASE("facet counts") {
    CHECK(facet_count(IntMat(IntMat::Identity(12, 12))) == 12);
    const MonericClass c = region_class("2222233");
    CHECK(facet_count(c) == facet_count(act(testing::random_perm(rng()), c)));
    CHECK(facet_count(c) == facet_normals(12, columns(exponent_matrix(c))).size());
}

TEST_CASE("lifts at a witness") {
    std::mt19937_64 g(5);
    SUBCASE("Khovanskii class: every minimal binomial lifts") {
        const auto p = sample_region(eeee_region("C1-1"), g);
        const auto w = witness(p);
        const auto pt = plucker_from_matrix(w.matrix);
        const auto mr = monericity(pt);
        REQUIRE(mr.moneric);
        REQUIRE(mr.monos == region_class("C1-1"));
        const auto r = lift_oracle(mr.monos, pt);
        CHECK(r.degrees == 27);
        CHECK(r.lifted == 81);
        CHECK(r.missing.empty());
    }
    SUBCASE("non-Khovanskii class: some binomial does not lift") {
        const auto p = sample_region(eeee_region("C1-2"), g);
        const auto w = witness(p);
        const auto pt = plucker_from_matrix(w.matrix);
        const auto mr = monericity(pt);
        REQUIRE(mr.moneric);
        const auto r = lift_oracle(mr.monos, pt);
        CHECK_FALSE(r.missing.empty());
    }
}

TEST_CASE("a few of the orbit representatives") {
    const auto& reps = testing::shared_report().orbit_representatives;
    REQUIRE(reps.size() == 78);
    std::size_t yes = 0, min_facets = 1000;
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{76}, std::size_t{77}}) {
        const auto v = khovanskii_check(reps[i]);
        CHECK(v.other_counts.empty());
        if (v.khovanskii) {
            ++yes;
            min_facets = std::min(min_facets, v.facets);
        }
    }
    CHECK(yes == 2);
    CHECK(min_facets == 21);
}

}
