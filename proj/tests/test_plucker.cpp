#include "doctest.h"
#include "support.hpp"

#include "cubic/linalg.hpp"
#include "cubic/plucker.hpp"

#include <map>
#include <set>

using namespace cubic;
using cubic::testing::rng;

namespace {

PPoly p(const char* s) { return parse_ppoly(s); }

// up to sign, as text
std::string unsigned_key(const PPoly& q) {
    const PPoly n = q.terms().front().coef < 0 ? q.scaled(Rational(-1)) : q;
    return to_string(n);
}

} // namespace

TEST_SUITE("plucker") {

TEST_CASE("index ordering") {
    CHECK(plucker_index(1, 2, 3) == 0);
    CHECK(plucker_index(4, 5, 6) == 19);
    CHECK(plucker_index(3, 1, 2) == 0);
    CHECK(triple_name(plucker_index(2, 4, 6)) == "246");
    CHECK(triple_sign(2, 1, 3) == -1);
    CHECK(triple_sign(3, 1, 2) == 1);
}

TEST_CASE("minors of unit matrices") {
    Mat<RatFn> m(3, 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = RatFn(i == j ? 1 : 0);
    auto pt = plucker_from_matrix(m);
    CHECK(pt.coords[0] == RatFn(1));
    for (int i = 1; i < kPl; ++i) CHECK(pt.coords[static_cast<std::size_t>(i)].is_zero());
    CHECK(pt.vals[0] == 0);
    CHECK_FALSE(pt.vals[5].has_value());

    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) m(i, j) = RatFn(1);
    pt = plucker_from_matrix(m);
    CHECK(pt.coords[static_cast<std::size_t>(plucker_index(1, 2, 4))] == RatFn(1));
    CHECK(pt.coords[static_cast<std::size_t>(plucker_index(1, 4, 5))].is_zero());
}

TEST_CASE("rank deficient matrices are rejected") {
    Mat<RatFn> m(3, 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = RatFn(i == 2 ? 0 : j + 1 + i * j);
    CHECK_THROWS(plucker_from_matrix(m));
}

TEST_CASE("relations vanish on 100 matrices") {
    const auto c = testing::plucker_suite(100, 5);
    INFO(c.detail);
    CHECK(c.ok);
}

TEST_CASE("row operations rescale all coordinates") {
    for (int n = 0; n < 20; ++n) {
        const Mat<RatFn> m = testing::random_rank3_qt(rng());
        Mat<RatFn> g(3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) g(i, j) = RatFn(Rational(testing::rand_int(rng(), -3, 3))) * RatFn::t_power(static_cast<long>(testing::rand_int(rng(), 0, 2).get_si()));
        } while (rank(g) < 3);
        const RatFn d = det3(g, 0, 1, 2);
        const Mat<RatFn> gm = g * m;
        const auto a = plucker_from_matrix(m), b = plucker_from_matrix(gm);
        for (int i = 0; i < kPl; ++i) {
            const auto k = static_cast<std::size_t>(i);
            REQUIRE(b.coords[k] == d * a.coords[k]);
            if (a.vals[k]) REQUIRE(*b.vals[k] == *a.vals[k] + valuation(d));
        }
    }
}

TEST_CASE("three-term relations against brute force") {
    // all +-1 combinations of three degree-2 monomials in the same index
    // multiset that vanish on a few random points
    std::vector<std::array<Rational, kPl>> pts;
    for (int n = 0; n < 4; ++n) pts.push_back(testing::leibniz_minors(to_rational(testing::random_rank3(rng(), -20, 20))));
    std::map<std::array<int, 6>, std::vector<std::pair<int, int>>> by_content;
    for (int a = 0; a < kPl; ++a)
        for (int b = a; b < kPl; ++b) {
            std::array<int, 6> c{};
            for (int x : plucker_triples()[static_cast<std::size_t>(a)]) ++c[static_cast<std::size_t>(x - 1)];
            for (int x : plucker_triples()[static_cast<std::size_t>(b)]) ++c[static_cast<std::size_t>(x - 1)];
            by_content[c].push_back({a, b});
        }
    std::set<std::string> found;
    for (const auto& [content, ms] : by_content)
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j)
                for (std::size_t k = j + 1; k < ms.size(); ++k)
                    for (int s1 : {1, -1})
                        for (int s2 : {1, -1}) {
                            bool zero = true;
                            for (const auto& pt : pts) {
                                auto v = [&](std::pair<int, int> m) { return pt[static_cast<std::size_t>(m.first)] * pt[static_cast<std::size_t>(m.second)]; };
                                if (v(ms[i]) + s1 * v(ms[j]) + s2 * v(ms[k]) != 0) zero = false;
                            }
                            if (!zero) continue;
                            auto mono = [](std::pair<int, int> m, int s) {
                                return PPoly::variable(m.first) * PPoly::variable(m.second).scaled(Rational(s));
                            };
                            found.insert(unsigned_key(mono(ms[i], 1) + mono(ms[j], s1) + mono(ms[k], s2)));
                        }
    std::set<std::string> lib;
    for (const auto& r : three_term_relations()) {
        CHECK(r.size() == 3);
        lib.insert(unsigned_key(r));
    }
    CHECK(found.size() == 30);
    CHECK(lib == found);
    CHECK(plucker_relations().size() >= 35);
}

TEST_CASE("relation set is stable under S6") {
    std::set<std::string> three;
    for (const auto& r : three_term_relations()) three.insert(unsigned_key(r));
    // the span of all relations, as a row space over the degree-2 monomials
    std::map<PMono, int> col;
    auto rows = [&](const std::vector<PPoly>& ps) {
        for (const auto& q : ps)
            for (const auto& t : q.terms()) col.emplace(t.exp, 0);
        int c = 0;
        for (auto& kv : col) kv.second = c++;
        RatMat m = RatMat::Zero(static_cast<Eigen::Index>(ps.size()), c);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (const auto& t : ps[i].terms()) m(static_cast<Eigen::Index>(i), col[t.exp]) = t.coef;
        return m;
    };
    for (int a = 0; a < kPl; ++a)
        for (int b = a; b < kPl; ++b) col.emplace((PPoly::variable(a) * PPoly::variable(b)).terms()[0].exp, 0);
    const RatMat base = rows(plucker_relations());
    const auto r0 = rank(base);
    CHECK(r0 == 35);
    for (const auto& s : all_perms()) {
        const SignedPermutation sp(s);
        std::vector<PPoly> moved;
        for (const auto& r : three_term_relations()) REQUIRE(three.count(unsigned_key(act(sp, r))) == 1);
        for (const auto& r : plucker_relations()) moved.push_back(act(sp, r));
        RatMat both(2 * base.rows(), base.cols());
        both << base, rows(moved);
        REQUIRE(rank(both) == r0);
    }
}

TEST_CASE("signed action examples") {
    const SignedPermutation s(transposition(1, 2));
    const auto [sg, e] = act(s, PPoly::variable(0).terms()[0].exp);
    CHECK(sg == -1);
    CHECK(to_string(e) == "p123");
    CHECK(act(s, p("p123")) == p("-p123"));
    CHECK(act(s, p("p134*p256")) == p("p234*p156"));

    const SignedPermutation id{Perm{}};
    const auto m = testing::random_rank3_qt(rng());
    const auto pt = plucker_from_matrix(m);
    const auto q = act(id, pt);
    for (int i = 0; i < kPl; ++i) CHECK(q.coords[static_cast<std::size_t>(i)] == pt.coords[static_cast<std::size_t>(i)]);
    CHECK(act(id, p("p123*p456 - p124*p356")) == p("p123*p456 - p124*p356"));
}

TEST_CASE("action composes") {
    for (int n = 0; n < 50; ++n) {
        const Perm s = testing::random_perm(rng()), t = testing::random_perm(rng());
        IntVec w(kPl);
        for (int i = 0; i < kPl; ++i) w[i] = testing::rand_int(rng(), -9, 9);
        REQUIRE(vec_equal(act(SignedPermutation(s), act(SignedPermutation(t), w)), act(SignedPermutation(compose(s, t)), w)));
        const auto pt = plucker_from_matrix(testing::random_rank3_qt(rng()));
        const auto a = act(SignedPermutation(s), act(SignedPermutation(t), pt));
        const auto b = act(SignedPermutation(compose(s, t)), pt);
        for (int i = 0; i < kPl; ++i) REQUIRE(a.coords[static_cast<std::size_t>(i)] == b.coords[static_cast<std::size_t>(i)]);
        const PPoly r = three_term_relations()[static_cast<std::size_t>(n % 30)];
        REQUIRE(act(SignedPermutation(s), act(SignedPermutation(t), r)) == act(SignedPermutation(compose(s, t)), r));
    }
}

TEST_CASE("ideal membership") {
    for (const auto& r : plucker_relations()) CHECK(in_plucker_ideal(r));
    CHECK(in_plucker_ideal(p("p123*p145*p246 - p124*p135*p246 + p125*p134*p246")));
    CHECK_FALSE(in_plucker_ideal(p("p123*p456 - p124*p356")));
    CHECK_FALSE(in_plucker_ideal(p("p146*p236*p245*p356 - p136*p235*p246*p456")));
}

TEST_CASE("equivalent binomials") {
    const PPoly b = p("p124*p235*p256*p346 - p125*p234*p246*p356");
    const auto d0 = equivalent_binomials(b, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0] == b);

    const auto d2 = equivalent_binomials(b, 2);
    std::set<std::string> keys;
    for (const auto& q : d2) keys.insert(unsigned_key(q));
    CHECK(keys.count(unsigned_key(b)) == 1);
    CHECK(keys.size() > 1);

    std::vector<PluckerPoint> pts;
    for (int n = 0; n < 3; ++n) pts.push_back(plucker_from_matrix(testing::random_rank3_qt(rng())));
    for (const auto& q : d2) {
        CHECK(q.size() == 2);
        CHECK(in_plucker_ideal(b - q));
        for (const auto& pt : pts) CHECK(evaluate(q, pt) == evaluate(b, pt));
    }
}

}
