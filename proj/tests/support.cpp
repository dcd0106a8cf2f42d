#include "support.hpp"

#include "cubic/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cubic::testing {

std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

Integer rand_int(std::mt19937_64& g, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return Integer(d(g));
}

Rational rand_rat(std::mt19937_64& g, long lo, long hi) {
    std::uniform_int_distribution<long> n(lo, hi), d(1, 7);
    Rational q(n(g), d(g));
    q.canonicalize();
    return q;
}

IntMat random_rank3(std::mt19937_64& g, long lo, long hi) {
    IntMat m(3, 6);
    do {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) m(i, j) = rand_int(g, lo, hi);
    } while (int_rank(m) < 3);
    return m;
}

namespace {

RatFn small_poly(std::mt19937_64& g) {
    std::uniform_int_distribution<int> deg(0, 2);
    std::vector<Rational> c;
    const int d = deg(g);
    for (int i = 0; i <= d; ++i) c.push_back(Rational(rand_int(g, -3, 3)));
    return RatFn(QPoly(c), QPoly(Rational(1)));
}

} // namespace

Mat<RatFn> random_rank3_qt(std::mt19937_64& g) {
    for (;;) {
        Mat<RatFn> m(3, 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) m(i, j) = small_poly(g);
        if (rank(m) == 3) return m;
    }
}

Mat<RatFn> lift(const IntMat& m) {
    Mat<RatFn> r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = RatFn(Rational(m(i, j)));
    return r;
}

namespace {

template <class S>
std::array<S, kPl> minors_impl(const Mat<S>& m) {
    // sum over the 6 arrangements of the chosen columns
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    std::array<S, kPl> out;
    int n = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) {
                const int c[3] = {i, j, k};
                S s(0);
                for (int q = 0; q < 6; ++q) {
                    S term = m(0, c[perm[q][0]]) * m(1, c[perm[q][1]]) * m(2, c[perm[q][2]]);
                    if (q < 3) s += term; else s -= term;
                }
                out[static_cast<std::size_t>(n++)] = s;
            }
    return out;
}

} // namespace

std::array<Rational, kPl> leibniz_minors(const RatMat& m) { return minors_impl(m); }
std::array<RatFn, kPl> leibniz_minors(const Mat<RatFn>& m) { return minors_impl(m); }

KnownRatFn random_known(std::mt19937_64& g, long kmin, long kmax) {
    std::uniform_int_distribution<int> deg(0, 3);
    auto unit = [&] {
        std::vector<Rational> c;
        Integer c0;
        do c0 = rand_int(g, -6, 6);
        while (c0 == 0);
        c.push_back(Rational(c0));
        const int d = deg(g);
        for (int i = 1; i <= d; ++i) c.push_back(Rational(rand_int(g, -6, 6)));
        return QPoly(c);
    };
    KnownRatFn out;
    const QPoly p = unit(), q = unit();
    out.val = rand_int(g, kmin, kmax).get_si();
    out.lc = p.coeff(0) / q.coeff(0);
    out.f = RatFn(p, q) * RatFn::t_power(out.val);
    return out;
}

Mat<RatFn> permute_columns(const Mat<RatFn>& m, const Perm& s) {
    Mat<RatFn> r(m.rows(), m.cols());
    for (int i = 1; i <= 6; ++i) r.col(s(i) - 1) = m.col(i - 1);
    return r;
}

Perm random_perm(std::mt19937_64& g) {
    Perm p;
    std::shuffle(p.img.begin(), p.img.end(), g);
    return p;
}

const TGrFan& shared_fan() {
    static const TGrFan fan = load_and_verify_fan(default_fan_path());
    return fan;
}

const std::vector<ConeClassification>& shared_classification() {
    static const std::vector<ConeClassification> per = [] {
        std::vector<ConeClassification> v;
        for (auto t : all_cone_types()) v.push_back(subdivide_cone(shared_fan(), t));
        return v;
    }();
    return per;
}

const GlobalReport& shared_report() {
    static const GlobalReport r = classify_all(shared_fan(), shared_classification());
    return r;
}

// ---------------- invariant suites ----------------

Check invariance_suite(int subspaces, int lambdas, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    Check res;
    int nonzero = 0;
    for (int trial = 0; trial < subspaces; ++trial) {
        const IntMat a = random_rank3(g);
        const auto p = leibniz_minors(to_rational(a));
        const IntMat ker = int_kernel(a); // 6 x 3, spans G = null(A)
        for (int l = 0; l < lambdas; ++l) {
            RatVec lambda = RatVec::Constant(6, Rational(0));
            for (Eigen::Index c = 0; c < ker.cols(); ++c) lambda += rand_rat(g) * to_rational(IntVec(ker.col(c)));
            std::array<Rational, 6> z, w, w2;
            for (int i = 0; i < 6; ++i) {
                z[static_cast<std::size_t>(i)] = rand_rat(g);
                w[static_cast<std::size_t>(i)] = rand_rat(g);
                w2[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + lambda[i] * z[static_cast<std::size_t>(i)];
            }
            for (const auto& gen : generators()) {
                const Rational v0 = evaluate(gen, p, z, w), v1 = evaluate(gen, p, z, w2);
                if (v0 != 0) ++nonzero;
                if (v0 != v1) res.fail(gen.id + " not invariant on subspace " + std::to_string(trial));
            }
        }
    }
    if (nonzero == 0) res.fail("all generator values vanished");
    if (res.ok)
        res.detail = std::to_string(subspaces) + " subspaces x " + std::to_string(lambdas) + " shifts x 27 generators";
    return res;
}

Check valuation_suite(int pairs, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::uniform_int_distribution<int> coin(0, 3);
    Check res;
    int cancellations = 0;
    for (int n = 0; n < pairs; ++n) {
        const KnownRatFn f = random_known(g);
        KnownRatFn h = random_known(g);
        RatFn gf = h.f;
        long gv = h.val;
        Rational glc = h.lc;
        const bool cancel = coin(g) == 0;
        if (cancel) {
            // g = -f + (something of higher value): f + g loses its lowest part
            const KnownRatFn up = random_known(g, f.val + 1, f.val + 5);
            gf = up.f - f.f;
            gv = f.val;
            glc = -f.lc;
            h = up;
        }
        const std::string tag = " on pair " + std::to_string(n);
        if (valuation(f.f) != f.val || leading_coefficient(f.f) != f.lc) res.fail("valuation oracle mismatch" + tag);
        if (valuation(gf) != gv || leading_coefficient(gf) != glc) res.fail("valuation oracle mismatch" + tag);
        const RatFn prod = field_arithmetic(f.f, gf, FieldOp::mul);
        if (valuation(prod) != f.val + gv) res.fail("nu(fg) != nu(f) + nu(g)" + tag);
        if (leading_coefficient(prod) != f.lc * glc) res.fail("lc(fg) != lc(f) lc(g)" + tag);
        if (valuation(field_arithmetic(f.f, gf, FieldOp::div)) != f.val - gv) res.fail("nu(f/g)" + tag);
        const RatFn sum = field_arithmetic(f.f, gf, FieldOp::add);
        if (!sum.is_zero()) {
            const long m = std::min(f.val, gv);
            if (valuation(sum) < m) res.fail("nu(f+g) < min" + tag);
            if (f.val != gv && valuation(sum) != m) res.fail("nu(f+g) != min for distinct values" + tag);
            if (cancel) {
                ++cancellations;
                if (valuation(sum) != h.val) res.fail("cancellation value" + tag);
            }
        }
        if (parse_ratfn(to_string(f.f)) != f.f) res.fail("text round trip" + tag);
    }
    if (cancellations == 0) res.fail("no cancelling pair drawn");
    if (res.ok) res.detail = std::to_string(pairs) + " pairs, " + std::to_string(cancellations) + " with cancellation";
    return res;
}

Check plucker_suite(int matrices, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    Check res;
    const auto& rels = plucker_relations();
    {
        // the relations must span the 35-dimensional degree-2 piece
        std::map<PMono, Eigen::Index> col;
        for (const auto& r : rels)
            for (const auto& t : r.terms()) col.emplace(t.exp, static_cast<Eigen::Index>(col.size()));
        RatMat c = RatMat::Constant(static_cast<Eigen::Index>(rels.size()), static_cast<Eigen::Index>(col.size()), Rational(0));
        for (std::size_t i = 0; i < rels.size(); ++i)
            for (const auto& t : rels[i].terms()) c(static_cast<Eigen::Index>(i), col.at(t.exp)) = t.coef;
        if (rank(c) != 35) res.fail("relations span rank " + std::to_string(rank(c)) + ", expected 35");
    }
    for (int n = 0; n < matrices; ++n) {
        // alternate integer and Q(t) matrices
        const Mat<RatFn> m = n % 2 ? random_rank3_qt(g) : lift(random_rank3(g));
        const auto minors = leibniz_minors(m);
        const PluckerPoint pt = plucker_from_matrix(m);
        for (int i = 0; i < kPl; ++i)
            if (pt.coords[static_cast<std::size_t>(i)] != minors[static_cast<std::size_t>(i)])
                res.fail("minor " + triple_name(i) + " differs on matrix " + std::to_string(n));
        const PluckerPoint oracle = plucker_from_coords(minors);
        for (const auto& r : rels)
            if (!evaluate(r, oracle).is_zero()) res.fail(to_string(r) + " does not vanish on matrix " + std::to_string(n));
    }
    if (res.ok) res.detail = std::to_string(matrices) + " matrices x " + std::to_string(rels.size()) + " relations";
    return res;
}

Check equivariance_suite(int perms, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    Check res;
    const auto& regions = eeee_regions();
    for (int n = 0; n < perms; ++n) {
        const auto& r = regions[static_cast<std::size_t>(n) % regions.size()];
        const EeeeParams p = sample_region(r, g);
        const Witness w = witness(p, {static_cast<std::uint64_t>(n + 1), 64});
        const PluckerPoint base = plucker_from_matrix(w.matrix);
        const MonericityResult m0 = monericity(base);
        const Perm s = random_perm(g);
        const PluckerPoint moved = plucker_from_matrix(permute_columns(w.matrix, s));
        const std::string tag = " (" + r.id + ", " + to_string(s) + ")";
        const PluckerPoint acted = act(SignedPermutation(s), base);
        for (int i = 0; i < kPl; ++i)
            if (acted.coords[static_cast<std::size_t>(i)] != moved.coords[static_cast<std::size_t>(i)])
                res.fail("column permutation and signed action disagree" + tag);
        if (!vec_equal(act(SignedPermutation(s), base.valuation_vector()), moved.valuation_vector()))
            res.fail("valuation vector not equivariant" + tag);
        const MonericityResult m1 = monericity(moved);
        if (!m0.moneric || !m1.moneric) {
            res.fail("witness not moneric" + tag);
            continue;
        }
        if (m1.monos != act(s, m0.monos)) res.fail("initial monomials not equivariant" + tag);
        if (orbit_key(m1.monos) != orbit_key(m0.monos)) res.fail("orbit key changed" + tag);
        for (int k = 0; k < kGens; ++k)
            if (m1.weights[static_cast<std::size_t>(act_generator(s, k))] != m0.weights[static_cast<std::size_t>(k)])
                res.fail("weights not equivariant" + tag);
    }
    if (res.ok) res.detail = std::to_string(perms) + " random permutations on witnesses";
    return res;
}

Check two_witness_suite(int trials, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    Check res;
    std::vector<const EeeeRegion*> case2;
    for (const auto& r : eeee_regions())
        if (r.case_no == 2) case2.push_back(&r);
    int distinct = 0;
    for (int n = 0; n < trials; ++n) {
        const auto& r = *case2[static_cast<std::size_t>(n) % case2.size()];
        const EeeeParams p = sample_region(r, g);
        const Witness w1 = witness(p, {static_cast<std::uint64_t>(2 * n + 1), 64});
        const Witness w2 = witness(p, {static_cast<std::uint64_t>(2 * n + 1000), 64});
        const PluckerPoint p1 = plucker_from_matrix(w1.matrix), p2 = plucker_from_matrix(w2.matrix);
        const std::string tag = " (" + r.id + ", trial " + std::to_string(n) + ")";
        if (!vec_equal(p1.valuation_vector(), p2.valuation_vector())) {
            res.fail("valuation vectors differ" + tag);
            continue;
        }
        bool same = true;
        for (Eigen::Index i = 0; i < w1.matrix.size(); ++i)
            if (w1.matrix.data()[i] != w2.matrix.data()[i]) same = false;
        if (!same) ++distinct;
        const auto m1 = monericity(p1), m2 = monericity(p2);
        if (!m1.moneric || !m2.moneric) res.fail("witness not moneric" + tag);
        else if (m1.monos != m2.monos) res.fail("initial monomials differ" + tag);
        else if (m1.weights != m2.weights) res.fail("weights differ" + tag);
    }
    if (distinct < trials / 2) res.fail("witness pairs were mostly identical matrices");
    if (res.ok) res.detail = std::to_string(trials) + " pairs, " + std::to_string(distinct) + " with distinct matrices";
    return res;
}

} // namespace cubic::testing

namespace cubic::testing {

namespace {

// initial monomials read off the Case 1 rules, as functions of (a, b, lambda0)
std::vector<std::pair<std::string, std::string>> case1_rules(const EeeeParams& p) {
    const auto& a = p.a;
    const auto& b = p.b;
    const Rational d61 = a[5] - a[0], d26 = a[1] - a[5];
    std::vector<std::pair<std::string, std::string>> r{
        {"F16", "x3*x4*x5*y2"},        {"F12", "x3*x4*x5*y6"}, {"F13", "x2*x4*x5*y6"},
        {"F14", "x2*x3*x5*y6"},        {"F15", "x2*x3*x4*y6"}, {"G1", "x2*x3*x4*x5*x6*y1^2"},
        {"F23", b[0] > d61 ? "x1*x4*x5*y6" : "x4*x5*x6*y1"},
        {"F45", b[1] > d61 ? "x1*x2*x3*y6" : "x2*x3*x6*y1"}};
    std::string g6;
    if (!p.lambda0) {
        g6 = b[0] > d61 && b[1] > d61 ? "x1*x2*x3*x4*x5*y6^2" : "x2*x3*x4*x5*x6*y1*y6";
    } else {
        const Rational& l = *p.lambda0;
        if (l < d26 && l < d61 - b[0]) g6 = "x2*x3*x4*x5*x6*y1*y6";
        else if (l > d26 && b[0] < d61 - d26) g6 = "x3*x4*x5*x6^2*y1*y2";
        else if (l > d61 - b[0] && b[0] > d61 - d26) g6 = "x1*x2*x3*x4*x5*y6^2";
    }
    if (!g6.empty()) r.push_back({"G6", g6});
    return r;
}

} // namespace

SpotReport spot_prediction_suite(int draws, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    SpotReport rep;
    for (const auto& r : eeee_regions()) {
        ++rep.regions;
        for (int k = 0; k < draws; ++k) {
            const EeeeParams p = sample_region(r, g);
            const std::string tag = " (" + r.id + ", draw " + std::to_string(k) + ")";
            const Prediction pr = predict_class(p);
            if (pr.status != PredictionStatus::moneric || pr.region != r.id) {
                rep.check.fail("sample not predicted in its own system" + tag);
                continue;
            }
            Witness w;
            try {
                w = witness(p, {static_cast<std::uint64_t>(k + 1), 64});
            } catch (const std::exception& e) {
                rep.check.fail(std::string("witness failed: ") + e.what() + tag);
                continue;
            }
            ++rep.witnesses;
            const PluckerPoint pt = plucker_from_matrix(w.matrix);
            // exact valuations: scale * phi(a, b)
            const RatVec phi = eeee_phi_rational(p.a, p.b);
            for (int i = 0; i < kPl; ++i) {
                const auto v = pt.vals[static_cast<std::size_t>(i)];
                if (!v || Rational(*v) != Rational(w.scale) * phi[i]) rep.check.fail("valuation of p" + triple_name(i) + " off" + tag);
            }
            const MonericityResult m = monericity(pt);
            if (!m.moneric) {
                rep.check.fail("witness not moneric" + tag);
                continue;
            }
            if (m.monos != pr.cls) rep.check.fail("class differs from prediction" + tag);
            if (r.case_no != 1) continue;
            EeeeParams scaled = p;
            for (int i = 0; i < 6; ++i) scaled.a[i] *= w.scale;
            for (int i = 0; i < 4; ++i) scaled.b[i] *= w.scale;
            if (scaled.lambda0) *scaled.lambda0 *= w.scale;
            for (const auto& [id, mono] : case1_rules(scaled)) {
                ++rep.rule_checks;
                if (to_string(m.monos[static_cast<std::size_t>(generator_index(id))]) != mono)
                    rep.check.fail("in(" + id + ") is " + to_string(m.monos[static_cast<std::size_t>(generator_index(id))]) + ", rule says " + mono + tag);
            }
        }
    }
    if (rep.check.ok)
        rep.check.detail = std::to_string(rep.witnesses) + " witnesses over " + std::to_string(rep.regions) + " systems, " +
                           std::to_string(rep.rule_checks) + " rule checks";
    return rep;
}

} // namespace cubic::testing
