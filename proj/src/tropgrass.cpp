#include "cubic/tropgrass.hpp"

#include "cubic/linalg.hpp"

#include <tbb/parallel_for.h>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cubic {

namespace {

struct TypeInfo {
    ConeType type;
    const char* name;
    std::size_t orbit;
    std::size_t stabilizer;
};

// Header rows: orbit sizes and stabilizer orders.
constexpr TypeInfo kTypes[kConeTypes] = {
    {ConeType::FFFGG, "FFFGG", 15, 48}, {ConeType::EEEE, "EEEE", 30, 24}, {ConeType::EEFF1, "EEFF1", 90, 8},
    {ConeType::EEFF2, "EEFF2", 90, 8},  {ConeType::EFFG, "EFFG", 180, 4}, {ConeType::EEEG, "EEEG", 240, 3},
    {ConeType::EEFG, "EEFG", 360, 2},
};

const TypeInfo& info(ConeType t) { return kTypes[static_cast<int>(t)]; }

IntVec e_vec(std::initializer_list<std::array<int, 3>> ts) {
    IntVec v = IntVec::Zero(kPl);
    for (const auto& t : ts) v[plucker_index(t[0], t[1], t[2])] += 1;
    return v;
}

IntVec f_vec(int a, int b, int c, int d) { return e_vec({{a, b, c}, {a, b, d}, {a, c, d}, {b, c, d}}); }

const std::vector<IntVec>& lineality_rref() {
    static const std::vector<IntVec> rows = [] {
        IntMat m(6, kPl);
        for (int i = 0; i < 6; ++i) m.row(i) = tgr_lineality()[static_cast<std::size_t>(i)].transpose();
        IntMat k = row_space_key(m);
        std::vector<IntVec> r;
        for (Eigen::Index i = 0; i < k.rows(); ++i) r.push_back(IntVec(k.row(i).transpose()));
        return r;
    }();
    return rows;
}

std::string ray_key(const IntVec& v) { return to_string(reduce_mod(v, lineality_rref())); }

struct Candidate {
    std::string name;
    IntVec v;
};

std::vector<Candidate> candidate_rays() {
    std::vector<Candidate> out;
    std::set<std::string> seen;
    auto add = [&](std::string name, const IntVec& v) {
        if (seen.insert(ray_key(v)).second) out.push_back({std::move(name), v});
    };
    for (int n = 0; n < kPl; ++n) add("E" + triple_name(n), e_vec({plucker_triples()[static_cast<std::size_t>(n)]}));
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b)
            for (int c = b + 1; c <= 6; ++c)
                for (int d = c + 1; d <= 6; ++d)
                    add("F" + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d), f_vec(a, b, c, d));
    for (const auto& p : all_perms()) {
        const auto& x = p.img;
        IntVec v = f_vec(x[0], x[1], x[2], x[3]) + e_vec({{x[2], x[3], x[4]}, {x[2], x[3], x[5]}});
        std::string name = "G";
        for (int i : x) name += std::to_string(i);
        add(name, v);
    }
    return out;
}

ConeType classify_rays(const std::vector<std::string>& names) {
    int e = 0, f = 0, g = 0;
    std::vector<std::string> es;
    for (const auto& n : names) {
        if (n[0] == 'E') {
            ++e;
            es.push_back(n.substr(1));
        } else if (n[0] == 'F') {
            ++f;
        } else if (n[0] == 'G') {
            ++g;
        }
    }
    if (e == 4 && f == 0 && g == 0) return ConeType::EEEE;
    if (e == 3 && g == 1) return ConeType::EEEG;
    if (e == 2 && f == 1 && g == 1) return ConeType::EEFG;
    if (e == 1 && f == 2 && g == 1) return ConeType::EFFG;
    if (f == 3 && g == 2) return ConeType::FFFGG;
    if (e == 2 && f == 2) {
        bool disjoint = true;
        for (char c : es[0])
            if (es[1].find(c) != std::string::npos) disjoint = false;
        return disjoint ? ConeType::EEFF1 : ConeType::EEFF2;
    }
    throw FanVerificationError("cone with rays of unknown combinatorial type");
}

std::string sig_on(const IntVec& f, const Cone& c) {
    std::string s;
    for (const auto& l : c.lineality()) s += dot(f, l).get_str() + ",";
    s += ";";
    for (const auto& r : c.rays()) s += dot(f, r).get_str() + ",";
    return s;
}

bool same_on(const IntVec& a, const IntVec& b, const Cone& c) { return sig_on(a, c) == sig_on(b, c); }

} // namespace

const std::array<ConeType, kConeTypes>& all_cone_types() {
    static const std::array<ConeType, kConeTypes> t{ConeType::FFFGG, ConeType::EEEE, ConeType::EEFF1, ConeType::EEFF2,
                                                   ConeType::EFFG,  ConeType::EEEG, ConeType::EEFG};
    return t;
}

std::string to_string(ConeType t) { return info(t).name; }

ConeType parse_cone_type(std::string_view s) {
    for (const auto& i : kTypes)
        if (s == i.name) return i.type;
    throw std::invalid_argument("unknown cone type " + std::string(s));
}

const std::vector<IntVec>& tgr_lineality() {
    static const std::vector<IntVec> l = [] {
        std::vector<IntVec> rows;
        for (int i = 1; i <= 6; ++i) {
            IntVec v = IntVec::Zero(kPl);
            for (int n = 0; n < kPl; ++n) {
                const auto& t = plucker_triples()[static_cast<std::size_t>(n)];
                if (t[0] == i || t[1] == i || t[2] == i) v[n] = 1;
            }
            rows.push_back(v);
        }
        return rows;
    }();
    return l;
}

std::vector<int> coordinate_perm(const Perm& s) {
    SignedPermutation sp(s);
    return std::vector<int>(sp.target.begin(), sp.target.end());
}

IntMat permutation_matrix(const Perm& s) {
    IntMat m = IntMat::Zero(kPl, kPl);
    const auto t = coordinate_perm(s);
    for (int n = 0; n < kPl; ++n) m(t[static_cast<std::size_t>(n)], n) = 1;
    return m;
}

// ---------------- prevariety ----------------

namespace {

const std::vector<std::array<IntVec, 3>>& relation_forms() {
    static const std::vector<std::array<IntVec, 3>> f = [] {
        std::vector<std::array<IntVec, 3>> out;
        for (const auto& r : three_term_relations())
            out.push_back({exponent_vector(r.terms()[0].exp), exponent_vector(r.terms()[1].exp), exponent_vector(r.terms()[2].exp)});
        return out;
    }();
    return f;
}

// Does the conic hull of the 2D vectors meet the open positive quadrant?
bool hits_open_quadrant(const std::vector<std::array<Integer, 2>>& d) {
    for (const auto& p : d)
        if (p[0] > 0 && p[1] > 0) return true;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            // t p + (1-t) q > 0 for some t in [0,1]
            const auto& p = d[i];
            const auto& q = d[j];
            Rational lo = 0, hi = 1;
            bool ok = true;
            for (int c = 0; c < 2 && ok; ++c) {
                const Integer a0 = q[static_cast<std::size_t>(c)];
                const Integer a1 = p[static_cast<std::size_t>(c)] - q[static_cast<std::size_t>(c)];
                if (a1 == 0) {
                    if (a0 <= 0) ok = false;
                } else {
                    Rational b(Integer(-a0), a1);
                    b.canonicalize();
                    if (a1 > 0 && b > lo) lo = b;
                    if (a1 < 0 && b < hi) hi = b;
                }
            }
            if (ok && lo < hi) return true;
        }
    return false;
}

} // namespace

bool in_prevariety(const IntVec& w) {
    for (const auto& f : relation_forms()) {
        Integer v[3] = {dot(f[0], w), dot(f[1], w), dot(f[2], w)};
        const Integer m = std::min({v[0], v[1], v[2]});
        int k = 0;
        for (auto& x : v)
            if (x == m) ++k;
        if (k < 2) return false;
    }
    return true;
}

bool cone_in_prevariety(const std::vector<IntVec>& rays) {
    for (const auto& f : relation_forms()) {
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            std::vector<std::array<Integer, 2>> d;
            for (const auto& r : rays) {
                const Integer fi = dot(f[static_cast<std::size_t>(i)], r);
                d.push_back({dot(f[static_cast<std::size_t>(j)], r) - fi, dot(f[static_cast<std::size_t>(k)], r) - fi});
            }
            // term i strictly below the other two somewhere in the cone
            if (hits_open_quadrant(d)) return false;
        }
    }
    return true;
}

// ---------------- fan ----------------

FanData generate_tgr36() {
    const auto cand = candidate_rays();
    const std::size_t n = cand.size();
    std::vector<std::vector<char>> comp(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) comp[a][b] = comp[b][a] = cone_in_prevariety({cand[a].v, cand[b].v});
    std::set<std::vector<int>> all, cur;
    for (std::size_t a = 0; a < n; ++a)
        if (cone_in_prevariety({cand[a].v})) cur.insert({static_cast<int>(a)});
    all = cur;
    while (!cur.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& s : cur)
            for (int b = s.back() + 1; b < static_cast<int>(n); ++b) {
                bool ok = true;
                for (int a : s) ok = ok && comp[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (!ok) continue;
                std::vector<IntVec> rs;
                for (int a : s) rs.push_back(cand[static_cast<std::size_t>(a)].v);
                rs.push_back(cand[static_cast<std::size_t>(b)].v);
                if (!cone_in_prevariety(rs)) continue;
                auto t = s;
                t.push_back(b);
                next.insert(t);
            }
        all.insert(next.begin(), next.end());
        cur = std::move(next);
    }
    FanData f;
    f.ambient_dim = kPl;
    f.lineality = tgr_lineality();
    for (const auto& c : cand) f.rays.push_back(c.v);
    for (const auto& s : all) {
        bool maximal = true;
        for (int b = 0; b < static_cast<int>(n) && maximal; ++b) {
            if (std::find(s.begin(), s.end(), b) != s.end()) continue;
            auto t = s;
            t.push_back(b);
            std::sort(t.begin(), t.end());
            if (all.count(t)) maximal = false;
        }
        if (!maximal) continue;
        f.cones.push_back(s);
        std::vector<std::string> names;
        for (int a : s) names.push_back(cand[static_cast<std::size_t>(a)].name);
        f.labels.push_back(to_string(classify_rays(names)));
    }
    return f;
}

std::string default_fan_path() { return std::string(CUBIC_DATA_DIR) + "/tgr36.json"; }

Cone TGrFan::cone(int i) const {
    std::vector<IntVec> rs;
    for (int r : data.cones[static_cast<std::size_t>(i)]) rs.push_back(data.rays[static_cast<std::size_t>(r)]);
    return Cone::from_v(data.ambient_dim, rs, data.lineality);
}

const TGrFan::Orbit& TGrFan::orbit(ConeType t) const { return orbits[static_cast<std::size_t>(t)]; }

std::string TGrFan::cone_name(int i) const {
    std::string s = "cone " + std::to_string(i) + " {";
    bool first = true;
    for (int r : data.cones[static_cast<std::size_t>(i)]) {
        s += (first ? "" : ",") + ray_names[static_cast<std::size_t>(r)];
        first = false;
    }
    return s + "}";
}

TGrFan verify_fan(FanData data) {
    TGrFan fan;
    if (data.ambient_dim != kPl) throw FanVerificationError("ambient dimension must be 20");
    {
        IntMat a(static_cast<Eigen::Index>(data.lineality.size()), kPl), b(6, kPl);
        for (std::size_t i = 0; i < data.lineality.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = data.lineality[i].transpose();
        for (int i = 0; i < 6; ++i) b.row(i) = tgr_lineality()[static_cast<std::size_t>(i)].transpose();
        if (data.lineality.empty() || row_space_key(a) != row_space_key(b)) throw FanVerificationError("lineality space differs from span(L_1..L_6)");
    }
    // names from the candidate list
    std::unordered_map<std::string, std::string> cand_names;
    for (const auto& c : candidate_rays()) cand_names[ray_key(c.v)] = c.name;
    std::unordered_map<std::string, int> ray_index;
    for (std::size_t r = 0; r < data.rays.size(); ++r) {
        const std::string k = ray_key(data.rays[r]);
        auto it = cand_names.find(k);
        fan.ray_names.push_back(it == cand_names.end() ? "R" + std::to_string(r) : it->second);
        if (!ray_index.emplace(k, static_cast<int>(r)).second) throw FanVerificationError("duplicate ray " + std::to_string(r));
    }
    fan.data = std::move(data);
    const auto& d = fan.data;
    // prevariety membership at relative-interior points
    for (std::size_t i = 0; i < d.cones.size(); ++i) {
        IntVec w = IntVec::Zero(kPl);
        for (int r : d.cones[i]) w += d.rays[static_cast<std::size_t>(r)];
        if (!in_prevariety(w)) throw FanVerificationError("prevariety check failed for " + fan.cone_name(static_cast<int>(i)));
        std::vector<IntVec> rs;
        for (int r : d.cones[i]) rs.push_back(d.rays[static_cast<std::size_t>(r)]);
        if (!cone_in_prevariety(rs)) throw FanVerificationError("prevariety check failed for " + fan.cone_name(static_cast<int>(i)));
    }
    for (std::size_t i = 0; i < d.cones.size(); ++i) {
        std::vector<std::string> names;
        for (int r : d.cones[i]) names.push_back(fan.ray_names[static_cast<std::size_t>(r)]);
        fan.cone_types.push_back(classify_rays(names));
        if (fan.cone(static_cast<int>(i)).dim() != 10) throw FanVerificationError("dimension of " + fan.cone_name(static_cast<int>(i)) + " is not 10");
    }
    // S6 action on rays and cones
    const auto& perms = all_perms();
    for (const auto& p : perms) {
        SignedPermutation sp(p);
        std::vector<int> row;
        for (const auto& r : d.rays) {
            auto it = ray_index.find(ray_key(act(sp, r)));
            if (it == ray_index.end()) throw FanVerificationError("S6 does not preserve the ray set");
            row.push_back(it->second);
        }
        fan.ray_action.push_back(std::move(row));
    }
    std::map<std::vector<int>, int> cone_index;
    for (std::size_t i = 0; i < d.cones.size(); ++i) {
        auto s = d.cones[i];
        std::sort(s.begin(), s.end());
        cone_index[s] = static_cast<int>(i);
    }
    auto image = [&](std::size_t p, int c) {
        std::vector<int> s;
        for (int r : d.cones[static_cast<std::size_t>(c)]) s.push_back(fan.ray_action[p][static_cast<std::size_t>(r)]);
        std::sort(s.begin(), s.end());
        auto it = cone_index.find(s);
        if (it == cone_index.end()) throw FanVerificationError("S6 does not preserve the cone set");
        return it->second;
    };
    std::vector<char> seen(d.cones.size(), 0);
    std::array<int, kConeTypes> found{};
    const auto eeee_key = eeee_phi_cone().canonical_key();
    for (std::size_t c = 0; c < d.cones.size(); ++c) {
        if (seen[c]) continue;
        std::set<int> orb;
        for (std::size_t p = 0; p < perms.size(); ++p) orb.insert(image(p, static_cast<int>(c)));
        for (int x : orb) seen[static_cast<std::size_t>(x)] = 1;
        const ConeType t = fan.cone_types[c];
        auto& o = fan.orbits[static_cast<std::size_t>(t)];
        if (found[static_cast<std::size_t>(t)]++) throw FanVerificationError("two orbits of type " + to_string(t));
        o.type = t;
        o.members.assign(orb.begin(), orb.end());
        o.representative = *orb.begin();
        if (t == ConeType::EEEE) {
            o.representative = -1;
            for (int x : orb)
                if (fan.cone(x).canonical_key() == eeee_key) o.representative = x;
            if (o.representative < 0) throw FanVerificationError("no EEEE cone equals the phi parametrization");
        }
        for (std::size_t p = 0; p < perms.size(); ++p)
            if (image(p, o.representative) == o.representative) o.stabilizer.push_back(perms[p]);
        for (int x : orb)
            if (fan.cone_types[static_cast<std::size_t>(x)] != t) throw FanVerificationError("orbit mixes cone types");
        if (o.members.size() != info(t).orbit)
            throw FanVerificationError("orbit size of " + to_string(t) + " is " + std::to_string(o.members.size()) + ", expected " + std::to_string(info(t).orbit));
        if (o.stabilizer.size() != info(t).stabilizer)
            throw FanVerificationError("stabilizer order of " + to_string(t) + " is " + std::to_string(o.stabilizer.size()) + ", expected " + std::to_string(info(t).stabilizer));
    }
    for (auto t : all_cone_types())
        if (!found[static_cast<std::size_t>(t)]) throw FanVerificationError("missing cone type " + to_string(t));
    if (d.cones.size() != 1005) throw FanVerificationError("expected 1005 maximal cones, found " + std::to_string(d.cones.size()));
    return fan;
}

TGrFan load_and_verify_fan(const std::string& path) { return verify_fan(read_fan(path)); }

IntVec eeee_phi(const RatVec& a, const RatVec& b) {
    RatVec w(kPl);
    for (int n = 0; n < kPl; ++n) {
        const auto& t = plucker_triples()[static_cast<std::size_t>(n)];
        w[n] = a[t[0] - 1] + a[t[1] - 1] + a[t[2] - 1];
    }
    w[plucker_index(1, 2, 3)] += b[0];
    w[plucker_index(1, 4, 5)] += b[1];
    w[plucker_index(2, 4, 6)] += b[2];
    w[plucker_index(3, 5, 6)] += b[3];
    IntVec out(kPl);
    for (int n = 0; n < kPl; ++n) {
        if (w[n].get_den() != 1) throw std::invalid_argument("eeee_phi: non-integral value; scale the parameters");
        out[n] = w[n].get_num();
    }
    return out;
}

Cone eeee_phi_cone() {
    // image of R^6 x R^4_{>=0}: lineality from a, rays from b
    std::vector<IntVec> rays;
    for (int i = 0; i < 4; ++i) {
        RatVec a = RatVec::Constant(6, Rational(0)), b = RatVec::Constant(4, Rational(0));
        b[i] = 1;
        rays.push_back(eeee_phi(a, b));
    }
    std::vector<IntVec> lin;
    for (int i = 0; i < 6; ++i) {
        RatVec a = RatVec::Constant(6, Rational(0)), b = RatVec::Constant(4, Rational(0));
        a[i] = 1;
        lin.push_back(eeee_phi(a, b));
    }
    return Cone::from_v(kPl, rays, lin);
}

// ---------------- tropicalization ----------------

TropCoefficient tropicalize_coefficient(const PPoly& c, const Cone& cone, const TropOptions& opts) {
    TropCoefficient t;
    if (c.size() == 1) {
        t.kind = TropCoefficient::Kind::monomial;
        t.forms = {exponent_vector(c.terms()[0].exp)};
        return t;
    }
    if (c.size() != 2) throw std::invalid_argument("tropicalize_coefficient: expected a monomial or binomial");
    auto halves_differ = [&](const PPoly& b) {
        return !same_on(exponent_vector(b.terms()[0].exp), exponent_vector(b.terms()[1].exp), cone);
    };
    if (halves_differ(c)) {
        t.kind = TropCoefficient::Kind::binomial;
        t.forms = {exponent_vector(c.terms()[0].exp), exponent_vector(c.terms()[1].exp)};
        t.used = c;
        return t;
    }
    auto q = find_equivalent_binomial(c, opts.depth, opts.max_terms, halves_differ);
    if (q) {
        t.kind = TropCoefficient::Kind::rescued;
        t.forms = {exponent_vector(q->terms()[0].exp), exponent_vector(q->terms()[1].exp)};
        t.used = *q;
        return t;
    }
    t.kind = TropCoefficient::Kind::degenerate;
    t.forms = {exponent_vector(c.terms()[0].exp)};
    t.used = c;
    return t;
}

// ---------------- classification ----------------

ConeClassification subdivide_cone(const TGrFan& fan, ConeType type, const ClassifyOptions& opts) {
    ConeClassification out;
    out.type = type;
    const auto& orb = fan.orbit(type);
    out.cone_index = orb.representative;
    out.stabilizer = orb.stabilizer;
    const Cone c = fan.cone(orb.representative);
    const auto& gens = generators();
    for (int g = 0; g < kGens; ++g) {
        auto& gf = out.gen_forms[static_cast<std::size_t>(g)];
        for (const auto& term : gens[static_cast<std::size_t>(g)].terms) {
            const auto tc = tropicalize_coefficient(term.coef, c, opts.trop);
            for (const auto& f : tc.forms) {
                gf.forms.push_back(f);
                gf.monos.push_back(term.mono);
                gf.degenerate.push_back(tc.kind == TropCoefficient::Kind::degenerate);
            }
        }
        out.subdivisions.push_back(min_region_subdivision(c, gf.forms));
    }
    if (opts.progress) opts.progress(to_string(type) + ": generator subdivisions built");
    SymmetryGroup grp;
    for (const auto& p : orb.stabilizer) {
        grp.elements.push_back(permutation_matrix(p));
        grp.coordinate_perms.push_back(coordinate_perm(p));
        std::vector<int> sa;
        for (int g = 0; g < kGens; ++g) sa.push_back(act_generator(p, g));
        grp.subdivision_action.push_back(std::move(sa));
    }
    RefineOptions ro;
    ro.threads = opts.threads;
    ro.progress = opts.progress;
    out.refinement = common_refinement(c, out.subdivisions, grp, ro);

    std::set<std::string> mod_s;
    std::set<std::string> s6_orbits;
    for (const auto& rc : out.refinement.representatives) {
        ClassifiedCell cell;
        cell.cone = rc.cone;
        cell.label = rc.label;
        cell.orbit_size = rc.orbit_size;
        for (int g = 0; g < kGens; ++g) {
            const auto& gf = out.gen_forms[static_cast<std::size_t>(g)];
            const auto& grp_forms = out.subdivisions[static_cast<std::size_t>(g)].labels[static_cast<std::size_t>(rc.label[static_cast<std::size_t>(g)])];
            std::set<XYMono> ms;
            for (int fi : grp_forms) {
                ms.insert(gf.monos[static_cast<std::size_t>(fi)]);
                if (gf.degenerate[static_cast<std::size_t>(fi)]) cell.unresolved = true;
            }
            cell.cls[static_cast<std::size_t>(g)] = gf.monos[static_cast<std::size_t>(grp_forms.front())];
            cell.theta[static_cast<std::size_t>(g)] = gf.forms[static_cast<std::size_t>(grp_forms.front())];
            if (ms.size() > 1) {
                cell.moneric = false;
                cell.non_moneric_generators.push_back(g);
            }
        }
        if (cell.moneric) {
            for (const auto& p : orb.stabilizer) out.cone_classes.insert(class_key(act(p, cell.cls)));
            mod_s.insert(orbit_key(cell.cls, orb.stabilizer));
            s6_orbits.insert(orbit_key(cell.cls));
        }
        if (cell.unresolved) ++out.stats.unresolved;
        out.cells.push_back(std::move(cell));
    }
    out.stats.type = type;
    out.stats.orbit_size = orb.members.size();
    out.stats.stabilizer_order = orb.stabilizer.size();
    out.stats.cells = out.refinement.total_cells;
    out.stats.representatives = out.refinement.representatives.size();
    out.stats.classes = mod_s.size();
    out.stats.s6_classes = s6_expansion(out.cone_classes).size();
    out.stats.s6_orbits = s6_orbits.size();
    return out;
}

std::optional<MonericClass> class_at(const ConeClassification& cc, const IntVec& w) {
    MonericClass out{};
    for (int g = 0; g < kGens; ++g) {
        const auto& gf = cc.gen_forms[static_cast<std::size_t>(g)];
        std::optional<Integer> best;
        std::set<XYMono> at;
        for (std::size_t i = 0; i < gf.forms.size(); ++i) {
            const Integer v = dot(gf.forms[i], w);
            if (!best || v < *best) {
                best = v;
                at = {gf.monos[i]};
            } else if (v == *best) {
                at.insert(gf.monos[i]);
            }
        }
        if (at.size() != 1) return std::nullopt;
        out[static_cast<std::size_t>(g)] = *at.begin();
    }
    return out;
}

std::vector<std::string> s6_expansion(const std::set<std::string>& classes) {
    std::unordered_set<std::string> all;
    for (const auto& k : classes) {
        const MonericClass c = class_from_key(k);
        for (const auto& p : all_perms()) all.insert(class_key(act(p, c)));
    }
    std::vector<std::string> v(all.begin(), all.end());
    std::sort(v.begin(), v.end());
    return v;
}

MonericClass class_from_key(const std::string& key) {
    if (key.size() != static_cast<std::size_t>(kGens * 12)) throw std::invalid_argument("class_from_key: bad key");
    static const std::map<Degree7, int> by_degree = [] {
        std::map<Degree7, int> m;
        const auto& g = generators();
        for (int i = 0; i < kGens; ++i) m[g[static_cast<std::size_t>(i)].degree] = i;
        return m;
    }();
    MonericClass c{};
    std::vector<char> hit(kGens, 0);
    for (int i = 0; i < kGens; ++i) {
        XYMono m{};
        for (int j = 0; j < 12; ++j) m[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(key[static_cast<std::size_t>(i * 12 + j)]);
        auto it = by_degree.find(xy_degree(m));
        if (it == by_degree.end() || hit[static_cast<std::size_t>(it->second)]) throw std::invalid_argument("class_from_key: monomials do not match generator degrees");
        hit[static_cast<std::size_t>(it->second)] = 1;
        c[static_cast<std::size_t>(it->second)] = m;
    }
    return c;
}

GlobalReport classify_all(const TGrFan& fan, const std::vector<ConeClassification>& per_cone) {
    GlobalReport r;
    std::unordered_set<std::string> all;
    std::set<std::string> orbits;
    for (const auto& pc : per_cone) {
        r.per_cone.push_back(pc.stats);
        for (auto& k : s6_expansion(pc.cone_classes)) all.insert(std::move(k));
        for (const auto& k : pc.cone_classes) orbits.insert(orbit_key(class_from_key(k)));
        r.maximal_cells += pc.stats.cells * fan.orbit(pc.type).members.size();
    }
    r.classes = all.size();
    r.orbits = orbits.size();
    for (const auto& k : orbits) r.orbit_representatives.push_back(class_from_key(k));
    return r;
}

// ---------------- L_BC ----------------

std::vector<const LbcEntry*> LbcLocus::on_cone(int c) const {
    std::vector<const LbcEntry*> v;
    for (const auto& e : entries)
        if (e.cone == c) v.push_back(&e);
    return v;
}

namespace {

// +1 / -1 if h is positive (negative) on the relative interior, 0 when it
// vanishes somewhere there.
int sign_on_relint(const IntVec& h, const Cone& c) {
    for (const auto& l : c.lineality())
        if (dot(h, l) != 0) return 0;
    bool pos = false, neg = false;
    for (const auto& r : c.rays()) {
        const Integer v = dot(h, r);
        if (v > 0) pos = true;
        if (v < 0) neg = true;
    }
    if (pos && !neg) return 1;
    if (neg && !pos) return -1;
    return 0;
}

std::vector<LbcEntry> lbc_on(const TGrFan& fan, int ci, const TropOptions& opts) {
    std::vector<LbcEntry> out;
    const Cone c = fan.cone(ci);
    const auto& gens = generators();
    for (int g = 0; g < kGens; ++g)
        for (const auto& t : gens[static_cast<std::size_t>(g)].terms) {
            if (t.coef.size() != 2) continue;
            auto no_tie = [&](const PPoly& b) {
                return sign_on_relint(IntVec(exponent_vector(b.terms()[0].exp) - exponent_vector(b.terms()[1].exp)), c) != 0;
            };
            if (find_equivalent_binomial(t.coef, opts.depth, opts.max_terms, no_tie)) continue;
            LbcEntry e;
            e.cone = ci;
            e.generator = g;
            e.mono = t.mono;
            e.binomial = t.coef;
            e.normal = exponent_vector(t.coef.terms()[0].exp) - exponent_vector(t.coef.terms()[1].exp);
            e.degenerate = same_on(exponent_vector(t.coef.terms()[0].exp), exponent_vector(t.coef.terms()[1].exp), c);
            out.push_back(std::move(e));
        }
    return out;
}

} // namespace

LbcLocus lbc_locus(const TGrFan& fan, const std::vector<int>& cones, const TropOptions& opts) {
    LbcLocus locus;
    std::vector<int> todo = cones;
    if (todo.empty())
        for (int i = 0; i < static_cast<int>(fan.data.cones.size()); ++i) todo.push_back(i);
    // compute on orbit representatives and transport by S6
    std::map<int, std::vector<LbcEntry>> rep_entries;
    const auto& perms = all_perms();
    for (int ci : todo) {
        const ConeType t = fan.cone_types[static_cast<std::size_t>(ci)];
        const auto& o = fan.orbit(t);
        if (!rep_entries.count(o.representative)) rep_entries[o.representative] = lbc_on(fan, o.representative, opts);
        if (ci == o.representative) {
            for (const auto& e : rep_entries[o.representative]) locus.entries.push_back(e);
            continue;
        }
        // find sigma with sigma(rep) = ci
        std::vector<int> target = fan.data.cones[static_cast<std::size_t>(ci)];
        std::sort(target.begin(), target.end());
        for (std::size_t p = 0; p < perms.size(); ++p) {
            std::vector<int> img;
            for (int r : fan.data.cones[static_cast<std::size_t>(o.representative)]) img.push_back(fan.ray_action[p][static_cast<std::size_t>(r)]);
            std::sort(img.begin(), img.end());
            if (img != target) continue;
            SignedPermutation sp(perms[p]);
            for (const auto& e : rep_entries[o.representative]) {
                LbcEntry x = e;
                x.cone = ci;
                x.generator = act_generator(perms[p], e.generator);
                x.mono = act(perms[p], e.mono);
                x.binomial = act(sp, e.binomial);
                x.normal = act(sp, e.normal);
                locus.entries.push_back(std::move(x));
            }
            break;
        }
    }
    return locus;
}

} // namespace cubic

namespace cubic {

std::vector<std::size_t> sigma_f_vector(const TGrFan& fan, const std::vector<ConeClassification>& per_cone, bool all_dims,
                                        const std::function<void(const std::string&)>& progress) {
    std::vector<std::size_t> fv(11, 0);
    if (!all_dims) {
        for (const auto& pc : per_cone) fv[10] += pc.stats.cells * fan.orbit(pc.type).members.size();
        return fv;
    }

    // rays modulo the all-ones line, numbered globally and closed under S6
    const std::vector<IntVec> ones{IntVec::Constant(kPl, Integer(1))};
    std::unordered_map<std::string, int> id_of;
    std::vector<IntVec> rays;
    auto ray_id = [&](const IntVec& v) {
        IntVec r = reduce_mod(v, ones);
        auto [it, fresh] = id_of.emplace(to_string(r), static_cast<int>(rays.size()));
        if (fresh) rays.push_back(r);
        return it->second;
    };
    std::vector<std::vector<std::vector<int>>> local(per_cone.size());
    for (std::size_t k = 0; k < per_cone.size(); ++k) {
        std::set<std::vector<int>> seen;
        for (const auto& cell : per_cone[k].cells) {
            const Cone& c = cell.cone;
            if (c.lineality().size() != 1 || !is_zero(reduce_mod(c.lineality().front(), ones)))
                throw std::logic_error("sigma_f_vector: cell lineality is not the all-ones line");
            std::vector<int> ids;
            for (const auto& r : c.rays()) ids.push_back(ray_id(r));
            for (const auto& b : c.face_ray_sets()) {
                std::vector<int> f;
                for (std::size_t i = 0; i < ids.size(); ++i)
                    if (b.test(i)) f.push_back(ids[i]);
                std::sort(f.begin(), f.end());
                seen.insert(std::move(f));
            }
        }
        local[k].assign(seen.begin(), seen.end());
        if (progress) progress(to_string(per_cone[k].type) + ": " + std::to_string(seen.size()) + " faces");
    }
    const auto& perms = all_perms();
    std::vector<std::vector<int>> act(perms.size());
    std::vector<std::vector<int>> targets;
    for (const auto& p : perms) targets.push_back(coordinate_perm(p));
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t p = 0; p < perms.size(); ++p)
            while (act[p].size() < rays.size()) {
                const std::size_t r = act[p].size();
                IntVec img(kPl);
                for (int i = 0; i < kPl; ++i) img[targets[p][static_cast<std::size_t>(i)]] = rays[r][i];
                const std::size_t before = rays.size();
                act[p].push_back(ray_id(img));
                if (rays.size() != before) grew = true;
            }
    }
    if (progress) progress(std::to_string(rays.size()) + " rays up to the lineality");

    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const {
            std::size_t h = v.size();
            for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
            return h;
        }
    };
    std::unordered_set<std::vector<int>, VecHash> canon;
    std::vector<int> img;
    for (std::size_t k = 0; k < per_cone.size(); ++k) {
        for (const auto& f : local[k]) {
            std::vector<int> best = f;
            std::size_t stab = 0;
            for (const auto& a : act) {
                img.clear();
                for (int r : f) img.push_back(a[static_cast<std::size_t>(r)]);
                std::sort(img.begin(), img.end());
                if (img == f) ++stab;
                if (img < best) best = img;
            }
            if (!canon.insert(best).second) continue;
            Eigen::Index rk = 0;
            if (!best.empty()) {
                IntMat m(static_cast<Eigen::Index>(best.size()), kPl);
                for (std::size_t i = 0; i < best.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rays[static_cast<std::size_t>(best[i])].transpose();
                rk = int_rank(m);
            }
            fv[static_cast<std::size_t>(rk + 1)] += perms.size() / stab;
        }
        if (progress) progress(to_string(per_cone[k].type) + ": " + std::to_string(canon.size()) + " face orbits so far");
    }
    return fv;
}

} // namespace cubic
