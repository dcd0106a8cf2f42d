#include "cubic/polyhedra.hpp"

#include "cubic/linalg.hpp"

#include <json.hpp>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cubic {

// ---------------- bits ----------------

Bits Bits::operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(std::max(w_.size(), o.w_.size()), 0);
    for (std::size_t i = 0; i < std::min(w_.size(), o.w_.size()); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
}

bool Bits::subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
        const std::uint64_t ow = i < o.w_.size() ? o.w_[i] : 0;
        if (w_[i] & ~ow) return false;
    }
    return true;
}

std::size_t Bits::count() const {
    std::size_t n = 0;
    for (auto x : w_) n += static_cast<std::size_t>(std::popcount(x));
    return n;
}

// ---------------- helpers ----------------

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

namespace {

IntVec unit(int d, int i) {
    IntVec v = IntVec::Zero(d);
    v[i] = 1;
    return v;
}

IntVec comb(const Integer& a, const IntVec& x, const Integer& b, const IntVec& y) {
    IntVec r(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
    return primitive(r);
}

Eigen::Index rank_of(const std::vector<IntVec>& vs, int d) {
    if (vs.empty()) return 0;
    // fraction-free elimination on a copy
    std::vector<IntVec> m = vs;
    Eigen::Index r = 0;
    for (int c = 0; c < d && r < static_cast<Eigen::Index>(m.size()); ++c) {
        std::size_t p = static_cast<std::size_t>(r);
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[static_cast<std::size_t>(r)]);
        const IntVec& piv = m[static_cast<std::size_t>(r)];
        for (std::size_t i = static_cast<std::size_t>(r) + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            m[i] = comb(piv[c], m[i], -m[i][c], piv);
        }
        ++r;
    }
    return r;
}

std::string vec_str(const IntVec& v) { return to_string(v); }

} // namespace

IntVec reduce_mod(const IntVec& v, const std::vector<IntVec>& rows) {
    RatVec r = to_rational(v);
    for (const auto& e : rows) {
        Eigen::Index p = 0;
        while (p < e.size() && e[p] == 0) ++p;
        if (p == e.size() || r[p] == 0) continue;
        const Rational f = r[p] / Rational(e[p]);
        for (Eigen::Index i = 0; i < r.size(); ++i)
            if (e[i] != 0) r[i] -= f * Rational(e[i]);
    }
    return primitive(r);
}

// ---------------- cone ----------------

Cone::Cone(int d) : d_(d) {
    for (int i = 0; i < d; ++i) lin_.push_back(unit(d, i));
}

Cone Cone::origin(int d) {
    Cone c(d);
    for (int i = 0; i < d; ++i) c.add_equation(unit(d, i));
    return c;
}

Cone Cone::from_h(int d, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs) {
    Cone c(d);
    for (const auto& e : eqs) c.add_equation(e);
    for (const auto& a : ineqs) c.add_inequality(a);
    return c;
}

Cone Cone::from_v(int d, const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality) {
    Cone dual = from_h(d, rays, lineality);
    // facets of the primal are the extreme rays of the dual; equations are
    // the dual lineality
    return from_h(d, dual.rays(), dual.lineality());
}

Cone& Cone::add_inequality(const IntVec& a) {
    add_constraint(a, false);
    return *this;
}

Cone& Cone::add_equation(const IntVec& a) {
    add_constraint(a, true);
    return *this;
}

void Cone::add_constraint(const IntVec& a_in, bool equality) {
    if (a_in.size() != d_) throw std::invalid_argument("constraint dimension mismatch");
    const IntVec a = primitive(a_in);
    h_done_ = false;
    dim_ = -1;
    const std::size_t c = cons_.size();
    cons_.push_back(a);
    cons_eq_.push_back(equality ? 1 : 0);
    for (auto& b : inc_) b.resize(c + 1);

    // lineality step
    std::size_t piv = lin_.size();
    Integer s0;
    for (std::size_t i = 0; i < lin_.size(); ++i) {
        s0 = dot(a, lin_[i]);
        if (s0 != 0) {
            piv = i;
            break;
        }
    }
    if (piv < lin_.size()) {
        IntVec l0 = lin_[piv];
        if (s0 < 0) {
            l0 = -l0;
            s0 = -s0;
        }
        std::vector<IntVec> nl;
        for (std::size_t i = 0; i < lin_.size(); ++i) {
            if (i == piv) continue;
            const Integer s = dot(a, lin_[i]);
            nl.push_back(s == 0 ? lin_[i] : comb(s0, lin_[i], -s, l0));
        }
        lin_ = std::move(nl);
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            const Integer s = dot(a, rays_[i]);
            if (s != 0) rays_[i] = comb(s0, rays_[i], -s, l0);
            inc_[i].set(c);
        }
        if (!equality) {
            Bits b(c + 1);
            for (std::size_t k = 0; k < c; ++k) b.set(k);
            rays_.push_back(l0);
            inc_.push_back(b);
        }
        return;
    }

    // ray step
    std::vector<Integer> s(rays_.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        s[i] = dot(a, rays_[i]);
        if (s[i] > 0) pos.push_back(i);
        else if (s[i] < 0) neg.push_back(i);
    }
    if (neg.empty() && (pos.empty() || !equality)) {
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (s[i] == 0) inc_[i].set(c);
        return;
    }
    std::vector<IntVec> nr;
    std::vector<Bits> ni;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (s[i] == 0) {
            nr.push_back(rays_[i]);
            ni.push_back(inc_[i]);
            ni.back().set(c);
        } else if (s[i] > 0 && !equality) {
            nr.push_back(rays_[i]);
            ni.push_back(inc_[i]);
        }
    }
    for (auto p : pos)
        for (auto n : neg) {
            const Bits common = inc_[p] & inc_[n];
            bool adjacent = true;
            for (std::size_t q = 0; q < rays_.size() && adjacent; ++q)
                if (q != p && q != n && common.subset_of(inc_[q])) adjacent = false;
            if (!adjacent) continue;
            nr.push_back(comb(s[p], rays_[n], -s[n], rays_[p]));
            Bits b = common;
            b.set(c);
            ni.push_back(std::move(b));
        }
    rays_ = std::move(nr);
    inc_ = std::move(ni);
}

int Cone::dim() const {
    if (dim_ < 0) {
        std::vector<IntVec> all = rays_;
        all.insert(all.end(), lin_.begin(), lin_.end());
        dim_ = static_cast<int>(rank_of(all, d_));
    }
    return dim_;
}

void Cone::compute_h() const {
    if (h_done_) return;
    const int k = dim();
    std::vector<IntVec> gens = rays_;
    gens.insert(gens.end(), lin_.begin(), lin_.end());
    eqs_.clear();
    if (k < d_) {
        IntMat m(static_cast<Eigen::Index>(std::max<std::size_t>(gens.size(), 1)), d_);
        m.setZero();
        for (std::size_t i = 0; i < gens.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = gens[i].transpose();
        IntMat ker = int_kernel(m);
        IntMat key = row_space_key(IntMat(ker.transpose()));
        for (Eigen::Index i = 0; i < key.rows(); ++i) eqs_.push_back(IntVec(key.row(i).transpose()));
    }
    // Every proper face lies in a facet, so facets are the constraints whose
    // tight ray sets are maximal among the proper ones.
    std::vector<std::pair<Bits, std::size_t>> zs;
    for (std::size_t c = 0; c < cons_.size(); ++c) {
        if (cons_eq_[c]) continue;
        Bits z(rays_.size());
        bool all = true;
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            if (inc_[i].test(c)) z.set(i);
            else all = false;
        }
        if (!all) zs.emplace_back(std::move(z), c);
    }
    facets_.clear();
    std::set<Bits> seen;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < zs.size() && maximal; ++j)
            if (!(zs[j].first == zs[i].first) && zs[i].first.subset_of(zs[j].first)) maximal = false;
        if (!maximal || !seen.insert(zs[i].first).second) continue;
        facets_.push_back(reduce_mod(cons_[zs[i].second], eqs_));
    }
    std::sort(facets_.begin(), facets_.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    h_done_ = true;
}

void Cone::compact() {
    const auto fs = facets();
    const auto es = equations();
    std::vector<IntVec> cons;
    std::vector<char> eq;
    for (const auto& e : es) {
        cons.push_back(e);
        eq.push_back(1);
    }
    for (const auto& f : fs) {
        cons.push_back(f);
        eq.push_back(0);
    }
    std::vector<Bits> inc;
    for (const auto& r : rays_) {
        Bits b(cons.size());
        for (std::size_t c = 0; c < cons.size(); ++c)
            if (dot(cons[c], r) == 0) b.set(c);
        inc.push_back(std::move(b));
    }
    cons_ = std::move(cons);
    cons_eq_ = std::move(eq);
    inc_ = std::move(inc);
}

Cone Cone::permuted(const std::vector<int>& target) const {
    auto perm = [&](const IntVec& v) {
        IntVec r(v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) r[target[static_cast<std::size_t>(i)]] = v[i];
        return r;
    };
    Cone c(0);
    c.d_ = d_;
    for (const auto& l : lin_) c.lin_.push_back(perm(l));
    for (const auto& r : rays_) c.rays_.push_back(perm(r));
    for (const auto& a : cons_) c.cons_.push_back(perm(a));
    c.cons_eq_ = cons_eq_;
    c.inc_ = inc_;
    c.dim_ = dim_;
    return c;
}

const std::vector<IntVec>& Cone::facets() const {
    compute_h();
    return facets_;
}

const std::vector<IntVec>& Cone::equations() const {
    compute_h();
    return eqs_;
}

IntVec Cone::relative_interior_point() const {
    IntVec p = IntVec::Zero(d_);
    for (const auto& r : rays_) p += r;
    return p;
}

bool Cone::contains(const IntVec& x) const {
    for (std::size_t c = 0; c < cons_.size(); ++c) {
        const Integer v = dot(cons_[c], x);
        if (v < 0 || (cons_eq_[c] && v != 0)) return false;
    }
    return true;
}

bool Cone::contains_in_relative_interior(const IntVec& x) const {
    for (const auto& e : equations())
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets())
        if (dot(f, x) <= 0) return false;
    return true;
}

Cone Cone::intersect(const Cone& o) const {
    Cone r = *this;
    for (const auto& e : o.equations()) r.add_equation(e);
    for (const auto& f : o.facets()) r.add_inequality(f);
    return r;
}

bool Cone::halfspace_keeps_dim(const IntVec& a) const {
    for (const auto& l : lin_)
        if (dot(a, l) != 0) return true;
    for (const auto& r : rays_)
        if (dot(a, r) > 0) return true;
    // a <= 0 on the cone; keeps the dimension only if a vanishes on it
    for (const auto& r : rays_)
        if (dot(a, r) != 0) return false;
    return true;
}

std::optional<Cone> Cone::intersect_full(const std::vector<IntVec>& halfspaces) const {
    for (const auto& h : halfspaces)
        if (!halfspace_keeps_dim(h)) return std::nullopt;
    Cone r = *this;
    for (const auto& h : halfspaces) {
        if (!r.halfspace_keeps_dim(h)) return std::nullopt;
        r.add_inequality(h);
    }
    return r;
}

bool Cone::is_face_of(const Cone& other) const {
    for (const auto& r : rays_)
        if (!other.contains(r)) return false;
    for (const auto& l : lin_)
        if (!other.contains(l) || !other.contains(IntVec(-l))) return false;
    const IntVec x = relative_interior_point();
    Cone f = other;
    for (const auto& n : other.facets())
        if (dot(n, x) == 0) f.add_equation(n);
    return f.canonical_key() == canonical_key();
}

Cone Cone::image(const IntMat& a) const {
    std::vector<IntVec> r, l;
    for (const auto& x : rays_) r.push_back(primitive(IntVec(a * x)));
    for (const auto& x : lin_) l.push_back(primitive(IntVec(a * x)));
    return from_v(static_cast<int>(a.rows()), r, l);
}

Cone Cone::image(const RatMat& a) const {
    std::vector<IntVec> r, l;
    for (const auto& x : rays_) r.push_back(primitive(RatVec(a * to_rational(x))));
    for (const auto& x : lin_) l.push_back(primitive(RatVec(a * to_rational(x))));
    return from_v(static_cast<int>(a.rows()), r, l);
}

Cone Cone::preimage(const IntMat& a) const {
    std::vector<IntVec> ineq, eq;
    for (const auto& f : facets()) ineq.push_back(IntVec(a.transpose() * f));
    for (const auto& e : equations()) eq.push_back(IntVec(a.transpose() * e));
    return from_h(static_cast<int>(a.cols()), ineq, eq);
}

std::string Cone::canonical_key() const {
    // lineality in RREF, then the extreme rays reduced modulo it
    std::vector<IntVec> lrows;
    if (!lin_.empty()) {
        IntMat m(static_cast<Eigen::Index>(lin_.size()), d_);
        for (std::size_t i = 0; i < lin_.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = lin_[i].transpose();
        IntMat key = row_space_key(m);
        for (Eigen::Index i = 0; i < key.rows(); ++i) lrows.push_back(IntVec(key.row(i).transpose()));
    }
    std::vector<std::string> rs;
    for (const auto& r : rays_) rs.push_back(vec_str(reduce_mod(r, lrows)));
    std::sort(rs.begin(), rs.end());
    std::string k = std::to_string(d_) + "|";
    for (const auto& l : lrows) k += vec_str(l);
    k += "|";
    for (const auto& r : rs) k += r;
    return k;
}

std::vector<Bits> Cone::face_ray_sets() const {
    const auto& fs = facets();
    std::vector<Bits> facet_sets;
    for (const auto& f : fs) {
        Bits b(rays_.size());
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (dot(f, rays_[i]) == 0) b.set(i);
        facet_sets.push_back(b);
    }
    Bits all(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) all.set(i);
    std::set<Bits> faces{all};
    std::vector<Bits> frontier{all};
    while (!frontier.empty()) {
        std::vector<Bits> next;
        for (const auto& f : frontier)
            for (const auto& fs_b : facet_sets) {
                Bits g = f & fs_b;
                if (g == f) continue;
                // closure: rays lying in every facet that contains g
                Bits cl = all;
                for (const auto& h : facet_sets)
                    if (g.subset_of(h)) cl = cl & h;
                if (faces.insert(cl).second) next.push_back(cl);
            }
        frontier = std::move(next);
    }
    return {faces.begin(), faces.end()};
}

Cone Cone::face(const Bits& ray_set) const {
    Cone f = *this;
    for (const auto& n : facets()) {
        bool tight = true;
        for (std::size_t i = 0; i < rays_.size() && tight; ++i)
            if (ray_set.test(i) && dot(n, rays_[i]) != 0) tight = false;
        if (tight) f.add_equation(n);
    }
    return f;
}

std::vector<IntVec> facet_normals(int d, const std::vector<IntVec>& generators) {
    return Cone::from_h(d, generators).rays();
}

// ---------------- subdivisions ----------------

Subdivision min_region_subdivision(const Cone& parent, const std::vector<IntVec>& forms) {
    if (forms.empty()) throw std::invalid_argument("min_region_subdivision: no forms");
    const int d = parent.ambient_dim();
    // group forms that agree on the parent
    auto signature = [&](const IntVec& f) {
        std::string s;
        for (const auto& l : parent.lineality()) s += dot(f, l).get_str() + ",";
        s += ";";
        for (const auto& r : parent.rays()) s += dot(f, r).get_str() + ",";
        return s;
    };
    std::vector<std::string> sigs;
    std::vector<std::vector<int>> groups;
    std::vector<IntVec> reps;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].size() != d) throw std::invalid_argument("form dimension mismatch");
        const std::string s = signature(forms[i]);
        auto it = std::find(sigs.begin(), sigs.end(), s);
        if (it == sigs.end()) {
            sigs.push_back(s);
            groups.push_back({static_cast<int>(i)});
            reps.push_back(forms[i]);
        } else {
            groups[static_cast<std::size_t>(it - sigs.begin())].push_back(static_cast<int>(i));
        }
    }
    Subdivision sub{parent, {}, {}, {}};
    const int pd = parent.dim();
    std::set<std::string> parent_facets;
    for (const auto& f : parent.facets()) parent_facets.insert(vec_str(f));
    for (std::size_t j = 0; j < reps.size(); ++j) {
        std::vector<IntVec> hs;
        for (std::size_t k = 0; k < reps.size(); ++k)
            if (k != j) hs.push_back(IntVec(reps[k] - reps[j]));
        auto cell = parent.intersect_full(hs);
        if (!cell || cell->dim() < pd) continue;
        std::vector<IntVec> cuts;
        for (const auto& f : cell->facets())
            if (!parent_facets.count(vec_str(f))) cuts.push_back(f);
        sub.cells.push_back(std::move(*cell));
        sub.labels.push_back(groups[j]);
        sub.cuts.push_back(std::move(cuts));
    }
    return sub;
}

bool SymmetryGroup::verify_closure() const {
    std::set<std::string> keys;
    auto key = [](const IntMat& m) {
        std::ostringstream o;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) o << m(i, j) << ",";
        return o.str();
    };
    for (const auto& e : elements) keys.insert(key(e));
    bool has_id = false;
    for (const auto& a : elements) {
        if (a == IntMat::Identity(a.rows(), a.cols())) has_id = true;
        for (const auto& b : elements)
            if (!keys.count(key(IntMat(a * b)))) return false;
    }
    return has_id;
}

std::vector<int> Refinement::map_label(std::size_t g, const std::vector<int>& label) const {
    std::vector<int> out(label.size(), -1);
    for (std::size_t s = 0; s < label.size(); ++s) {
        const auto t = static_cast<std::size_t>(sub_action[g][s]);
        out[t] = label[s] < 0 ? -1 : cell_action[g][s][static_cast<std::size_t>(label[s])];
    }
    return out;
}

std::vector<RefinedCell> Refinement::expand() const {
    std::map<std::vector<int>, RefinedCell> all;
    for (const auto& r : representatives)
        for (std::size_t g = 0; g < sub_action.size(); ++g) {
            auto l = map_label(g, r.label);
            if (all.count(l)) continue;
            all.emplace(l, RefinedCell{Cone(), l, r.orbit_size});
        }
    std::vector<RefinedCell> out;
    for (auto& [l, c] : all) out.push_back(std::move(c));
    return out;
}

Refinement common_refinement(const Cone& parent, const std::vector<Subdivision>& subs,
                             const SymmetryGroup& group, const RefineOptions& opts) {
    Refinement res;
    const std::size_t ns = subs.size(), ng = group.elements.size();
    const int pd = parent.dim();
    for (const auto& s : subs)
        if (s.parent.canonical_key() != parent.canonical_key())
            throw std::invalid_argument("common_refinement: subdivision of a different parent");

    // action on subdivisions and their cells, by canonical keys
    std::vector<std::vector<std::string>> keys(ns);
    std::vector<std::string> sub_keys(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        for (const auto& c : subs[s].cells) keys[s].push_back(c.canonical_key());
        auto sorted = keys[s];
        std::sort(sorted.begin(), sorted.end());
        for (const auto& k : sorted) sub_keys[s] += k + "#";
    }
    auto apply = [&](const Cone& c, std::size_t g) {
        return group.coordinate_perms.empty() ? c.image(group.elements[g]) : c.permuted(group.coordinate_perms[g]);
    };
    res.sub_action.assign(ng, std::vector<int>(ns, -1));
    res.cell_action.assign(ng, std::vector<std::vector<int>>(ns));
    for (std::size_t g = 0; g < ng; ++g) {
        std::vector<char> used(ns, 0);
        for (std::size_t s = 0; s < ns; ++s) {
            std::vector<std::string> img;
            for (const auto& c : subs[s].cells) img.push_back(apply(c, g).canonical_key());
            auto sorted = img;
            std::sort(sorted.begin(), sorted.end());
            std::string sk;
            for (const auto& k : sorted) sk += k + "#";
            std::size_t t = ns;
            if (!group.subdivision_action.empty()) {
                t = static_cast<std::size_t>(group.subdivision_action[g][s]);
                if (sub_keys[t] != sk) throw std::invalid_argument("common_refinement: subdivision " + std::to_string(s) + " is not mapped onto subdivision " + std::to_string(t));
            } else {
                // order-preserving matching between classes of equal subdivisions
                for (std::size_t u = 0; u < ns && t == ns; ++u)
                    if (!used[u] && sub_keys[u] == sk) t = u;
            }
            if (t == ns) throw std::invalid_argument("common_refinement: group does not permute the subdivisions");
            used[t] = 1;
            res.sub_action[g][s] = static_cast<int>(t);
            for (const auto& k : img) {
                auto it = std::find(keys[t].begin(), keys[t].end(), k);
                if (it == keys[t].end()) throw std::logic_error("common_refinement: cell image not found");
                res.cell_action[g][s].push_back(static_cast<int>(it - keys[t].begin()));
            }
        }
    }
    if (opts.progress) opts.progress("group action on " + std::to_string(ns) + " subdivisions computed");

    // subdivision orbits in order of their least member
    std::vector<std::vector<std::size_t>> batches;
    std::vector<char> done(ns, 0);
    for (std::size_t s = 0; s < ns; ++s) {
        if (done[s]) continue;
        std::set<std::size_t> orb;
        for (std::size_t g = 0; g < ng; ++g) orb.insert(static_cast<std::size_t>(res.sub_action[g][s]));
        for (auto t : orb) done[t] = 1;
        batches.emplace_back(orb.begin(), orb.end());
    }

    std::unique_ptr<tbb::global_control> gc;
    if (opts.threads > 0)
        gc = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(opts.threads));

    std::vector<RefinedCell> reps{RefinedCell{parent, std::vector<int>(ns, -1), 1}};
    for (const auto& batch : batches) {
        std::vector<std::vector<RefinedCell>> pieces(reps.size());
        tbb::parallel_for(std::size_t{0}, reps.size(), [&](std::size_t i) {
            std::vector<RefinedCell> cur{reps[i]};
            for (auto s : batch) {
                std::vector<RefinedCell> next;
                for (const auto& p : cur) {
                    for (std::size_t c = 0; c < subs[s].cells.size(); ++c) {
                        auto cone = p.cone.intersect_full(subs[s].cuts[c]);
                        if (!cone) continue;
                        RefinedCell rc{std::move(*cone), p.label, 1};
                        rc.label[s] = static_cast<int>(c);
                        next.push_back(std::move(rc));
                    }
                }
                cur = std::move(next);
            }
            pieces[i] = std::move(cur);
        });
        // orbit reduction: keep the minimal label of each orbit
        std::map<std::vector<int>, RefinedCell> by_key;
        for (auto& ps : pieces)
            for (auto& p : ps) {
                std::vector<int> best = p.label;
                std::size_t best_g = 0;
                for (std::size_t g = 0; g < ng; ++g) {
                    auto l = res.map_label(g, p.label);
                    if (l < best) {
                        best = std::move(l);
                        best_g = g;
                    }
                }
                if (by_key.count(best)) continue;
                RefinedCell rc{best == p.label ? std::move(p.cone) : apply(p.cone, best_g), best, 1};
                rc.cone.compact();
                by_key.emplace(std::move(best), std::move(rc));
            }
        reps.clear();
        for (auto& [k, c] : by_key) reps.push_back(std::move(c));
        if (opts.progress) opts.progress("batch of " + std::to_string(batch.size()) + " subdivisions: " + std::to_string(reps.size()) + " representatives");
    }
    res.total_cells = 0;
    for (auto& r : reps) {
        std::size_t stab = 0;
        for (std::size_t g = 0; g < ng; ++g)
            if (res.map_label(g, r.label) == r.label) ++stab;
        r.orbit_size = ng / stab;
        res.total_cells += r.orbit_size;
    }
    res.representatives = std::move(reps);
    return res;
}

// ---------------- fan io ----------------

namespace {

IntVec json_vec(const nlohmann::json& j) {
    IntVec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].is_string()) v[static_cast<Eigen::Index>(i)] = Integer(j[i].get<std::string>());
        else if (j[i].is_number_integer()) v[static_cast<Eigen::Index>(i)] = Integer(std::to_string(j[i].get<long long>()));
        else throw std::runtime_error("fan file: non-integer entry");
    }
    return v;
}

nlohmann::json vec_json(const IntVec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i].fits_slong_p()) j.push_back(v[i].get_si());
        else j.push_back(v[i].get_str());
    }
    return j;
}

} // namespace

FanData read_fan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fan file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("fan file " + path + ": " + e.what());
    }
    FanData f;
    try {
        f.ambient_dim = j.at("ambient_dim").get<int>();
        for (const auto& r : j.at("lineality")) f.lineality.push_back(json_vec(r));
        for (const auto& r : j.at("rays")) f.rays.push_back(json_vec(r));
        for (const auto& c : j.at("cones")) f.cones.push_back(c.get<std::vector<int>>());
        if (j.contains("labels"))
            for (const auto& l : j.at("labels")) f.labels.push_back(l.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("fan file " + path + ": " + e.what());
    }
    for (const auto& r : f.rays)
        if (r.size() != f.ambient_dim) throw std::runtime_error("fan file: ray of wrong dimension");
    for (const auto& c : f.cones)
        for (int i : c)
            if (i < 0 || static_cast<std::size_t>(i) >= f.rays.size()) throw std::runtime_error("fan file: ray index out of range");
    return f;
}

void write_fan(const std::string& path, const FanData& f, const std::string& header) {
    nlohmann::json j;
    if (!header.empty()) j["header"] = header;
    j["ambient_dim"] = f.ambient_dim;
    j["lineality"] = nlohmann::json::array();
    for (const auto& l : f.lineality) j["lineality"].push_back(vec_json(l));
    j["rays"] = nlohmann::json::array();
    for (const auto& r : f.rays) j["rays"].push_back(vec_json(r));
    j["cones"] = f.cones;
    if (!f.labels.empty()) j["labels"] = f.labels;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    // one ray / cone per line keeps the file diffable
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << "  " << nlohmann::json(it.key()).dump() << ": ";
        if (it->is_array() && !it->empty() && it->front().is_array()) {
            out << "[\n";
            for (std::size_t i = 0; i < it->size(); ++i) out << "    " << (*it)[i].dump() << (i + 1 < it->size() ? ",\n" : "\n");
            out << "  ]";
        } else {
            out << it->dump();
        }
    }
    out << "\n}\n";
}

// ---------------- f-vector ----------------

std::vector<std::size_t> f_vector(const std::vector<Cone>& cells) {
    if (cells.empty()) return {};
    const int d = cells.front().ambient_dim();
    if (cells.size() <= 400)
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (std::size_t j = i + 1; j < cells.size(); ++j) {
                Cone x = cells[i].intersect(cells[j]);
                if (!x.is_face_of(cells[i]) || !x.is_face_of(cells[j]))
                    throw std::invalid_argument("f_vector: cells " + std::to_string(i) + " and " + std::to_string(j) + " do not meet in a common face");
            }
    std::map<std::string, int> faces;
    for (const auto& c : cells)
        for (const auto& rs : c.face_ray_sets()) {
            Cone f = c.face(rs);
            faces.emplace(f.canonical_key(), f.dim());
        }
    std::vector<std::size_t> fv(static_cast<std::size_t>(d) + 1, 0);
    int top = 0;
    for (const auto& [k, dim] : faces) {
        ++fv[static_cast<std::size_t>(dim)];
        top = std::max(top, dim);
    }
    fv.resize(static_cast<std::size_t>(top) + 1);
    return fv;
}

} // namespace cubic
