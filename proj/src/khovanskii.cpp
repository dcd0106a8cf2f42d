#include "cubic/khovanskii.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cubic {

// ---------------- integer lattices ----------------

IntMat hermite_normal_form(const IntMat& rows) {
    IntMat m = rows;
    const Eigen::Index r = m.rows(), c = m.cols();
    Eigen::Index piv = 0;
    for (Eigen::Index col = 0; col < c && piv < r; ++col) {
        // euclid on the column until a single nonzero entry remains
        for (;;) {
            Eigen::Index best = -1;
            for (Eigen::Index i = piv; i < r; ++i)
                if (sgn(m(i, col)) != 0 && (best < 0 || abs(m(i, col)) < abs(m(best, col)))) best = i;
            if (best < 0) break;
            m.row(piv).swap(m.row(best));
            bool done = true;
            for (Eigen::Index i = piv + 1; i < r; ++i) {
                if (sgn(m(i, col)) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(piv, col).get_mpz_t());
                m.row(i) -= q * m.row(piv);
                if (sgn(m(i, col)) != 0) done = false;
            }
            if (done) break;
        }
        if (sgn(m(piv, col)) == 0) continue;
        if (sgn(m(piv, col)) < 0) m.row(piv) = -m.row(piv);
        for (Eigen::Index i = 0; i < piv; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(piv, col).get_mpz_t());
            if (sgn(q) != 0) m.row(i) -= q * m.row(piv);
        }
        ++piv;
    }
    return m.topRows(piv);
}

IntMat lattice_kernel(const IntMat& a) {
    const Eigen::Index m = a.rows(), n = a.cols();
    IntMat big(n, m + n);
    big.leftCols(m) = a.transpose();
    big.rightCols(n) = IntMat::Identity(n, n);
    IntMat h = hermite_normal_form(big);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        if (is_zero(IntVec(h.row(i).leftCols(m).transpose()))) keep.push_back(i);
    IntMat out(static_cast<Eigen::Index>(keep.size()), n);
    for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = h.row(keep[k]).rightCols(n);
    return hermite_normal_form(out);
}

// ---------------- binomial Groebner bases ----------------

namespace {

struct Elem {
    ZExp lead{}, trail{};
    std::uint32_t mask = 0;
    int deg = 0;
    bool active = true;
};

struct Pair {
    int i, j;
    int deg;
    ZExp lcm;
};

std::uint32_t support(const ZExp& e, int n) {
    std::uint32_t m = 0;
    for (int j = 0; j < n; ++j)
        if (e[static_cast<std::size_t>(j)]) m |= (1u << j);
    return m;
}

class Buchberger {
public:
    Buchberger(int n, std::vector<int> weight, std::vector<int> order)
        : n_(n), w_(std::move(weight)), ord_(std::move(order)) {}

    void add(const ZBinomial& b) {
        Elem e;
        if (!make(b.plus, b.minus, e)) return;
        if (!reduce(e)) return;
        insert(e);
        run();
    }

    void run() {
        while (!pairs_.empty()) {
            if (dirty_) {
                std::sort(pairs_.begin(), pairs_.end(), [](const Pair& x, const Pair& y) { return x.deg > y.deg; });
                dirty_ = false;
            }
            Pair p = pairs_.back();
            pairs_.pop_back();
            const Elem& a = els_[static_cast<std::size_t>(p.i)];
            const Elem& b = els_[static_cast<std::size_t>(p.j)];
            ZExp u{}, v{};
            for (int k = 0; k < n_; ++k) {
                const auto s = static_cast<std::size_t>(k);
                u[s] = static_cast<std::uint8_t>(p.lcm[s] - a.lead[s] + a.trail[s]);
                v[s] = static_cast<std::uint8_t>(p.lcm[s] - b.lead[s] + b.trail[s]);
            }
            Elem e;
            if (!make(u, v, e)) continue;
            if (!reduce(e)) continue;
            insert(e);
        }
    }

    std::vector<ZBinomial> basis() const {
        std::vector<ZBinomial> out;
        for (const auto& e : els_)
            if (e.active) out.push_back({e.lead, e.trail});
        return out;
    }

private:
    int degree(const ZExp& a) const {
        int d = 0;
        for (int j = 0; j < n_; ++j) d += w_[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(j)];
        return d;
    }

    bool greater(const ZExp& a, const ZExp& b) const {
        const int da = degree(a), db = degree(b);
        if (da != db) return da > db;
        for (int k = n_ - 1; k >= 0; --k) {
            const auto v = static_cast<std::size_t>(ord_[static_cast<std::size_t>(k)]);
            if (a[v] != b[v]) return a[v] < b[v];
        }
        return false;
    }

    bool make(const ZExp& a, const ZExp& b, Elem& e) const {
        if (a == b) return false;
        if (greater(a, b)) {
            e.lead = a;
            e.trail = b;
        } else {
            e.lead = b;
            e.trail = a;
        }
        e.mask = support(e.lead, n_);
        e.deg = degree(e.lead);
        return true;
    }

    bool divides(const Elem& g, const ZExp& a, std::uint32_t amask) const {
        if (g.mask & ~amask) return false;
        for (int j = 0; j < n_; ++j)
            if (g.lead[static_cast<std::size_t>(j)] > a[static_cast<std::size_t>(j)]) return false;
        return true;
    }

    bool reduce(Elem& e) const {
        for (;;) {
            const Elem* div = nullptr;
            for (const auto& g : els_)
                if (g.active && divides(g, e.lead, e.mask)) {
                    div = &g;
                    break;
                }
            if (!div) return true;
            ZExp u{};
            for (int j = 0; j < n_; ++j) {
                const auto s = static_cast<std::size_t>(j);
                const int x = e.lead[s] - div->lead[s] + div->trail[s];
                if (x > 255) throw std::overflow_error("toric exponent overflow");
                u[s] = static_cast<std::uint8_t>(x);
            }
            if (!make(u, e.trail, e)) return false;
        }
    }

    ZExp lcm(const ZExp& a, const ZExp& b) const {
        ZExp l{};
        for (int j = 0; j < n_; ++j) l[static_cast<std::size_t>(j)] = std::max(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(j)]);
        return l;
    }

    static bool exp_divides(const ZExp& a, const ZExp& b, int n) {
        for (int j = 0; j < n; ++j)
            if (a[static_cast<std::size_t>(j)] > b[static_cast<std::size_t>(j)]) return false;
        return true;
    }

    // Gebauer-Moeller
    void insert(const Elem& h) {
        const int hi = static_cast<int>(els_.size());
        els_.push_back(h);
        const Elem& H = els_.back();
        struct Cand {
            int g;
            ZExp l;
            bool coprime;
        };
        std::vector<Cand> c;
        for (int g = 0; g < hi; ++g) {
            const Elem& G = els_[static_cast<std::size_t>(g)];
            if (!G.active) continue;
            c.push_back({g, lcm(H.lead, G.lead), (H.mask & G.mask) == 0});
        }
        std::vector<Cand> d;
        for (std::size_t k = 0; k < c.size(); ++k) {
            bool keep = c[k].coprime;
            if (!keep) {
                keep = true;
                for (std::size_t q = k + 1; q < c.size() && keep; ++q)
                    if (exp_divides(c[q].l, c[k].l, n_)) keep = false;
                for (std::size_t q = 0; q < d.size() && keep; ++q)
                    if (exp_divides(d[q].l, c[k].l, n_)) keep = false;
            }
            if (keep) d.push_back(c[k]);
        }
        std::erase_if(pairs_, [&](const Pair& p) {
            if (!exp_divides(H.lead, p.lcm, n_)) return false;
            return lcm(els_[static_cast<std::size_t>(p.i)].lead, H.lead) != p.lcm &&
                   lcm(els_[static_cast<std::size_t>(p.j)].lead, H.lead) != p.lcm;
        });
        for (const auto& x : d)
            if (!x.coprime) pairs_.push_back({x.g, hi, degree(x.l), x.l});
        dirty_ = true;
        for (int g = 0; g < hi; ++g) {
            Elem& G = els_[static_cast<std::size_t>(g)];
            if (G.active && exp_divides(H.lead, G.lead, n_)) G.active = false;
        }
    }

    int n_;
    std::vector<int> w_;
    std::vector<int> ord_;
    std::vector<Elem> els_;
    std::vector<Pair> pairs_;
    bool dirty_ = false;
};

ZExp to_exp(const IntVec& v, bool positive_part) {
    ZExp e{};
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const long x = v[j].get_si();
        const long part = positive_part ? std::max(0L, x) : std::max(0L, -x);
        if (part > 255) throw std::overflow_error("toric exponent overflow");
        e[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(part);
    }
    return e;
}

IntVec image(const IntMat& a, const ZExp& u) {
    IntVec out = IntVec::Zero(a.rows());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (u[static_cast<std::size_t>(j)]) out += Integer(u[static_cast<std::size_t>(j)]) * a.col(j);
    return out;
}

IntVec difference(const ZBinomial& b, int n) {
    IntVec d(n);
    for (int j = 0; j < n; ++j)
        d[j] = int(b.plus[static_cast<std::size_t>(j)]) - int(b.minus[static_cast<std::size_t>(j)]);
    return d;
}

// Links the connected components of the fiber graph (edge = common
// variable) by k - 1 binomials.
std::vector<ZBinomial> fiber_links(const std::vector<ZExp>& f, int n) {
    const std::size_t k = f.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::uint32_t> masks(k);
    for (std::size_t i = 0; i < k; ++i) masks[i] = support(f[i], n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (masks[i] & masks[j]) parent[find(i)] = find(j);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < k; ++i)
        if (find(i) == i) reps.push_back(i);
    std::vector<ZBinomial> out;
    for (std::size_t r = 1; r < reps.size(); ++r) out.push_back({f[reps[0]], f[reps[r]]});
    return out;
}

} // namespace

std::vector<ZExp> fiber(const IntMat& a, const IntVec& beta) {
    const int n = static_cast<int>(a.cols());
    std::vector<ZExp> out;
    ZExp cur{};
    IntVec rem = beta;
    std::function<void(int)> rec = [&](int j) {
        if (j == n) {
            if (is_zero(rem)) out.push_back(cur);
            return;
        }
        int maxc = 255;
        bool zero_col = true;
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (sgn(a(r, j)) == 0) continue;
            zero_col = false;
            Integer q = rem[r] / a(r, j);
            maxc = std::min<long>(maxc, q.get_si());
        }
        if (zero_col) throw std::invalid_argument("fiber: zero exponent column");
        for (int c = maxc; c >= 0; --c) {
            cur[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(c);
            if (c) rem -= Integer(c) * a.col(j);
            rec(j + 1);
            if (c) rem += Integer(c) * a.col(j);
        }
        cur[static_cast<std::size_t>(j)] = 0;
    };
    rec(0);
    return out;
}

bool vanishes(const ZBinomial& b, const IntMat& a) { return vec_equal(image(a, b.plus), image(a, b.minus)); }

ToricIdealPresentation toric_ideal(const IntMat& a, const ToricOptions& opts) {
    const int n = static_cast<int>(a.cols());
    if (n > kMaxToricVars) throw std::invalid_argument("toric_ideal: too many monomials");
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
        Integer s = 0;
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (sgn(a(r, j)) < 0) throw std::invalid_argument("toric_ideal: negative exponent");
            s += a(r, j);
        }
        if (sgn(s) == 0) throw std::invalid_argument("toric_ideal: constant monomial");
        w[static_cast<std::size_t>(j)] = static_cast<int>(s.get_si());
    }

    ToricIdealPresentation out;
    out.vars = n;
    out.exponents = a;
    out.lattice = lattice_kernel(a);

    std::vector<ZBinomial> seeds;
    std::set<std::vector<long>> seen;
    if (!opts.skip_quadrics) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                IntVec beta = a.col(i) + a.col(j);
                std::vector<long> key(static_cast<std::size_t>(beta.size()));
                for (Eigen::Index r = 0; r < beta.size(); ++r) key[static_cast<std::size_t>(r)] = beta[r].get_si();
                if (!seen.insert(key).second) continue;
                for (auto& b : fiber_links(fiber(a, beta), n)) seeds.push_back(b);
            }
    }
    {
        IntMat diffs(static_cast<Eigen::Index>(seeds.size()), n);
        for (std::size_t k = 0; k < seeds.size(); ++k) diffs.row(static_cast<Eigen::Index>(k)) = difference(seeds[k], n).transpose();
        const IntMat h = seeds.empty() ? IntMat(0, n) : hermite_normal_form(diffs);
        out.quadrics_span_lattice = h.rows() == out.lattice.rows() && h == out.lattice;
    }
    if (!out.quadrics_span_lattice || opts.seed_lattice_basis)
        for (Eigen::Index r = 0; r < out.lattice.rows(); ++r) {
            IntVec v = out.lattice.row(r).transpose();
            seeds.push_back({to_exp(v, true), to_exp(v, false)});
        }

    // I : z_v^inf for v = 0..n-1 in turn; grevlex with v last
    std::vector<ZBinomial> gens = seeds;
    for (int v = 0; v < n && out.lattice.rows() > 0; ++v) {
        std::vector<int> ord;
        for (int j = 0; j < n; ++j)
            if (j != v) ord.push_back(j);
        ord.push_back(v);
        Buchberger bb(n, w, ord);
        for (const auto& g : gens) bb.add(g);
        gens.clear();
        for (auto b : bb.basis()) {
            const auto s = static_cast<std::size_t>(v);
            const std::uint8_t k = std::min(b.plus[s], b.minus[s]);
            b.plus[s] = static_cast<std::uint8_t>(b.plus[s] - k);
            b.minus[s] = static_cast<std::uint8_t>(b.minus[s] - k);
            if (b.plus != b.minus) gens.push_back(b);
        }
    }
    if (out.lattice.rows() == 0) gens.clear();
    out.saturated_size = gens.size();

    std::set<std::vector<long>> betas;
    for (const auto& g : gens) {
        int d = 0;
        for (int j = 0; j < n; ++j) d += g.plus[static_cast<std::size_t>(j)];
        out.bound = std::max(out.bound, d);
        IntVec beta = image(a, g.plus);
        std::vector<long> key(static_cast<std::size_t>(beta.size()));
        for (Eigen::Index r = 0; r < beta.size(); ++r) key[static_cast<std::size_t>(r)] = beta[r].get_si();
        betas.insert(key);
    }
    for (const auto& key : betas) {
        IntVec beta(static_cast<Eigen::Index>(key.size()));
        for (std::size_t r = 0; r < key.size(); ++r) beta[static_cast<Eigen::Index>(r)] = key[r];
        for (auto& b : fiber_links(fiber(a, beta), n)) {
            int d = 0;
            for (int j = 0; j < n; ++j) d += b.plus[static_cast<std::size_t>(j)];
            out.generators.push_back(b);
            out.fine_degree.push_back(beta);
            out.z_degree.push_back(d);
        }
    }
    return out;
}

IntMat exponent_matrix(const MonericClass& cls) {
    IntMat a(12, kGens);
    for (int g = 0; g < kGens; ++g)
        for (int r = 0; r < 12; ++r) a(r, g) = cls[static_cast<std::size_t>(g)][static_cast<std::size_t>(r)];
    return a;
}

ToricIdealPresentation toric_ideal(const std::vector<XYMono>& ms, const ToricOptions& opts) {
    IntMat a(12, static_cast<Eigen::Index>(ms.size()));
    for (std::size_t g = 0; g < ms.size(); ++g)
        for (int r = 0; r < 12; ++r) a(r, static_cast<Eigen::Index>(g)) = ms[g][static_cast<std::size_t>(r)];
    return toric_ideal(a, opts);
}

const std::vector<Degree7>& reference_degrees() {
    static const std::vector<Degree7> refs = [] {
        const auto& gens = generators();
        std::map<Degree7, int> count;
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                Degree7 d{};
                for (std::size_t k = 0; k < 7; ++k) d[k] = gens[i].degree[k] + gens[j].degree[k];
                ++count[d];
            }
        std::vector<Degree7> out;
        for (const auto& [d, c] : count)
            if (c == 5) out.push_back(d);
        if (out.size() != 27) throw std::logic_error("expected 27 conic degrees, found " + std::to_string(out.size()));
        return out;
    }();
    return refs;
}

std::string degree_string(const Degree7& d) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < 7; ++k) os << (k ? "," : "") << d[k];
    os << ')';
    return os.str();
}

std::string to_string(const ZBinomial& b, int vars) {
    const auto& gens = generators();
    auto mono = [&](const ZExp& e) {
        std::string s;
        for (int j = 0; j < vars; ++j) {
            const int x = e[static_cast<std::size_t>(j)];
            if (!x) continue;
            if (!s.empty()) s += '*';
            s += vars == kGens ? "z" + gens[static_cast<std::size_t>(j)].id : "z" + std::to_string(j + 1);
            if (x > 1) s += '^' + std::to_string(x);
        }
        return s.empty() ? std::string("1") : s;
    };
    return mono(b.plus) + " - " + mono(b.minus);
}

std::size_t facet_count(const IntMat& a) {
    std::vector<IntVec> gens;
    for (Eigen::Index j = 0; j < a.cols(); ++j) gens.push_back(a.col(j));
    return facet_normals(static_cast<int>(a.rows()), gens).size();
}

std::size_t facet_count(const MonericClass& cls) { return facet_count(exponent_matrix(cls)); }

KhovanskiiVerdict khovanskii_check(const MonericClass& cls, const ToricOptions& opts) {
    KhovanskiiVerdict v;
    v.class_id = class_key(cls);
    for (const auto& d : reference_degrees()) v.reference_counts[d] = 0;
    const auto t = toric_ideal(exponent_matrix(cls), opts);
    v.bound = t.bound;
    for (std::size_t k = 0; k < t.generators.size(); ++k) {
        XYMono m{};
        for (int r = 0; r < 12; ++r) m[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(t.fine_degree[k][r].get_si());
        const Degree7 d = xy_degree(m);
        auto it = v.reference_counts.find(d);
        if (it != v.reference_counts.end())
            ++it->second;
        else
            ++v.other_counts[d];
    }
    for (const auto& [d, c] : v.reference_counts)
        if (c != 3) v.failures.push_back("degree " + degree_string(d) + " has " + std::to_string(c) + " generators");
    for (const auto& [d, c] : v.other_counts)
        v.failures.push_back(std::to_string(c) + " generators in degree " + degree_string(d));
    v.khovanskii = v.failures.empty();
    v.facets = facet_count(cls);
    return v;
}

} // namespace cubic
