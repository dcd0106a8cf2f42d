#include "cubic/coxnagata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace cubic {

namespace {

struct RawTerm {
    const char* coef;
    const char* mono;
};

// G_1 and F_12; every other generator is an index substitution of these.
const RawTerm kG1[] = {
    {"p234*p235*p236*p456", "y2y3x4x5x6x1^2"},
    {"p234*p246*p245*p356", "y2y4x3x5x6x1^2"},
    {"p235*p245*p256*p346", "y2y5x3x4x6x1^2"},
    {"p236*p246*p256*p345", "y2y6x3x4x5x1^2"},
    {"p234*p345*p346*p256", "y3y4x2x5x6x1^2"},
    {"p235*p345*p356*p246", "y3y5x2x4x6x1^2"},
    {"p236*p346*p356*p245", "y3y6x2x4x5x1^2"},
    {"p245*p345*p456*p236", "y4y5x2x3x6x1^2"},
    {"p246*p346*p456*p235", "y4y6x2x3x5x1^2"},
    {"p256*p356*p456*p234", "y5y6x2x3x4x1^2"},
    {"p235*p346*p124*p256 - p234*p356*p125*p246", "y2y1x3x4x5x6x1"},
    {"p235*p246*p134*p356 - p234*p256*p135*p346", "y3y1x2x4x5x6x1"},
    {"p245*p236*p134*p456 + p234*p256*p145*p346", "y4y1x2x3x5x6x1"},
    {"p235*p246*p145*p356 - p245*p236*p135*p456", "y5y1x2x3x4x6x1"},
    {"p236*p245*p146*p356 - p246*p235*p136*p456", "y6y1x2x3x4x5x1"},
    {"p235*p246*p134*p156 - p234*p256*p135*p146", "y1^2x2x3x4x5x6"},
};

const RawTerm kF12[] = {
    {"p123", "y3x4x5x6"},
    {"p124", "x3y4x5x6"},
    {"p125", "x3x4y5x6"},
    {"p126", "x3x4x5y6"},
};

std::vector<GenTerm> raw_terms(const RawTerm* b, const RawTerm* e) {
    std::vector<GenTerm> out;
    for (; b != e; ++b) out.push_back(GenTerm{parse_ppoly(b->coef), parse_xymono(b->mono)});
    return out;
}

std::vector<GenTerm> substitute(const Perm& s, const std::vector<GenTerm>& terms) {
    SignedPermutation sp(s);
    std::vector<GenTerm> out;
    for (const auto& t : terms) out.push_back(GenTerm{act(sp, t.coef), act(s, t.mono)});
    return out;
}

void normalize_sign(std::vector<GenTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const GenTerm& a, const GenTerm& b) { return a.mono < b.mono; });
    // lexicographically least XY monomial first; its least Pluecker
    // monomial must carry a positive coefficient
    if (terms.front().coef.terms().front().coef < 0)
        for (auto& t : terms) t.coef = t.coef.scaled(Rational(-1));
}

GeneratorTemplate finish(std::string id, GenKind kind, std::array<int, 2> idx, std::vector<GenTerm> terms) {
    GeneratorTemplate g;
    g.id = std::move(id);
    g.kind = kind;
    g.idx = idx;
    normalize_sign(terms);
    g.terms = std::move(terms);
    g.degree = xy_degree(g.terms.front().mono);
    for (const auto& t : g.terms)
        if (xy_degree(t.mono) != g.degree) throw std::logic_error("generator " + g.id + " is not homogeneous");
    return g;
}

} // namespace

Degree7 xy_degree(const XYMono& m) {
    Degree7 d{};
    for (int i = 0; i < 6; ++i) {
        d[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] + m[static_cast<std::size_t>(i + 6)];
        d[6] += m[static_cast<std::size_t>(i + 6)];
    }
    return d;
}

std::vector<GeneratorTemplate> build_generators() {
    std::vector<GeneratorTemplate> gens;
    for (int i = 1; i <= 6; ++i) {
        XYMono m{};
        m[static_cast<std::size_t>(i - 1)] = 1;
        gens.push_back(finish("E" + std::to_string(i), GenKind::E, {i, 0}, {GenTerm{PPoly::monomial(Rational(1), PMono{}), m}}));
    }
    const auto f12 = raw_terms(std::begin(kF12), std::end(kF12));
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j) {
            // 1 -> i, 2 -> j, remaining indices in increasing order
            Perm s;
            s.img[0] = i;
            s.img[1] = j;
            int n = 2;
            for (int k = 1; k <= 6; ++k)
                if (k != i && k != j) s.img[static_cast<std::size_t>(n++)] = k;
            gens.push_back(finish("F" + std::to_string(i) + std::to_string(j), GenKind::F, {i, j}, substitute(s, f12)));
        }
    const auto g1 = raw_terms(std::begin(kG1), std::end(kG1));
    for (int i = 1; i <= 6; ++i) {
        Perm s;
        s.img[0] = i;
        int n = 1;
        for (int k = 1; k <= 6; ++k)
            if (k != i) s.img[static_cast<std::size_t>(n++)] = k;
        gens.push_back(finish("G" + std::to_string(i), GenKind::G, {i, 0}, substitute(s, g1)));
    }
    return gens;
}

const std::vector<GeneratorTemplate>& generators() {
    static const auto g = build_generators();
    return g;
}

int generator_index(std::string_view id) {
    const auto& g = generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("unknown generator " + std::string(id));
}

Degree7 generator_degree(const GeneratorTemplate& g) {
    const Degree7 d = xy_degree(g.terms.front().mono);
    for (const auto& t : g.terms)
        if (xy_degree(t.mono) != d) throw std::logic_error("generator " + g.id + " is not homogeneous");
    return d;
}

int act_generator(const Perm& s, int g) {
    static const auto table = [] {
        std::vector<std::array<int, kGens>> t;
        const auto& gens = generators();
        std::map<std::string, int> by_id;
        for (std::size_t i = 0; i < gens.size(); ++i) by_id[gens[i].id] = static_cast<int>(i);
        for (const auto& p : all_perms()) {
            std::array<int, kGens> row{};
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const auto& gi = gens[i];
                std::string id;
                if (gi.kind == GenKind::F) {
                    int a = p(gi.idx[0]), b = p(gi.idx[1]);
                    if (a > b) std::swap(a, b);
                    id = "F" + std::to_string(a) + std::to_string(b);
                } else {
                    id = gi.id.substr(0, 1) + std::to_string(p(gi.idx[0]));
                }
                row[i] = by_id.at(id);
            }
            t.push_back(row);
        }
        return t;
    }();
    const auto& perms = all_perms();
    const auto it = std::lower_bound(perms.begin(), perms.end(), s);
    return table[static_cast<std::size_t>(it - perms.begin())][static_cast<std::size_t>(g)];
}

XYMono act(const Perm& s, const XYMono& m) {
    XYMono r{};
    for (int i = 1; i <= 6; ++i) {
        r[static_cast<std::size_t>(s(i) - 1)] = m[static_cast<std::size_t>(i - 1)];
        r[static_cast<std::size_t>(s(i) + 5)] = m[static_cast<std::size_t>(i + 5)];
    }
    return r;
}

GeneratorTemplate act(const Perm& s, const GeneratorTemplate& g) {
    GeneratorTemplate r = generators()[static_cast<std::size_t>(act_generator(s, generator_index(g.id)))];
    r.terms = substitute(s, g.terms);
    std::sort(r.terms.begin(), r.terms.end(), [](const GenTerm& a, const GenTerm& b) { return a.mono < b.mono; });
    return r;
}

InitialForm evaluate_initial(const GeneratorTemplate& g, const PluckerPoint& p) {
    struct V {
        const XYMono* mono;
        RatFn value;
        long nu;
    };
    std::vector<V> vals;
    for (const auto& t : g.terms) {
        RatFn c = evaluate(t.coef, p);
        if (c.is_zero()) continue;
        const long nu = valuation(c);
        vals.push_back(V{&t.mono, std::move(c), nu});
    }
    if (vals.empty()) throw DegenerateError("all coefficients of " + g.id + " vanish");
    InitialForm f;
    f.weight = vals.front().nu;
    for (const auto& v : vals) f.weight = std::min(f.weight, v.nu);
    for (const auto& v : vals)
        if (v.nu == f.weight) f.support.emplace_back(*v.mono, leading_coefficient(v.value));
    return f;
}

MonericityResult monericity(const PluckerPoint& p) {
    MonericityResult r;
    r.moneric = true;
    const auto& gens = generators();
    for (int i = 0; i < kGens; ++i) {
        r.forms.push_back(evaluate_initial(gens[static_cast<std::size_t>(i)], p));
        const auto& f = r.forms.back();
        r.weights[static_cast<std::size_t>(i)] = f.weight;
        r.monos[static_cast<std::size_t>(i)] = f.support.front().first;
        if (f.support.size() != 1) {
            r.moneric = false;
            r.failing.push_back(i);
        }
    }
    return r;
}

Rational evaluate(const GeneratorTemplate& g, const std::array<Rational, kPl>& p,
                  const std::array<Rational, 6>& x, const std::array<Rational, 6>& y) {
    Rational acc = 0;
    for (const auto& t : g.terms) {
        Rational m = evaluate(t.coef, p);
        for (int i = 0; i < 6; ++i) {
            for (int e = 0; e < t.mono[static_cast<std::size_t>(i)]; ++e) m *= x[static_cast<std::size_t>(i)];
            for (int e = 0; e < t.mono[static_cast<std::size_t>(i + 6)]; ++e) m *= y[static_cast<std::size_t>(i)];
        }
        acc += m;
    }
    return acc;
}

MonericClass act(const Perm& s, const MonericClass& c) {
    MonericClass r{};
    for (int i = 0; i < kGens; ++i) r[static_cast<std::size_t>(act_generator(s, i))] = act(s, c[static_cast<std::size_t>(i)]);
    return r;
}

std::string class_key(const MonericClass& c) {
    MonericClass s = c;
    std::sort(s.begin(), s.end());
    std::string k(kGens * 12, '\0');
    for (int i = 0; i < kGens; ++i)
        for (int j = 0; j < 12; ++j) k[static_cast<std::size_t>(i * 12 + j)] = static_cast<char>(s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return k;
}

std::string orbit_key(const MonericClass& c, const std::vector<Perm>& group) {
    std::string best;
    for (const auto& p : group) {
        std::string k = class_key(act(p, c));
        if (best.empty() || k < best) best = std::move(k);
    }
    return best;
}

std::string orbit_key(const MonericClass& c) { return orbit_key(c, all_perms()); }

std::string to_string(const XYMono& m) {
    std::string s;
    for (int i = 0; i < 12; ++i) {
        const int e = m[static_cast<std::size_t>(i)];
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += (i < 6 ? "x" : "y") + std::to_string(i % 6 + 1);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

XYMono parse_xymono(std::string_view text) {
    XYMono m{};
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '*' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if ((c != 'x' && c != 'y') || i + 1 >= text.size()) throw ParseError("bad monomial: " + std::string(text));
        const int v = text[i + 1] - '0';
        if (v < 1 || v > 6) throw ParseError("bad variable index: " + std::string(text));
        i += 2;
        int e = 1;
        if (i < text.size() && text[i] == '^') {
            e = 0;
            ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) e = e * 10 + (text[i++] - '0');
        }
        m[static_cast<std::size_t>((c == 'x' ? 0 : 6) + v - 1)] = static_cast<std::uint8_t>(m[static_cast<std::size_t>((c == 'x' ? 0 : 6) + v - 1)] + e);
    }
    return m;
}

std::string to_string(const GeneratorTemplate& g) {
    std::string s = g.id + " =";
    bool first = true;
    for (const auto& t : g.terms) {
        s += first ? " " : "\n    + ";
        first = false;
        s += "(" + to_string(t.coef) + ")*" + to_string(t.mono);
    }
    return s;
}

std::string report(const MonericClass& c) {
    std::string s;
    const auto& g = generators();
    for (int i = 0; i < kGens; ++i) s += g[static_cast<std::size_t>(i)].id + " -> " + to_string(c[static_cast<std::size_t>(i)]) + "\n";
    return s;
}

} // namespace cubic
