#pragma once

// The 27 generators E_i, F_ij, G_i of the Cox-Nagata ring of a cubic
// surface, their initial forms at a point of Gr(3,6) over Q(t), and
// monericity.

#include "cubic/plucker.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cubic {

constexpr int kGens = 27;

/// Exponents of x1..x6, y1..y6.
using XYMono = std::array<std::uint8_t, 12>;
using Degree7 = std::array<int, 7>;

struct GenTerm {
    PPoly coef;
    XYMono mono{};
};

enum class GenKind { E, F, G };

struct GeneratorTemplate {
    std::string id;
    GenKind kind = GenKind::E;
    std::array<int, 2> idx{0, 0}; // E_i, G_i: {i,0}; F_ij: {i,j}
    std::vector<GenTerm> terms;
    Degree7 degree{};
};

/// E1..E6, F12..F56 (lexicographic), G1..G6.
const std::vector<GeneratorTemplate>& generators();
std::vector<GeneratorTemplate> build_generators();
int generator_index(std::string_view id);
Degree7 generator_degree(const GeneratorTemplate& g);
Degree7 xy_degree(const XYMono& m);

/// Index of the generator sigma(g).
int act_generator(const Perm& s, int g);
XYMono act(const Perm& s, const XYMono& m);
/// Substitutes indices in all symbols; the result equals generators()[sigma g]
/// up to a global sign.
GeneratorTemplate act(const Perm& s, const GeneratorTemplate& g);

struct InitialForm {
    long weight = 0;
    std::vector<std::pair<XYMono, Rational>> support;
};

class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

InitialForm evaluate_initial(const GeneratorTemplate& g, const PluckerPoint& p);

/// 27 initial monomials in generator order.
using MonericClass = std::array<XYMono, kGens>;

struct MonericityResult {
    bool moneric = false;
    MonericClass monos{};
    std::array<long, kGens> weights{};
    std::vector<int> failing; // generators with several leading terms
    std::vector<InitialForm> forms;
};

MonericityResult monericity(const PluckerPoint& p);

/// Exact value of a generator at numeric Pluecker coordinates and x, y.
Rational evaluate(const GeneratorTemplate& g, const std::array<Rational, kPl>& p,
                  const std::array<Rational, 6>& x, const std::array<Rational, 6>& y);

MonericClass act(const Perm& s, const MonericClass& c);
/// Sorted monomials; identifies the class independent of bookkeeping.
std::string class_key(const MonericClass& c);
/// Minimum of class_key over the given permutations (all of S6 by default).
std::string orbit_key(const MonericClass& c);
std::string orbit_key(const MonericClass& c, const std::vector<Perm>& group);

std::string to_string(const XYMono& m);
XYMono parse_xymono(std::string_view text);
std::string to_string(const GeneratorTemplate& g);
/// One line per generator: `F12 -> x4*x5*x6*y3`.
std::string report(const MonericClass& c);

} // namespace cubic
