#pragma once

// Toric ideals of the 27 initial monomials, the lifting test for
// Khovanskii classes and facet counts of the exponent cones.
//
// J is computed as a lattice ideal: start from the degree-2 fiber moves
// (plus a lattice basis when those do not span the relation lattice),
// saturate variable by variable with binomial Buchberger in weighted
// grevlex, then read off minimal generators fiber by fiber.

#include "cubic/coxnagata.hpp"
#include "cubic/polyhedra.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cubic {

constexpr int kMaxToricVars = 32;

using ZExp = std::array<std::uint8_t, kMaxToricVars>;

/// z^plus - z^minus.
struct ZBinomial {
    ZExp plus{};
    ZExp minus{};
};

/// Row Hermite normal form; zero rows dropped.
IntMat hermite_normal_form(const IntMat& rows);
/// Z-basis (rows) of {u in Z^n : A u = 0}.
IntMat lattice_kernel(const IntMat& a);

struct ToricOptions {
    /// Also throw in the lattice basis before saturating (normally only
    /// needed when the quadratic moves span a proper sublattice).
    bool seed_lattice_basis = false;
    /// Skip the degree-2 fiber moves (start from the lattice basis alone).
    bool skip_quadrics = false;
};

struct ToricIdealPresentation {
    int vars = 0;
    IntMat exponents;          // columns: exponent vectors of the monomials
    IntMat lattice;            // rows: Z-basis of the relation lattice
    std::vector<ZBinomial> generators;   // minimal, one per missing link
    std::vector<IntVec> fine_degree;     // A * plus, per generator
    std::vector<int> z_degree;           // total degree in z, per generator
    /// Largest z-degree in the certified (saturated) generating set; no
    /// minimal generator can live above it.
    int bound = 0;
    std::size_t saturated_size = 0;
    bool quadrics_span_lattice = false;
};

ToricIdealPresentation toric_ideal(const IntMat& exponents, const ToricOptions& opts = {});
ToricIdealPresentation toric_ideal(const std::vector<XYMono>& ms, const ToricOptions& opts = {});

/// Evaluates z^plus - z^minus under z_j -> monomial j; true iff it vanishes.
bool vanishes(const ZBinomial& b, const IntMat& exponents);
/// All exponent vectors u >= 0 with A u = beta.
std::vector<ZExp> fiber(const IntMat& exponents, const IntVec& beta);

/// Degrees of Pic whose piece of the Cox ring is spanned by exactly five
/// products of two generators (the conic classes); 27 of them.
const std::vector<Degree7>& reference_degrees();

struct KhovanskiiVerdict {
    std::string class_id;
    std::map<Degree7, int> reference_counts;   // all 27, zero allowed
    std::map<Degree7, int> other_counts;       // generators elsewhere
    bool khovanskii = false;
    std::size_t facets = 0;
    int bound = 0;
    /// "degree D has k generators", "generator in degree D" ...
    std::vector<std::string> failures;
};

KhovanskiiVerdict khovanskii_check(const MonericClass& cls, const ToricOptions& opts = {});
std::size_t facet_count(const MonericClass& cls);
std::size_t facet_count(const IntMat& exponents);

IntMat exponent_matrix(const MonericClass& cls);
std::string to_string(const ZBinomial& b, int vars);
std::string degree_string(const Degree7& d);

} // namespace cubic
