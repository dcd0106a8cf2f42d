#pragma once

// The EEEE cone phi(R^6 x R^4_{>=0}): its stabilizer, the Case 1 / Case 2
// inequality systems with their predicted initial monomials, exact
// witnesses over Q(t), and the region enumeration.
//
// Region inequalities live in R^11 with coordinates
// (a1..a6, b1..b4, lambda0); every row c encodes the strict inequality
// c . (a, b, lambda0) > 0, equations encode c . (...) = 0.

#include "cubic/coxnagata.hpp"
#include "cubic/polyhedra.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubic {

constexpr int kEeeeVars = 11;

struct EeeeParams {
    RatVec a = RatVec::Constant(6, Rational(0));
    RatVec b = RatVec::Constant(4, Rational(1));
    std::optional<Rational> lambda0;
};

/// phi(a, b) in Q^20.
RatVec eeee_phi_rational(const RatVec& a, const RatVec& b);

struct EeeeCone {
    Cone cone;
    std::vector<Perm> stabilizer;
};

/// sigma maps the pairs {1,6}, {2,5}, {3,4} to pairs and the four special
/// triples 123, 145, 246, 356 among themselves.
bool stabilizes_eeee(const Perm& s);
EeeeCone eeee_cone();
const std::vector<Perm>& eeee_cone_stabilizer();

/// (a, b) of sigma . phi(a, b).
EeeeParams act(const Perm& s, const EeeeParams& p);

struct EeeeRegion {
    std::string id; // C1-1..C1-5, C1-L1..C1-L3, Case 2: the 7-digit codes
    int case_no = 1;
    bool uses_lambda = false;
    std::vector<IntVec> strict;
    std::vector<IntVec> equations;
    MonericClass cls{};
};

/// The 39 systems in normalized coordinates.
const std::vector<EeeeRegion>& eeee_regions();
const EeeeRegion& eeee_region(const std::string& id);
bool in_region(const EeeeRegion& r, const EeeeParams& p);
/// Random integral point of the region (relative interior): a positive
/// combination of its rays with coefficients in [1, spread].
EeeeParams sample_region(const EeeeRegion& r, std::mt19937_64& rng, int spread = 4);

enum class PredictionStatus { moneric, not_moneric, needs_lambda0 };

struct Prediction {
    PredictionStatus status = PredictionStatus::not_moneric;
    std::string region;
    Perm normalizer;          // p = normalizer^-1 . normalized
    EeeeParams normalized;
    MonericClass cls{};       // in the coordinates of the input
    std::vector<int> violated;
};

/// Some sigma in the stabilizer moving p into Case 1 or Case 2 (least in
/// lexicographic order of the permutation images).
std::optional<Perm> eeee_normalizer(const EeeeParams& p);
Prediction predict_class(const EeeeParams& p);

/// Generators whose least tropical term value at w is attained by more than
/// one xy-monomial (binomial halves are taken at face value).
std::vector<int> tropical_ties(const RatVec& w);

class WitnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WitnessOptions {
    std::uint64_t seed = 1;
    int budget = 64;
};

struct Witness {
    Mat<RatFn> matrix;
    /// Positive integer by which a, b and lambda0 were scaled.
    Integer scale = 1;
    IntVec valuation;
};

/// 3x6 matrix over Q(t) whose Pluecker valuations are exactly
/// scale * phi(a, b); with lambda0 the G6 cancellation depth is forced too.
Witness witness(const EeeeParams& p, const WitnessOptions& opts = {});

/// nu(u1 - u2) - nu(u1) for the G6 coefficient of x2x3x4x5x6y1y6, in the
/// normalized coordinates given by sigma.
long g6_cancellation(const PluckerPoint& pt, const Perm& sigma);

struct EeeeEnumeration {
    std::size_t regions = 0;
    std::size_t classes = 0;
    std::size_t orbits = 0;
    std::size_t non_lbc_classes = 0;
    std::size_t non_lbc_orbits = 0;
    /// Classes of the cone itself (up to the stabilizer expansion only).
    std::set<std::string> cone_classes;
    std::set<std::string> non_lbc_cone_classes;
    std::set<std::string> orbit_keys;
    std::set<std::string> non_lbc_orbit_keys;
};

EeeeEnumeration enumerate_regions();

} // namespace cubic
