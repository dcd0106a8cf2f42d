#pragma once

// Shared fixtures and oracles for the unit suites and the acceptance run.

#include "cubic/coxnagata.hpp"
#include "cubic/eeee.hpp"
#include "cubic/tropgrass.hpp"

#include <random>
#include <string>
#include <vector>

namespace cubic::testing {

std::mt19937_64& rng();
Integer rand_int(std::mt19937_64& g, long lo, long hi);
Rational rand_rat(std::mt19937_64& g, long lo = -9, long hi = 9);

/// 3x6 integer matrix of rank 3.
IntMat random_rank3(std::mt19937_64& g, long lo = -5, long hi = 5);
/// 3x6 over Q(t), rank 3, entries small polynomials in t.
Mat<RatFn> random_rank3_qt(std::mt19937_64& g);
Mat<RatFn> lift(const IntMat& m);

/// Minors by Leibniz expansion, independent of the library code path.
std::array<Rational, kPl> leibniz_minors(const RatMat& m);
std::array<RatFn, kPl> leibniz_minors(const Mat<RatFn>& m);

/// c t^k P/Q with P(0), Q(0) nonzero, remembering k and c = P(0)/Q(0).
struct KnownRatFn {
    RatFn f;
    long val = 0;
    Rational lc;
};
KnownRatFn random_known(std::mt19937_64& g, long kmin = -4, long kmax = 6);

/// Columns of m moved by s: column i goes to position s(i).
Mat<RatFn> permute_columns(const Mat<RatFn>& m, const Perm& s);
Perm random_perm(std::mt19937_64& g);

/// Fan and all seven refinements, computed once per process.
const TGrFan& shared_fan();
const std::vector<ConeClassification>& shared_classification();
const GlobalReport& shared_report();

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

// invariant suites shared with the acceptance binary
Check invariance_suite(int subspaces, int lambdas, std::uint64_t seed);
Check valuation_suite(int pairs, std::uint64_t seed);
Check plucker_suite(int matrices, std::uint64_t seed);
Check equivariance_suite(int perms, std::uint64_t seed);
Check two_witness_suite(int trials, std::uint64_t seed);

/// Witness of every EEEE system reproduces the predicted class, and the
/// hand-written Case 1 rules (F16, F1i, F23, F45, G6) hold on it.
struct SpotReport {
    Check check;
    std::size_t regions = 0;
    std::size_t witnesses = 0;
    std::size_t rule_checks = 0;
};
SpotReport spot_prediction_suite(int draws, std::uint64_t seed);

} // namespace cubic::testing
