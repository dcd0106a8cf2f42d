#pragma once

// TGr(3,6): fan construction and verification, tropicalized generator
// coefficients, the refinement Sigma on each maximal cone, moneric
// classes and the cancellation locus L_BC.

#include "cubic/coxnagata.hpp"
#include "cubic/polyhedra.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cubic {

enum class ConeType { FFFGG, EEEE, EEFF1, EEFF2, EFFG, EEEG, EEFG };
constexpr int kConeTypes = 7;
/// Table order: FFFGG, EEEE, EEFF1, EEFF2, EFFG, EEEG, EEFG.
const std::array<ConeType, kConeTypes>& all_cone_types();
std::string to_string(ConeType t);
ConeType parse_cone_type(std::string_view s);

class FanVerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lineality L_i = sum over T containing i of e_T (rows, 6 x 20).
const std::vector<IntVec>& tgr_lineality();
/// Valuation-vector permutation of S6 element s as coordinate targets.
std::vector<int> coordinate_perm(const Perm& s);
IntMat permutation_matrix(const Perm& s);

struct TGrFan {
    FanData data;
    std::vector<std::string> ray_names;
    std::vector<ConeType> cone_types;
    /// ray_action[p][r]: image of ray r under all_perms()[p].
    std::vector<std::vector<int>> ray_action;

    struct Orbit {
        ConeType type;
        int representative = -1;
        std::vector<int> members;
        std::vector<Perm> stabilizer;
    };
    std::array<Orbit, kConeTypes> orbits; // indexed like all_cone_types()

    Cone cone(int i) const;
    const Orbit& orbit(ConeType t) const;
    std::string cone_name(int i) const;
};

/// Builds the fan from scratch: candidate rays and the maximal ray sets
/// whose cones lie in the prevariety of the three-term relations.
FanData generate_tgr36();
TGrFan load_and_verify_fan(const std::string& path);
TGrFan verify_fan(FanData data);
std::string default_fan_path();

/// Relative-interior membership test of the tropical prevariety of the
/// three-term relations (minimum attained at least twice).
bool in_prevariety(const IntVec& w);
/// The cone spanned by the given rays lies in the prevariety.
bool cone_in_prevariety(const std::vector<IntVec>& rays);

/// phi(a, b) for the EEEE cone.
IntVec eeee_phi(const RatVec& a, const RatVec& b);
Cone eeee_phi_cone();

struct TropCoefficient {
    enum class Kind { monomial, binomial, rescued, degenerate };
    Kind kind = Kind::monomial;
    /// Linear forms (exponent vectors); two for binomials, one otherwise.
    std::vector<IntVec> forms;
    /// The binomial whose halves were used (original or rescued).
    std::optional<PPoly> used;
};

struct TropOptions {
    int depth = 3;
    int max_terms = 3;
};

TropCoefficient tropicalize_coefficient(const PPoly& c, const Cone& cone, const TropOptions& opts = {});

/// One maximal cell of Sigma restricted to a cone.
struct ClassifiedCell {
    Cone cone;
    std::vector<int> label;
    std::size_t orbit_size = 1;
    bool moneric = true;
    /// The initial monomial of some generator depends on a degenerate
    /// binomial coefficient.
    bool unresolved = false;
    MonericClass cls{};
    /// Weight map theta: row g is the exponent vector whose pairing with
    /// the valuation vector gives the weight of generator g.
    std::array<IntVec, kGens> theta;
    std::vector<int> non_moneric_generators;
};

struct ConeStats {
    ConeType type;
    std::size_t orbit_size = 0;
    std::size_t stabilizer_order = 0;
    std::size_t cells = 0;
    std::size_t representatives = 0;
    std::size_t classes = 0;      // moneric classes up to S(C)
    std::size_t s6_classes = 0;   // classes over the S6-orbit of C
    std::size_t s6_orbits = 0;    // S6-orbits among them
    std::size_t unresolved = 0;
};

struct GeneratorForms {
    std::vector<IntVec> forms;
    std::vector<XYMono> monos;  // monomial per form
    std::vector<char> degenerate;
};

struct ConeClassification {
    ConeType type;
    int cone_index = -1;
    std::vector<Perm> stabilizer;
    std::array<GeneratorForms, kGens> gen_forms;
    std::vector<Subdivision> subdivisions;
    Refinement refinement;
    std::vector<ClassifiedCell> cells; // representatives
    /// Distinct classes over all cells of C (class_key form).
    std::set<std::string> cone_classes;
    ConeStats stats;
};

struct ClassifyOptions {
    TropOptions trop;
    int threads = 1;
    std::function<void(const std::string&)> progress;
};

/// Label of the cell of Sigma|C containing w in its interior, read off the
/// generator forms; nullopt on a wall (some generator ties).
std::optional<MonericClass> class_at(const ConeClassification& c, const IntVec& w);

ConeClassification subdivide_cone(const TGrFan& fan, ConeType t, const ClassifyOptions& opts = {});

struct GlobalReport {
    std::vector<ConeStats> per_cone;
    std::size_t classes = 0;
    std::size_t orbits = 0;
    std::size_t maximal_cells = 0;
    /// One class per S6-orbit (the one with least class_key).
    std::vector<MonericClass> orbit_representatives;
};

GlobalReport classify_all(const TGrFan& fan, const std::vector<ConeClassification>& per_cone);
std::vector<std::string> s6_expansion(const std::set<std::string>& classes);
MonericClass class_from_key(const std::string& key);

struct LbcEntry {
    int cone = -1;
    int generator = -1;
    XYMono mono{};
    PPoly binomial;
    /// tie hyperplane trop(u) - trop(v); zero vector when degenerate
    IntVec normal;
    bool degenerate = false;
};

struct LbcLocus {
    std::vector<LbcEntry> entries;
    /// Entries for cone c.
    std::vector<const LbcEntry*> on_cone(int c) const;
};

/// L_BC on the given cones (all maximal cones when empty).
LbcLocus lbc_locus(const TGrFan& fan, const std::vector<int>& cones = {}, const TropOptions& opts = {});

/// Global f-vector of Sigma from the seven representative refinements;
/// counts faces of every dimension when `all_dims`, otherwise only the
/// maximal cells.
std::vector<std::size_t> sigma_f_vector(const TGrFan& fan, const std::vector<ConeClassification>& per_cone,
                                        bool all_dims, const std::function<void(const std::string&)>& progress = {});

} // namespace cubic
