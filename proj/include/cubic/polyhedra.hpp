#pragma once

// Exact polyhedral cones (possibly with lineality) via the double
// description method over Z, min-region subdivisions and the
// symmetry-reduced common refinement.
//
// Fan file format (JSON):
//   { "ambient_dim": d,
//     "lineality": [[...], ...],     rows spanning the common lineality
//     "rays": [[...], ...],          primitive integer rays
//     "cones": [[i, j, ...], ...],   maximal cones as ray index lists
//     "labels": [...] }              optional, one entry per cone
// All integers are written as decimal strings when they exceed 2^53.

#include "cubic/scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubic {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
    void resize(std::size_t n) { w_.resize((n + 63) / 64, 0); }
    void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
    Bits operator&(const Bits& o) const;
    bool subset_of(const Bits& o) const;
    std::size_t count() const;
    friend bool operator==(const Bits&, const Bits&) = default;
    friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

private:
    std::vector<std::uint64_t> w_;
};

class Cone {
public:
    /// The whole space R^d.
    explicit Cone(int d = 0);
    /// {x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}.
    static Cone from_h(int d, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs = {});
    /// cone(rays) + span(lineality).
    static Cone from_v(int d, const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality = {});
    static Cone origin(int d);

    int ambient_dim() const { return d_; }
    int dim() const;
    bool empty_interior_in(int target_dim) const { return dim() < target_dim; }

    /// Extreme rays modulo the lineality space (primitive).
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<IntVec>& lineality() const { return lin_; }
    /// Irredundant inequalities, each reduced modulo the equations.
    const std::vector<IntVec>& facets() const;
    /// Basis (RREF, primitive rows) of the linear equations of the span.
    const std::vector<IntVec>& equations() const;

    IntVec relative_interior_point() const;
    bool contains(const IntVec& x) const;
    bool contains_in_relative_interior(const IntVec& x) const;
    bool is_face_of(const Cone& other) const;

    /// Adds a >= 0 (or a = 0). Returns *this.
    Cone& add_inequality(const IntVec& a);
    Cone& add_equation(const IntVec& a);
    Cone intersect(const Cone& o) const;
    /// True iff adding a >= 0 keeps the dimension.
    bool halfspace_keeps_dim(const IntVec& a) const;
    /// Intersects with all halfspaces, giving up (nullopt) as soon as the
    /// dimension drops.
    std::optional<Cone> intersect_full(const std::vector<IntVec>& halfspaces) const;

    /// Image under x -> A x (A is m x d).
    Cone image(const IntMat& a) const;
    Cone image(const RatMat& a) const;
    /// {x : A x in C} (A is d x n).
    Cone preimage(const IntMat& a) const;

    /// Drops redundant constraints (keeps facets and equations).
    void compact();
    /// Image under the coordinate permutation x_i -> x_{target[i]}.
    Cone permuted(const std::vector<int>& target) const;

    /// Equal iff the cones are equal as sets.
    std::string canonical_key() const;

    /// All nonempty faces, including the minimal face (lineality) and the
    /// cone itself; each face as the set of its extreme-ray indices.
    std::vector<Bits> face_ray_sets() const;
    Cone face(const Bits& ray_set) const;

private:
    void add_constraint(const IntVec& a, bool equality);
    void compute_h() const;

    int d_ = 0;
    std::vector<IntVec> lin_;
    std::vector<IntVec> rays_;
    std::vector<IntVec> cons_;       // constraints a.x >= 0 (eq flag below)
    std::vector<char> cons_eq_;
    std::vector<Bits> inc_;          // per ray: tight constraints
    mutable bool h_done_ = false;
    mutable std::vector<IntVec> facets_, eqs_;
    mutable int dim_ = -1;
};

Integer dot(const IntVec& a, const IntVec& b);

/// Reduces v modulo the row space of an RREF equation basis, then makes it
/// primitive.
IntVec reduce_mod(const IntVec& v, const std::vector<IntVec>& rref_rows);

/// Facets of cone(generators) in R^d, as primitive inner normals (number of
/// facets of a pointed or non-pointed cone).
std::vector<IntVec> facet_normals(int d, const std::vector<IntVec>& generators);

// ---------------- subdivisions ----------------

struct Subdivision {
    Cone parent;
    std::vector<Cone> cells;
    /// For min-region subdivisions: indices of the forms minimal on the cell
    /// (several when forms coincide on the parent).
    std::vector<std::vector<int>> labels;
    /// Halfspaces cutting each cell out of the parent.
    std::vector<std::vector<IntVec>> cuts;
};

Subdivision min_region_subdivision(const Cone& parent, const std::vector<IntVec>& forms);

/// Linear maps stabilizing the parent; the identity must be included.
struct SymmetryGroup {
    std::vector<IntMat> elements;
    /// Optional: coordinate permutations equal to the elements (fast path).
    std::vector<std::vector<int>> coordinate_perms;
    /// Optional: action on the subdivision list, [g][s].
    std::vector<std::vector<int>> subdivision_action;
    std::vector<int> tags; // caller-side ids (e.g. index into all_perms())
    bool verify_closure() const;
};

struct RefinedCell {
    Cone cone;
    /// label[s] = index of the cell of subdivision s containing this cell.
    std::vector<int> label;
    std::size_t orbit_size = 1;
};

struct Refinement {
    std::vector<RefinedCell> representatives;
    std::size_t total_cells = 0;
    /// action[g][s] = image subdivision; cell_action[g][s][c] = image cell.
    std::vector<std::vector<int>> sub_action;
    std::vector<std::vector<std::vector<int>>> cell_action;
    std::vector<int> map_label(std::size_t g, const std::vector<int>& label) const;
    std::vector<RefinedCell> expand() const;
};

struct RefineOptions {
    int threads = 1;
    std::function<void(const std::string&)> progress;
};

Refinement common_refinement(const Cone& parent, const std::vector<Subdivision>& subs,
                             const SymmetryGroup& group, const RefineOptions& opts = {});

// ---------------- fans ----------------

struct FanData {
    int ambient_dim = 0;
    std::vector<IntVec> lineality;
    std::vector<IntVec> rays;
    std::vector<std::vector<int>> cones;
    std::vector<std::string> labels;
};

FanData read_fan(const std::string& path);
void write_fan(const std::string& path, const FanData& fan, const std::string& header = "");

/// Face counts by dimension 0..d of the fan whose maximal cones are given.
/// Faces are identified by canonical keys; raises on a non-fan pair.
std::vector<std::size_t> f_vector(const std::vector<Cone>& cells);

} // namespace cubic
