#ifndef REEB_POLYHEDRAL_HPP
#define REEB_POLYHEDRAL_HPP

#include <cstddef>
#include <vector>

#include "reeb/errors.hpp"
#include "reeb/linalg.hpp"
#include "reeb/rational.hpp"

namespace reeb {

using IndexSet = std::vector<std::size_t>;

struct SimplicialCone {
  IndexSet generators;  // indices into the parent's generator list
  Integer det;          // |det| relative to the ambient or face lattice
};

struct SimplicialDecomposition {
  int rank = 0;
  std::vector<SimplicialCone> cones;
};

/**
 * Pointed, full-dimensional rational polyhedral cone. Generators are primitive extreme rays
 * sorted lexicographically; inequalities are primitive inward covectors sorted in
 * decreasing lexicographic order.
 */
class ConvexCone {
 public:
  static ConvexCone from_generators(std::vector<VectorZ> generators);
  static ConvexCone from_inequalities(std::vector<VectorZ> inequalities);

  int dimension() const { return dim_; }
  const std::vector<VectorZ>& generators() const { return gens_; }
  const std::vector<VectorZ>& inequalities() const { return ineqs_; }
  /** Generator indices lying on facet k. */
  const IndexSet& facet_generators(std::size_t k) const { return incidence_[k]; }

  bool contains(const VectorQ& y) const;
  bool contains_interior(const VectorQ& y) const;

 private:
  int dim_ = 0;
  std::vector<VectorZ> gens_;
  std::vector<VectorZ> ineqs_;
  std::vector<IndexSet> incidence_;
};

ConvexCone dual_cone(const ConvexCone& c);

/** Deterministic pulling triangulation; determinants relative to Z^d. */
SimplicialDecomposition triangulate(const ConvexCone& c);

/**
 * Triangulation of the (possibly lower-dimensional) cone spanned by `generators`, with
 * determinants taken relative to the lattice span ∩ Z^d (Hermite/kernel basis).
 * Cone indices refer to the order of `generators` after removing non-extreme rays,
 * which is returned through `extreme` when non-null.
 */
SimplicialDecomposition triangulate_face(const std::vector<VectorZ>& generators,
                                         std::vector<VectorZ>* extreme = nullptr);

/** Face-lattice triangulation of facet k of c, indices into c.generators(). */
SimplicialDecomposition triangulate_facet(const ConvexCone& c, std::size_t k);

/** |det [W | u]| / <u,u>: independent face-lattice determinant for a facet with primitive normal u. */
Integer facet_lattice_det(const std::vector<VectorZ>& w, const VectorZ& u);

struct Facet {
  VectorZ normal;   // primitive, inward
  Rational offset;  // <normal, x> + offset >= 0
};

enum class PolytopeClass { delzant, simplicial, neither };

const char* to_string(PolytopeClass c);

/** Simplex inside a polytope given by vertex indices, with its measure. */
struct WeightedSimplex {
  IndexSet vertices;
  Rational measure;  // Euclidean volume, or lattice facet measure for boundary pieces
};

class RationalPolytope {
 public:
  /** Convex hull of the given points (facet_description). */
  static RationalPolytope from_vertices(const std::vector<VectorQ>& points);
  static RationalPolytope from_inequalities(std::vector<Facet> facets, int n);
  /** Axis box prod [0, a_i]. */
  static RationalPolytope box(const std::vector<Rational>& sides);

  int dimension() const { return n_; }
  const std::vector<VectorQ>& vertices() const { return verts_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const IndexSet& facet_vertices(std::size_t k) const { return homog_.facet_generators(k); }
  IndexSet saturated_facets(std::size_t vertex) const;

  /** The cone over P x {1}; its generators are aligned with vertices(). */
  const ConvexCone& homogenization() const { return homog_; }

  template <typename Scalar>
  Scalar facet_value(std::size_t k, const Vector<Scalar>& x) const {
    Scalar s = scalar_cast<Scalar>(facets_[k].offset);
    for (int i = 0; i < n_; ++i) s += integer_cast<Scalar>(facets_[k].normal(i)) * x(i);
    return s;
  }

  bool contains(const VectorQ& x) const;
  bool contains_interior(const VectorQ& x) const;
  template <typename Scalar>
  bool is_interior(const Vector<Scalar>& x) const {
    for (std::size_t k = 0; k < facets_.size(); ++k)
      if (!(facet_value<Scalar>(k, x) > Scalar(0))) return false;
    return true;
  }

  /** Triangulation of P (Euclidean volumes). */
  const std::vector<WeightedSimplex>& simplices() const { return simplices_; }
  /** Triangulation of facet k (lattice-normalized measures). */
  const std::vector<WeightedSimplex>& facet_simplices(std::size_t k) const { return facet_simplices_[k]; }

  Rational volume() const;
  Rational boundary_measure() const;
  Rational facet_measure(std::size_t k) const;
  /** True when P is an axis-aligned box with a vertex at the origin. */
  bool is_origin_box(std::vector<Rational>* sides = nullptr) const;
  VectorQ vertex_centroid() const;
  Rational diameter_bound() const;  // max coordinate extent

 private:
  void build();

  int n_ = 0;
  std::vector<VectorQ> verts_;
  std::vector<Facet> facets_;
  ConvexCone homog_;
  std::vector<WeightedSimplex> simplices_;
  std::vector<std::vector<WeightedSimplex>> facet_simplices_;
};

PolytopeClass is_delzant(const RationalPolytope& p);

/** Moment cone over P x {1} in R^{n+1}. */
ConvexCone cone_over(const RationalPolytope& p);

/** Sum over facet-simplices of a facet triangulation: lattice measure of a simplex in a facet of P. */
Rational facet_simplex_measure(const std::vector<VectorQ>& pts, const VectorZ& normal);

/** Euclidean volume of the simplex spanned by n+1 points. */
Rational simplex_volume(const std::vector<VectorQ>& pts);

}  // namespace reeb

#endif
