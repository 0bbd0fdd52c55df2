#include "reeb/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace reeb {

namespace {

MatrixQ columns(const std::vector<VectorZ>& vs, const IndexSet& idx) {
  MatrixQ m(vs.empty() ? 0 : vs.front().size(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = Rational(vs[idx[j]](i));
  return m;
}

MatrixZ columns_z(const std::vector<VectorZ>& vs, const IndexSet& idx) {
  MatrixZ m(vs.empty() ? 0 : vs.front().size(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) m.col(j) = vs[idx[j]];
  return m;
}

int rank_of(const std::vector<VectorZ>& vs, const IndexSet& idx) {
  if (idx.empty()) return 0;
  return static_cast<int>(rank<Rational>(columns(vs, idx)));
}

Integer pairing(const VectorZ& a, const VectorZ& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

bool lex_greater(const VectorZ& a, const VectorZ& b) { return lex_less<Integer>(b, a); }

// Enumerates the (d-1)-subsets of generators and keeps the supporting hyperplanes.
std::vector<VectorZ> enumerate_facets(const std::vector<VectorZ>& gens, int d) {
  std::vector<VectorZ> found;
  const std::size_t m = gens.size();
  const int k = d - 1;
  if (k == 0) return found;
  std::vector<std::size_t> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  if (m < static_cast<std::size_t>(k)) return found;
  for (;;) {
    MatrixZ sub(k, d);
    for (int i = 0; i < k; ++i) sub.row(i) = gens[pick[i]].transpose();
    MatrixZ ker = integer_kernel(sub);
    if (ker.cols() == 1) {
      VectorZ u = ker.col(0);
      bool pos = false, neg = false;
      for (const auto& w : gens) {
        Integer p = pairing(u, w);
        if (p > 0) pos = true;
        if (p < 0) neg = true;
      }
      if (!(pos && neg)) {
        if (neg) u = -u;
        if (std::none_of(found.begin(), found.end(), [&](const VectorZ& f) { return equal<Integer>(f, u); }))
          found.push_back(u);
      }
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return found;
}

// Pulling triangulation of the face `face` (of linear rank r) of a configuration whose
// facets are given by incidence sets. Apexes are taken in increasing index order.
void pull(const std::vector<VectorZ>& pts, const std::vector<IndexSet>& facets, const IndexSet& face, int r,
          IndexSet& prefix, std::vector<IndexSet>& out) {
  if (static_cast<int>(face.size()) == r) {
    IndexSet s = prefix;
    s.insert(s.end(), face.begin(), face.end());
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  const std::size_t apex = face.front();
  std::set<IndexSet> subfaces;
  for (const auto& f : facets) {
    IndexSet g;
    std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(g));
    if (g.size() == face.size() || std::binary_search(g.begin(), g.end(), apex)) continue;
    if (rank_of(pts, g) != r - 1) continue;
    subfaces.insert(g);
  }
  prefix.push_back(apex);
  for (const auto& g : subfaces) pull(pts, facets, g, r - 1, prefix, out);
  prefix.pop_back();
}

Integer abs_det(const MatrixZ& m) { return abs(determinant(m)); }

}  // namespace

ConvexCone ConvexCone::from_generators(std::vector<VectorZ> generators) {
  if (generators.empty()) throw DimensionError("cone has no generators");
  const int d = static_cast<int>(generators.front().size());
  for (auto& g : generators) {
    if (g.size() != d) throw DimensionError("generators of mixed length");
    if (g.isZero()) throw DimensionError("zero generator");
    g = primitive(g);
  }
  std::sort(generators.begin(), generators.end(), lex_less<Integer>);
  generators.erase(std::unique(generators.begin(), generators.end(),
                               [](const VectorZ& a, const VectorZ& b) { return equal<Integer>(a, b); }),
                   generators.end());
  IndexSet all(generators.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (rank_of(generators, all) != d) throw DimensionError("cone is not full-dimensional");

  std::vector<VectorZ> ineqs = d == 1 ? std::vector<VectorZ>{} : enumerate_facets(generators, d);
  if (d == 1) {
    bool pos = false, neg = false;
    for (const auto& g : generators) (g(0) > 0 ? pos : neg) = true;
    if (pos && neg) throw DimensionError("cone is not pointed");
    VectorZ u(1);
    u(0) = pos ? 1 : -1;
    ineqs.push_back(u);
  }
  {
    MatrixQ normals(static_cast<Eigen::Index>(ineqs.size()), d);
    for (std::size_t k = 0; k < ineqs.size(); ++k)
      for (int i = 0; i < d; ++i) normals(k, i) = Rational(ineqs[k](i));
    if (ineqs.empty() || rank<Rational>(normals) != d) throw DimensionError("cone is not pointed");
  }
  std::sort(ineqs.begin(), ineqs.end(), lex_greater);

  // Keep extreme rays only: the saturating normals must have rank d-1.
  std::vector<VectorZ> extreme;
  for (const auto& g : generators) {
    std::vector<VectorZ> sat;
    for (const auto& u : ineqs)
      if (pairing(u, g) == 0) sat.push_back(u);
    IndexSet idx(sat.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (rank_of(sat, idx) == d - 1) extreme.push_back(g);
  }

  ConvexCone c;
  c.dim_ = d;
  c.gens_ = std::move(extreme);
  c.ineqs_ = std::move(ineqs);
  for (const auto& u : c.ineqs_) {
    IndexSet on;
    for (std::size_t i = 0; i < c.gens_.size(); ++i)
      if (pairing(u, c.gens_[i]) == 0) on.push_back(i);
    c.incidence_.push_back(std::move(on));
  }
  return c;
}

ConvexCone ConvexCone::from_inequalities(std::vector<VectorZ> inequalities) {
  // The extreme rays of {y : <u,y> >= 0} are the generators of the dual of cone(u).
  ConvexCone dual = from_generators(std::move(inequalities));
  return from_generators(dual.ineqs_);
}

bool ConvexCone::contains(const VectorQ& y) const {
  if (y.size() != dim_) throw DimensionError("dimension mismatch");
  for (const auto& u : ineqs_)
    if (pair<Rational>(u, y) < 0) return false;
  return true;
}

bool ConvexCone::contains_interior(const VectorQ& y) const {
  if (y.size() != dim_) throw DimensionError("dimension mismatch");
  for (const auto& u : ineqs_)
    if (pair<Rational>(u, y) <= 0) return false;
  return true;
}

ConvexCone dual_cone(const ConvexCone& c) { return ConvexCone::from_generators(c.inequalities()); }

SimplicialDecomposition triangulate(const ConvexCone& c) {
  std::vector<IndexSet> facets;
  for (std::size_t k = 0; k < c.inequalities().size(); ++k) facets.push_back(c.facet_generators(k));
  IndexSet all(c.generators().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<IndexSet> simplices;
  IndexSet prefix;
  pull(c.generators(), facets, all, c.dimension(), prefix, simplices);
  SimplicialDecomposition out;
  out.rank = c.dimension();
  for (auto& s : simplices) out.cones.push_back({s, abs_det(columns_z(c.generators(), s))});
  return out;
}

SimplicialDecomposition triangulate_face(const std::vector<VectorZ>& generators, std::vector<VectorZ>* extreme) {
  if (generators.empty()) throw DimensionError("face has no generators");
  const int d = static_cast<int>(generators.front().size());
  IndexSet all(generators.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  MatrixZ w = columns_z(generators, all);
  // Lattice basis of span(W) ∩ Z^d: kernel of an integer basis of the orthogonal complement.
  MatrixQ perp = nullspace<Rational>(to_rational(MatrixZ(w.transpose())));
  MatrixZ basis;
  if (perp.cols() == 0) {
    basis = MatrixZ::Identity(d, d);
  } else {
    MatrixZ a(perp.cols(), d);
    for (Eigen::Index j = 0; j < perp.cols(); ++j) a.row(j) = primitive(VectorQ(perp.col(j))).transpose();
    basis = integer_kernel(a);
  }
  MatrixQ coords = coordinates_in(basis, w);
  std::vector<VectorZ> local;
  for (Eigen::Index j = 0; j < coords.cols(); ++j) {
    VectorZ z(coords.rows());
    for (Eigen::Index i = 0; i < coords.rows(); ++i) z(i) = numerator(coords(i, j));
    local.push_back(z);
  }
  ConvexCone c = ConvexCone::from_generators(local);
  SimplicialDecomposition t = triangulate(c);
  // Map back to the ambient generators.
  std::vector<VectorZ> ext;
  for (const auto& g : c.generators()) ext.push_back(basis * g);
  if (extreme) *extreme = ext;
  return t;
}

SimplicialDecomposition triangulate_facet(const ConvexCone& c, std::size_t k) {
  const IndexSet& on = c.facet_generators(k);
  std::vector<VectorZ> sub;
  for (auto i : on) sub.push_back(c.generators()[i]);
  std::vector<VectorZ> ext;
  SimplicialDecomposition t = triangulate_face(sub, &ext);
  // Re-index into c.generators(): extreme rays of a face are generators of c.
  std::vector<std::size_t> map(ext.size());
  for (std::size_t j = 0; j < ext.size(); ++j) {
    VectorZ p = primitive(ext[j]);
    for (auto i : on)
      if (equal<Integer>(c.generators()[i], p)) map[j] = i;
  }
  for (auto& s : t.cones) {
    for (auto& i : s.generators) i = map[i];
    std::sort(s.generators.begin(), s.generators.end());
  }
  return t;
}

Integer facet_lattice_det(const std::vector<VectorZ>& w, const VectorZ& u) {
  const Eigen::Index d = u.size();
  MatrixZ m(d, d);
  for (std::size_t j = 0; j < w.size(); ++j) m.col(j) = w[j];
  m.col(d - 1) = u;
  Integer num = abs_det(m), den = pairing(u, u);
  if (num % den != 0) throw Error("facet lattice determinant is not integral");
  return num / den;
}

const char* to_string(PolytopeClass c) {
  switch (c) {
    case PolytopeClass::delzant: return "delzant";
    case PolytopeClass::simplicial: return "simplicial";
    default: return "neither";
  }
}

Rational simplex_volume(const std::vector<VectorQ>& pts) {
  const Eigen::Index n = pts.front().size();
  MatrixQ m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = pts[j + 1] - pts[0];
  Rational v = determinant<Rational>(m);
  return abs(v) / factorial(static_cast<int>(n));
}

Rational facet_simplex_measure(const std::vector<VectorQ>& pts, const VectorZ& normal) {
  const Eigen::Index n = normal.size();
  if (n == 1) return Rational(1);
  MatrixQ m(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) m.col(j) = pts[j + 1] - pts[0];
  m.col(n - 1) = to_rational(normal);
  Rational nn = Rational(pairing(normal, normal));
  return abs(determinant<Rational>(m)) / (nn * factorial(static_cast<int>(n - 1)));
}

RationalPolytope RationalPolytope::from_vertices(const std::vector<VectorQ>& points) {
  if (points.empty()) throw DimensionError("no points");
  const int n = static_cast<int>(points.front().size());
  std::vector<VectorZ> lifted;
  for (const auto& p : points) {
    if (p.size() != n) throw DimensionError("points of mixed dimension");
    VectorQ h(n + 1);
    h.head(n) = p;
    h(n) = 1;
    lifted.push_back(primitive(h));
  }
  RationalPolytope poly;
  poly.n_ = n;
  poly.homog_ = ConvexCone::from_generators(lifted);
  poly.build();
  return poly;
}

RationalPolytope RationalPolytope::from_inequalities(std::vector<Facet> facets, int n) {
  std::vector<VectorQ> pts;
  const std::size_t m = facets.size();
  for (const auto& f : facets)
    if (f.normal.size() != n) throw DimensionError("inequality of wrong length");
  if (m < static_cast<std::size_t>(n + 1)) throw DimensionError("too few inequalities for a bounded polytope");
  auto feasible = [&](const VectorQ& x) {
    for (const auto& f : facets)
      if (pair<Rational>(f.normal, x) + f.offset < 0) return false;
    return true;
  };
  std::vector<std::size_t> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    MatrixQ a(n, n);
    VectorQ b(n);
    for (int i = 0; i < n; ++i) {
      a.row(i) = to_rational(facets[pick[i]].normal).transpose();
      b(i) = -facets[pick[i]].offset;
    }
    if (rank<Rational>(a) == n) {
      VectorQ x = *solve<Rational>(a, b);
      if (feasible(x) && std::none_of(pts.begin(), pts.end(), [&](const VectorQ& p) { return equal<Rational>(p, x); }))
        pts.push_back(x);
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (pts.size() < static_cast<std::size_t>(n + 1)) throw DimensionError("inequalities do not bound a full-dimensional polytope");
  RationalPolytope poly = from_vertices(pts);
  // Unbounded systems produce a hull with facets not among the inputs.
  for (const auto& f : poly.facets_) {
    bool found = false;
    for (const auto& g : facets) {
      VectorZ gn = primitive(g.normal);
      if (!equal<Integer>(gn, f.normal)) continue;
      Integer scale = g.normal(0) != 0 ? Integer(g.normal(0) / gn(0)) : Integer(1);
      for (Eigen::Index i = 0; i < gn.size(); ++i)
        if (gn(i) != 0) { scale = g.normal(i) / gn(i); break; }
      if (g.offset / Rational(scale) == f.offset) found = true;
    }
    if (!found) throw DimensionError("inequalities do not bound a polytope");
  }
  return poly;
}

RationalPolytope RationalPolytope::box(const std::vector<Rational>& sides) {
  const int n = static_cast<int>(sides.size());
  std::vector<VectorQ> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    VectorQ p(n);
    for (int i = 0; i < n; ++i) p(i) = (mask >> i) & 1 ? sides[i] : Rational(0);
    pts.push_back(p);
  }
  return from_vertices(pts);
}

void RationalPolytope::build() {
  const int n = n_;
  verts_.clear();
  for (const auto& g : homog_.generators()) {
    if (g(n) <= 0) throw DimensionError("point configuration is not bounded");
    VectorQ v(n);
    for (int i = 0; i < n; ++i) v(i) = Rational(g(i), g(n));
    verts_.push_back(v);
  }
  facets_.clear();
  for (const auto& u : homog_.inequalities()) {
    VectorZ a = u.head(n);
    Integer g = 0;
    for (int i = 0; i < n; ++i) g = gcd(g, a(i));
    if (g == 0) throw DimensionError("degenerate facet");
    facets_.push_back({VectorZ(a / g), Rational(u(n), g)});
  }
  simplices_.clear();
  for (const auto& s : triangulate(homog_).cones) {
    std::vector<VectorQ> pts;
    for (auto i : s.generators) pts.push_back(verts_[i]);
    simplices_.push_back({s.generators, simplex_volume(pts)});
  }
  facet_simplices_.assign(facets_.size(), {});
  for (std::size_t k = 0; k < facets_.size(); ++k) {
    for (const auto& s : triangulate_facet(homog_, k).cones) {
      std::vector<VectorQ> pts;
      for (auto i : s.generators) pts.push_back(verts_[i]);
      facet_simplices_[k].push_back({s.generators, facet_simplex_measure(pts, facets_[k].normal)});
    }
  }
}

IndexSet RationalPolytope::saturated_facets(std::size_t vertex) const {
  IndexSet out;
  for (std::size_t k = 0; k < facets_.size(); ++k)
    if (facet_value<Rational>(k, verts_[vertex]) == 0) out.push_back(k);
  return out;
}

bool RationalPolytope::contains(const VectorQ& x) const {
  if (x.size() != n_) throw DimensionError("dimension mismatch");
  for (std::size_t k = 0; k < facets_.size(); ++k)
    if (facet_value<Rational>(k, x) < 0) return false;
  return true;
}

bool RationalPolytope::contains_interior(const VectorQ& x) const {
  if (x.size() != n_) throw DimensionError("dimension mismatch");
  return is_interior<Rational>(x);
}

Rational RationalPolytope::volume() const {
  Rational v = 0;
  for (const auto& s : simplices_) v += s.measure;
  return v;
}

Rational RationalPolytope::facet_measure(std::size_t k) const {
  Rational v = 0;
  for (const auto& s : facet_simplices_[k]) v += s.measure;
  return v;
}

Rational RationalPolytope::boundary_measure() const {
  Rational v = 0;
  for (std::size_t k = 0; k < facets_.size(); ++k) v += facet_measure(k);
  return v;
}

bool RationalPolytope::is_origin_box(std::vector<Rational>* sides) const {
  if (facets_.size() != static_cast<std::size_t>(2 * n_)) return false;
  std::vector<Rational> len(n_, Rational(-1));
  for (const auto& f : facets_) {
    int axis = -1;
    for (int i = 0; i < n_; ++i) {
      if (f.normal(i) == 0) continue;
      if (axis >= 0) return false;
      axis = i;
    }
    if (f.normal(axis) == 1) {
      if (f.offset != 0) return false;
    } else {
      len[axis] = f.offset;
    }
  }
  for (const auto& l : len)
    if (l <= 0) return false;
  if (sides) *sides = len;
  return true;
}

VectorQ RationalPolytope::vertex_centroid() const {
  VectorQ c = VectorQ::Zero(n_);
  for (const auto& v : verts_) c += v;
  return c / Rational(static_cast<long>(verts_.size()));
}

Rational RationalPolytope::diameter_bound() const {
  Rational best = 0;
  for (int i = 0; i < n_; ++i) {
    Rational lo = verts_.front()(i), hi = lo;
    for (const auto& v : verts_) {
      lo = std::min(lo, v(i));
      hi = std::max(hi, v(i));
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

PolytopeClass is_delzant(const RationalPolytope& p) {
  const int n = p.dimension();
  bool delzant = true;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    IndexSet sat = p.saturated_facets(v);
    if (static_cast<int>(sat.size()) != n) return PolytopeClass::neither;
    MatrixZ m(n, n);
    for (int i = 0; i < n; ++i) m.col(i) = p.facets()[sat[i]].normal;
    if (abs(determinant(m)) != 1) delzant = false;
  }
  return delzant ? PolytopeClass::delzant : PolytopeClass::simplicial;
}

ConvexCone cone_over(const RationalPolytope& p) { return p.homogenization(); }

}  // namespace reeb
