#include "reeb/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reeb/parallel.hpp"

namespace reeb {

IndexCharacter::IndexCharacter(const ConvexCone& c) : cone_(c) {
  const int n = c.dimension() - 1;
  if (n < 1) throw DimensionError("index character needs a cone of dimension at least 2");
  const Rational vol_scale = factorial(n);
  const Rational bdy_scale = 2 * factorial(n - 1);
  for (const auto& s : triangulate(c).cones) {
    Term t{Rational(s.det) / vol_scale, {}};
    for (auto i : s.generators) t.gens.push_back(c.generators()[i]);
    vol_.push_back(std::move(t));
  }
  for (std::size_t k = 0; k < c.inequalities().size(); ++k) {
    for (const auto& s : triangulate_facet(c, k).cones) {
      Term t{Rational(s.det) / bdy_scale, {}};
      for (auto i : s.generators) t.gens.push_back(c.generators()[i]);
      bdy_.push_back(std::move(t));
    }
  }
}

bool IndexCharacter::cone_contains_dual(const VectorQ& xi) const { return reeb_cone_contains(cone_, xi); }

IndexCoefficients IndexCharacter::coefficients(const VectorQ& xi) const {
  auto v = directional<Rational>(xi, VectorQ::Zero(xi.size()), 0);
  return {v[0], v[1]};
}

std::array<double, 2> IndexCharacter::relative_error_bound(const Vector<double>& xi) const {
  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  const double d = static_cast<double>(xi.size());
  auto bound = [&](const std::vector<Term>& terms) {
    double worst = 0;
    for (const auto& t : terms) {
      double cond = 0;
      for (const auto& w : t.gens) {
        double p = 0, a = 0;
        for (Eigen::Index i = 0; i < xi.size(); ++i) {
          double wi = w(i).convert_to<double>();
          p += wi * xi(i);
          a += std::abs(wi * xi(i));
        }
        cond += d * a / p + 2;
      }
      worst = std::max(worst, cond);
    }
    // Positive summands: the summation adds at most (#terms) roundings.
    return u * (worst + static_cast<double>(terms.size()) + 2) * 1.01;
  };
  return {bound(vol_), bound(bdy_)};
}

bool reeb_cone_contains(const ConvexCone& c, const VectorQ& xi) {
  if (xi.size() != c.dimension()) throw DimensionError("Reeb vector has the wrong length");
  for (const auto& w : c.generators())
    if (pair<Rational>(w, xi) <= 0) return false;
  return true;
}

IndexCoefficients index_coeffs(const ConvexCone& c, const VectorQ& xi) { return IndexCharacter(c).coefficients(xi); }

std::array<Rational, 2> index_coeffs_derivative(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta, int k) {
  if (k < 1 || k > 2) throw DomainError("derivative order must be 1 or 2");
  if (zeta.size() != xi.size()) throw DimensionError("direction has the wrong length");
  return IndexCharacter(c).directional<Rational>(xi, zeta, k);
}

double affine_eh(int n, const Rational& a0, const Rational& a1) {
  const double e = static_cast<double>(n) / (n + 1);
  return 16 * std::numbers::pi * to_double(a1) / std::pow(to_double(a0), e);
}

double affine_eh(const ConvexCone& c, const VectorQ& xi) {
  auto ab = index_coeffs(c, xi);
  return affine_eh(c.dimension() - 1, ab.a0, ab.a1);
}

Rational df_cs(int n, const Rational& a0, const Rational& a1, const Rational& da0, const Rational& da1) {
  return (da1 - Rational(n, n + 1) * a1 * da0 / a0) / n;
}

Rational df_cs_quotient_form(int n, const Rational& a0, const Rational& a1, const Rational& da0,
                             const Rational& da1) {
  Rational d_ratio = (da1 * a0 - a1 * da0) / (a0 * a0);
  return a0 / n * d_ratio + a1 * da0 / (n * (n + 1));
}

namespace {

std::array<Rational, 4> df_inputs(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta) {
  if (zeta.size() != xi.size()) throw DimensionError("direction has the wrong length");
  IndexCharacter ch(c);
  auto v = ch.directional<Rational>(xi, zeta, 0);
  auto d = ch.directional<Rational>(xi, zeta, 1);
  return {v[0], v[1], d[0], d[1]};
}

}  // namespace

Rational df_cs(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta) {
  auto v = df_inputs(c, xi, zeta);
  return df_cs(c.dimension() - 1, v[0], v[1], v[2], v[3]);
}

Rational df_cs_quotient_form(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta) {
  auto v = df_inputs(c, xi, zeta);
  return df_cs_quotient_form(c.dimension() - 1, v[0], v[1], v[2], v[3]);
}

double affine_eh_slope(int n, const Rational& a0, const Rational& df) {
  const double e = static_cast<double>(n) / (n + 1);
  return 16 * std::numbers::pi * n * to_double(df) / std::pow(to_double(a0), e);
}

namespace {

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double lattice_sum(const ConvexCone& c, const Vector<double>& xi, double t, double cutoff) {
  const int d = c.dimension();
  if (xi.size() != d) throw DimensionError("Reeb vector has the wrong length");
  if (!(t > 0)) throw DomainError("t must be positive");
  for (const auto& w : c.generators())
    if (!(pair<double>(w, xi) > 0)) throw ReebMembershipError("Reeb vector is not in the open Reeb cone");

  // The last enumerated coordinate is summed in closed form; pick the largest |xi_i|.
  int last = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(xi(i)) > std::abs(xi(last))) last = i;
  std::vector<int> outer;
  for (int i = 0; i < d; ++i)
    if (i != last) outer.push_back(i);

  // Bounding box of {alpha in c : <alpha, xi> <= K} from the scaled generators.
  std::vector<long long> lo(d, 0), hi(d, 0);
  for (const auto& w : c.generators()) {
    double scale = cutoff / pair<double>(w, xi);
    for (int i = 0; i < d; ++i) {
      double v = w(i).convert_to<double>() * scale;
      lo[i] = std::min(lo[i], static_cast<long long>(std::floor(v)));
      hi[i] = std::max(hi[i], static_cast<long long>(std::ceil(v)));
    }
  }
  std::vector<std::vector<long long>> ineq;
  for (const auto& u : c.inequalities()) {
    std::vector<long long> row(d);
    for (int i = 0; i < d; ++i) row[i] = u(i).convert_to<long long>();
    ineq.push_back(row);
  }

  const double tl = t, xl = xi(last);
  const int first = outer.empty() ? -1 : outer.front();
  const std::size_t chunks = first < 0 ? 1 : static_cast<std::size_t>(hi[first] - lo[first] + 1);
  std::vector<double> partial(chunks, 0.0);

  parallel_for(chunks, [&](std::size_t chunk) {
    Neumaier acc;
    std::vector<long long> y(d, 0);
    if (first >= 0) y[first] = lo[first] + static_cast<long long>(chunk);
    for (std::size_t j = 1; j < outer.size(); ++j) y[outer[j]] = lo[outer[j]];
    for (;;) {
      double c0 = 0;
      for (int i : outer) c0 += xi(i) * static_cast<double>(y[i]);
      double xlo = -std::numeric_limits<double>::infinity();
      double xhi = std::numeric_limits<double>::infinity();
      bool feasible = true;
      for (const auto& row : ineq) {
        long long b = 0;
        for (int i : outer) b += row[i] * y[i];
        long long a = row[last];
        if (a == 0) {
          if (b < 0) { feasible = false; break; }
        } else if (a > 0) {
          xlo = std::max(xlo, std::ceil(static_cast<double>(-b) / static_cast<double>(a)));
        } else {
          xhi = std::min(xhi, std::floor(static_cast<double>(b) / static_cast<double>(-a)));
        }
      }
      if (feasible) {
        double bound = (cutoff - c0) / xl;
        if (xl > 0)
          xhi = std::min(xhi, std::floor(bound));
        else
          xlo = std::max(xlo, std::ceil(bound));
        if (xlo <= xhi && std::isfinite(xlo) && std::isfinite(xhi)) {
          double m = xhi - xlo + 1;
          double head = std::exp(-tl * (c0 + xl * xlo));
          double ratio = std::expm1(-tl * xl * m) / std::expm1(-tl * xl);
          acc.add(head * ratio);
        }
      }
      // Advance the odometer over the remaining outer coordinates.
      std::size_t j = 1;
      for (; j < outer.size(); ++j) {
        int i = outer[j];
        if (y[i] < hi[i]) { ++y[i]; break; }
        y[i] = lo[i];
      }
      if (j >= outer.size()) break;
    }
    partial[chunk] = acc.value();
  });
  Neumaier total;
  for (auto p : partial) total.add(p);
  return total.value();
}

LatticeCharacter lattice_character(const ConvexCone& c, const Vector<double>& xi, double t, double cutoff) {
  const int n = c.dimension() - 1;
  LatticeCharacter out;
  out.truncation_warning = std::exp(-t * cutoff) >= 1e-15;
  double nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  for (int j = 0; j < 3; ++j) {
    double h = t / std::pow(2.0, j);
    double f = lattice_sum(c, xi, h, cutoff * t / h);
    if (j == 0) out.partial_sum = f;
    out.nodes[j] = h;
    out.scaled[j] = std::pow(h, n + 1) * f / nfact;
  }
  // Quadratic fit G(h) = a0 + b h + c h^2 through the three nodes.
  Eigen::Matrix3d v;
  Eigen::Vector3d g;
  for (int j = 0; j < 3; ++j) {
    v(j, 0) = 1;
    v(j, 1) = out.nodes[j];
    v(j, 2) = out.nodes[j] * out.nodes[j];
    g(j) = out.scaled[j];
  }
  Eigen::Vector3d coef = v.fullPivLu().solve(g);
  out.a0 = coef(0);
  out.a1 = n * coef(1);
  return out;
}

}  // namespace reeb
