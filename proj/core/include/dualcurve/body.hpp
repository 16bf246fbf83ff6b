#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "dualcurve/direction.hpp"

namespace dualcurve {

/*!
 * Convex polytope given as an intersection of halfspaces {x : x.v_i <= h_i}.
 *
 * The origin is strictly interior (all offsets positive) and the normals are
 * not contained in a closed hemisphere, so the body is bounded. Halfspaces
 * that do not support a full facet are kept and reported as inactive; their
 * index is stable so that callers can keep a fixed direction table.
 *
 * Vertices and facet incidences are enumerated once at construction by
 * solving every n-subset of the bounding hyperplanes. That is quadratic-ish
 * in the number of halfspaces and intended for n in {2, 3} and a few dozen
 * facets.
 */
class HPolytope {
 public:
  static constexpr double kRankTolerance = 1e-10;
  static constexpr double kMergeTolerance = 1e-9;

  HPolytope(std::vector<Direction> normals, std::vector<double> offsets);

  int dim() const;
  std::size_t size() const;
  const std::vector<Direction>& normals() const;
  const std::vector<double>& offsets() const;
  const Direction& normal(std::size_t i) const { return normals()[i]; }
  double offset(std::size_t i) const { return offsets()[i]; }

  //! True when normals are closed under negation with equal offsets.
  bool symmetric() const;
  //! Index of the halfspace with normal -v_i, if present.
  std::optional<std::size_t> antipode(std::size_t i) const;

  const std::vector<Vec>& vertices() const;

  /// Indices into vertices() lying on hyperplane i. For n = 3 they are in
  /// counter-clockwise order seen from outside; for n = 2 the two endpoints
  /// are ordered counter-clockwise.
  const std::vector<int>& facet_vertex_ids(std::size_t i) const;
  std::vector<Vec> facet_points(std::size_t i) const;

  //! Whether halfspace i supports an (n-1)-dimensional facet.
  bool is_active(std::size_t i) const;
  std::size_t active_count() const;

  /// (n-1)-volume of facet i; zero for inactive halfspaces. n in {2, 3}.
  double facet_area(std::size_t i) const;
  double volume() const;

  HPolytope scaled(double factor) const;
  HPolytope with_offsets(std::vector<double> offsets) const;

 private:
  struct Data;
  static std::shared_ptr<const Data> build(std::vector<Direction> normals, std::vector<double> offsets,
                                           bool check_bounded);
  std::shared_ptr<const Data> data_;
};

/*!
 * Convex polytope given as the hull of its vertices. Construction prunes
 * non-extreme points and requires the origin in the interior.
 */
class VPolytope {
 public:
  VPolytope(int dim, std::vector<Vec> points);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }

  //! Outer unit normals and offsets of the facets of the hull.
  const std::vector<Direction>& facet_normals() const { return facet_normals_; }
  const std::vector<double>& facet_offsets() const { return facet_offsets_; }

  HPolytope to_hpolytope() const;

 private:
  int dim_;
  std::vector<Vec> vertices_;
  std::vector<Direction> facet_normals_;
  std::vector<double> facet_offsets_;
};

/// Ball or axis-aligned ellipsoid centred at the origin, with closed-form
/// support function, radial function and derivatives.
class SmoothBody {
 public:
  enum class Kind { Ball, Ellipsoid };

  static SmoothBody ball(int dim, double radius);
  static SmoothBody ellipsoid(std::vector<double> axes);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<double>& axes() const { return axes_; }

  double support(const Direction& v) const;
  double radial(const Direction& u) const;

  /// Euclidean gradient of the 1-homogeneous extension of h at v; this is
  /// the boundary point whose outer normal is v.
  Vec gradient(const Direction& v) const;

  /// Orthonormal basis of the tangent space of the sphere at v (columns).
  static Mat tangent_frame(const Direction& v);

  /// Covariant Hessian (h_ij) of h on the sphere in tangent_frame(v).
  Mat covariant_hessian(const Direction& v) const;

  /// det(h_ij + h delta_ij): product of the principal radii of curvature.
  double curvature_determinant(const Direction& v) const;

  SmoothBody polar() const;
  SmoothBody scaled(double factor) const;

 private:
  SmoothBody(Kind kind, std::vector<double> axes);
  Kind kind_;
  std::vector<double> axes_;
};

using Body = std::variant<HPolytope, VPolytope, SmoothBody>;

int dim_of(const Body& body);

double support(const HPolytope& body, const Direction& v);
double support(const VPolytope& body, const Direction& v);
double support(const SmoothBody& body, const Direction& v);
double support(const Body& body, const Direction& v);

double radial(const HPolytope& body, const Direction& u);
double radial(const VPolytope& body, const Direction& u);
double radial(const SmoothBody& body, const Direction& u);
double radial(const Body& body, const Direction& u);

VPolytope polar(const HPolytope& body);
HPolytope polar(const VPolytope& body);
SmoothBody polar(const SmoothBody& body);

/// The Wulff shape {x : x.v <= h(v) for v in dirs}. Redundant halfspaces are
/// retained and flagged inactive.
HPolytope wulff_shape(const std::vector<Direction>& dirs, const std::vector<double>& h);

/// conv{rho(u) u : u in dirs}.
VPolytope convex_hull_of_radial(const std::vector<Direction>& dirs, const std::vector<double>& rho);

struct PolarityCheck {
  bool holds = false;
  double max_discrepancy = 0.0;
};

/// Compares the polar of the Wulff shape of h with the convex hull generated
/// by 1/h, as vertex sets. holds is true when they agree within 1e-9.
PolarityCheck wulff_polar_identity_check(const std::vector<Direction>& dirs, const std::vector<double>& h);

/// Radial function of the radial sum of the body with tB.
double radial_sum_ball(const Body& body, double t, const Direction& u);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<Vec>& a, const std::vector<Vec>& b);

/// Intersection of two H-polytopes; halfspaces with equal normals keep the
/// smaller offset.
HPolytope intersect(const HPolytope& a, const HPolytope& b);

/// Convex hull of the union of two polytopes as an H-polytope.
HPolytope hull_of_union(const HPolytope& a, const HPolytope& b);

}  // namespace dualcurve
