#include "dualcurve/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polyhedral.hpp"

namespace dualcurve {

namespace {

constexpr double kAngleTolerance = 1e-9;

double max_abs(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

bool normals_surround_origin(const std::vector<Direction>& normals) {
  std::vector<Vec> pts;
  pts.reserve(normals.size());
  for (const Direction& d : normals) pts.push_back(d.coords());
  const auto facets = detail::hull_facets(pts, HPolytope::kRankTolerance);
  if (facets.empty()) return false;
  return std::all_of(facets.begin(), facets.end(),
                     [](const detail::HullFacet& f) { return f.offset > HPolytope::kRankTolerance; });
}

}  // namespace

struct HPolytope::Data {
  int dim = 0;
  std::vector<Direction> normals;
  std::vector<double> offsets;
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> facet_ids;
  std::vector<bool> active;
  std::vector<double> areas;
  std::vector<std::optional<std::size_t>> antipodes;
  bool symmetric = false;
};

HPolytope::HPolytope(std::vector<Direction> normals, std::vector<double> offsets)
    : data_(build(std::move(normals), std::move(offsets), true)) {}

int HPolytope::dim() const { return data_->dim; }
std::size_t HPolytope::size() const { return data_->normals.size(); }
const std::vector<Direction>& HPolytope::normals() const { return data_->normals; }
const std::vector<double>& HPolytope::offsets() const { return data_->offsets; }
bool HPolytope::symmetric() const { return data_->symmetric; }
std::optional<std::size_t> HPolytope::antipode(std::size_t i) const { return data_->antipodes.at(i); }
const std::vector<Vec>& HPolytope::vertices() const { return data_->vertices; }
const std::vector<int>& HPolytope::facet_vertex_ids(std::size_t i) const { return data_->facet_ids.at(i); }
bool HPolytope::is_active(std::size_t i) const { return data_->active.at(i); }

std::size_t HPolytope::active_count() const {
  return static_cast<std::size_t>(std::count(data_->active.begin(), data_->active.end(), true));
}

std::vector<Vec> HPolytope::facet_points(std::size_t i) const {
  std::vector<Vec> pts;
  for (int id : facet_vertex_ids(i)) pts.push_back(data_->vertices[id]);
  return pts;
}

double HPolytope::facet_area(std::size_t i) const {
  if (dim() > 3) throw GeometryError(ErrorCode::UnsupportedDimension, "facet area is available for n <= 3 only");
  return data_->areas.at(i);
}

double HPolytope::volume() const {
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) v += offset(i) * facet_area(i);
  return v / dim();
}

HPolytope HPolytope::scaled(double factor) const {
  if (!(factor > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<double> h = offsets();
  for (double& x : h) x *= factor;
  return with_offsets(std::move(h));
}

HPolytope HPolytope::with_offsets(std::vector<double> offsets) const {
  HPolytope copy = *this;
  copy.data_ = build(normals(), std::move(offsets), false);
  return copy;
}

std::shared_ptr<const HPolytope::Data> HPolytope::build(std::vector<Direction> normals, std::vector<double> offsets,
                                                      bool check_bounded) {
  if (normals.empty()) throw GeometryError(ErrorCode::InvalidArgument, "polytope needs at least one halfspace");
  if (normals.size() != offsets.size()) {
    throw GeometryError(ErrorCode::InvalidArgument, "normals and offsets differ in length");
  }
  const int n = normals.front().dim();
  if (n < 2) throw GeometryError(ErrorCode::InvalidArgument, "dimension must be at least 2");
  for (const Direction& d : normals) {
    if (d.dim() != n) throw GeometryError(ErrorCode::InvalidArgument, "normals have mixed dimensions");
  }
  for (double h : offsets) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw GeometryError(ErrorCode::OriginNotInterior, "offsets must be positive: origin not interior");
    }
  }
  const std::size_t m = normals.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (normals[i].angle_to(normals[j]) < kAngleTolerance) {
        throw GeometryError(ErrorCode::InvalidArgument, "duplicate halfspace normals");
      }
    }
  }
  if (check_bounded && !normals_surround_origin(normals)) {
    throw GeometryError(ErrorCode::UnboundedBody, "unbounded body");
  }

  auto data = std::make_shared<HPolytope::Data>();
  data->dim = n;
  data->normals = std::move(normals);
  data->offsets = std::move(offsets);
  const double scale = max_abs(data->offsets);
  const double tol = HPolytope::kMergeTolerance * scale;

  data->vertices = detail::enumerate_vertices(data->normals, data->offsets, tol);
  data->facet_ids.resize(m);
  data->active.assign(m, false);
  data->areas.assign(m, 0.0);

  for (std::size_t i = 0; i < m; ++i) {
    const Vec& v = data->normals[i].coords();
    std::vector<int>& ids = data->facet_ids[i];
    for (std::size_t k = 0; k < data->vertices.size(); ++k) {
      if (std::abs(v.dot(data->vertices[k]) - data->offsets[i]) <= tol) ids.push_back(static_cast<int>(k));
    }
    if (n == 2) {
      const Eigen::Vector2d tangent(-v(1), v(0));
      std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        return tangent.dot(data->vertices[a]) < tangent.dot(data->vertices[b]);
      });
      if (ids.size() >= 2) {
        const double len = (data->vertices[ids.back()] - data->vertices[ids.front()]).norm();
        if (len > tol) {
          data->active[i] = true;
          data->areas[i] = len;
        }
      }
    } else if (n == 3) {
      const Eigen::Vector3d normal = v;
      Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
      for (int id : ids) centroid += Eigen::Vector3d(data->vertices[id]);
      if (!ids.empty()) centroid /= static_cast<double>(ids.size());
      const Mat frame = SmoothBody::tangent_frame(data->normals[i]);
      Eigen::Vector3d e1 = frame.col(0);
      Eigen::Vector3d e2 = normal.cross(e1);
      std::vector<double> angle(data->vertices.size(), 0.0);
      for (int id : ids) {
        const Eigen::Vector3d d = Eigen::Vector3d(data->vertices[id]) - centroid;
        angle[id] = std::atan2(d.dot(e2), d.dot(e1));
      }
      std::sort(ids.begin(), ids.end(), [&](int a, int b) { return angle[a] < angle[b]; });
      if (ids.size() >= 3) {
        double twice_area = 0.0;
        for (std::size_t k = 0; k < ids.size(); ++k) {
          const Eigen::Vector3d p = data->vertices[ids[k]];
          const Eigen::Vector3d q = data->vertices[ids[(k + 1) % ids.size()]];
          twice_area += p.cross(q).dot(normal);
        }
        const double area = 0.5 * std::abs(twice_area);
        if (area > tol * tol) {
          data->active[i] = true;
          data->areas[i] = area;
        }
      }
    } else {
      std::vector<Vec> pts;
      for (int id : ids) pts.push_back(data->vertices[id]);
      data->active[i] = detail::affine_rank(pts, tol) == n - 1;
    }
  }

  data->antipodes.assign(m, std::nullopt);
  bool symmetric = true;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && data->normals[i].angle_to(-data->normals[j]) < kAngleTolerance) {
        data->antipodes[i] = j;
        break;
      }
    }
    if (!data->antipodes[i] ||
        std::abs(data->offsets[i] - data->offsets[*data->antipodes[i]]) > 1e-12 * scale) {
      symmetric = false;
    }
  }
  data->symmetric = symmetric;
  return data;
}

// --- VPolytope ---------------------------------------------------------------

VPolytope::VPolytope(int dim, std::vector<Vec> points) : dim_(dim) {
  if (dim < 2) throw GeometryError(ErrorCode::InvalidArgument, "dimension must be at least 2");
  if (points.empty()) throw GeometryError(ErrorCode::InvalidArgument, "polytope needs vertices");
  double scale = 0.0;
  for (const Vec& p : points) {
    if (p.size() != dim) throw GeometryError(ErrorCode::InvalidArgument, "vertex has wrong dimension");
    if (!p.allFinite()) throw GeometryError(ErrorCode::InvalidArgument, "vertex is not finite");
    scale = std::max(scale, p.norm());
  }
  const double tol = HPolytope::kMergeTolerance * std::max(scale, 1e-300);
  const auto facets = detail::hull_facets(points, tol);
  if (facets.empty()) throw GeometryError(ErrorCode::OriginNotInterior, "origin not interior");
  for (const auto& f : facets) {
    if (!(f.offset > tol)) throw GeometryError(ErrorCode::OriginNotInterior, "origin not interior");
    facet_normals_.push_back(Direction::normalized(f.normal));
    facet_offsets_.push_back(f.offset);
  }
  std::vector<std::vector<int>> incident(points.size());
  for (std::size_t f = 0; f < facets.size(); ++f) {
    for (int id : facets[f].point_ids) incident[id].push_back(static_cast<int>(f));
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (static_cast<int>(incident[k].size()) < dim) continue;
    Mat N(static_cast<int>(incident[k].size()), dim);
    for (std::size_t r = 0; r < incident[k].size(); ++r) N.row(static_cast<int>(r)) = facets[incident[k][r]].normal;
    Eigen::FullPivLU<Mat> lu(N);
    lu.setThreshold(HPolytope::kRankTolerance);
    if (lu.rank() < dim) continue;
    const bool duplicate = std::any_of(vertices_.begin(), vertices_.end(),
                                       [&](const Vec& v) { return (v - points[k]).norm() <= tol; });
    if (!duplicate) vertices_.push_back(points[k]);
  }
}

HPolytope VPolytope::to_hpolytope() const { return HPolytope(facet_normals_, facet_offsets_); }

// --- SmoothBody --------------------------------------------------------------

SmoothBody::SmoothBody(Kind kind, std::vector<double> axes) : kind_(kind), axes_(std::move(axes)) {
  if (axes_.size() < 2) throw GeometryError(ErrorCode::InvalidArgument, "dimension must be at least 2");
  for (double a : axes_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw GeometryError(ErrorCode::InvalidArgument, "axes must be positive");
  }
}

SmoothBody SmoothBody::ball(int dim, double radius) {
  return SmoothBody(Kind::Ball, std::vector<double>(static_cast<std::size_t>(std::max(dim, 0)), radius));
}

SmoothBody SmoothBody::ellipsoid(std::vector<double> axes) { return SmoothBody(Kind::Ellipsoid, std::move(axes)); }

double SmoothBody::support(const Direction& v) const {
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) s += axes_[i] * axes_[i] * v[i] * v[i];
  return std::sqrt(s);
}

double SmoothBody::radial(const Direction& u) const {
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) s += u[i] * u[i] / (axes_[i] * axes_[i]);
  return 1.0 / std::sqrt(s);
}

Vec SmoothBody::gradient(const Direction& v) const {
  const double h = support(v);
  Vec g(dim());
  for (int i = 0; i < dim(); ++i) g(i) = axes_[i] * axes_[i] * v[i] / h;
  return g;
}

Mat SmoothBody::tangent_frame(const Direction& v) {
  const int n = v.dim();
  Eigen::HouseholderQR<Mat> qr(Mat(v.coords()));
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

Mat SmoothBody::covariant_hessian(const Direction& v) const {
  // Euclidean Hessian of H(x) = sqrt(x^T A x) restricted to the tangent space
  // equals h_ij + h delta_ij.
  const int n = dim();
  const double h = support(v);
  Vec av(n);
  Mat A = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = axes_[i] * axes_[i];
    av(i) = A(i, i) * v[i];
  }
  const Mat hess = A / h - av * av.transpose() / (h * h * h);
  const Mat E = tangent_frame(v);
  return E.transpose() * hess * E - h * Mat::Identity(n - 1, n - 1);
}

double SmoothBody::curvature_determinant(const Direction& v) const {
  const Mat m = covariant_hessian(v) + support(v) * Mat::Identity(dim() - 1, dim() - 1);
  return m.determinant();
}

SmoothBody SmoothBody::polar() const {
  std::vector<double> inv(axes_.size());
  std::transform(axes_.begin(), axes_.end(), inv.begin(), [](double a) { return 1.0 / a; });
  return SmoothBody(kind_, std::move(inv));
}

SmoothBody SmoothBody::scaled(double factor) const {
  if (!(factor > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<double> a = axes_;
  for (double& x : a) x *= factor;
  return SmoothBody(kind_, std::move(a));
}

// --- free functions ----------------------------------------------------------

int dim_of(const Body& body) {
  return std::visit([](const auto& b) { return b.dim(); }, body);
}

double support(const HPolytope& body, const Direction& v) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& x : body.vertices()) best = std::max(best, v.dot(x));
  return best;
}

double support(const VPolytope& body, const Direction& v) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& x : body.vertices()) best = std::max(best, v.dot(x));
  return best;
}

double support(const SmoothBody& body, const Direction& v) { return body.support(v); }

double support(const Body& body, const Direction& v) {
  return std::visit([&](const auto& b) { return support(b, v); }, body);
}

namespace {

double min_ratio(const std::vector<Direction>& normals, const std::vector<double>& offsets, const Direction& u) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double c = u.dot(normals[i]);
    if (c > 0.0) best = std::min(best, offsets[i] / c);
  }
  return best;
}

}  // namespace

double radial(const HPolytope& body, const Direction& u) { return min_ratio(body.normals(), body.offsets(), u); }

double radial(const VPolytope& body, const Direction& u) {
  return min_ratio(body.facet_normals(), body.facet_offsets(), u);
}

double radial(const SmoothBody& body, const Direction& u) { return body.radial(u); }

double radial(const Body& body, const Direction& u) {
  return std::visit([&](const auto& b) { return radial(b, u); }, body);
}

VPolytope polar(const HPolytope& body) {
  std::vector<Vec> pts;
  pts.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) pts.push_back(body.normal(i).coords() / body.offset(i));
  try {
    return VPolytope(body.dim(), std::move(pts));
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::OriginNotInterior) throw GeometryError(ErrorCode::PolarUndefined, "polar undefined");
    throw;
  }
}

HPolytope polar(const VPolytope& body) {
  std::vector<Direction> normals;
  std::vector<double> offsets;
  for (const Vec& x : body.vertices()) {
    const double r = x.norm();
    if (!(r > 0.0)) throw GeometryError(ErrorCode::PolarUndefined, "polar undefined");
    normals.push_back(Direction::normalized(x));
    offsets.push_back(1.0 / r);
  }
  return HPolytope(std::move(normals), std::move(offsets));
}

SmoothBody polar(const SmoothBody& body) { return body.polar(); }

HPolytope wulff_shape(const std::vector<Direction>& dirs, const std::vector<double>& h) {
  if (dirs.size() != h.size()) throw GeometryError(ErrorCode::InvalidArgument, "directions and values differ in length");
  try {
    return HPolytope(dirs, h);
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::UnboundedBody) throw GeometryError(ErrorCode::UnboundedWulffShape, "unbounded Wulff shape");
    throw;
  }
}

VPolytope convex_hull_of_radial(const std::vector<Direction>& dirs, const std::vector<double>& rho) {
  if (dirs.empty() || dirs.size() != rho.size()) {
    throw GeometryError(ErrorCode::InvalidArgument, "directions and values differ in length");
  }
  std::vector<Vec> pts;
  pts.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (!(rho[i] > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "radial values must be positive");
    pts.push_back(rho[i] * dirs[i].coords());
  }
  return VPolytope(dirs.front().dim(), std::move(pts));
}

PolarityCheck wulff_polar_identity_check(const std::vector<Direction>& dirs, const std::vector<double>& h) {
  const VPolytope lhs = polar(wulff_shape(dirs, h));
  std::vector<double> inv(h.size());
  std::transform(h.begin(), h.end(), inv.begin(), [](double x) { return 1.0 / x; });
  const VPolytope rhs = convex_hull_of_radial(dirs, inv);
  PolarityCheck check;
  check.max_discrepancy = hausdorff_distance(lhs.vertices(), rhs.vertices());
  check.holds = lhs.vertices().size() == rhs.vertices().size() && check.max_discrepancy <= 1e-9;
  return check;
}

double radial_sum_ball(const Body& body, double t, const Direction& u) {
  if (!(t >= 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "radial sum parameter must be nonnegative");
  return radial(body, u) + t;
}

double hausdorff_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    double worst = 0.0;
    for (const Vec& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& q : to) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

HPolytope intersect(const HPolytope& a, const HPolytope& b) {
  std::vector<Direction> normals = a.normals();
  std::vector<double> offsets = a.offsets();
  for (std::size_t j = 0; j < b.size(); ++j) {
    bool merged = false;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (normals[i].angle_to(b.normal(j)) < kAngleTolerance) {
        offsets[i] = std::min(offsets[i], b.offset(j));
        merged = true;
        break;
      }
    }
    if (!merged) {
      normals.push_back(b.normal(j));
      offsets.push_back(b.offset(j));
    }
  }
  return HPolytope(std::move(normals), std::move(offsets));
}

HPolytope hull_of_union(const HPolytope& a, const HPolytope& b) {
  std::vector<Vec> pts = a.vertices();
  pts.insert(pts.end(), b.vertices().begin(), b.vertices().end());
  return VPolytope(a.dim(), std::move(pts)).to_hpolytope();
}

}  // namespace dualcurve
