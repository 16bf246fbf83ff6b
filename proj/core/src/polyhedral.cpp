#include "polyhedral.hpp"

#include <algorithm>
#include <cmath>

namespace dualcurve::detail {

namespace {

constexpr double kRankTolerance = 1e-10;

void subsets_rec(int m, int k, int start, std::vector<int>& current,
                 const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(current.size()) == k) {
    visit(current);
    return;
  }
  const int need = k - static_cast<int>(current.size());
  for (int i = start; i <= m - need; ++i) {
    current.push_back(i);
    subsets_rec(m, k, i + 1, current, visit);
    current.pop_back();
  }
}

}  // namespace

void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (k < 0 || k > m) return;
  std::vector<int> current;
  current.reserve(k);
  subsets_rec(m, k, 0, current, visit);
}

bool solve_hyperplanes(const std::vector<const Vec*>& rows, const std::vector<double>& rhs, Vec& x) {
  const int n = static_cast<int>(rows.size());
  if (n == 2) {
    const Vec& a = *rows[0];
    const Vec& b = *rows[1];
    const double det = a(0) * b(1) - a(1) * b(0);
    if (std::abs(det) < kRankTolerance) return false;
    x.resize(2);
    x(0) = (rhs[0] * b(1) - rhs[1] * a(1)) / det;
    x(1) = (rhs[1] * a(0) - rhs[0] * b(0)) / det;
    return true;
  }
  if (n == 3) {
    const Eigen::Vector3d a = *rows[0], b = *rows[1], c = *rows[2];
    const Eigen::Vector3d bc = b.cross(c), ca = c.cross(a), ab = a.cross(b);
    const double det = a.dot(bc);
    if (std::abs(det) < kRankTolerance) return false;
    x = (rhs[0] * bc + rhs[1] * ca + rhs[2] * ab) / det;
    return true;
  }
  Mat A(n, n);
  Vec b(n);
  for (int i = 0; i < n; ++i) {
    A.row(i) = rows[i]->transpose();
    b(i) = rhs[i];
  }
  Eigen::FullPivLU<Mat> lu(A);
  lu.setThreshold(kRankTolerance);
  if (lu.rank() < n) return false;
  x = lu.solve(b);
  return true;
}

bool hyperplane_normal(const std::vector<const Vec*>& points, Vec& normal) {
  const int n = static_cast<int>(points.size());
  const Vec& p0 = *points[0];
  if (n == 2) {
    const Vec d = *points[1] - p0;
    const double len = d.norm();
    if (len == 0.0) return false;
    normal.resize(2);
    normal << d(1) / len, -d(0) / len;
    return true;
  }
  if (n == 3) {
    const Eigen::Vector3d d1 = *points[1] - p0, d2 = *points[2] - p0;
    const Eigen::Vector3d c = d1.cross(d2);
    const double scale = d1.norm() * d2.norm();
    if (scale == 0.0 || c.norm() < kRankTolerance * scale) return false;
    normal = c.normalized();
    return true;
  }
  Mat D(n - 1, n);
  for (int k = 1; k < n; ++k) D.row(k - 1) = (*points[k] - p0).transpose();
  Eigen::FullPivLU<Mat> lu(D);
  lu.setThreshold(kRankTolerance);
  if (lu.rank() < n - 1) return false;
  Mat kernel = lu.kernel();
  normal = kernel.col(0).normalized();
  return true;
}

std::vector<Vec> enumerate_vertices(const std::vector<Direction>& normals, const std::vector<double>& offsets,
                                    double tol) {
  const int m = static_cast<int>(normals.size());
  const int n = normals.front().dim();
  std::vector<Vec> vertices;
  std::vector<const Vec*> rows(n);
  std::vector<double> rhs(n);
  Vec x;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    for (int k = 0; k < n; ++k) {
      rows[k] = &normals[idx[k]].coords();
      rhs[k] = offsets[idx[k]];
    }
    if (!solve_hyperplanes(rows, rhs, x)) return;
    for (int j = 0; j < m; ++j) {
      if (normals[j].dot(x) - offsets[j] > tol) return;
    }
    for (const Vec& v : vertices) {
      if ((v - x).norm() <= tol) return;
    }
    vertices.push_back(x);
  });
  return vertices;
}

std::vector<HullFacet> hull_facets(const std::vector<Vec>& points, double tol) {
  std::vector<HullFacet> facets;
  if (points.empty()) return facets;
  const int n = static_cast<int>(points.front().size());
  const int m = static_cast<int>(points.size());
  if (m < n + 1 || affine_rank(points, tol) < n) return facets;

  std::vector<const Vec*> subset(n);
  Vec normal;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    for (int k = 0; k < n; ++k) subset[k] = &points[idx[k]];
    if (!hyperplane_normal(subset, normal)) return;
    double offset = normal.dot(points[idx[0]]);
    bool below = true, above = true;
    for (const Vec& p : points) {
      const double s = normal.dot(p) - offset;
      if (s > tol) below = false;
      if (s < -tol) above = false;
      if (!below && !above) return;
    }
    if (!below) {
      normal = -normal;
      offset = -offset;
    }
    for (const HullFacet& f : facets) {
      if ((f.normal - normal).norm() <= tol) return;
    }
    HullFacet facet{normal, offset, {}};
    for (int j = 0; j < m; ++j) {
      if (std::abs(normal.dot(points[j]) - offset) <= tol) facet.point_ids.push_back(j);
    }
    facets.push_back(std::move(facet));
  });
  return facets;
}

int affine_rank(const std::vector<Vec>& points, double tol) {
  if (points.size() < 2) return 0;
  const int n = static_cast<int>(points.front().size());
  Mat D(static_cast<int>(points.size()) - 1, n);
  for (std::size_t k = 1; k < points.size(); ++k) D.row(static_cast<int>(k) - 1) = (points[k] - points[0]).transpose();
  Eigen::JacobiSVD<Mat> svd(D);
  const Vec& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > tol) ++rank;
  }
  return rank;
}

}  // namespace dualcurve::detail
