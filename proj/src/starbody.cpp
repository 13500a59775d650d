#include "lcq/starbody.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "lcq/constants.hpp"

namespace lcq {

StarBody make_ball(int dim, double radius) {
  if (dim < 1 || radius <= 0.0) throw std::invalid_argument("make_ball: bad arguments");
  BodyStructure st;
  st.kind = BodyStructure::Kind::Ellipsoid;
  st.inv_map = Mat::Identity(dim, dim) / radius;
  return StarBody(
      dim, [radius](const Vec&) { return radius; }, radius, true, "euclidean-ball", st);
}

StarBody make_box(const Vec& half_widths) {
  const int n = static_cast<int>(half_widths.size());
  if (n < 1 || half_widths.minCoeff() <= 0.0)
    throw std::invalid_argument("make_box: half widths must be positive");
  auto h = std::make_shared<Vec>(half_widths);
  auto radial = [h](const Vec& xi) {
    double rho = std::numeric_limits<double>::infinity();
    for (int i = 0; i < xi.size(); ++i) {
      const double a = std::fabs(xi[i]);
      if (a > 0.0) rho = std::min(rho, (*h)[i] / a);
    }
    return rho;
  };
  BodyStructure st;
  st.kind = BodyStructure::Kind::MappedBox;
  st.inv_map = Mat::Identity(n, n);
  st.half_widths = half_widths;
  return StarBody(n, radial, half_widths.norm(), true, "box", st);
}

StarBody make_ellipsoid(const Mat& map) {
  return make_linear_image_body(make_ball(static_cast<int>(map.rows())), map);
}

StarBody make_linear_image_body(const StarBody& body, const Mat& map) {
  const int n = body.dim();
  if (map.rows() != n || map.cols() != n)
    throw std::invalid_argument("make_linear_image_body: map must be n x n");
  Eigen::FullPivLU<Mat> lu(map);
  if (!lu.isInvertible()) throw std::invalid_argument("make_linear_image_body: singular map");
  auto inv = std::make_shared<Mat>(lu.inverse());
  auto base = std::make_shared<StarBody>(body);
  // rho_{T K}(xi) = rho_K(T^{-1} xi / |T^{-1} xi|) / |T^{-1} xi|.
  auto radial = [inv, base](const Vec& xi) {
    const Vec y = (*inv) * xi;
    const double ny = y.norm();
    if (ny == 0.0) return std::numeric_limits<double>::infinity();
    return base->radial(y / ny) / ny;
  };
  const double opnorm = map.jacobiSvd().singularValues()(0);
  BodyStructure st = body.structure();
  if (st.kind != BodyStructure::Kind::None) st.inv_map = st.inv_map * (*inv);
  const std::string prov =
      body.provenance() == "euclidean-ball" ? "ellipsoid" : "linear-image:" + body.provenance();
  return StarBody(n, radial, opnorm * body.enclosing_radius(), body.known_convex(), prov, st);
}

StarBody intersect_bodies(const StarBody& a, const StarBody& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("intersect_bodies: dimension mismatch");
  auto pa = std::make_shared<StarBody>(a);
  auto pb = std::make_shared<StarBody>(b);
  auto radial = [pa, pb](const Vec& xi) { return std::min(pa->radial(xi), pb->radial(xi)); };
  return StarBody(a.dim(), radial, std::min(a.enclosing_radius(), b.enclosing_radius()),
                  a.known_convex() && b.known_convex(), "intersection");
}

double analytic_volume(const StarBody& body) {
  const int n = body.dim();
  if (body.provenance() == "euclidean-ball") {
    Vec e1 = Vec::Zero(n);
    e1[0] = 1.0;
    return constants::omega(n) * std::pow(body.radial(e1), n);
  }
  if (body.provenance() == "box") {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
      Vec ei = Vec::Zero(n);
      ei[i] = 1.0;
      v *= 2.0 * body.radial(ei);
    }
    return v;
  }
  if (body.provenance() == "ellipsoid") {
    const Mat& u = body.structure().inv_map;
    return constants::omega(n) / std::fabs(u.determinant());
  }
  throw std::invalid_argument("analytic_volume: no closed form for provenance " + body.provenance());
}

}  // namespace lcq
