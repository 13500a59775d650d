#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>

namespace lcq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Exact shape data where it exists. Fiber-feasibility routines use it to
// solve projection membership in closed form (ellipsoids) or as linear
// interval arithmetic (mapped boxes) instead of generic search.
struct BodyStructure {
  enum class Kind { None, Ellipsoid, MappedBox } kind = Kind::None;
  Mat inv_map;      // x in body <=> |inv_map x| <= 1 (Ellipsoid)
                    //           <=> |(inv_map x)_j| <= half_widths_j (MappedBox)
  Vec half_widths;  // MappedBox only
};

// A star body with 0 in its interior, described by a radial oracle on the
// unit sphere. Test bodies (balls, boxes, ellipsoids) and Ball bodies K_p(f)
// both live behind this interface.
class StarBody {
 public:
  StarBody() = default;
  StarBody(int dim, std::function<double(const Vec&)> radial, double enclosing_radius,
           bool convex, std::string provenance, BodyStructure structure = {})
      : dim_(dim),
        radial_(std::move(radial)),
        enclosing_radius_(enclosing_radius),
        convex_(convex),
        provenance_(std::move(provenance)),
        structure_(std::move(structure)) {}

  int dim() const { return dim_; }
  double enclosing_radius() const { return enclosing_radius_; }
  bool known_convex() const { return convex_; }
  const std::string& provenance() const { return provenance_; }
  const BodyStructure& structure() const { return structure_; }

  // rho(xi) for a unit direction xi.
  double radial(const Vec& xi) const {
    if (xi.size() != dim_) throw std::invalid_argument("StarBody: dimension mismatch");
    return radial_(xi);
  }

  // Minkowski gauge |x| / rho(x/|x|); 0 at the origin. Membership is gauge <= 1.
  double gauge(const Vec& x) const {
    const double r = x.norm();
    if (r == 0.0) return 0.0;
    const double rho = radial(x / r);
    if (rho <= 0.0) return std::numeric_limits<double>::infinity();
    return r / rho;
  }

  bool contains(const Vec& x) const { return gauge(x) <= 1.0; }

 private:
  int dim_ = 0;
  std::function<double(const Vec&)> radial_;
  double enclosing_radius_ = 0.0;
  bool convex_ = false;
  std::string provenance_;
  BodyStructure structure_;
};

StarBody make_ball(int dim, double radius = 1.0);
StarBody make_box(const Vec& half_widths);
// Image M(B_2^n) of the unit ball under an invertible matrix.
StarBody make_ellipsoid(const Mat& map);
// Image T(K) of a star body under an invertible matrix.
StarBody make_linear_image_body(const StarBody& body, const Mat& map);
// Intersection, as a radial-minimum oracle.
StarBody intersect_bodies(const StarBody& a, const StarBody& b);

// Exact volume where the provenance admits one (ball, box, ellipsoid).
double analytic_volume(const StarBody& body);

}  // namespace lcq
