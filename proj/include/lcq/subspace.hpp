#pragma once

#include <Eigen/Dense>

#include "lcq/rng.hpp"

namespace lcq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// An element of the Grassmannian G_{n,m}, stored as an orthonormal n x m
// frame together with an orthonormal frame of the orthogonal complement.
struct Subspace {
  int ambient_dim = 0;
  int dim = 0;
  Mat frame;  // n x m, orthonormal columns
  Mat comp;   // n x (n-m), orthonormal columns spanning the complement

  // The orthogonal complement as a Subspace.
  Subspace complement() const { return Subspace{ambient_dim, ambient_dim - dim, comp, frame}; }

  Vec lift(const Vec& z) const { return frame * z; }          // E-coords -> R^n
  Vec coords(const Vec& x) const { return frame.transpose() * x; }  // R^n -> E-coords
};

// Build a subspace from any full-rank n x m matrix by orthonormalization.
Subspace subspace_from_columns(const Mat& columns);

// Haar-distributed subspace: QR of an n x m standard Gaussian matrix with the
// sign convention that makes Q Haar on the Stiefel manifold.
Subspace haar_subspace(int n, int m, rng::Stream stream);

}  // namespace lcq
