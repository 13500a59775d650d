#include "lcq/subspace.hpp"

#include <stdexcept>

namespace lcq {

namespace {

// Full QR; returns Q (n x n) and the signs of R's diagonal for the first m columns.
void full_qr(const Mat& a, Mat& q, Vec& diag_sign) {
  Eigen::HouseholderQR<Mat> qr(a);
  q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  diag_sign = Vec::Ones(a.cols());
  for (int j = 0; j < a.cols(); ++j)
    if (r(j, j) < 0.0) diag_sign[j] = -1.0;
}

}  // namespace

Subspace subspace_from_columns(const Mat& columns) {
  const int n = static_cast<int>(columns.rows());
  const int m = static_cast<int>(columns.cols());
  if (m < 1 || m > n) throw std::invalid_argument("subspace_from_columns: need 1 <= m <= n");
  Mat q;
  Vec sign;
  full_qr(columns, q, sign);
  Subspace s;
  s.ambient_dim = n;
  s.dim = m;
  s.frame = q.leftCols(m);
  for (int j = 0; j < m; ++j) s.frame.col(j) *= sign[j];
  s.comp = q.rightCols(n - m);
  return s;
}

Subspace haar_subspace(int n, int m, rng::Stream stream) {
  if (m < 1 || m > n - 1) throw std::invalid_argument("haar_subspace: need 1 <= m <= n-1");
  for (int attempt = 0;; ++attempt) {
    Mat g(n, m);
    const rng::Stream s = stream.sub(static_cast<uint64_t>(attempt));
    uint64_t c = 0;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = s.normal(c++);
    if (g.colPivHouseholderQr().rank() == m) return subspace_from_columns(g);
    // Rank-deficient draws have probability zero; regenerate.
  }
}

}  // namespace lcq
