#pragma once

// The invariant quotient z -> t(Z) J Z, numeric ranks, the isotropic radical
// L(z)^0 of the column span, the closed-orbit test, and the degeneration of a
// tube point onto the closed orbit in its orbit closure.

#include "ltk/lorentz_group.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ltk {

class GramMatrix {
 public:
  explicit GramMatrix(CMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw DimensionError("Gram matrix must be square");
  }
  int copies() const { return static_cast<int>(m_.rows()); }
  const CMatrix& entries() const { return m_; }
  double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

 private:
  CMatrix m_;
};

// Entries z_k . z_j. Symmetric by construction.
inline GramMatrix gram_quotient(const ConfigPoint& z) {
  const CMatrix& m = z.matrix();
  CMatrix jm = m;
  jm.bottomRows(m.rows() - 1) *= -1.0;
  CMatrix g = m.transpose() * jm;
  // Symmetrize the round-off from the two triangle computations.
  g = 0.5 * (g + g.transpose()).eval();
  return GramMatrix(std::move(g));
}

struct RankInfo {
  int rank = 0;
  double threshold = 0.0;
  // A singular value lies within one decade of the threshold.
  bool warning = false;
  RVector singular_values;
};

// Singular values s > max(rel_tol * s_max, abs_tol) count.
inline RankInfo numeric_rank_info(const CMatrix& m, const Tolerance& tol = {}) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<CMatrix> svd(m);
  info.singular_values = svd.singularValues();
  const double smax = info.singular_values.size() ? info.singular_values(0) : 0.0;
  info.threshold = std::max(tol.rel_tol * smax, tol.abs_tol);
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    const double s = info.singular_values(i);
    if (s > info.threshold) {
      ++info.rank;
      if (s < 10.0 * info.threshold) info.warning = true;
    } else if (s > 0.1 * info.threshold) {
      info.warning = true;
    }
  }
  return info;
}

inline int numeric_rank(const CMatrix& m, const Tolerance& tol = {}) {
  return numeric_rank_info(m, tol).rank;
}

inline int span_dimension(const ConfigPoint& z, const Tolerance& tol = {}) {
  return numeric_rank(z.matrix(), tol);
}

struct RadicalResult {
  // Columns form a Euclidean-orthonormal basis of L(z)^0.
  CMatrix basis;
  int span = 0;
  int gram_rank = 0;
  bool warning = false;

  int dimension() const { return static_cast<int>(basis.cols()); }
};

// B = orthonormal basis of L(z) from the SVD of Z; K = the smallest right
// singular vectors of the restricted Gram t(B) J B; radical = B K. The number
// of kernel vectors is span - rank(gram_quotient(z)), so one tolerance
// governs both sides of the closed-orbit equality.
inline RadicalResult radical_basis_info(const ConfigPoint& z, const Tolerance& tol = {}) {
  RadicalResult out;
  const CMatrix& m = z.matrix();
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  RankInfo span_info = numeric_rank_info(m, tol);
  RankInfo gram_info = numeric_rank_info(gram_quotient(z).entries(), tol);
  out.span = span_info.rank;
  out.gram_rank = gram_info.rank;
  out.warning = span_info.warning || gram_info.warning;
  int k = out.span - out.gram_rank;
  if (k < 0) {
    // The Gram rank cannot exceed the span dimension in exact arithmetic.
    out.warning = true;
    k = 0;
  }
  const Eigen::Index d = m.rows();
  if (k == 0 || out.span == 0) {
    out.basis = CMatrix(d, 0);
    return out;
  }
  const CMatrix b = svd.matrixU().leftCols(out.span);
  CMatrix jb = b;
  jb.bottomRows(d - 1) *= -1.0;
  const CMatrix restricted = b.transpose() * jb;
  Eigen::JacobiSVD<CMatrix> rsvd(restricted, Eigen::ComputeFullV);
  const CMatrix kernel = rsvd.matrixV().rightCols(k);
  out.basis = b * kernel;
  // Re-orthonormalize against accumulated round-off.
  Eigen::HouseholderQR<CMatrix> qr(out.basis);
  out.basis = qr.householderQ() * CMatrix::Identity(d, k);
  return out;
}

inline std::vector<MinkowskiVector> radical_basis(const ConfigPoint& z, const Tolerance& tol = {}) {
  const RadicalResult r = radical_basis_info(z, tol);
  std::vector<MinkowskiVector> out;
  for (Eigen::Index j = 0; j < r.basis.cols(); ++j) out.emplace_back(CVector(r.basis.col(j)));
  return out;
}

struct ClosedOrbitVerdict {
  bool closed = true;
  int span = 0;
  int gram_rank = 0;
  bool warning = false;

  explicit operator bool() const { return closed; }
};

inline ClosedOrbitVerdict is_orbit_closed(const ConfigPoint& z, const Tolerance& tol = {}) {
  const RankInfo span_info = numeric_rank_info(z.matrix(), tol);
  const RankInfo gram_info = numeric_rank_info(gram_quotient(z).entries(), tol);
  ClosedOrbitVerdict v;
  v.span = span_info.rank;
  v.gram_rank = gram_info.rank;
  v.closed = v.span == v.gram_rank;
  v.warning = span_info.warning || gram_info.warning;
  return v;
}

inline constexpr double kPairingConditionCap = 1e12;

struct IsotropicSplit {
  CMatrix radical;      // (1+n) x k, orthonormal columns spanning L(z)^0
  ConfigPoint u_part;   // columns in W
  ConfigPoint omega_part;  // columns in L(z)^0
  double pairing_condition = 1.0;
  bool warning = false;

  int radical_dimension() const { return static_cast<int>(radical.cols()); }
};

// z_j = u_j + omega_j with omega_j in L(z)^0 and u_j Lorentz-orthogonal to
// L(z)^0 and its conjugate. Needs the Hermitian pairing r_l . conj(r_k) on
// the radical to be nondegenerate, which holds on the tube.
inline IsotropicSplit isotropic_split(const ConfigPoint& z, const Tolerance& tol = {}) {
  const RadicalResult rad = radical_basis_info(z, tol);
  const Eigen::Index k = rad.basis.cols();
  const Eigen::Index d = z.matrix().rows();
  const Eigen::Index cols = z.matrix().cols();
  if (k == 0) {
    return IsotropicSplit{rad.basis, z, ConfigPoint(CMatrix::Zero(d, cols)), 1.0, rad.warning};
  }
  const CMatrix& r = rad.basis;
  const CMatrix rbar = r.conjugate();
  CMatrix jrbar = rbar;
  jrbar.bottomRows(d - 1) *= -1.0;
  // pairing(a, b) = r_b . conj(r_a): row index is the orthogonality equation.
  const CMatrix pairing = jrbar.transpose() * r;
  Eigen::JacobiSVD<CMatrix> psvd(pairing);
  const RVector sv = psvd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                              : std::numeric_limits<double>::infinity();
  if (!(cond <= kPairingConditionCap)) {
    throw DegenerateInputError(
        "isotropic_split: the pairing w . conj(v) is degenerate on the radical (condition " +
        std::to_string(cond) +
        "); nondegeneracy of L(z)^0 + conj(L(z)^0) is only guaranteed on the future tube");
  }
  // rhs(a, j) = z_j . conj(r_a)
  const CMatrix rhs = jrbar.transpose() * z.matrix();
  const CMatrix coeffs = pairing.fullPivLu().solve(rhs);
  const CMatrix omega = r * coeffs;
  const CMatrix u = z.matrix() - omega;
  return IsotropicSplit{r, ConfigPoint(u), ConfigPoint(omega), cond, rad.warning};
}

// Columns u_j + t omega_j: the action of gamma(t) on the columns of z.
inline ConfigPoint gamma_scale(const IsotropicSplit& split, Complex t) {
  return ConfigPoint(split.u_part.matrix() + t * split.omega_part.matrix());
}

inline ConfigPoint closed_orbit_representative(const ConfigPoint& z, const Tolerance& tol = {}) {
  return isotropic_split(z, tol).u_part;
}

}  // namespace ltk
