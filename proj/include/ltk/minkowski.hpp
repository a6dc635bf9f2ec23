#pragma once

// Minkowski space R^{1+n} / C^{1+n} with the bilinear Lorentz form
// x.y = x0 y0 - x1 y1 - ... - xn yn, the forward cone, the future tube
// and the boost that moves a cone vector onto the e0 axis.

#include "ltk/types.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ltk {

// Lorentz product of two coordinate vectors. Bilinear: no conjugation.
template <typename A, typename B>
auto lorentz_dot(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& w) {
  const Eigen::Index d = x.size();
  return x(0) * w(0) - x.tail(d - 1).cwiseProduct(w.tail(d - 1)).sum();
}

template <typename A>
auto lorentz_eta(const Eigen::MatrixBase<A>& x) {
  return lorentz_dot(x, x);
}

// J = diag(1, -1, ..., -1) of size 1+n.
inline RMatrix minkowski_metric(int n) {
  RVector d = RVector::Constant(n + 1, -1.0);
  d(0) = 1.0;
  return d.asDiagonal();
}

// Applies J to a vector without forming the matrix.
template <typename A>
auto apply_metric(const Eigen::MatrixBase<A>& x) {
  typename A::PlainObject out = x;
  out.tail(out.size() - 1) *= -1.0;
  return out;
}

class MinkowskiVector {
 public:
  explicit MinkowskiVector(CVector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
      throw DimensionError("Minkowski vectors need 1+n coordinates with n >= 1");
    }
    if (!coords_.allFinite()) {
      throw DomainError("Minkowski vector has non-finite entries");
    }
  }

  MinkowskiVector(const RVector& re, const RVector& im)
      : MinkowskiVector(combine(re, im)) {}

  static MinkowskiVector real(const RVector& re) {
    return MinkowskiVector(re, RVector::Zero(re.size()));
  }

  // e_k in C^{1+n}.
  static MinkowskiVector basis(int n, int k) {
    CVector v = CVector::Zero(n + 1);
    v(k) = 1.0;
    return MinkowskiVector(std::move(v));
  }

  int dim_n() const { return static_cast<int>(coords_.size()) - 1; }
  const CVector& coords() const { return coords_; }
  RVector re() const { return coords_.real(); }
  RVector im() const { return coords_.imag(); }
  bool is_real() const { return (coords_.imag().array() == 0.0).all(); }

 private:
  static CVector combine(const RVector& re, const RVector& im) {
    if (re.size() != im.size()) {
      throw DimensionError("real and imaginary parts differ in length");
    }
    CVector v(re.size());
    v.real() = re;
    v.imag() = im;
    return v;
  }

  CVector coords_;
};

// z = (z_1, ..., z_N), stored as the (1+n) x N matrix of columns.
class ConfigPoint {
 public:
  explicit ConfigPoint(CMatrix columns) : m_(std::move(columns)) {
    if (m_.rows() < 2) {
      throw DimensionError("configuration rows must be 1+n with n >= 1");
    }
    if (m_.cols() < 1) {
      throw DimensionError("configuration needs N >= 1 columns");
    }
    if (!m_.allFinite()) {
      throw DomainError("configuration has non-finite entries");
    }
  }

  ConfigPoint(const RMatrix& re, const RMatrix& im) : ConfigPoint(combine(re, im)) {}

  static ConfigPoint from_columns(const std::vector<MinkowskiVector>& cols) {
    if (cols.empty()) {
      throw DimensionError("configuration needs N >= 1 columns");
    }
    CMatrix m(cols.front().coords().size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim_n() != cols.front().dim_n()) {
        throw DimensionError("columns disagree on n");
      }
      m.col(static_cast<Eigen::Index>(j)) = cols[j].coords();
    }
    return ConfigPoint(std::move(m));
  }

  int dim_n() const { return static_cast<int>(m_.rows()) - 1; }
  int copies() const { return static_cast<int>(m_.cols()); }
  const CMatrix& matrix() const { return m_; }
  MinkowskiVector column(int j) const { return MinkowskiVector(CVector(m_.col(j))); }
  RMatrix re() const { return m_.real(); }
  RMatrix im() const { return m_.imag(); }

 private:
  static CMatrix combine(const RMatrix& re, const RMatrix& im) {
    if (re.rows() != im.rows() || re.cols() != im.cols()) {
      throw DimensionError("real and imaginary parts differ in shape");
    }
    CMatrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
  }

  CMatrix m_;
};

inline Complex lorentz_product(const MinkowskiVector& x, const MinkowskiVector& w) {
  if (x.dim_n() != w.dim_n()) {
    throw DimensionError("lorentz_product: dimension mismatch (" + std::to_string(x.dim_n()) +
                         " vs " + std::to_string(w.dim_n()) + ")");
  }
  return lorentz_dot(x.coords(), w.coords());
}

inline Complex eta(const MinkowskiVector& v) { return lorentz_eta(v.coords()); }

namespace detail {

template <typename A>
bool real_in_cone(const Eigen::MatrixBase<A>& y, const Tolerance& tol) {
  return lorentz_eta(y) > tol.abs_tol && y(0) > tol.abs_tol;
}

}  // namespace detail

// Strict interior test; the light-cone boundary counts as outside.
inline bool in_forward_cone(const MinkowskiVector& y, const Tolerance& tol = {}) {
  if (!y.is_real()) {
    throw DomainError("in_forward_cone expects a real vector");
  }
  return detail::real_in_cone(y.re(), tol);
}

inline bool in_future_tube(const ConfigPoint& z, const Tolerance& tol = {}) {
  const RMatrix y = z.im();
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    if (!detail::real_in_cone(y.col(j), tol)) return false;
  }
  return true;
}

namespace detail {

inline void require_real(const MinkowskiVector& v, const char* what) {
  if (!v.is_real()) throw DomainError(std::string(what) + " expects real vectors");
}

}  // namespace detail

// (x.y)^2 - eta(x) eta(y); non-negative whenever eta(y) > 0.
inline double cauchy_schwarz_defect(const MinkowskiVector& x, const MinkowskiVector& y) {
  detail::require_real(x, "cauchy_schwarz_defect");
  detail::require_real(y, "cauchy_schwarz_defect");
  if (x.dim_n() != y.dim_n()) throw DimensionError("cauchy_schwarz_defect: dimension mismatch");
  const RVector xr = x.re();
  const RVector yr = y.re();
  const double ey = lorentz_eta(yr);
  if (!(ey > 0.0)) {
    throw DomainError("cauchy_schwarz_defect requires eta(y) > 0");
  }
  const double xy = lorentz_dot(xr, yr);
  return xy * xy - lorentz_eta(xr) * ey;
}

// x - (x.y / eta(y)) y: Lorentz-orthogonal to y, hence eta <= 0.
inline MinkowskiVector lorentz_projection(const MinkowskiVector& x, const MinkowskiVector& y) {
  detail::require_real(x, "lorentz_projection");
  detail::require_real(y, "lorentz_projection");
  if (x.dim_n() != y.dim_n()) throw DimensionError("lorentz_projection: dimension mismatch");
  const RVector xr = x.re();
  const RVector yr = y.re();
  const double ey = lorentz_eta(yr);
  if (!(ey > 0.0)) throw DomainError("lorentz_projection requires eta(y) > 0");
  return MinkowskiVector::real(xr - (lorentz_dot(xr, yr) / ey) * yr);
}

// Pure boost g in SO(1,n)^0 with g y = sqrt(eta(y)) e0. Identity when the
// spatial part of y vanishes.
inline RMatrix cone_boost_matrix(const RVector& y, const Tolerance& tol = {}) {
  if (!detail::real_in_cone(y, tol)) {
    throw DomainError("cone_boost: vector is not in the open forward cone");
  }
  const Eigen::Index d = y.size();
  RMatrix g = RMatrix::Identity(d, d);
  const RVector s = y.tail(d - 1);
  const double r = s.norm();
  if (r == 0.0) return g;
  const double m = std::sqrt(lorentz_eta(y));
  const double ch = y(0) / m;
  const double sh = r / m;
  const RVector u = s / r;
  g(0, 0) = ch;
  g.block(0, 1, 1, d - 1) = -sh * u.transpose();
  g.block(1, 0, d - 1, 1) = -sh * u;
  g.block(1, 1, d - 1, d - 1) += (ch - 1.0) * u * u.transpose();
  return g;
}

}  // namespace ltk
