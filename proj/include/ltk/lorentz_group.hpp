#pragma once

// Elements of O/SO(1,n) over R and C, the Lie algebra so(1,n), the matrix
// exponential, and the block-diagonal Cartan subgroups H0, H1, H2 with the
// extra coset representative epsilon.

#include "ltk/minkowski.hpp"
#include "ltk/random.hpp"
#include "ltk/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ltk {

enum class GroupClass { complex_SO, real_SO0, real_SO_other, invalid };

inline const char* to_string(GroupClass c) {
  switch (c) {
    case GroupClass::complex_SO: return "complex_SO";
    case GroupClass::real_SO0: return "real_SO0";
    case GroupClass::real_SO_other: return "real_SO_other";
    case GroupClass::invalid: return "invalid";
  }
  return "invalid";
}

inline constexpr double kGroupTol = 1e-10;

namespace detail {

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Residual of the isometry condition, relative to the squared entry scale
// since t(g) J g is quadratic in g.
inline double isometry_residual(const CMatrix& g) {
  const int d = static_cast<int>(g.rows());
  const CMatrix j = minkowski_metric(d - 1).cast<Complex>();
  const double scale = std::max(1.0, max_abs(g) * max_abs(g));
  return max_abs(g.transpose() * j * g - j) / scale;
}

}  // namespace detail

class GroupElement {
 public:
  int dim_n() const { return static_cast<int>(m_.rows()) - 1; }
  const CMatrix& matrix() const { return m_; }
  GroupClass classification() const { return cls_; }
  bool valid() const { return cls_ != GroupClass::invalid; }
  // Scaled isometry residual and determinant defect measured at validation.
  double residual() const { return residual_; }
  Complex det() const { return det_; }

  GroupElement inverse() const;
  static GroupElement identity(int n);

 private:
  friend GroupElement validate_group(const CMatrix& matrix, double tol);
  CMatrix m_;
  GroupClass cls_ = GroupClass::invalid;
  double residual_ = 0.0;
  Complex det_{};
};

// Classifies a square matrix. Never throws on invalid input: "invalid" is a
// verdict, not an error.
inline GroupElement validate_group(const CMatrix& matrix, double tol = kGroupTol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
    throw DimensionError("group elements are square (1+n) x (1+n) matrices");
  }
  GroupElement g;
  g.m_ = matrix;
  g.residual_ = detail::isometry_residual(matrix);
  g.det_ = matrix.partialPivLu().determinant();
  const double scale = std::max(1.0, detail::max_abs(matrix) * detail::max_abs(matrix));
  const bool finite = matrix.allFinite();
  if (!finite || g.residual_ > tol || std::abs(g.det_ - 1.0) > tol * scale) {
    g.cls_ = GroupClass::invalid;
    return g;
  }
  const bool is_real = matrix.imag().cwiseAbs().maxCoeff() <= tol;
  if (!is_real) {
    g.cls_ = GroupClass::complex_SO;
  } else if (matrix(0, 0).real() >= 1.0 - tol) {
    g.cls_ = GroupClass::real_SO0;
  } else {
    g.cls_ = GroupClass::real_SO_other;
  }
  return g;
}

inline GroupElement GroupElement::identity(int n) {
  return validate_group(CMatrix::Identity(n + 1, n + 1));
}

// g^{-1} = J t(g) J for Lorentz matrices.
inline GroupElement GroupElement::inverse() const {
  const CMatrix j = minkowski_metric(dim_n()).cast<Complex>();
  return validate_group(j * m_.transpose() * j, std::max(kGroupTol, 10.0 * residual_));
}

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.dim_n() != b.dim_n()) throw DimensionError("group product: dimension mismatch");
  return validate_group(a.matrix() * b.matrix(),
                        std::max(kGroupTol, 10.0 * (a.residual() + b.residual())));
}

class AlgebraElement {
 public:
  explicit AlgebraElement(CMatrix m, double tol = 1e-12) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) {
      throw DimensionError("algebra elements are square (1+n) x (1+n) matrices");
    }
    if (residual() > tol * std::max(1.0, detail::max_abs(m_))) {
      throw PreconditionError("matrix is not in so(1,n): t(xi) J + J xi != 0");
    }
  }

  int dim_n() const { return static_cast<int>(m_.rows()) - 1; }
  const CMatrix& matrix() const { return m_; }

  // max |t(xi) J + J xi|
  double residual() const {
    const CMatrix j = minkowski_metric(dim_n()).cast<Complex>();
    return detail::max_abs(m_.transpose() * j + j * m_);
  }

 private:
  CMatrix m_;
};

// Boosts e0 t(e_k) + e_k t(e0) for k = 1..n, then rotations
// e_k t(e_l) - e_l t(e_k) for 1 <= k < l <= n in lexicographic order.
inline std::vector<AlgebraElement> algebra_basis(int n) {
  if (n < 1) throw DimensionError("algebra_basis: n must be >= 1");
  std::vector<AlgebraElement> basis;
  basis.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int k = 1; k <= n; ++k) {
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    m(0, k) = 1.0;
    m(k, 0) = 1.0;
    basis.emplace_back(std::move(m));
  }
  for (int k = 1; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      CMatrix m = CMatrix::Zero(n + 1, n + 1);
      m(k, l) = 1.0;
      m(l, k) = -1.0;
      basis.emplace_back(std::move(m));
    }
  }
  return basis;
}

inline int algebra_dimension(int n) { return n * (n + 1) / 2; }

// sum_k coeffs[k] * basis[k] with basis = algebra_basis(n).
template <typename Coeffs>
CMatrix algebra_combination(int n, const Coeffs& coeffs) {
  const auto basis = algebra_basis(n);
  if (static_cast<std::size_t>(coeffs.size()) != basis.size()) {
    throw DimensionError("algebra_combination: expected " + std::to_string(basis.size()) +
                         " coefficients");
  }
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    m += Complex(coeffs[static_cast<Eigen::Index>(k)]) * basis[k].matrix();
  }
  return m;
}

inline constexpr double kExpCap = 50.0;

// Scaling and squaring with a degree-18 Taylor polynomial.
inline CMatrix matrix_exp(const CMatrix& a) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);
  const Eigen::Index d = a.rows();
  CMatrix result = CMatrix::Identity(d, d);
  CMatrix term = CMatrix::Identity(d, d);
  for (int k = 1; k <= 18; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

inline GroupElement exp_algebra(const AlgebraElement& xi, Complex t, double cap = kExpCap) {
  const CMatrix a = t * xi.matrix();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > cap) {
    throw OverflowError("exp_algebra: |t| * |xi| = " + std::to_string(norm1) +
                        " exceeds cap " + std::to_string(cap));
  }
  return validate_group(matrix_exp(a));
}

enum class Realness { real0, complex };

inline GroupElement random_group_element(int n, std::uint64_t seed, double scale,
                                         Realness realness) {
  if (!(scale > 0.0)) throw PreconditionError("random_group_element: scale must be > 0");
  Rng rng(seed);
  const int dim = algebra_dimension(n);
  CVector coeffs(dim);
  for (int k = 0; k < dim; ++k) {
    const double re = rng.uniform(-scale, scale);
    const double im = realness == Realness::complex ? rng.uniform(-scale, scale) : 0.0;
    coeffs(k) = Complex(re, im);
  }
  const AlgebraElement xi(algebra_combination(n, coeffs));
  return exp_algebra(xi, 1.0);
}

inline ConfigPoint apply(const GroupElement& g, const ConfigPoint& z) {
  if (g.dim_n() != z.dim_n()) {
    throw DimensionError("apply: group acts on n=" + std::to_string(g.dim_n()) +
                         " but point has n=" + std::to_string(z.dim_n()));
  }
  return ConfigPoint(g.matrix() * z.matrix());
}

inline MinkowskiVector apply(const GroupElement& g, const MinkowskiVector& v) {
  if (g.dim_n() != v.dim_n()) throw DimensionError("apply: dimension mismatch");
  return MinkowskiVector(CVector(g.matrix() * v.coords()));
}

inline GroupElement cone_boost(const MinkowskiVector& y, const Tolerance& tol = {}) {
  if (!y.is_real()) throw DomainError("cone_boost expects a real vector");
  return validate_group(cone_boost_matrix(y.re(), tol).cast<Complex>());
}

// ---------------------------------------------------------------------------
// Cartan subgroups

enum class CartanVariant { H0, H1, H2 };

inline const char* to_string(CartanVariant v) {
  switch (v) {
    case CartanVariant::H0: return "H0";
    case CartanVariant::H1: return "H1";
    case CartanVariant::H2: return "H2";
  }
  return "H0";
}

struct CartanParams {
  CartanVariant variant = CartanVariant::H0;
  std::optional<std::pair<double, double>> circle;        // (a, b), absent for H2
  std::vector<std::pair<double, double>> hyperbolas;      // (c_j, d_j)

  // Flattened parameter vector in R^{2m}: (a, b, c1, d1, ...) or (c1, d1, ...).
  RVector flat() const {
    const std::size_t lead = circle ? 1 : 0;
    RVector p(2 * static_cast<Eigen::Index>(lead + hyperbolas.size()));
    Eigen::Index k = 0;
    if (circle) {
      p(k++) = circle->first;
      p(k++) = circle->second;
    }
    for (const auto& [c, d] : hyperbolas) {
      p(k++) = c;
      p(k++) = d;
    }
    return p;
  }

  static CartanParams from_flat(CartanVariant v, const RVector& p) {
    CartanParams out;
    out.variant = v;
    Eigen::Index k = 0;
    if (v != CartanVariant::H2) {
      out.circle = std::make_pair(p(0), p(1));
      k = 2;
    }
    for (; k + 1 < p.size(); k += 2) out.hyperbolas.emplace_back(p(k), p(k + 1));
    return out;
  }
};

// m for the variant at ambient n; throws on parity mismatch.
inline int cartan_rank(CartanVariant v, int n) {
  if (n < 1) throw DimensionError("cartan: n must be >= 1");
  if (v == CartanVariant::H0) {
    if (n % 2 == 0) throw PreconditionError("H0 requires odd n = 2m-1");
    return (n + 1) / 2;
  }
  if (n % 2 != 0) throw PreconditionError(std::string(to_string(v)) + " requires even n = 2m");
  return n / 2;
}

inline std::size_t cartan_hyperbola_count(CartanVariant v, int n) {
  const int m = cartan_rank(v, n);
  return static_cast<std::size_t>(v == CartanVariant::H2 ? m : m - 1);
}

inline CartanParams cartan_identity_params(CartanVariant v, int n) {
  CartanParams p;
  p.variant = v;
  if (v != CartanVariant::H2) p.circle = std::make_pair(1.0, 0.0);
  p.hyperbolas.assign(cartan_hyperbola_count(v, n), {1.0, 0.0});
  return p;
}

// Linear extension of the H_I parametrization to all of R^{2m}: sigma =
// [[a, ib], [ib, a]] on coordinates (0,1), tau_j = [[c, -id], [id, c]] on the
// following spatial pairs. H1 appends a fixed 1, H2 prepends one.
inline CMatrix cartan_linear_matrix(CartanVariant v, int n, const RVector& p) {
  const int m = cartan_rank(v, n);
  if (p.size() != 2 * m) {
    throw DimensionError("cartan parameter vector must have length 2m = " + std::to_string(2 * m));
  }
  CMatrix g = CMatrix::Identity(n + 1, n + 1);
  Eigen::Index k = 0;
  int row = 0;
  if (v == CartanVariant::H2) {
    row = 1;
  } else {
    const double a = p(0), b = p(1);
    g(0, 0) = a;
    g(0, 1) = kI * b;
    g(1, 0) = kI * b;
    g(1, 1) = a;
    k = 2;
    row = 2;
  }
  for (; k < p.size(); k += 2, row += 2) {
    const double c = p(k), d = p(k + 1);
    g(row, row) = c;
    g(row, row + 1) = -kI * d;
    g(row + 1, row) = kI * d;
    g(row + 1, row + 1) = c;
  }
  return g;
}

inline constexpr double kCartanConstraintTol = 1e-12;

inline void validate_cartan_params(const CartanParams& params, int n,
                                   double tol = kCartanConstraintTol) {
  const std::size_t expected = cartan_hyperbola_count(params.variant, n);
  if (params.variant == CartanVariant::H2) {
    if (params.circle) throw PreconditionError("H2 has no circle block");
  } else if (!params.circle) {
    throw PreconditionError(std::string(to_string(params.variant)) + " needs a circle pair (a, b)");
  }
  if (params.hyperbolas.size() != expected) {
    throw PreconditionError("expected " + std::to_string(expected) + " hyperbola pairs, got " +
                            std::to_string(params.hyperbolas.size()));
  }
  if (params.circle) {
    const auto [a, b] = *params.circle;
    if (std::abs(a * a + b * b - 1.0) > tol) {
      throw PreconditionError("circle constraint a^2 + b^2 = 1 violated");
    }
  }
  for (const auto& [c, d] : params.hyperbolas) {
    if (!(c > 0.0) || std::abs(c * c - d * d - 1.0) > tol) {
      throw PreconditionError("hyperbola constraint c^2 - d^2 = 1, c > 0 violated");
    }
  }
}

// Element of the imaginary-part subgroup H_I.
inline GroupElement cartan_element(const CartanParams& params, int n,
                                   double tol = kCartanConstraintTol) {
  validate_cartan_params(params, n, tol);
  return validate_group(cartan_linear_matrix(params.variant, n, params.flat()));
}

// Element of the real-part subgroup H_R: a real boost of rapidity `rapidity`
// in the (0,1) plane (omitted for H2) and rotations by `angles` in the
// spatial pairs.
inline GroupElement cartan_real_element(CartanVariant v, int n, double rapidity,
                                        const std::vector<double>& angles) {
  const std::size_t count = cartan_hyperbola_count(v, n);
  if (angles.size() != count) {
    throw PreconditionError("expected " + std::to_string(count) + " rotation angles");
  }
  CMatrix g = CMatrix::Identity(n + 1, n + 1);
  int row = 1;
  if (v != CartanVariant::H2) {
    g(0, 0) = std::cosh(rapidity);
    g(0, 1) = std::sinh(rapidity);
    g(1, 0) = std::sinh(rapidity);
    g(1, 1) = std::cosh(rapidity);
    row = 2;
  }
  for (double phi : angles) {
    g(row, row) = std::cos(phi);
    g(row, row + 1) = -std::sin(phi);
    g(row + 1, row) = std::sin(phi);
    g(row + 1, row + 1) = std::cos(phi);
    row += 2;
  }
  return validate_group(g);
}

// diag(-1, [[0,1],[1,0]], Id) of size 1+n, n even. det = 1, g00 = -1.
inline GroupElement epsilon_element(int n) {
  if (n < 2 || n % 2 != 0) throw PreconditionError("epsilon exists for even n >= 2");
  CMatrix g = CMatrix::Identity(n + 1, n + 1);
  g(0, 0) = -1.0;
  g(1, 1) = 0.0;
  g(2, 2) = 0.0;
  g(1, 2) = 1.0;
  g(2, 1) = 1.0;
  return validate_group(g);
}

}  // namespace ltk
