#pragma once

// Observability machinery for piece-wise constant linear systems (PWCS).
//
// A PWCS is a linear system whose dynamics F_j and observation H_j are
// constant on each time segment j of length delta_j. Each segment has a local
// observability matrix (LOM) [H; HF; ...; HF^p]. Stacking the LOMs, each
// right-multiplied by the transition accumulated over earlier segments, gives
// the total observability matrix (TOM).

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace slamobs {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kDefaultRankTol = 1e-10;

/// Highest power of F stacked into a LOM. The SLAM error dynamics are
/// nilpotent with F^3 = 0, so H F^3 and beyond contribute only zero rows.
inline constexpr int kDefaultMaxPower = 2;

enum class Expansion { exact, first_order };

inline const char* to_string(Expansion e) {
  return e == Expansion::exact ? "exact" : "first_order";
}

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

}  // namespace detail

/// Cross-product matrix: skew(v) * w == v.cross(w).
inline Mat3 skew(const Vec3& v) {
  detail::require_finite(v, "skew");
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

/// One segment of a PWCS: constant dynamics, constant observation, duration.
struct PwcsStripe {
  Matrix dynamics;     // n x n
  Matrix observation;  // m x n
  double delta = 0.0;  // seconds

  Eigen::Index state_dim() const { return dynamics.rows(); }

  void validate() const {
    if (dynamics.rows() != dynamics.cols()) {
      throw std::invalid_argument("PwcsStripe: dynamics matrix is not square");
    }
    if (observation.cols() != dynamics.rows()) {
      throw std::invalid_argument(
          "PwcsStripe: observation columns (" + std::to_string(observation.cols()) +
          ") do not match state dimension (" + std::to_string(dynamics.rows()) + ")");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw std::invalid_argument("PwcsStripe: delta must be positive and finite");
    }
    detail::require_finite(dynamics, "PwcsStripe dynamics");
    detail::require_finite(observation, "PwcsStripe observation");
  }
};

/// Orthonormal basis of a matrix kernel, one basis vector per column.
struct NullSpaceBasis {
  Matrix vectors;  // n x dim

  Eigen::Index dim() const { return vectors.cols(); }
  Vector vector(Eigen::Index i) const { return vectors.col(i); }
};

/// Local observability matrix [H; HF; HF^2; ...; HF^max_power].
inline Matrix lom(const PwcsStripe& stripe, int max_power = kDefaultMaxPower) {
  stripe.validate();
  if (max_power < 1) {
    throw std::invalid_argument("lom: max_power must be >= 1");
  }
  const Eigen::Index m = stripe.observation.rows();
  const Eigen::Index n = stripe.state_dim();
  Matrix out(m * (max_power + 1), n);
  Matrix block = stripe.observation;
  for (int k = 0; k <= max_power; ++k) {
    out.middleRows(k * m, m) = block;
    if (k < max_power) block = block * stripe.dynamics;
  }
  return out;
}

/// Smallest p with F^p == 0 exactly, or 0 when F is not (detectably) nilpotent.
inline int nilpotency_index(const Matrix& f) {
  if (f.rows() != f.cols()) {
    throw std::invalid_argument("nilpotency_index: matrix is not square");
  }
  const Eigen::Index n = f.rows();
  if (n == 0) return 1;
  Matrix power = Matrix::Identity(n, n);
  for (Eigen::Index p = 1; p <= n; ++p) {
    power = power * f;
    if ((power.array() == 0.0).all()) return static_cast<int>(p);
  }
  return 0;
}

/// Segment transition e^{F delta}.
///
/// first_order returns I + F delta. exact uses the terminated power series
/// sum_{i<p} (F delta)^i / i! when F^p == 0, which is exact; otherwise it
/// falls back to Eigen's scaling-and-squaring exponential.
inline Matrix state_transition(const Matrix& f, double delta, Expansion mode) {
  if (f.rows() != f.cols()) {
    throw std::invalid_argument("state_transition: dynamics matrix is not square");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("state_transition: delta must be positive and finite");
  }
  detail::require_finite(f, "state_transition");
  const Eigen::Index n = f.rows();
  const Matrix scaled = f * delta;
  if (mode == Expansion::first_order) {
    return Matrix::Identity(n, n) + scaled;
  }
  const int p = nilpotency_index(f);
  if (p == 0) {
    return scaled.exp();
  }
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int i = 1; i < p; ++i) {
    term = term * scaled / static_cast<double>(i);
    sum += term;
  }
  return sum;
}

/// Total observability matrix [Q_1; Q_2 T_1; Q_3 T_2 T_1; ...] with
/// Q_j = lom(stripe_j) and T_j = e^{F_j delta_j}.
inline Matrix tom(std::span<const PwcsStripe> stripes, int max_power = kDefaultMaxPower,
                  Expansion mode = Expansion::exact) {
  if (stripes.empty()) {
    throw std::invalid_argument("tom: no stripes");
  }
  const Eigen::Index n = stripes.front().state_dim();
  Eigen::Index total_rows = 0;
  for (const auto& s : stripes) {
    s.validate();
    if (s.state_dim() != n) {
      throw std::invalid_argument("tom: stripes disagree on state dimension");
    }
    total_rows += s.observation.rows() * (max_power + 1);
  }
  Matrix out(total_rows, n);
  Matrix accumulated = Matrix::Identity(n, n);
  Eigen::Index row = 0;
  for (std::size_t j = 0; j < stripes.size(); ++j) {
    const Matrix local = lom(stripes[j], max_power);
    if (j == 0) {
      out.middleRows(row, local.rows()) = local;
    } else {
      out.middleRows(row, local.rows()) = local * accumulated;
    }
    row += local.rows();
    if (j + 1 < stripes.size()) {
      accumulated = state_transition(stripes[j].dynamics, stripes[j].delta, mode) * accumulated;
    }
  }
  return out;
}

inline Matrix tom(const std::vector<PwcsStripe>& stripes, int max_power = kDefaultMaxPower,
                  Expansion mode = Expansion::exact) {
  return tom(std::span<const PwcsStripe>(stripes), max_power, mode);
}

/// Singular values of m in decreasing order (empty for an empty matrix).
inline Vector singular_values(const Matrix& m) {
  detail::require_finite(m, "singular_values");
  if (m.rows() == 0 || m.cols() == 0) return Vector();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

/// Number of singular values strictly above rel_tol * sigma_max.
inline int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol) {
  if (!(rel_tol > 0.0)) {
    throw std::invalid_argument("numerical_rank: rel_tol must be positive");
  }
  const Vector sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return rank;
}

/// Orthonormal kernel basis; dim == cols - numerical_rank(m, rel_tol).
///
/// The dimension follows the rank of m itself. The vectors come from the SVD
/// of m with unit-norm rows: same kernel, but the stacked H, HF, HF^2 rows
/// differ in scale by orders of magnitude and normalizing them widens the gap
/// above the kernel, which is what bounds the error of computed null vectors.
inline NullSpaceBasis null_space(const Matrix& m, double rel_tol = kDefaultRankTol) {
  if (!(rel_tol > 0.0)) {
    throw std::invalid_argument("null_space: rel_tol must be positive");
  }
  detail::require_finite(m, "null_space");
  const Eigen::Index n = m.cols();
  const int rank = numerical_rank(m, rel_tol);
  if (rank == 0) {
    return {Matrix::Identity(n, n)};
  }
  Matrix scaled = m;
  for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
    const double norm = scaled.row(i).norm();
    if (norm > 0.0) scaled.row(i) /= norm;
  }
  Eigen::JacobiSVD<Matrix> svd(scaled, Eigen::ComputeFullV);
  return {svd.matrixV().rightCols(n - rank)};
}

/// True when w lies in the row space of the matrix whose kernel is `basis`:
/// ||basis^T w|| <= rel_tol * ||w||.
inline bool is_functional_observable(const NullSpaceBasis& basis, const Vector& w,
                                     double rel_tol = kDefaultRankTol) {
  if (w.size() != basis.vectors.rows()) {
    throw std::invalid_argument("is_functional_observable: functional length " +
                                std::to_string(w.size()) + " != state dimension " +
                                std::to_string(basis.vectors.rows()));
  }
  detail::require_finite(w, "is_functional_observable");
  if (basis.dim() == 0) return true;
  return (basis.vectors.transpose() * w).norm() <= rel_tol * w.norm();
}

inline bool is_functional_observable(const Matrix& m, const Vector& w,
                                     double rel_tol = kDefaultRankTol) {
  if (w.size() != m.cols()) {
    throw std::invalid_argument("is_functional_observable: functional length " +
                                std::to_string(w.size()) + " != matrix columns " +
                                std::to_string(m.cols()));
  }
  return is_functional_observable(null_space(m, rel_tol), w, rel_tol);
}

}  // namespace slamobs
