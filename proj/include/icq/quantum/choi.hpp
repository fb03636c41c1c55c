#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "icq/errors.hpp"

namespace icq::quantum {

using Complex = std::complex<double>;
using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

struct LabeledSpace {
  std::string label;
  Eigen::Index dim = 1;
  friend bool operator==(const LabeledSpace&, const LabeledSpace&) = default;
};

/// Largest dimension a ChoiMatrix may take (dense storage).
inline constexpr Eigen::Index kMaxChoiDim = 4096;

/// A square matrix on a tensor product of labeled spaces. Basis indices are
/// mixed-radix with the first space most significant.
template <class Scalar = Complex>
class ChoiMatrix {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ChoiMatrix() : data_(Matrix::Ones(1, 1)) {}
  ChoiMatrix(std::vector<LabeledSpace> spaces, Matrix data) : spaces_(std::move(spaces)), data_(std::move(data)) {
    Eigen::Index d = 1;
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      if (spaces_[i].dim < 1) throw std::invalid_argument("ChoiMatrix: dimension must be positive");
      for (std::size_t j = 0; j < i; ++j) {
        if (spaces_[j].label == spaces_[i].label) throw SignatureMismatch("ChoiMatrix: duplicate label " + spaces_[i].label);
      }
      d *= spaces_[i].dim;
    }
    if (data_.rows() != d || data_.cols() != d) throw SignatureMismatch("ChoiMatrix: data size does not match spaces");
  }

  /// |v><v| for a vector on `spaces`.
  static ChoiMatrix pure(std::vector<LabeledSpace> spaces, const Vector& v) {
    return ChoiMatrix(std::move(spaces), v * v.adjoint());
  }

  const std::vector<LabeledSpace>& spaces() const noexcept { return spaces_; }
  const Matrix& data() const noexcept { return data_; }
  Eigen::Index dim() const noexcept { return data_.rows(); }

  /// Position of `label` among the spaces, or -1.
  int position(const std::string& label) const {
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      if (spaces_[i].label == label) return static_cast<int>(i);
    }
    return -1;
  }
  bool has(const std::string& label) const { return position(label) >= 0; }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& s : spaces_) out.push_back(s.label);
    return out;
  }

  Scalar trace() const { return data_.trace(); }

 private:
  std::vector<LabeledSpace> spaces_;
  Matrix data_;
};

namespace detail {

inline Eigen::Index total_dim(const std::vector<LabeledSpace>& spaces) {
  Eigen::Index d = 1;
  for (const auto& s : spaces) d *= s.dim;
  return d;
}

inline void check_budget(Eigen::Index d) {
  if (d > kMaxChoiDim) throw BudgetExceeded("Choi matrix of dimension " + std::to_string(d) + " exceeds budget");
}

/// For every basis index of `spaces`, the index of the same basis vector in
/// the order given by `order` (positions into `spaces`).
inline std::vector<Eigen::Index> reorder_map(const std::vector<LabeledSpace>& spaces, const std::vector<int>& order) {
  const Eigen::Index d = total_dim(spaces);
  std::vector<Eigen::Index> stride_new(spaces.size());
  Eigen::Index s = 1;
  for (std::size_t j = order.size(); j-- > 0;) {
    stride_new[static_cast<std::size_t>(order[j])] = s;
    s *= spaces[static_cast<std::size_t>(order[j])].dim;
  }
  std::vector<Eigen::Index> map(static_cast<std::size_t>(d));
  std::vector<Eigen::Index> digit(spaces.size(), 0);
  for (Eigen::Index idx = 0; idx < d; ++idx) {
    Eigen::Index target = 0;
    for (std::size_t i = 0; i < spaces.size(); ++i) target += digit[i] * stride_new[i];
    map[static_cast<std::size_t>(idx)] = target;
    for (std::size_t i = spaces.size(); i-- > 0;) {
      if (++digit[i] < spaces[i].dim) break;
      digit[i] = 0;
    }
  }
  return map;
}

}  // namespace detail

/// A with its spaces rearranged into the order of `labels`.
template <class Scalar>
ChoiMatrix<Scalar> permute(const ChoiMatrix<Scalar>& a, const std::vector<std::string>& labels) {
  if (labels.size() != a.spaces().size()) throw SignatureMismatch("permute: label count differs");
  std::vector<int> order;
  std::vector<LabeledSpace> spaces;
  for (const auto& l : labels) {
    const int p = a.position(l);
    if (p < 0) throw SignatureMismatch("permute: unknown label " + l);
    order.push_back(p);
    spaces.push_back(a.spaces()[static_cast<std::size_t>(p)]);
  }
  const auto map = detail::reorder_map(a.spaces(), order);
  typename ChoiMatrix<Scalar>::Matrix out(a.dim(), a.dim());
  for (Eigen::Index c = 0; c < a.dim(); ++c) {
    for (Eigen::Index r = 0; r < a.dim(); ++r) {
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = a.data()(r, c);
    }
  }
  return ChoiMatrix<Scalar>(std::move(spaces), std::move(out));
}

/// A (x) B on disjoint labels.
template <class Scalar>
ChoiMatrix<Scalar> tensor(const ChoiMatrix<Scalar>& a, const ChoiMatrix<Scalar>& b) {
  std::vector<LabeledSpace> spaces = a.spaces();
  for (const auto& s : b.spaces()) {
    if (a.has(s.label)) throw SignatureMismatch("tensor: label " + s.label + " on both sides");
    spaces.push_back(s);
  }
  detail::check_budget(a.dim() * b.dim());
  typename ChoiMatrix<Scalar>::Matrix out(a.dim() * b.dim(), a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.data()(i, j) * b.data();
  }
  return ChoiMatrix<Scalar>(std::move(spaces), std::move(out));
}

/// Traces out the listed spaces.
template <class Scalar>
ChoiMatrix<Scalar> partial_trace(const ChoiMatrix<Scalar>& a, const std::vector<std::string>& traced) {
  std::vector<std::string> keep;
  std::vector<LabeledSpace> kept_spaces;
  for (const auto& s : a.spaces()) {
    if (std::find(traced.begin(), traced.end(), s.label) == traced.end()) {
      keep.push_back(s.label);
      kept_spaces.push_back(s);
    }
  }
  std::vector<std::string> order = keep;
  Eigen::Index dt = 1;
  for (const auto& l : traced) {
    const int p = a.position(l);
    if (p < 0) throw SignatureMismatch("partial_trace: unknown label " + l);
    order.push_back(l);
    dt *= a.spaces()[static_cast<std::size_t>(p)].dim;
  }
  const auto p = permute(a, order);
  const Eigen::Index dk = a.dim() / dt;
  typename ChoiMatrix<Scalar>::Matrix out = ChoiMatrix<Scalar>::Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Scalar sum(0);
      for (Eigen::Index t = 0; t < dt; ++t) sum += p.data()(i * dt + t, j * dt + t);
      out(i, j) = sum;
    }
  }
  return ChoiMatrix<Scalar>(std::move(kept_spaces), std::move(out));
}

/// The link product A * B: contraction over the shared labels Y,
///   R[(x,z),(x',z')] = sum_{y,y'} A[(x,y'),(x',y)] B[(y',z),(y,z')].
/// The result carries A's unshared spaces (in A's order) followed by B's.
/// Work is proportional to the number of nonzero entries of A.
template <class Scalar>
ChoiMatrix<Scalar> link_product(const ChoiMatrix<Scalar>& a, const ChoiMatrix<Scalar>& b) {
  std::vector<int> a_x;
  std::vector<int> a_y;
  std::vector<std::string> b_order;
  std::vector<LabeledSpace> result_spaces;
  for (std::size_t i = 0; i < a.spaces().size(); ++i) {
    const auto& s = a.spaces()[i];
    const int p = b.position(s.label);
    if (p >= 0) {
      if (b.spaces()[static_cast<std::size_t>(p)].dim != s.dim) {
        throw SignatureMismatch("link_product: label " + s.label + " has different dimensions");
      }
      a_y.push_back(static_cast<int>(i));
      b_order.push_back(s.label);
    } else {
      a_x.push_back(static_cast<int>(i));
      result_spaces.push_back(s);
    }
  }
  Eigen::Index dz = 1;
  for (const auto& s : b.spaces()) {
    if (!a.has(s.label)) {
      b_order.push_back(s.label);
      result_spaces.push_back(s);
      dz *= s.dim;
    }
  }
  Eigen::Index dx = 1;
  for (int i : a_x) dx *= a.spaces()[static_cast<std::size_t>(i)].dim;
  detail::check_budget(dx * dz);

  const auto bp = permute(b, b_order);

  // Split every basis index of A into its (x, y) parts.
  const Eigen::Index da = a.dim();
  std::vector<Eigen::Index> xpart(static_cast<std::size_t>(da));
  std::vector<Eigen::Index> ypart(static_cast<std::size_t>(da));
  {
    std::vector<Eigen::Index> digit(a.spaces().size(), 0);
    for (Eigen::Index idx = 0; idx < da; ++idx) {
      Eigen::Index x = 0;
      Eigen::Index y = 0;
      for (int i : a_x) x = x * a.spaces()[static_cast<std::size_t>(i)].dim + digit[static_cast<std::size_t>(i)];
      for (int i : a_y) y = y * a.spaces()[static_cast<std::size_t>(i)].dim + digit[static_cast<std::size_t>(i)];
      xpart[static_cast<std::size_t>(idx)] = x;
      ypart[static_cast<std::size_t>(idx)] = y;
      for (std::size_t i = a.spaces().size(); i-- > 0;) {
        if (++digit[i] < a.spaces()[i].dim) break;
        digit[i] = 0;
      }
    }
  }

  typename ChoiMatrix<Scalar>::Matrix out = ChoiMatrix<Scalar>::Matrix::Zero(dx * dz, dx * dz);
  const auto& ad = a.data();
  const auto& bd = bp.data();
  for (Eigen::Index c = 0; c < da; ++c) {
    const Eigen::Index xc = xpart[static_cast<std::size_t>(c)];
    const Eigen::Index y = ypart[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < da; ++r) {
      const Scalar v = ad(r, c);
      if (v == Scalar(0)) continue;
      const Eigen::Index xr = xpart[static_cast<std::size_t>(r)];
      const Eigen::Index yp = ypart[static_cast<std::size_t>(r)];
      out.block(xr * dz, xc * dz, dz, dz) += v * bd.block(yp * dz, y * dz, dz, dz);
    }
  }
  return ChoiMatrix<Scalar>(std::move(result_spaces), std::move(out));
}

/// Choi matrix sum_{ij} |i><j| (x) U|i><j|U^dagger on (in, out).
template <class Scalar = Complex>
ChoiMatrix<Scalar> choi_of_unitary(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& u, const std::string& in,
                                   const std::string& out) {
  if (u.rows() != u.cols()) throw SignatureMismatch("choi_of_unitary: matrix must be square");
  const Eigen::Index d = u.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v.segment(i * d, d) = u.col(i);
  return ChoiMatrix<Scalar>::pure({{in, d}, {out, d}}, v);
}

/// Choi matrix of the classical channel |i> -> |map[i]>.
template <class Scalar = Complex>
ChoiMatrix<Scalar> classical_channel(const std::vector<std::uint64_t>& map, const std::string& in, const std::string& out,
                                     Eigen::Index out_dim) {
  const auto din = static_cast<Eigen::Index>(map.size());
  typename ChoiMatrix<Scalar>::Matrix m = ChoiMatrix<Scalar>::Matrix::Zero(din * out_dim, din * out_dim);
  for (Eigen::Index i = 0; i < din; ++i) {
    const auto o = static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]);
    if (o >= out_dim) throw std::out_of_range("classical_channel: value outside output space");
    m(i * out_dim + o, i * out_dim + o) = Scalar(1);
  }
  return ChoiMatrix<Scalar>({{in, din}, {out, out_dim}}, std::move(m));
}

/// Largest |A_ij - B_ij|.
template <class Derived1, class Derived2>
double max_abs_diff(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace icq::quantum
