#include "icq/quantum/supermap.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <tuple>

namespace icq::quantum {

MatrixXc phase_oracle(const BitString& x) {
  const auto d = static_cast<Eigen::Index>(x.size()) + 1;
  MatrixXc o = MatrixXc::Identity(d, d);
  for (Eigen::Index i = 1; i < d; ++i) {
    if (x[static_cast<std::size_t>(i - 1)]) o(i, i) = -1.0;
  }
  return o;
}

namespace {

// Appends `v` to the orthonormal columns basis[0..count) if it has a
// component outside their span. Two passes keep the result orthonormal.
bool try_append(MatrixXc& basis, Eigen::Index& count, VectorXc v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < count; ++c) v -= basis.col(c).dot(v) * basis.col(c);
  }
  const double norm = v.norm();
  if (norm < 1e-8) return false;
  basis.col(count++) = v / norm;
  return true;
}

}  // namespace

MatrixXc h_ij(int i, int j, Eigen::Index dim, const Completion& completion) {
  if (i == j) throw std::invalid_argument("h_ij: i and j must differ");
  if (i < 0 || j < 0 || i >= dim || j >= dim) throw std::out_of_range("h_ij: index outside the register");
  MatrixXc h = MatrixXc::Zero(dim, dim);
  const double s = 1.0 / std::sqrt(2.0);
  h(i, 0) = s;
  h(j, 0) = s;
  h(i, 1) = s;
  h(j, 1) = -s;
  Eigen::Index count = 2;
  if (completion.kind == Completion::Kind::GramSchmidt) {
    for (Eigen::Index m = 0; m < dim && count < dim; ++m) try_append(h, count, VectorXc::Unit(dim, m));
  } else {
    std::mt19937_64 rng(completion.seed);
    std::normal_distribution<double> normal;
    while (count < dim) {
      VectorXc v(dim);
      for (Eigen::Index m = 0; m < dim; ++m) v(m) = Complex(normal(rng), normal(rng));
      try_append(h, count, v);
    }
  }
  return h;
}

VectorXc parity_query(int i, int j, const BitString& x, const Completion& completion) {
  const auto dim = static_cast<Eigen::Index>(x.size()) + 1;
  const MatrixXc h = h_ij(i, j, dim, completion);
  return h.adjoint() * phase_oracle(x) * h.col(0);
}

std::string label_i(int k) { return "I" + std::to_string(k); }
std::string label_o(int k) { return "O" + std::to_string(k); }
std::string label_q(int k) { return "Q" + std::to_string(k); }
std::string label_q_out(int k) { return "Q" + std::to_string(k) + "'"; }
std::string label_alpha(int k) { return "a" + std::to_string(k); }

namespace {

void check_slot(int k) {
  if (k < 1 || k > 3) throw std::out_of_range("slot index must be 1, 2 or 3");
}

Choi build_g(int k, const Completion& completion) {
  constexpr Eigen::Index d = kQueryDim;
  const std::array<MatrixXc, 2> h{h_ij(k, k + 3, d, completion), h_ij(0, k + 3, d, completion)};
  // Index (b, q, q', o, a) with dims (2, 7, 7, 2, 7).
  auto index = [](Eigen::Index b, Eigen::Index q, Eigen::Index qp, Eigen::Index o, Eigen::Index a) {
    return (((b * d + q) * d + qp) * 2 + o) * d + a;
  };
  VectorXc v = VectorXc::Zero(2 * d * d * 2 * d);
  for (Eigen::Index b = 0; b < 2; ++b) {
    const VectorXc prepared = h[static_cast<std::size_t>(b)].col(0);
    const MatrixXc undo = h[static_cast<std::size_t>(b)].adjoint();
    for (Eigen::Index q = 0; q < d; ++q) {
      if (prepared(q) == Complex(0)) continue;
      for (Eigen::Index qp = 0; qp < d; ++qp) {
        for (Eigen::Index m = 0; m < d; ++m) {
          const Complex amp = prepared(q) * undo(m, qp);
          if (amp == Complex(0)) continue;
          // The swap exchanges the {|0>,|1>} part of the wire with the control.
          if (m < 2) {
            v(index(b, q, qp, m, b)) += amp;
          } else {
            v(index(b, q, qp, b, m)) += amp;
          }
        }
      }
    }
  }
  return Choi::pure({{label_i(k), 2}, {label_q(k), d}, {label_q_out(k), d}, {label_o(k), 2}, {label_alpha(k), d}}, v);
}

}  // namespace

Choi g_subroutine(int k, const Completion& completion) {
  check_slot(k);
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::uint64_t>, Choi> cache;
  const auto key = std::make_tuple(k, static_cast<int>(completion.kind), completion.seed);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_g(k, completion)).first;
  return it->second;
}

Choi oracle_choi(const BitString& x, int k) {
  return choi_of_unitary<Complex>(phase_oracle(x), label_q(k), label_q_out(k));
}

Choi w_tilde_lugano() {
  std::vector<LabeledSpace> spaces;
  for (int k = 1; k <= 3; ++k) spaces.push_back({label_o(k), 2});
  for (int k = 1; k <= 3; ++k) spaces.push_back({label_i(k), 2});
  spaces.push_back({kLabelF, 8});
  MatrixXc m = MatrixXc::Zero(512, 512);
  for (int o = 0; o < 8; ++o) {
    const int o1 = (o >> 2) & 1;
    const int o2 = (o >> 1) & 1;
    const int o3 = o & 1;
    const int i = (((1 - o2) * o3) << 2) | (((1 - o3) * o1) << 1) | ((1 - o1) * o2);
    const int idx = (o * 8 + i) * 8 + o;
    m(idx, idx) = 1.0;
  }
  return Choi(std::move(spaces), std::move(m));
}

Choi effective_slot(int k, const BitString& x, const Completion& completion) {
  if (x.size() != 6) throw ArityMismatch("effective_slot: x must have 6 bits");
  // The oracle goes first so the contraction walks its 49 nonzero entries;
  // the unshared labels of G_k keep their order either way.
  return link_product(oracle_choi(x, k), g_subroutine(k, completion));
}

Choi run_f6q(const BitString& x, const Completion& completion) {
  Choi state = w_tilde_lugano();
  for (int k = 1; k <= 3; ++k) state = link_product(state, effective_slot(k, x, completion));
  return state;
}

namespace {

const std::vector<std::string>& register_order() {
  static const std::vector<std::string> order{kLabelF, label_alpha(1), label_alpha(2), label_alpha(3)};
  return order;
}

// Returns rho itself when it is already in register order, else a permuted
// copy held in `storage`.
const Choi& in_register_order(const Choi& rho, Choi& storage) {
  if (rho.labels() == register_order()) return rho;
  storage = permute(rho, register_order());
  return storage;
}

struct BasisLabel {
  std::array<int, 3> f;
  std::array<int, 3> alpha;
};

BasisLabel split_index(Eigen::Index idx) {
  BasisLabel l{};
  for (int k = 2; k >= 0; --k) {
    l.alpha[static_cast<std::size_t>(k)] = static_cast<int>(idx % kQueryDim);
    idx /= kQueryDim;
  }
  const int f = static_cast<int>(idx);
  l.f = {(f >> 2) & 1, (f >> 1) & 1, f & 1};
  return l;
}

}  // namespace

RegisterReading dominant_reading(const Choi& rho) {
  Choi storage;
  const Choi& r = in_register_order(rho, storage);
  Eigen::Index best = 0;
  r.data().diagonal().real().maxCoeff(&best);
  const auto l = split_index(best);
  return {l.f, l.alpha, r.data()(best, best).real()};
}

double off_diagonal_mass(const Choi& rho) {
  double worst = 0.0;
  const auto& d = rho.data();
  for (Eigen::Index c = 0; c < d.cols(); ++c) {
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      if (r != c) worst = std::max(worst, std::norm(d(r, c)));
    }
  }
  return std::sqrt(worst);
}

Decoded measure_and_decode(const Choi& rho, double tol) {
  Choi storage;
  const Choi& r = in_register_order(rho, storage);
  if (off_diagonal_mass(r) > tol) throw PreconditionViolated("measure_and_decode: state is not classical");
  double p[2] = {0.0, 0.0};
  for (Eigen::Index idx = 0; idx < r.dim(); ++idx) {
    const double prob = r.data()(idx, idx).real();
    if (prob <= tol) continue;
    const auto l = split_index(idx);
    int position = 0;
    int ones = 0;
    for (int k = 0; k < 3; ++k) {
      const int a = l.alpha[static_cast<std::size_t>(k)];
      if (a > 1) throw PreconditionViolated("measure_and_decode: alpha outside {0,1}");
      if (a == 1) {
        position = k;
        ++ones;
      }
    }
    if (ones > 1) throw PreconditionViolated("measure_and_decode: alpha has more than one 1");
    p[l.f[static_cast<std::size_t>(position)]] += prob;
  }
  return p[1] > p[0] ? Decoded{true, p[1]} : Decoded{false, p[0]};
}

double trace_distance(const Choi& rho, const Choi& sigma) {
  if (rho.dim() != sigma.dim()) throw SignatureMismatch("trace_distance: dimension mismatch");
  const Choi s = rho.labels() == sigma.labels() ? sigma : permute(sigma, rho.labels());
  const MatrixXc diff = rho.data() - s.data();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < diff.rows(); ++i) {
    // Both matrices are Hermitian, so a zero column is a zero row.
    if (rho.data().col(i).squaredNorm() > 0.0 || s.data().col(i).squaredNorm() > 0.0) {
      support.push_back(i);
    }
  }
  if (support.empty()) return 0.0;
  const auto n = static_cast<Eigen::Index>(support.size());
  MatrixXc sub(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      sub(a, b) = diff(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(sub, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double purity(const Choi& rho) { return rho.data().squaredNorm(); }

void write_state_csv(std::ostream& out, const Choi& rho) {
  Eigen::Index j = 0;
  const double pj = rho.data().diagonal().real().maxCoeff(&j);
  out << "index,re,im\n";
  if (pj <= 0.0) return;
  const VectorXc psi = rho.data().col(j) / std::sqrt(pj);
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (std::abs(psi(i)) > 1e-12) out << i << ',' << psi(i).real() << ',' << psi(i).imag() << '\n';
  }
}

// ---------------------------------------------------------------------------

Choi embed_process_function(const TableProcess& w) {
  if (w.past().size != 1) throw PreconditionViolated("embed_process_function: past space must be trivial");
  const auto& slots = w.slots();
  std::vector<LabeledSpace> spaces;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    spaces.push_back({label_o(static_cast<int>(k) + 1), static_cast<Eigen::Index>(slots[k].out.size)});
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    spaces.push_back({label_i(static_cast<int>(k) + 1), static_cast<Eigen::Index>(slots[k].in.size)});
  }
  const bool with_future = w.future().size > 1;
  if (with_future) spaces.push_back({kLabelF, static_cast<Eigen::Index>(w.future().size)});
  const Eigen::Index d = detail::total_dim(spaces);
  detail::check_budget(d);
  MatrixXc m = MatrixXc::Zero(d, d);
  for (std::uint64_t oi = 0; oi < w.output_tuple_count(); ++oi) {
    const auto& r = w.row_at(0, oi);
    Eigen::Index idx = static_cast<Eigen::Index>(oi);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      idx = idx * static_cast<Eigen::Index>(slots[k].in.size) + static_cast<Eigen::Index>(r.inputs[k]);
    }
    if (with_future) idx = idx * static_cast<Eigen::Index>(w.future().size) + static_cast<Eigen::Index>(r.future);
    m(idx, idx) = 1.0;
  }
  return Choi(std::move(spaces), std::move(m));
}

NormalizationVerdict check_classical_normalization(const Choi& w, std::size_t slots, std::uint64_t budget,
                                                   double tol) {
  std::vector<Eigen::Index> din(slots);
  std::vector<Eigen::Index> dout(slots);
  std::vector<std::uint64_t> counts(slots);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < slots; ++k) {
    const int pi = w.position(label_i(static_cast<int>(k) + 1));
    const int po = w.position(label_o(static_cast<int>(k) + 1));
    if (pi < 0 || po < 0) throw SignatureMismatch("check_classical_normalization: missing slot labels");
    din[k] = w.spaces()[static_cast<std::size_t>(pi)].dim;
    dout[k] = w.spaces()[static_cast<std::size_t>(po)].dim;
    counts[k] = 1;
    for (Eigen::Index i = 0; i < din[k]; ++i) {
      counts[k] *= static_cast<std::uint64_t>(dout[k]);
      if (counts[k] > budget) throw BudgetExceeded("check_classical_normalization: too many channels");
    }
    total *= counts[k];
    if (total > budget) throw BudgetExceeded("check_classical_normalization: too many channel tuples");
  }

  NormalizationVerdict verdict;
  std::vector<std::uint64_t> codes(slots, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (std::size_t k = slots; k-- > 0;) {
      codes[k] = rest % counts[k];
      rest /= counts[k];
    }
    Choi r = w;
    for (std::size_t k = 0; k < slots; ++k) {
      const auto op = LocalOperation::enumerate(static_cast<std::uint64_t>(din[k]), static_cast<std::uint64_t>(dout[k]),
                                                codes[k]);
      std::vector<std::uint64_t> map(op.map().begin(), op.map().end());
      r = link_product(r, classical_channel<Complex>(map, label_i(static_cast<int>(k) + 1),
                                                     label_o(static_cast<int>(k) + 1), dout[k]));
    }
    ++verdict.tuples_checked;
    const double tr = r.trace().real();
    if (std::abs(tr - 1.0) > tol || std::abs(r.trace().imag()) > tol) {
      verdict.witness = codes;
      verdict.witness_trace = tr;
      return verdict;
    }
  }
  verdict.normalized = true;
  return verdict;
}

}  // namespace icq::quantum
