#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "icq/bits.hpp"
#include "icq/process.hpp"
#include "icq/quantum/choi.hpp"

namespace icq::quantum {

using Choi = ChoiMatrix<Complex>;

/// Dimension of the query register: |0> plus one state per input bit.
inline constexpr Eigen::Index kQueryDim = 7;

/// Diagonal unitary with +1 on |0> and (-1)^{x_i} on |i>, i = 1..|x|.
MatrixXc phase_oracle(const BitString& x);

/// How H_{i,j} is extended beyond its first two columns.
struct Completion {
  enum class Kind { GramSchmidt, Random } kind = Kind::GramSchmidt;
  std::uint64_t seed = 0;

  static Completion gram_schmidt() { return {}; }
  static Completion random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

/// Unitary with H|0> = (|i>+|j>)/sqrt2 and H|1> = (|i>-|j>)/sqrt2. Other
/// columns: Gram-Schmidt over |0>, |1>, ... in order, or a seeded random
/// orthonormal completion.
MatrixXc h_ij(int i, int j, Eigen::Index dim = kQueryDim, const Completion& completion = {});

/// H^dagger O_x H |0> with H = H_{i,j}; equals (-1)^{x_i} |x_i + x_j>
/// (x_0 read as 0).
VectorXc parity_query(int i, int j, const BitString& x, const Completion& completion = {});

/// Slot labels used by the quantum Lugano construction (k is 1-based).
std::string label_i(int k);
std::string label_o(int k);
std::string label_q(int k);
std::string label_q_out(int k);
std::string label_alpha(int k);
inline const std::string kLabelF = "F";

/// Choi of the one-slot supermap G_k on (I_k, Q_k, Q'_k, O_k, alpha_k).
/// Control bit b from I_k prepares H_b|0> on Q_k (H_0 = H_{k,k+3},
/// H_1 = H_{0,k+3}); after the oracle, H_b^dagger is applied to Q'_k and the
/// {|0>,|1>} part of that wire is swapped with the control qubit. The wire
/// ends up in alpha_k, the control in O_k.
Choi g_subroutine(int k, const Completion& completion = {});

/// Choi of the phase oracle as a channel Q_k -> Q'_k.
Choi oracle_choi(const BitString& x, int k);

/// Diagonal Lugano process with a future register copying (o1,o2,o3):
/// spaces O1,O2,O3,I1,I2,I3 (qubits) and F (dimension 8).
Choi w_tilde_lugano();

/// G_k * O_x on (I_k, O_k, alpha_k).
Choi effective_slot(int k, const BitString& x, const Completion& completion = {});

/// The output state on F (x) alpha_1 (x) alpha_2 (x) alpha_3 of the quantum
/// Lugano supermap run on three copies of O_x.
Choi run_f6q(const BitString& x, const Completion& completion = {});

/// The largest computational-basis component of a state on (F, alpha_1..3).
struct RegisterReading {
  std::array<int, 3> f{};
  std::array<int, 3> alpha{};
  double probability = 0.0;
};
RegisterReading dominant_reading(const Choi& rho);

struct Decoded {
  bool bit = false;
  double probability = 0.0;
};

/// Measures alpha in the computational basis. If all alpha_k are 0, any F
/// qubit is read (the first); if alpha_k = 1, F qubit k is read. Throws
/// PreconditionViolated when off-diagonal entries exceed `tol` or alpha
/// shows two 1s or a value above 1 with nonzero probability.
Decoded measure_and_decode(const Choi& rho, double tol = 1e-9);

/// (1/2) ||rho - sigma||_1 via an eigensolve on the joint support.
double trace_distance(const Choi& rho, const Choi& sigma);
double purity(const Choi& rho);
/// Largest |entry| off the diagonal.
double off_diagonal_mass(const Choi& rho);

/// Writes the amplitude vector of a rank-1 state as "index,re,im" lines
/// (nonzero amplitudes only).
void write_state_csv(std::ostream& out, const Choi& rho);

/// sum_o |o><o|_O (x) |w(o)><w(o)|_I (x) |b><b|_F for a process with trivial
/// past. Spaces O1..OT, I1..IT, then F when |F| > 1.
Choi embed_process_function(const TableProcess& w);

struct NormalizationVerdict {
  bool normalized = false;
  std::uint64_t tuples_checked = 0;
  /// Channel codes (LocalOperation::enumerate) of the first failing tuple.
  std::vector<std::uint64_t> witness;
  double witness_trace = 0.0;
};

/// Links W with every tuple of classical deterministic channels I_k -> O_k
/// and checks that each result has unit trace.
NormalizationVerdict check_classical_normalization(const Choi& w, std::size_t slots,
                                                   std::uint64_t budget = std::uint64_t{1} << 16, double tol = 1e-9);

}  // namespace icq::quantum
