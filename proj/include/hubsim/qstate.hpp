// Copyright 2025 The hubsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HUBSIM_QSTATE_HPP_
#define HUBSIM_QSTATE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hubsim/common.hpp"

namespace hubsim {

/// Qubit cap for any executed layout. HUBSIM_QUBIT_CAP overrides the default of 26.
int qubit_cap();

typedef std::vector<std::pair<std::string, int>> RegisterList;

/// Named registers, most significant first. The last register holds the
/// lowest bits of the basis index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(RegisterList regs, int cap = -1);

  const RegisterList& registers() const { return regs_; }
  int total_width() const { return total_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << total_; }
  bool has(const std::string& name) const;
  int width(const std::string& name) const;
  // bit position of the register's least significant qubit
  int offset(const std::string& name) const;

  std::uint64_t index(const std::map<std::string, std::uint64_t>& values) const;
  std::uint64_t value(std::uint64_t index, const std::string& name) const;

 private:
  int find(const std::string& name) const;
  RegisterList regs_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// Amplitudes over a register layout.
class StateVector {
 public:
  explicit StateVector(RegisterLayout layout);
  StateVector(RegisterLayout layout, DenseVector amps);

  static StateVector basis(RegisterLayout layout,
                           const std::map<std::string, std::uint64_t>& values);

  const RegisterLayout& layout() const { return layout_; }
  const DenseVector& amplitudes() const { return amps_; }
  DenseVector& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  RegisterLayout layout_;
  DenseVector amps_;
};

/// Contiguous bits of one register: `width` qubits starting at bit `lsb`.
/// width < 0 means "up to the top of the register".
struct Slice {
  std::string reg;
  int lsb = 0;
  int width = -1;

  Slice(const char* r) : reg(r) {}  // NOLINT: registers read naturally as strings
  Slice(std::string r) : reg(std::move(r)) {}  // NOLINT
  Slice(std::string r, int lo, int w) : reg(std::move(r)), lsb(lo), width(w) {}
};

inline Slice bit(const std::string& reg, int k) { return Slice(reg, k, 1); }

struct Control {
  Slice slice;
  std::uint64_t value = 1;
};

typedef std::map<std::string, std::int64_t> QueryTally;

/// Oracle-call tally for one execution context.
class QueryCounter {
 public:
  void add(const std::string& tag, std::int64_t n = 1) { tally_[tag] += n; }
  std::int64_t get(const std::string& tag) const;
  const QueryTally& tally() const { return tally_; }
  void reset() { tally_.clear(); }

 private:
  QueryTally tally_;
};

class Circuit;
typedef std::shared_ptr<const Circuit> CircuitPtr;

// basis-state maps act in place on the values of the target slices
typedef std::function<void(std::uint64_t* vals)> PermFn;
typedef std::function<cplx(const std::uint64_t* vals)> DiagFn;

struct Instruction {
  enum class Kind { kPermutation, kMatrix, kDiagonal, kCall };
  Kind kind = Kind::kPermutation;
  std::string label;
  std::vector<Slice> targets;
  std::vector<Control> controls;
  PermFn forward;
  PermFn inverse;
  DenseMatrix matrix;  // first target is most significant
  DiagFn diagonal;
  CircuitPtr callee;
  bool adjoint = false;
  QueryTally queries;  // oracle calls charged per application
};

/// A unitary described as a list of instructions over named registers.
/// Nothing is stored densely except small gate matrices.
class Circuit {
 public:
  Circuit(std::string name, RegisterList registers);

  const std::string& name() const { return name_; }
  const RegisterList& registers() const { return regs_; }
  bool has_register(const std::string& reg) const;
  int width(const std::string& reg) const;
  int total_width() const;
  const std::vector<Instruction>& instructions() const { return ops_; }

  Circuit& permutation(std::string label, std::vector<Slice> targets, PermFn fwd, PermFn inv,
                       std::vector<Control> controls = {}, QueryTally queries = {});
  Circuit& unitary(std::string label, DenseMatrix u, std::vector<Slice> targets,
                   std::vector<Control> controls = {});
  Circuit& diagonal(std::string label, DiagFn fn, std::vector<Slice> targets,
                    std::vector<Control> controls = {});
  Circuit& global_phase(cplx phase, std::vector<Control> controls = {});
  Circuit& call(CircuitPtr callee, std::vector<Slice> args, bool adjoint = false,
                std::vector<Control> controls = {});

  Circuit& h(const Slice& s);
  Circuit& x(const Slice& s, std::vector<Control> controls = {});
  Circuit& swap(const Slice& a, const Slice& b);
  Circuit& rz(double theta, const Slice& qubit);

  /// Primitive gate count with calls expanded.
  std::int64_t gate_count() const;
  /// Oracle calls per invocation, summed through calls.
  QueryTally query_count() const;

 private:
  void check_slice(const Slice& s) const;
  std::string name_;
  RegisterList regs_;
  std::vector<Instruction> ops_;
};

typedef std::map<std::string, std::string> Binding;

// Rows are basis states, columns are independent states.
typedef Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Batch;

void apply_batch(const Circuit& op, Batch& amps, const RegisterLayout& layout,
                 const Binding& binding = {}, QueryCounter* counter = nullptr,
                 bool adjoint = false);

/// Applies `op` to the registers named by `binding` (op register -> layout
/// register; unnamed registers bind to the same name). Identity elsewhere.
StateVector apply_embedded(const Circuit& op, const StateVector& state,
                           const Binding& binding = {}, QueryCounter* counter = nullptr,
                           bool adjoint = false);

/// (<p| (x) I) U (|p> (x) I) over the listed ancilla registers; the system is
/// every other register, in circuit order.
DenseMatrix extract_block(const Circuit& op, const std::vector<std::string>& ancillas,
                          std::uint64_t projector_value = 0, int max_system_qubits = 12);

/// Block on register "sys" with every other register as ancilla.
DenseMatrix extract_block(const Circuit& op);

/// Largest singular value by power iteration on B^dagger B.
double spectral_norm(const DenseMatrix& b, double tol = 1e-10, int max_iter = 1000);

DenseMatrix hadamard_matrix();

}  // namespace hubsim

#endif  // HUBSIM_QSTATE_HPP_
