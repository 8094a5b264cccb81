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

#include "hubsim/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace hubsim {

int qubit_cap() {
  if (const char* env = std::getenv("HUBSIM_QUBIT_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 26;
}

// ---------------------------------------------------------------- layout

RegisterLayout::RegisterLayout(RegisterList regs, int cap) : regs_(std::move(regs)) {
  if (cap < 0) cap = qubit_cap();
  for (size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].second < 1)
      throw std::invalid_argument("register '" + regs_[i].first + "' has width < 1");
    for (size_t j = 0; j < i; ++j)
      if (regs_[j].first == regs_[i].first)
        throw std::invalid_argument("duplicate register '" + regs_[i].first + "'");
    total_ += regs_[i].second;
  }
  if (total_ > cap)
    throw ResourceError("layout", "layout needs " + std::to_string(total_) +
                                      " qubits, cap is " + std::to_string(cap));
  offsets_.assign(regs_.size(), 0);
  int off = 0;
  for (size_t i = regs_.size(); i-- > 0;) {
    offsets_[i] = off;
    off += regs_[i].second;
  }
}

int RegisterLayout::find(const std::string& name) const {
  for (size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].first == name) return static_cast<int>(i);
  return -1;
}

bool RegisterLayout::has(const std::string& name) const { return find(name) >= 0; }

int RegisterLayout::width(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw std::invalid_argument("unknown register '" + name + "'");
  return regs_[i].second;
}

int RegisterLayout::offset(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw std::invalid_argument("unknown register '" + name + "'");
  return offsets_[i];
}

std::uint64_t RegisterLayout::index(const std::map<std::string, std::uint64_t>& values) const {
  std::uint64_t idx = 0;
  for (const auto& [name, v] : values) {
    int w = width(name);
    if (v >> w) throw std::invalid_argument("value too wide for register '" + name + "'");
    idx |= v << offset(name);
  }
  return idx;
}

std::uint64_t RegisterLayout::value(std::uint64_t index, const std::string& name) const {
  return (index >> offset(name)) & ((std::uint64_t{1} << width(name)) - 1);
}

// ---------------------------------------------------------------- state

StateVector::StateVector(RegisterLayout layout)
    : layout_(std::move(layout)), amps_(DenseVector::Zero(layout_.dimension())) {
  amps_(0) = 1.0;
}

StateVector::StateVector(RegisterLayout layout, DenseVector amps)
    : layout_(std::move(layout)), amps_(std::move(amps)) {
  if (static_cast<std::uint64_t>(amps_.size()) != layout_.dimension())
    throw std::invalid_argument("amplitude vector does not match layout dimension");
}

StateVector StateVector::basis(RegisterLayout layout,
                               const std::map<std::string, std::uint64_t>& values) {
  StateVector s(std::move(layout));
  s.amps_.setZero();
  s.amps_(s.layout_.index(values)) = 1.0;
  return s;
}

std::int64_t QueryCounter::get(const std::string& tag) const {
  auto it = tally_.find(tag);
  return it == tally_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------- circuit

Circuit::Circuit(std::string name, RegisterList registers)
    : name_(std::move(name)), regs_(std::move(registers)) {
  for (size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].second < 1)
      throw std::invalid_argument(name_ + ": register '" + regs_[i].first + "' has width < 1");
    for (size_t j = 0; j < i; ++j)
      if (regs_[j].first == regs_[i].first)
        throw std::invalid_argument(name_ + ": duplicate register '" + regs_[i].first + "'");
  }
}

bool Circuit::has_register(const std::string& reg) const {
  return std::any_of(regs_.begin(), regs_.end(), [&](const auto& r) { return r.first == reg; });
}

int Circuit::width(const std::string& reg) const {
  for (const auto& r : regs_)
    if (r.first == reg) return r.second;
  throw std::invalid_argument(name_ + ": unknown register '" + reg + "'");
}

int Circuit::total_width() const {
  int w = 0;
  for (const auto& r : regs_) w += r.second;
  return w;
}

void Circuit::check_slice(const Slice& s) const {
  int w = width(s.reg);
  int sw = s.width < 0 ? w - s.lsb : s.width;
  if (s.lsb < 0 || sw < 0 || s.lsb + sw > w)
    throw std::invalid_argument(name_ + ": slice out of range on '" + s.reg + "'");
}

Circuit& Circuit::permutation(std::string label, std::vector<Slice> targets, PermFn fwd,
                              PermFn inv, std::vector<Control> controls, QueryTally queries) {
  for (const auto& t : targets) check_slice(t);
  for (const auto& c : controls) check_slice(c.slice);
  Instruction in;
  in.kind = Instruction::Kind::kPermutation;
  in.label = std::move(label);
  in.targets = std::move(targets);
  in.controls = std::move(controls);
  in.forward = std::move(fwd);
  in.inverse = std::move(inv);
  in.queries = std::move(queries);
  ops_.push_back(std::move(in));
  return *this;
}

Circuit& Circuit::unitary(std::string label, DenseMatrix u, std::vector<Slice> targets,
                          std::vector<Control> controls) {
  int k = 0;
  for (const auto& t : targets) {
    check_slice(t);
    k += t.width < 0 ? width(t.reg) - t.lsb : t.width;
  }
  for (const auto& c : controls) check_slice(c.slice);
  if (u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows())
    throw std::invalid_argument(name_ + ": gate matrix size does not match targets");
  Instruction in;
  in.kind = Instruction::Kind::kMatrix;
  in.label = std::move(label);
  in.targets = std::move(targets);
  in.controls = std::move(controls);
  in.matrix = std::move(u);
  ops_.push_back(std::move(in));
  return *this;
}

Circuit& Circuit::diagonal(std::string label, DiagFn fn, std::vector<Slice> targets,
                           std::vector<Control> controls) {
  for (const auto& t : targets) check_slice(t);
  for (const auto& c : controls) check_slice(c.slice);
  Instruction in;
  in.kind = Instruction::Kind::kDiagonal;
  in.label = std::move(label);
  in.targets = std::move(targets);
  in.controls = std::move(controls);
  in.diagonal = std::move(fn);
  ops_.push_back(std::move(in));
  return *this;
}

Circuit& Circuit::global_phase(cplx phase, std::vector<Control> controls) {
  return diagonal("phase", [phase](const std::uint64_t*) { return phase; }, {},
                  std::move(controls));
}

Circuit& Circuit::call(CircuitPtr callee, std::vector<Slice> args, bool adjoint,
                       std::vector<Control> controls) {
  if (!callee) throw std::invalid_argument(name_ + ": null callee");
  if (args.size() != callee->registers().size())
    throw std::invalid_argument(name_ + ": call to " + callee->name() + " has wrong arity");
  for (size_t i = 0; i < args.size(); ++i) {
    check_slice(args[i]);
    int w = args[i].width < 0 ? width(args[i].reg) - args[i].lsb : args[i].width;
    if (w != callee->registers()[i].second)
      throw std::invalid_argument(name_ + ": width mismatch binding " + callee->name() + "." +
                                  callee->registers()[i].first);
  }
  for (const auto& c : controls) check_slice(c.slice);
  Instruction in;
  in.kind = Instruction::Kind::kCall;
  in.label = callee->name();
  in.targets = std::move(args);
  in.controls = std::move(controls);
  in.callee = std::move(callee);
  in.adjoint = adjoint;
  ops_.push_back(std::move(in));
  return *this;
}

DenseMatrix hadamard_matrix() {
  DenseMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

Circuit& Circuit::h(const Slice& s) {
  check_slice(s);
  int w = s.width < 0 ? width(s.reg) - s.lsb : s.width;
  for (int b = 0; b < w; ++b) unitary("H", hadamard_matrix(), {Slice(s.reg, s.lsb + b, 1)});
  return *this;
}

Circuit& Circuit::x(const Slice& s, std::vector<Control> controls) {
  check_slice(s);
  int w = s.width < 0 ? width(s.reg) - s.lsb : s.width;
  const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
  auto flip = [mask](std::uint64_t* v) { v[0] ^= mask; };
  return permutation("X", {s}, flip, flip, std::move(controls));
}

Circuit& Circuit::swap(const Slice& a, const Slice& b) {
  auto sw = [](std::uint64_t* v) { std::swap(v[0], v[1]); };
  return permutation("SWAP", {a, b}, sw, sw);
}

Circuit& Circuit::rz(double theta, const Slice& qubit) {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return unitary("RZ", m, {qubit});
}

std::int64_t Circuit::gate_count() const {
  std::int64_t n = 0;
  for (const auto& in : ops_)
    n += in.kind == Instruction::Kind::kCall ? in.callee->gate_count() : 1;
  return n;
}

QueryTally Circuit::query_count() const {
  QueryTally q;
  for (const auto& in : ops_) {
    if (in.kind == Instruction::Kind::kCall) {
      for (const auto& [k, v] : in.callee->query_count()) q[k] += v;
    } else {
      for (const auto& [k, v] : in.queries) q[k] += v;
    }
  }
  return q;
}

// ---------------------------------------------------------------- engine

namespace {

typedef std::vector<int> Bits;  // absolute positions, least significant first

struct Frame {
  const Circuit* circ;
  std::vector<Bits> regs;
};

Bits resolve(const Frame& f, const Slice& s) {
  const auto& regs = f.circ->registers();
  for (size_t r = 0; r < regs.size(); ++r) {
    if (regs[r].first != s.reg) continue;
    int w = s.width < 0 ? regs[r].second - s.lsb : s.width;
    return Bits(f.regs[r].begin() + s.lsb, f.regs[r].begin() + s.lsb + w);
  }
  throw std::invalid_argument("unknown register '" + s.reg + "'");
}

inline std::uint64_t gather(std::uint64_t x, const Bits& p) {
  std::uint64_t v = 0;
  for (size_t b = 0; b < p.size(); ++b) v |= ((x >> p[b]) & 1u) << b;
  return v;
}

inline std::uint64_t spread(std::uint64_t v, const Bits& p) {
  std::uint64_t x = 0;
  for (size_t b = 0; b < p.size(); ++b) x |= ((v >> b) & 1u) << p[b];
  return x;
}

inline std::uint64_t mask_of(const Bits& p) { return spread(~std::uint64_t{0}, p); }

class Engine {
 public:
  Engine(Batch* amps, QueryCounter* counter) : amps_(amps), counter_(counter) {
    dim_ = static_cast<std::uint64_t>(amps->rows());
  }

  void run(const Frame& f, std::uint64_t cmask, std::uint64_t cval, bool adj) {
    const auto& ops = f.circ->instructions();
    const size_t n = ops.size();
    for (size_t k = 0; k < n; ++k) {
      const Instruction& in = ops[adj ? n - 1 - k : k];
      std::uint64_t m = cmask, v = cval;
      for (const auto& c : in.controls) {
        Bits p = resolve(f, c.slice);
        if (p.size() < 64 && (c.value >> p.size()))
          throw std::invalid_argument("control value too wide in " + f.circ->name());
        m |= mask_of(p);
        v |= spread(c.value, p);
      }
      switch (in.kind) {
        case Instruction::Kind::kPermutation:
          permute(f, in, m, v, adj);
          break;
        case Instruction::Kind::kMatrix:
          matrix(f, in, m, v, adj);
          break;
        case Instruction::Kind::kDiagonal:
          diagonal(f, in, m, v, adj);
          break;
        case Instruction::Kind::kCall: {
          Frame child{in.callee.get(), {}};
          for (const auto& a : in.targets) child.regs.push_back(resolve(f, a));
          run(child, m, v, adj != in.adjoint);
          break;
        }
      }
    }
  }

 private:
  void permute(const Frame& f, const Instruction& in, std::uint64_t cm, std::uint64_t cv,
               bool adj) {
    if (counter_)
      for (const auto& [tag, c] : in.queries) counter_->add(tag, c);
    std::vector<Bits> t;
    std::uint64_t tmask = 0;
    for (const auto& s : in.targets) {
      t.push_back(resolve(f, s));
      tmask |= mask_of(t.back());
    }
    if (tmask & cm) throw std::logic_error("control overlaps target in " + f.circ->name());
    const PermFn& fn = adj ? in.inverse : in.forward;
    scratch_.resize(amps_->rows(), amps_->cols());
    std::vector<std::uint64_t> vals(t.size());
    for (std::uint64_t x = 0; x < dim_; ++x) {
      std::uint64_t y = x;
      if ((x & cm) == cv) {
        for (size_t i = 0; i < t.size(); ++i) vals[i] = gather(x, t[i]);
        fn(vals.data());
        y = x & ~tmask;
        for (size_t i = 0; i < t.size(); ++i) y |= spread(vals[i], t[i]);
      }
      scratch_.row(y) = amps_->row(x);
    }
    amps_->swap(scratch_);
  }

  void matrix(const Frame& f, const Instruction& in, std::uint64_t cm, std::uint64_t cv,
              bool adj) {
    Bits q;  // least significant first: last target supplies the low bits
    for (size_t i = in.targets.size(); i-- > 0;) {
      Bits p = resolve(f, in.targets[i]);
      q.insert(q.end(), p.begin(), p.end());
    }
    const std::uint64_t qmask = mask_of(q);
    if (qmask & cm) throw std::logic_error("control overlaps target in " + f.circ->name());
    const DenseMatrix u = adj ? DenseMatrix(in.matrix.adjoint()) : in.matrix;
    const Eigen::Index k = u.rows();
    const Eigen::Index cols = amps_->cols();
    if (k == 2) {
      const std::uint64_t hi = std::uint64_t{1} << q[0];
      const cplx a = u(0, 0), b = u(0, 1), c = u(1, 0), d = u(1, 1);
      for (std::uint64_t x = 0; x < dim_; ++x) {
        if ((x & hi) || (x & cm) != cv) continue;
        cplx* r0 = amps_->row(x).data();
        cplx* r1 = amps_->row(x | hi).data();
        for (Eigen::Index j = 0; j < cols; ++j) {
          const cplx p0 = r0[j], p1 = r1[j];
          r0[j] = a * p0 + b * p1;
          r1[j] = c * p0 + d * p1;
        }
      }
      return;
    }
    std::vector<std::uint64_t> off(k);
    for (Eigen::Index r = 0; r < k; ++r) off[r] = spread(r, q);
    Batch tmp(k, cols);
    for (std::uint64_t x = 0; x < dim_; ++x) {
      if ((x & qmask) || (x & cm) != cv) continue;
      for (Eigen::Index r = 0; r < k; ++r) tmp.row(r) = amps_->row(x | off[r]);
      Batch out = u * tmp;
      for (Eigen::Index r = 0; r < k; ++r) amps_->row(x | off[r]) = out.row(r);
    }
  }

  void diagonal(const Frame& f, const Instruction& in, std::uint64_t cm, std::uint64_t cv,
                bool adj) {
    std::vector<Bits> t;
    for (const auto& s : in.targets) t.push_back(resolve(f, s));
    std::vector<std::uint64_t> vals(t.size());
    for (std::uint64_t x = 0; x < dim_; ++x) {
      if ((x & cm) != cv) continue;
      for (size_t i = 0; i < t.size(); ++i) vals[i] = gather(x, t[i]);
      cplx z = in.diagonal(vals.data());
      if (adj) z = std::conj(z);
      amps_->row(x) *= z;
    }
  }

  Batch* amps_;
  Batch scratch_;
  QueryCounter* counter_;
  std::uint64_t dim_;
};

Frame top_frame(const Circuit& op, const RegisterLayout& layout, const Binding& binding) {
  Frame f{&op, {}};
  for (const auto& [name, w] : op.registers()) {
    auto it = binding.find(name);
    const std::string& target = it == binding.end() ? name : it->second;
    if (!layout.has(target))
      throw std::invalid_argument("register '" + target + "' not in layout");
    if (layout.width(target) != w)
      throw std::invalid_argument("width mismatch binding '" + name + "' to '" + target + "'");
    Bits p(w);
    std::iota(p.begin(), p.end(), layout.offset(target));
    f.regs.push_back(std::move(p));
  }
  return f;
}

}  // namespace

void apply_batch(const Circuit& op, Batch& amps, const RegisterLayout& layout,
                 const Binding& binding, QueryCounter* counter, bool adjoint) {
  if (static_cast<std::uint64_t>(amps.rows()) != layout.dimension())
    throw std::invalid_argument("batch rows do not match layout dimension");
  Frame f = top_frame(op, layout, binding);
  Engine e(&amps, counter);
  e.run(f, 0, 0, adjoint);
}

StateVector apply_embedded(const Circuit& op, const StateVector& state, const Binding& binding,
                           QueryCounter* counter, bool adjoint) {
  Batch b = state.amplitudes();
  apply_batch(op, b, state.layout(), binding, counter, adjoint);
  return StateVector(state.layout(), DenseVector(b.col(0)));
}

DenseMatrix extract_block(const Circuit& op, const std::vector<std::string>& ancillas,
                          std::uint64_t projector_value, int max_system_qubits) {
  RegisterLayout layout(op.registers());
  Bits anc, sys;
  const auto& regs = op.registers();
  for (size_t i = regs.size(); i-- > 0;) {
    const auto& [name, w] = regs[i];
    bool is_anc = std::find(ancillas.begin(), ancillas.end(), name) != ancillas.end();
    Bits& dst = is_anc ? anc : sys;
    for (int b = 0; b < w; ++b) dst.push_back(layout.offset(name) + b);
  }
  for (const auto& a : ancillas)
    if (!layout.has(a)) throw std::invalid_argument("unknown ancilla register '" + a + "'");
  if (static_cast<int>(sys.size()) > max_system_qubits)
    throw ResourceError("extract_block", "system of " + std::to_string(sys.size()) +
                                             " qubits is too large for dense extraction");
  const Eigen::Index n = Eigen::Index{1} << sys.size();
  const std::uint64_t a0 = spread(projector_value, anc);
  Batch b = Batch::Zero(layout.dimension(), n);
  for (Eigen::Index j = 0; j < n; ++j) b(a0 | spread(j, sys), j) = 1.0;
  apply_batch(op, b, layout);
  DenseMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = b.row(a0 | spread(i, sys));
  return out;
}

DenseMatrix extract_block(const Circuit& op) {
  std::vector<std::string> anc;
  for (const auto& r : op.registers())
    if (r.first != "sys") anc.push_back(r.first);
  if (anc.size() == op.registers().size())
    throw std::invalid_argument(op.name() + " has no 'sys' register");
  return extract_block(op, anc);
}

double spectral_norm(const DenseMatrix& b, double tol, int max_iter) {
  if (b.size() == 0) return 0.0;
  const Eigen::Index n = b.cols();
  DenseVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(1.0 + 0.37 * std::sin(1.3 * i + 0.5), 0.11 * std::cos(0.7 * i));
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    DenseVector w = b.adjoint() * (b * v);
    double nl = w.norm();
    if (nl == 0.0) return 0.0;
    v = w / nl;
    if (std::abs(nl - lam) <= tol * std::max(nl, 1e-300)) {
      lam = nl;
      break;
    }
    lam = nl;
  }
  return std::sqrt(lam);
}

}  // namespace hubsim
