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

#ifndef HUBSIM_COMMON_HPP_
#define HUBSIM_COMMON_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hubsim {

typedef std::complex<double> cplx;
typedef Eigen::MatrixXcd DenseMatrix;
typedef Eigen::VectorXcd DenseVector;

/// Raised when a circuit or stage does not fit under the qubit cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& stage, const std::string& what)
      : std::runtime_error(what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Bad parameters (infeasible generator input, insufficient K or D, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool is_pow2(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

// ceil(log2(x)) for x >= 1
inline int ceil_log2(std::int64_t x) {
  int k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

inline std::int64_t next_pow2(std::int64_t x) {
  return std::int64_t{1} << ceil_log2(x < 1 ? 1 : x);
}

}  // namespace hubsim

#endif  // HUBSIM_COMMON_HPP_
