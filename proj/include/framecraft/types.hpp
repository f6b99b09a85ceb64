// Copyright 2026 The Framecraft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRAMECRAFT_TYPES_HPP_
#define FRAMECRAFT_TYPES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace framecraft {

// Tolerances shared by every module.
inline constexpr double kSimplexTol = 1e-9;
inline constexpr double kLpTol = 1e-9;
inline constexpr double kTieTol = 1e-9;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Builds from nested rows; every row must have the same length.
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  std::vector<std::vector<double>> ToRows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A probability vector over the instance's states.
class Belief {
 public:
  Belief() = default;
  // Throws ValidationError unless entries are nonnegative and sum to one
  // within kSimplexTol. Entries in [-1e-12, 0) are clipped to zero.
  explicit Belief(std::vector<double> probs);

  // Divides by the sum; the input must be nonnegative with a positive sum.
  static Belief Normalized(std::vector<double> weights);
  static Belief Uniform(std::size_t n);
  static Belief PointMass(std::size_t n, std::size_t index);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<double>& vec() const { return probs_; }
  double min() const;

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  std::vector<double> probs_;
};

double L1Distance(std::span<const double> a, std::span<const double> b);

// Row-stochastic map pi[state][signal].
class SignalingScheme {
 public:
  SignalingScheme() = default;
  // Throws ValidationError unless every row is nonnegative and sums to one.
  SignalingScheme(std::vector<std::string> signals, Matrix probs);

  // Every state sends the same single signal.
  static SignalingScheme Uninformative(std::size_t num_states, std::string signal);

  const std::vector<std::string>& signals() const { return signals_; }
  const Matrix& probs() const { return probs_; }
  std::size_t num_states() const { return probs_.rows(); }
  std::size_t num_signals() const { return signals_.size(); }
  double operator()(std::size_t state, std::size_t signal) const {
    return probs_(state, signal);
  }
  std::optional<std::size_t> signal_index(const std::string& label) const;

  friend bool operator==(const SignalingScheme&, const SignalingScheme&) = default;

 private:
  std::vector<std::string> signals_;
  Matrix probs_;
};

// Affine maps taking raw utilities to [0,1]: normalized = (raw - offset) / scale.
struct NormalizationRecord {
  double sender_offset = 0.0;
  double sender_scale = 1.0;
  double receiver_offset = 0.0;
  double receiver_scale = 1.0;

  double SenderToRaw(double normalized) const {
    return normalized * sender_scale + sender_offset;
  }
  double SenderFromRaw(double raw) const { return (raw - sender_offset) / sender_scale; }
  double ReceiverToRaw(double normalized) const {
    return normalized * receiver_scale + receiver_offset;
  }
};

struct EpsilonObedience {
  double epsilon = 0.0;

  EpsilonObedience() = default;
  // Throws ValidationError outside [0, 1].
  explicit EpsilonObedience(double eps);
};

// A persuasion instance. Utilities are stored normalized to [0,1] with rows
// indexed by action and columns by state. Forbidden (action, state) cells can
// never be recommended by a designed scheme.
class Instance {
 public:
  Instance() = default;
  // Utilities are taken as already normalized; the record says how to undo it.
  Instance(std::vector<std::string> states, std::vector<std::string> actions, Belief prior,
           Matrix sender_utility, Matrix receiver_utility,
           NormalizationRecord normalization = {},
           std::vector<std::pair<std::size_t, std::size_t>> forbidden = {});

  // Normalizes raw utilities with NormalizeUtilities first. Forbidden cells
  // are excluded from the min/max and stored as 0.
  static Instance FromRaw(std::vector<std::string> states, std::vector<std::string> actions,
                          Belief prior, const Matrix& raw_sender, const Matrix& raw_receiver,
                          std::vector<std::pair<std::size_t, std::size_t>> forbidden = {});

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& actions() const { return actions_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  const Belief& prior() const { return prior_; }
  const Matrix& sender_utility() const { return sender_; }
  const Matrix& receiver_utility() const { return receiver_; }
  double u(std::size_t action, std::size_t state) const { return sender_(action, state); }
  double v(std::size_t action, std::size_t state) const { return receiver_(action, state); }
  const NormalizationRecord& normalization() const { return normalization_; }
  bool forbidden(std::size_t action, std::size_t state) const {
    return forbidden_mask_[action * states_.size() + state] != 0;
  }
  const std::vector<std::pair<std::size_t, std::size_t>>& forbidden_pairs() const {
    return forbidden_;
  }

  std::optional<std::size_t> action_index(const std::string& label) const;
  std::optional<std::size_t> state_index(const std::string& label) const;

  // Same utilities and labels with a different sender prior.
  Instance WithPrior(Belief prior) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  Belief prior_;
  Matrix sender_;
  Matrix receiver_;
  NormalizationRecord normalization_;
  std::vector<std::pair<std::size_t, std::size_t>> forbidden_;
  std::vector<char> forbidden_mask_;
};

}  // namespace framecraft

#endif  // FRAMECRAFT_TYPES_HPP_
