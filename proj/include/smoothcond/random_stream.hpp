#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace smoothcond {

/// Counter-based, splittable 64-bit generator (SplitMix64).
///
/// A stream is fully determined by its 64-bit key; `derive` maps
/// (master seed, index) to an independent key, so the stream used for
/// trial i does not depend on which thread runs it or in what order.
/// Satisfies UniformRandomBitGenerator, so std distributions accept it.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : key_(mix(key)) {}

  /// Stream for trial `index` under `master_seed`.
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t index);

  /// Child stream; the parent state is left untouched.
  RandomStream split(std::uint64_t index) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    counter_ += kGolden;
    return mix(key_ + counter_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Standard complex Gaussian: E|z|^2 = 1.
  std::complex<double> complex_normal();
  Eigen::VectorXcd complex_normal_vector(Eigen::Index size);
  Eigen::MatrixXcd complex_normal_matrix(Eigen::Index rows, Eigen::Index cols);

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace smoothcond
