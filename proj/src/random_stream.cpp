#include "smoothcond/random_stream.hpp"

#include <cmath>

namespace smoothcond {

RandomStream RandomStream::derive(std::uint64_t master_seed, std::uint64_t index) {
  return RandomStream(master_seed).split(index);
}

RandomStream RandomStream::split(std::uint64_t index) const {
  // Two rounds of mixing decorrelate neighbouring indices under one key.
  return RandomStream(mix(key_ ^ mix(index + kGolden)) + index);
}

double RandomStream::uniform() {
  // 53 random mantissa bits, shifted by half an ulp to exclude 0.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() { return normal_(*this); }

std::complex<double> RandomStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Eigen::VectorXcd RandomStream::complex_normal_vector(Eigen::Index size) {
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = complex_normal();
  return v;
}

Eigen::MatrixXcd RandomStream::complex_normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
  return m;
}

}  // namespace smoothcond
