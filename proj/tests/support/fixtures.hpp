#pragma once

// A synthetic contact 3-structure on S^19 whose D splits with quaternionic
// dimensions (2, 2). R^20 = H + H^2 + H^2 with
//   xi_i(x) = (x0 * e_i, e_i * x1, x2 * e_i)
// (right multiplication on the first and last blocks, left multiplication
// on the middle one). At points of the first block, D = H^2 + H^2 and
// phi1 phi2 phi3 is +Id on the middle block and -Id on the last one.

#include <array>

#include <sasaki/constructions.hpp>
#include <sasaki/sphere.hpp>

#include "oracles.hpp"

namespace fixture {

using sasaki::Matrix;
using sasaki::Vector;

/// Left multiplication by i, j, k on H^blocks.
inline std::array<Matrix, 3> left_multiplication(int blocks) {
  const Eigen::Index dim = 4 * blocks;
  std::array<Matrix, 3> l{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  // i q = (-b, a, -d, c), j q = (-c, d, a, -b), k q = (-d, -c, b, a).
  const int cols[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const double signs[3][4] = {{-1, 1, -1, 1}, {-1, 1, 1, -1}, {-1, -1, 1, 1}};
  for (int b = 0; b < blocks; ++b) {
    for (int u = 0; u < 3; ++u) {
      for (int r = 0; r < 4; ++r) l[u](4 * b + r, 4 * b + cols[u][r]) = signs[u][r];
    }
  }
  return l;
}

struct SplitFixture {
  sasaki::MetricField metric = sasaki::MetricField::round();
  std::array<Matrix, 3> matrices;
  std::array<sasaki::VectorField, 3> xi{sasaki::VectorField::linear(Matrix::Zero(4, 4)),
                                        sasaki::VectorField::linear(Matrix::Zero(4, 4)),
                                        sasaki::VectorField::linear(Matrix::Zero(4, 4))};
  sasaki::SampleSet samples;
};

inline SplitFixture split_fixture(int count = 12, std::uint64_t seed = 5) {
  SplitFixture f;
  const auto right1 = sasaki::quaternionic_structures(0);
  const auto left = left_multiplication(2);
  const auto right2 = sasaki::quaternionic_structures(1);
  for (int i = 0; i < 3; ++i) {
    Matrix m = Matrix::Zero(20, 20);
    m.block(0, 0, 4, 4) = right1[static_cast<std::size_t>(i)];
    m.block(4, 4, 8, 8) = left[static_cast<std::size_t>(i)];
    m.block(12, 12, 8, 8) = right2[static_cast<std::size_t>(i)];
    f.matrices[static_cast<std::size_t>(i)] = m;
    f.xi[static_cast<std::size_t>(i)] = sasaki::VectorField::linear(m, "xi" + std::to_string(i + 1));
  }
  std::mt19937_64 rng(seed);
  f.samples.seed = seed;
  f.samples.count = count;
  f.samples.n = 9;
  for (int k = 0; k < count; ++k) {
    Vector p = Vector::Zero(20);
    p.head(4) = oracle::random_unit(rng, 4);
    f.samples.points.emplace_back(p);
  }
  return f;
}

}  // namespace fixture
