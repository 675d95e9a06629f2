#pragma once

#include "cusp/gaussian_rational.hpp"
#include "cusp/number_field.hpp"

#include <optional>
#include <vector>

namespace cusp {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Rank by exact Gaussian elimination.
int rank(Matrix<GaussianRational> m);
int rank(Matrix<KElem> m);

/// A nonzero vector in the kernel of m, if any.
std::optional<std::vector<KElem>> kernel_vector(Matrix<KElem> m);

Matrix<GaussianRational> transpose(const Matrix<GaussianRational>& m);

/// Solves a square system exactly; nullopt if singular.
std::optional<std::vector<GaussianRational>> solve(Matrix<GaussianRational> a, std::vector<GaussianRational> b);

/// Diagonal of the Smith normal form of an integer matrix (non-negative,
/// each dividing the next, zeros last).
std::vector<Integer> smith_diagonal(Matrix<Integer> m);

}  // namespace cusp
