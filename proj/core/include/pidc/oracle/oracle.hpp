#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/matrix.hpp"
#include "pidc/ring/integer_ring.hpp"

namespace pidc::oracle {

// Brute-force checks over prime fields Z/p with plain machine arithmetic.
// Nothing here uses the library's field types or linear algebra, so the
// answers are independent of the code they are compared against.

struct OracleReport {
  std::string claim;
  std::uint64_t enumerated = 0;
  bool agree = true;
  std::string counterexample;
};

using Mat = std::vector<std::vector<std::uint64_t>>;

Mat reduce(const Matrix<Integer>& a, std::uint64_t p);
Matrix<Integer> lift(const Mat& a);

/// Rank over Z/p by Gaussian elimination.
std::size_t rank_mod(Mat m, std::uint64_t p);

/// dim {Y : XY = YX} over Z/p, the nullity of Y -> XY - YX.
std::size_t brute_centralizer_dim(const Matrix<Integer>& x, std::uint64_t p);

/// True iff some vector v over Z/p has v, Xv, ..., X^{n-1}v independent,
/// found by trying all p^n vectors. Throws BudgetExceeded past 10^6.
bool brute_regularity(const Matrix<Integer>& x, std::uint64_t p);

/// Every trace-zero n x n matrix over Z/q is run through field_commutator;
/// each witness is recomputed and X checked regular by brute_regularity.
OracleReport exhaustive_field_commutators(std::size_t n, std::uint64_t q);

/// Dimension of the span of the given matrices over Z/p.
std::size_t span_dim(const std::vector<Matrix<Integer>>& mats, std::uint64_t p);

}  // namespace pidc::oracle
