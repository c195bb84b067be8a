#include "pidc/oracle/oracle.hpp"

#include "pidc/commutator/field.hpp"
#include "pidc/matrix/field_maps.hpp"
#include "pidc/ring/residue_field.hpp"

namespace pidc::oracle {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

std::vector<std::uint64_t> apply(const Mat& a, const std::vector<std::uint64_t>& v, std::uint64_t p) {
  std::vector<std::uint64_t> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = (out[i] + mulmod(a[i][j], v[j], p)) % p;
  return out;
}

}  // namespace

Mat reduce(const Matrix<Integer>& a, std::uint64_t p) {
  Mat m(a.rows(), std::vector<std::uint64_t>(a.cols(), 0));
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer v = a(i, j) % pz;
      if (v < 0) v += pz;
      m[i][j] = v.get_ui();
    }
  return m;
}

Matrix<Integer> lift(const Mat& a) {
  Matrix<Integer> m(a.size(), a.empty() ? 0 : a[0].size(), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m(i, j) = Integer(static_cast<unsigned long>(a[i][j]));
  return m;
}

std::size_t rank_mod(Mat m, std::uint64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::uint64_t inv = powmod(m[r][c], p - 2, p);
    for (auto& v : m[r]) v = mulmod(v, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + p - mulmod(f, m[r][j], p)) % p;
    }
    ++r;
  }
  return r;
}

std::size_t brute_centralizer_dim(const Matrix<Integer>& x, std::uint64_t p) {
  const std::size_t n = x.rows();
  auto xm = reduce(x, p);
  // Row (i, j) of the operator, column (l, k): coefficient of Y_lk in (XY - YX)_ij.
  Mat op(n * n, std::vector<std::uint64_t>(n * n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        auto& a = op[i * n + j][l * n + j];
        a = (a + xm[i][l]) % p;
        auto& b = op[i * n + j][i * n + l];
        b = (b + p - xm[l][j]) % p;
      }
  return n * n - rank_mod(op, p);
}

bool brute_regularity(const Matrix<Integer>& x, std::uint64_t p) {
  const std::size_t n = x.rows();
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(p);
  if (total > 1e6) throw BudgetExceeded("brute_regularity: p^n exceeds 10^6");
  auto xm = reduce(x, p);
  std::vector<std::uint64_t> v(n, 0);
  const auto count = static_cast<std::uint64_t>(total);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = t % p;
      t /= p;
    }
    Mat kry;
    auto w = v;
    for (std::size_t k = 0; k < n; ++k) {
      kry.push_back(w);
      w = apply(xm, w, p);
    }
    if (rank_mod(kry, p) == n) return true;
  }
  return false;
}

std::size_t span_dim(const std::vector<Matrix<Integer>>& mats, std::uint64_t p) {
  Mat rows;
  for (const auto& m : mats) {
    auto r = reduce(m, p);
    std::vector<std::uint64_t> flat;
    for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
    rows.push_back(flat);
  }
  return rank_mod(rows, p);
}

OracleReport exhaustive_field_commutators(std::size_t n, std::uint64_t q) {
  OracleReport rep;
  rep.claim = "every trace-zero " + std::to_string(n) + "x" + std::to_string(n) + " matrix over F_" +
              std::to_string(q) + " is [X, Y] with X regular";
  const std::size_t free = n * n - 1;
  double total = 1;
  for (std::size_t i = 0; i < free; ++i) total *= static_cast<double>(q);
  if (total > 1e7) throw BudgetExceeded("exhaustive_field_commutators: q^(n^2-1) exceeds 10^7");
  IntegerRing zz;
  ResidueField<IntegerRing> f(zz, Integer(static_cast<unsigned long>(q)));
  const auto count = static_cast<std::uint64_t>(total);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Mat a(n, std::vector<std::uint64_t>(n, 0));
    std::uint64_t t = idx, trace = 0;
    for (std::size_t e = 0; e < free; ++e) {
      a[e / n][e % n] = t % q;
      t /= q;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) trace = (trace + a[i][i]) % q;
    a[n - 1][n - 1] = (q - trace) % q;
    ++rep.enumerated;
    auto am = reduce_mod(f, lift(a));
    std::string problem;
    try {
      auto w = field_commutator(f, am);
      auto diff = reduce(lift_residues(f, commutator(w.x, w.y)), q);
      if (diff != a) problem = "XY - YX != A";
      else if (!brute_regularity(lift_residues(f, w.x), q)) problem = "X is not regular";
    } catch (const Error& e) {
      problem = e.what();
    }
    if (!problem.empty() && rep.agree) {
      rep.agree = false;
      std::string s;
      for (const auto& row : a)
        for (auto v : row) s += std::to_string(v) + " ";
      rep.counterexample = s + ": " + problem;
    }
  }
  return rep;
}

}  // namespace pidc::oracle
