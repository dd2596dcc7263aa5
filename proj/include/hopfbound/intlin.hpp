#pragma once

// Exact integer linear algebra over dense Eigen matrices.
//
// Matrices are templated on the scalar; the default scalar is an
// arbitrary-precision integer so relation matrices never overflow.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfbound/words.hpp"

namespace hopfbound::intlin {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

template <typename Scalar = BigInt>
using IntMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

/// Unimodular row/column operation recorded by smith_normal_form.
template <typename Scalar>
struct ElementaryOp {
  enum class Kind { swap_rows, swap_cols, add_row, add_col, negate_row };
  Kind kind;
  Index target;  // row/column that changes
  Index source;  // for swaps and additions
  Scalar factor{0};  // target += factor * source
};

template <typename Scalar = BigInt>
struct SmithForm {
  /// Nonzero invariant factors d_1 | d_2 | ... | d_rank, all positive.
  std::vector<Scalar> invariant_factors;
  Index rows = 0;
  Index cols = 0;
  /// Operations taking the input to diagonal form, in application order.
  std::vector<ElementaryOp<Scalar>> log;

  Index rank() const { return static_cast<Index>(invariant_factors.size()); }
  /// Free rank of the cokernel Z^cols / rowspace.
  Index free_rank() const { return cols - rank(); }
};

/// Applies a recorded operation sequence to m.
template <typename Scalar>
void apply_ops(IntMatrix<Scalar>& m, const std::vector<ElementaryOp<Scalar>>& log) {
  using Kind = typename ElementaryOp<Scalar>::Kind;
  for (const auto& op : log) {
    switch (op.kind) {
      case Kind::swap_rows: m.row(op.target).swap(m.row(op.source)); break;
      case Kind::swap_cols: m.col(op.target).swap(m.col(op.source)); break;
      case Kind::add_row: m.row(op.target) += op.factor * m.row(op.source); break;
      case Kind::add_col: m.col(op.target) += op.factor * m.col(op.source); break;
      case Kind::negate_row: m.row(op.target) = -m.row(op.target); break;
    }
  }
}

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

}  // namespace detail

/// Smith normal form by gcd-driven elimination, pivoting on the entry of
/// minimal nonzero absolute value.
template <typename Scalar>
SmithForm<Scalar> smith_normal_form(IntMatrix<Scalar> a) {
  using Op = ElementaryOp<Scalar>;
  using Kind = typename Op::Kind;
  SmithForm<Scalar> out;
  out.rows = a.rows();
  out.cols = a.cols();
  const Index m = a.rows();
  const Index n = a.cols();

  auto row_add = [&](Index target, Index source, const Scalar& f) {
    a.row(target) += f * a.row(source);
    out.log.push_back({Kind::add_row, target, source, f});
  };
  auto col_add = [&](Index target, Index source, const Scalar& f) {
    a.col(target) += f * a.col(source);
    out.log.push_back({Kind::add_col, target, source, f});
  };

  for (Index t = 0; t < std::min(m, n); ++t) {
    bool found_any = true;
    for (;;) {
      Index pi = -1, pj = -1;
      Scalar best{0};
      for (Index i = t; i < m; ++i)
        for (Index j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          Scalar v = detail::abs_value(a(i, j));
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        found_any = false;
        break;
      }
      if (pi != t) {
        a.row(t).swap(a.row(pi));
        out.log.push_back({Kind::swap_rows, t, pi, Scalar(0)});
      }
      if (pj != t) {
        a.col(t).swap(a.col(pj));
        out.log.push_back({Kind::swap_cols, t, pj, Scalar(0)});
      }

      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        const Scalar q = a(i, t) / a(t, t);
        if (q != 0) row_add(i, t, Scalar(-q));
        if (a(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const Scalar q = a(t, j) / a(t, t);
        if (q != 0) col_add(j, t, Scalar(-q));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole remaining block.
      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_add(t, bad, Scalar(1));
    }
    if (!found_any) break;
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      out.log.push_back({Kind::negate_row, t, t, Scalar(0)});
    }
    out.invariant_factors.push_back(a(t, t));
  }
  return out;
}

/// One row per relator, one column per generator: exponent sums.
IntMatrix<> relation_matrix(const Presentation& p);

/// Every entry multiplied by ell. Returns an Eigen expression.
template <typename Derived>
auto scale_matrix(const Eigen::MatrixBase<Derived>& m, std::uint32_t ell) {
  using Scalar = typename Derived::Scalar;
  return m.unaryExpr([f = Scalar(ell)](const Scalar& x) { return Scalar(x * f); });
}

/// Largest k with ell^k | x (x nonzero).
template <typename Scalar>
std::size_t valuation(Scalar x, std::uint32_t ell) {
  std::size_t v = 0;
  const Scalar p(ell);
  if (x == 0) return 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Exponent of the order of the ell-primary torsion of Z^cols / rowspace.
template <typename Scalar>
std::size_t prime_primary_rank(const SmithForm<Scalar>& snf, std::uint32_t ell) {
  std::size_t sum = 0;
  for (const Scalar& d : snf.invariant_factors) sum += valuation(d, ell);
  return sum;
}

template <typename Derived>
std::size_t prime_primary_rank(const Eigen::MatrixBase<Derived>& m, std::uint32_t ell) {
  using Scalar = typename Derived::Scalar;
  IntMatrix<Scalar> copy(m.rows(), m.cols());
  copy = m;
  return prime_primary_rank(smith_normal_form<Scalar>(std::move(copy)), ell);
}

/// dim Tor(H_1(G), F_ell): invariant factors of the relation matrix
/// divisible by ell.
std::size_t tor_dim(const Presentation& p, std::uint32_t ell);

/// Abelian invariants of H_1: torsion invariant factors (>1) and free rank.
struct AbelianInvariants {
  std::vector<BigInt> torsion;
  Index free_rank = 0;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelian_invariants(const Presentation& p);

/// Rows of integers, one per line.
template <typename Derived>
std::string format_matrix(const Eigen::MatrixBase<Derived>& m) {
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace hopfbound::intlin
