#pragma once

// Cyclotomic integers mod (x^ell - 1) and the SE_2 presentations.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hopfbound/words.hpp"

namespace hopfbound::cyclose2 {

/// Element sum_t c_t zeta^t of Z[x]/(x^ell - 1).
class CycloInt {
 public:
  explicit CycloInt(std::uint32_t ell);
  CycloInt(std::uint32_t ell, std::vector<std::int64_t> coeffs);

  static CycloInt one(std::uint32_t ell);
  /// zeta^k (k reduced mod ell).
  static CycloInt zeta_power(std::uint32_t ell, std::int64_t k);

  std::uint32_t ell() const { return ell_; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t t) const { return coeffs_[t]; }
  /// Value at zeta = 1.
  std::int64_t augmentation() const;

  friend bool operator==(const CycloInt&, const CycloInt&) = default;
  friend CycloInt operator+(const CycloInt& x, const CycloInt& y);
  friend CycloInt operator-(const CycloInt& x, const CycloInt& y);

 private:
  std::uint32_t ell_;
  std::vector<std::int64_t> coeffs_;
};

/// Product reduced mod x^ell - 1. Throws on mismatched ell.
CycloInt cyclo_mul(const CycloInt& x, const CycloInt& y);

/// Coefficients c_t(I) of prod_{i in I} (1 - zeta^i), I a nonempty subset of
/// {1..r}, r = (ell-1)/2.
CycloInt c_coeffs(std::uint32_t ell, const std::vector<std::uint32_t>& subset);

/// Least c >= 0 with 2c = r^2 + r(r+1)/2 (mod ell).
std::uint32_t c_constant(std::uint32_t ell);

bool is_odd_prime(std::uint32_t n);

enum class Se2Mode { extended, expanded };

struct SE2Params {
  std::uint32_t ell = 3;
  Se2Mode mode = Se2Mode::extended;

  std::uint32_t r() const { return (ell - 1) / 2; }
  std::uint32_t c() const { return c_constant(ell); }
  /// Throws unless ell is an odd prime.
  void validate() const;
};

/// SE_2 presentation.
///
/// Extended mode has generators z, u1..ur, a, b, b0..b{2r}, w and carries the
/// definitions of b_t and w as relators; expanded mode has z, u1..ur, a, b
/// with b_t and w substituted. Relator families appear in this order:
///   z^ell, [z,u_i], [u_i,u_j], a^4, [a^2,z], [a^2,u_i], [b_s,b_t], c(I)^3,
///   a^-1 z a z, a^-1 u_i a u_i, b^3 a^-2, a^-2 b_0...b_{2r},
///   b_t^ell w^-1 b_t^{-(-1)^r} w, b a^2 (u_i b z^{-ri} b^-1 b_0^-1 z^{ri} b z^-i u_i)^-1,
///   b_t^-1 z^{rt} b z^{rt} a, w^-1 z^c u_1...u_r
/// with inner indices ascending and subsets I in binary-counter order.
Presentation se2_presentation(const SE2Params& params);

/// Relator count of the extended presentation by family.
std::size_t se2_relator_count(std::uint32_t ell);

/// All 2-subsets of {z, u_1..u_r} as generator names, in lexicographic
/// position order.
std::vector<std::pair<std::string, std::string>> obstruction_pairs(std::uint32_t ell);

/// Images of the extended generators in the expanded presentation (used to
/// pass between the two modes).
std::vector<Word> extended_to_expanded(std::uint32_t ell);

}  // namespace hopfbound::cyclose2
