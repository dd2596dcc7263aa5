#include "hopfbound/intlin.hpp"

namespace hopfbound::intlin {

IntMatrix<> relation_matrix(const Presentation& p) {
  const auto rows = static_cast<Index>(p.relators().size());
  const auto cols = static_cast<Index>(p.generator_count());
  IntMatrix<> m = IntMatrix<>::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (const Syllable& s : p.relators()[static_cast<std::size_t>(i)].syllables())
      m(i, static_cast<Index>(s.gen)) += s.exp;
  return m;
}

std::size_t tor_dim(const Presentation& p, std::uint32_t ell) {
  const auto snf = smith_normal_form(relation_matrix(p));
  std::size_t count = 0;
  for (const BigInt& d : snf.invariant_factors)
    if (d % ell == 0) ++count;
  return count;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  const auto snf = smith_normal_form(relation_matrix(p));
  AbelianInvariants inv;
  for (const BigInt& d : snf.invariant_factors)
    if (d > 1) inv.torsion.push_back(d);
  inv.free_rank = snf.free_rank();
  return inv;
}

}  // namespace hopfbound::intlin
