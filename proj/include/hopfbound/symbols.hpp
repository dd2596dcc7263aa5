#pragma once

// Normalized bar complex of a finitely generated abelian group with F_ell
// coefficients, shuffle products and the cycles built from cyclotomic units.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hopfbound::symbols {

/// Exponent tuple, one coordinate per cyclic factor.
using AbElt = std::vector<std::int64_t>;
/// Bar symbol [x_1|...|x_i]; the empty symbol is the degree-0 basis element.
using Symbol = std::vector<AbElt>;

/// Direct sum of cyclic groups. An order of 0 stands for Z.
class AbGroup {
 public:
  AbGroup() = default;
  AbGroup(std::vector<std::int64_t> orders, std::vector<std::string> labels = {});

  /// Z/t_1 + ... + Z/t_k + Z^free.
  static AbGroup from_invariants(const std::vector<std::int64_t>& torsion, std::size_t free_rank);

  std::size_t rank() const { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<std::int64_t> torsion() const;
  std::size_t free_rank() const;

  AbElt identity() const { return AbElt(rank(), 0); }
  AbElt basis(std::size_t k) const;
  AbElt canonical(AbElt x) const;
  AbElt add(const AbElt& x, const AbElt& y) const;
  AbElt negate(const AbElt& x) const;
  bool is_identity(const AbElt& x) const;
  bool contains(const AbElt& x) const;

  friend bool operator==(const AbGroup& x, const AbGroup& y) { return x.orders_ == y.orders_; }

 private:
  std::vector<std::int64_t> orders_;
  std::vector<std::string> labels_;
};

AbGroup direct_sum(const AbGroup& a, const AbGroup& b);

/// Z/2ell + Z^r on the cyclotomic units -zeta, 1-zeta, ..., 1-zeta^r.
AbGroup gl1(std::uint32_t ell);

/// zeta^j in gl1(ell): first coordinate (ell+1)j mod 2ell.
AbElt zeta_power(std::uint32_t ell, std::int64_t j);

bool is_prime(std::uint32_t n);

/// Homogeneous F_ell-linear combination of bar symbols. Terms are kept in
/// lexicographic order of their exponent tuples with coefficients in 1..ell-1.
class BarChain {
 public:
  BarChain(std::uint32_t ell, AbGroup group, std::size_t degree);

  /// The empty symbol with coefficient 1.
  static BarChain unit(std::uint32_t ell, const AbGroup& group);
  static BarChain symbol(std::uint32_t ell, const AbGroup& group, const Symbol& s,
                         std::int64_t coef = 1);

  std::uint32_t ell() const { return ell_; }
  const AbGroup& group() const { return group_; }
  std::size_t degree() const { return degree_; }
  const std::map<Symbol, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t coefficient(const Symbol& s) const;

  /// Adds coef * s. Entries are canonicalized; identity entries are rejected.
  void add_term(Symbol s, std::int64_t coef);

  BarChain& operator+=(const BarChain& o);
  BarChain& operator-=(const BarChain& o);
  BarChain scaled(std::int64_t k) const;

  friend BarChain operator+(BarChain x, const BarChain& y) { return x += y; }
  friend BarChain operator-(BarChain x, const BarChain& y) { return x -= y; }
  friend bool operator==(const BarChain& x, const BarChain& y);

  /// One `coef·[x1|x2|...]` line per term, entries as exponent tuples.
  std::string to_text() const;

 private:
  void require_compatible(const BarChain& o) const;
  void accumulate(Symbol s, std::int64_t coef);

  std::uint32_t ell_;
  AbGroup group_;
  std::size_t degree_;
  std::map<Symbol, std::uint32_t> terms_;
};

std::string format_elt(const AbElt& x);

/// Bar differential; symbols containing a product equal to 1 are dropped.
BarChain boundary(const BarChain& ch);

/// Signed sum over shuffles.
BarChain shuffle(const BarChain& a, const BarChain& b);

/// a over A, b over B, embedded in A+B and shuffled.
BarChain cross(const BarChain& a, const BarChain& b);

/// Re-expresses ch over A+B (second = false) or B+A (second = true).
BarChain embed(const BarChain& ch, const AbGroup& other, bool second);

struct CycleSpec {
  std::uint32_t s = 0;
  /// 0 is -zeta, k >= 1 is 1-zeta^k.
  std::vector<std::uint32_t> units;

  std::size_t i() const { return units.size(); }
  std::size_t degree() const { return i() + 2 * s; }
};

std::string unit_label(std::uint32_t unit);

/// sum_{i_1..i_s=1}^{ell-1} [zeta^{i_1}|zeta|...|zeta^{i_s}|zeta] ^ [v_1] ^ ... ^ [v_i]
/// over gl1(ell).
BarChain eq1_cycle(std::uint32_t ell, const CycleSpec& spec);

enum class CycleClass { etale_obstruction, odd, neither };

std::string_view to_string(CycleClass c);

CycleClass classify_cycle(const CycleSpec& spec);

/// u -> (u^-1, u), from A to A+A.
BarChain t_star(const BarChain& ch);

struct RhoResult {
  BarChain chain;
  /// Number of input terms whose image had an identity entry.
  std::size_t deleted_terms = 0;
  bool flagged() const { return deleted_terms > 0; }
};

/// (u,v,w) -> (uw, vw), from A+A+A to A+A, where ch lives over A+A+A.
RhoResult rho_star(const BarChain& ch, const AbGroup& base);

struct EtaleRelation {
  RhoResult image;
  std::size_t degree = 0;
  std::size_t bidegree_first = 0;
  std::size_t bidegree_second = 0;
  bool is_cycle = false;
};

/// rho_*(t_*(z) x z') for an etale obstruction cycle z and an odd cycle z'.
EtaleRelation etale_relation_chain(const CycleSpec& z, const CycleSpec& zprime, std::uint32_t ell);

/// Coefficients of prod (1-t^d)^-1 prod (1+t^e) through t^max_degree.
std::vector<std::uint64_t> hilbert_series(const std::vector<std::uint32_t>& poly_degrees,
                                          const std::vector<std::uint32_t>& exterior_degrees,
                                          std::size_t max_degree);

}  // namespace hopfbound::symbols
