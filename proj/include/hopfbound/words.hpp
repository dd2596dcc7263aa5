#pragma once

// Free-group words and finite presentations.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hopfbound {

using GenIndex = std::uint32_t;

/// Generator indices are dense in [0, kMaxGenerators).
inline constexpr std::size_t kMaxGenerators = std::size_t{1} << 16;

/// One letter of the doubled alphabet: a generator or its formal inverse.
struct Letter {
  GenIndex gen = 0;
  int sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A maximal run g^exp inside a reduced word (exp != 0).
struct Syllable {
  GenIndex gen = 0;
  std::int64_t exp = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word, stored run-length encoded.
///
/// The run-length form is canonical for reduced words (adjacent syllables
/// never share a generator), so equality is structural.
class Word {
 public:
  Word() = default;

  static Word generator(GenIndex g, int sign = 1);
  static Word from_syllables(std::span<const Syllable> syllables);

  bool is_identity() const { return syllables_.empty(); }
  /// Number of letters in the expanded word.
  std::size_t length() const;
  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::vector<Letter> letters() const;

  Word inverse() const;
  std::int64_t exponent_sum(GenIndex g) const;
  /// One past the largest generator index used (0 for the identity).
  GenIndex generator_bound() const;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  void append(Syllable s);

  std::vector<Syllable> syllables_;
};

Word free_reduce(std::span<const Letter> letters);
/// [x,y] = x y x^-1 y^-1.
Word commutator(const Word& x, const Word& y);
Word power(const Word& x, std::int64_t n);
/// Applies the homomorphism sending generator i to images[i].
Word substitute(const Word& w, std::span<const Word> images);

/// Finite presentation <generators | relators>.
///
/// Relators are stored freely reduced. Identity relators are dropped on
/// construction and counted in dropped_identity_relators().
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators,
               std::string name = {});

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<std::string>& generators() const { return generators_; }
  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t dropped_identity_relators() const { return dropped_; }

  std::optional<GenIndex> find_generator(std::string_view name) const;
  Word generator_word(std::string_view name) const;

  /// Renders a word as space separated factors, e.g. "a^2 b^-1"; the
  /// identity renders as "1".
  std::string format_word(const Word& w) const;
  /// Presentation text format (group/gens/rel lines).
  std::string to_text() const;

 private:
  std::string name_;
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  std::size_t dropped_ = 0;
};

/// Presentation of F/[F,R]R^ell(extra): relators [x,s] for every generator x
/// and relator s, then s^ell for every relator s, then the extra words.
///
/// Killing [x,s] for every generator x makes each s central, so the normal
/// closure of these commutators is [F,R].
Presentation hopf_quotient_presentation(const Presentation& p, std::uint32_t ell,
                                        std::span<const Word> extra);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the line-oriented presentation text format:
///
///   group <name>          (optional, first)
///   gens <name>+          (exactly one)
///   rel <wordexpr>        (any number)
///   # comment
///
/// wordexpr := factor ('*'? factor)* ('=' wordexpr)?
/// factor   := atom ('^' signed-integer)?
/// atom     := generator | '(' wordexpr ')' | '[' wordexpr ',' wordexpr ']'
///
/// "l = r" denotes the relator l r^-1. Relators that reduce to the identity
/// are rejected.
Presentation parse_presentation(std::string_view text);

/// Parses a single wordexpr over the generators of p.
Word parse_word(std::string_view expr, const Presentation& p);

}  // namespace hopfbound
