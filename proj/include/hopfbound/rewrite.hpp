#pragma once

// Shortlex Knuth-Bendix completion for group presentations.
//
// Words are encoded over the doubled alphabet {g, g^-1} as strings of letter
// ranks: the rank of a letter is its position in the configured precedence,
// so shortlex comparison is "length first, then plain lexicographic" on the
// encoded strings.
//
// Every rule the completion emits is a consequence of the relators, whether
// or not completion finished. Reduction to the empty word is therefore always
// a proof of triviality; a nonempty normal form only decides the word problem
// when the system is confluent.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopfbound/words.hpp"

namespace hopfbound::rewrite {

using Rank = char32_t;
using String = std::u32string;

/// Letter precedence for the shortlex order.
class LetterOrder {
 public:
  LetterOrder() = default;

  /// Generator declaration order, each generator followed by its inverse.
  static LetterOrder declaration_order(std::size_t generator_count);
  /// Explicit precedence, lowest first. Must list every generator and every
  /// inverse exactly once.
  static LetterOrder from_letters(std::size_t generator_count, const std::vector<Letter>& ranked);
  /// Parses a comma or space separated list of generator names. A list of
  /// plain names is expanded to "name, name'"; a list containing primed
  /// names must mention all 2g letters.
  static LetterOrder parse(std::string_view spec, const Presentation& p);

  std::size_t generator_count() const { return to_letter_.size() / 2; }
  Rank rank(Letter l) const { return to_rank_[2 * l.gen + (l.sign < 0 ? 1 : 0)]; }
  Letter letter(Rank r) const { return to_letter_[r]; }
  Rank inverse(Rank r) const { return inverse_[r]; }

  String encode(const Word& w) const;
  Word decode(const String& s) const;

  friend bool operator==(const LetterOrder&, const LetterOrder&) = default;

 private:
  void finish();

  std::vector<Rank> to_rank_;
  std::vector<Letter> to_letter_;
  std::vector<Rank> inverse_;
};

/// Shortlex "a < b".
bool shortlex_less(const String& a, const String& b);

struct Rule {
  String lhs;
  String rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

enum class Status { confluent, budget_exhausted };

std::string_view to_string(Status s);

struct CompletionBudget {
  /// Cap on rules created over the whole run, evicted ones included.
  std::size_t max_rules = 20000;
  std::size_t max_lhs_length = 64;
  double max_seconds = 300.0;

  /// Throws std::invalid_argument unless every limit is positive.
  void validate() const;
};

struct CompletionStats {
  std::size_t rules_added = 0;
  std::size_t pairs_processed = 0;
  std::size_t equations_dropped = 0;
  double elapsed_seconds = 0.0;
};

/// Suffix index over rule left-hand sides. Keys are inserted reversed so that
/// the rule whose lhs ends at the top of a reduction stack is found by walking
/// backwards from the top.
class RuleIndex {
 public:
  RuleIndex();

  void insert(const String& key, std::int32_t rule);
  void erase(const String& key);
  /// Rule whose lhs is a suffix of s[0, end), or -1.
  std::int32_t match_suffix(const String& s, std::size_t end) const;

  /// Trie walk helpers used by overlap search. Node 0 is the root.
  std::int32_t child(std::int32_t node, Rank r) const;
  /// Appends every live rule in the subtree below node (excluding node itself).
  void collect_below(std::int32_t node, std::vector<std::int32_t>& out) const;

 private:
  struct Node {
    std::vector<std::pair<Rank, std::int32_t>> next;
    std::int32_t rule = -1;
    std::int32_t live = 0;
  };
  std::vector<Node> nodes_;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(LetterOrder order, std::vector<Rule> rules, Status status, CompletionStats stats);

  const LetterOrder& order() const { return order_; }
  const std::vector<Rule>& rules() const { return rules_; }
  Status status() const { return status_; }
  const CompletionStats& stats() const { return stats_; }

  /// Rewrites to an irreducible string (leftmost-innermost).
  String reduce(String s) const;

  /// One "lhs -> rhs" line per rule, letters as generator names with a
  /// trailing ' for inverses, "1" for the empty word.
  std::string export_text(const Presentation& p) const;
  /// Reads export_text output. Rules are taken as given (no completion).
  static RewriteSystem import_text(std::string_view text, const Presentation& p);

 private:
  void build_index();

  LetterOrder order_;
  std::vector<Rule> rules_;
  Status status_ = Status::confluent;
  CompletionStats stats_;
  RuleIndex index_;
};

/// Seeds g g^-1 -> 1, g^-1 g -> 1 and the oriented relators, then completes
/// until confluent or until the budget runs out.
RewriteSystem kb_complete(const Presentation& p, const LetterOrder& order,
                          const CompletionBudget& budget = {});

String reduce_word(const RewriteSystem& rs, const Word& z);

enum class Triviality { proved_trivial, reduced_nonempty };

std::string_view to_string(Triviality t);

Triviality is_trivial_in_quotient(const RewriteSystem& rs, const Word& z);

}  // namespace hopfbound::rewrite
