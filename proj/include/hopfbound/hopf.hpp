#pragma once

// Upper bounds for dim H_2(G; F_ell) from the Hopf formula.
//
// For G = F/R the bound is d = a + b - c + e where
//   a = dim Tor(H_1(G), F_ell),
//   ell^b, ell^c = orders of the ell-primary parts of F/R[F,F] and F/R^ell[F,F],
//   e = size of a generating set of [F,R]R^ell R' / [F,R]R^ell found by
//       eliminating relators that rewrite to the identity in smaller quotients.
//
// A relator is only eliminated when rewriting proves it trivial, so e (and
// hence d) stays a valid upper bound when completion runs out of budget.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopfbound/rewrite.hpp"
#include "hopfbound/words.hpp"

namespace hopfbound::hopf {

struct HopfOptions {
  rewrite::CompletionBudget budget;
  /// Give every completion the whole budget instead of an even share.
  bool full_budget_per_iteration = false;
  /// Letter precedence; declaration order when empty.
  std::optional<rewrite::LetterOrder> order;
};

/// Outcome of one completion inside the pipeline.
struct QuotientRun {
  rewrite::Status status = rewrite::Status::confluent;
  std::size_t rules = 0;
};

struct FindBasisResult {
  std::size_t count = 0;
  std::vector<Word> surviving;
  std::vector<QuotientRun> runs;
};

/// Walks rprime in input order; each x is dropped iff it rewrites to the
/// identity in F/[F,R]R^ell(X \ {x}) for the current X.
FindBasisResult find_basis(const Presentation& p, std::uint32_t ell, const std::vector<Word>& rprime,
                           const HopfOptions& options = {});

struct HopfBoundReport {
  std::string group;
  std::uint32_t prime = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t e = 0;
  std::int64_t d = 0;
  std::vector<QuotientRun> runs;
  std::vector<Word> surviving;
  double wall_time_ms = 0.0;

  /// Some completion hit its budget; d is still an upper bound.
  bool may_be_non_tight() const;
};

/// rprime defaults to every relator of p.
HopfBoundReport second_homology_bound(const Presentation& p, std::uint32_t ell,
                                      const std::optional<std::vector<Word>>& rprime = std::nullopt,
                                      const HopfOptions& options = {});

/// Candidate generators of H_2: the relators that survived elimination, in
/// input order.
std::vector<Word> h2_generators(const HopfBoundReport& report);

enum class Obstruction { null_homologous, inconclusive };

std::string_view to_string(Obstruction o);

struct ObstructionResult {
  Obstruction verdict = Obstruction::inconclusive;
  rewrite::Status status = rewrite::Status::confluent;
  std::size_t rules = 0;
  /// Normal form of [e1,e2] (empty when null-homologous).
  Word reduced;
};

/// [e1] ^ [e2] is null-homologous in H_2(G; F_ell) iff [e1,e2] lies in
/// [F,R]R^ell; decided by rewriting in F/[F,R]R^ell.
ObstructionResult obstruction_check(const Presentation& p, std::uint32_t ell, const Word& e1,
                                    const Word& e2, const HopfOptions& options = {});

/// Same check against an already completed quotient system.
ObstructionResult obstruction_check(const rewrite::RewriteSystem& quotient, const Word& e1,
                                    const Word& e2);

}  // namespace hopfbound::hopf
