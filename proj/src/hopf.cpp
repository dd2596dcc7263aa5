#include "hopfbound/hopf.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hopfbound/intlin.hpp"

namespace hopfbound::hopf {
namespace {

rewrite::LetterOrder order_for(const Presentation& p, const HopfOptions& options) {
  if (options.order) {
    if (options.order->generator_count() != p.generator_count())
      throw std::invalid_argument("letter order does not match the presentation");
    return *options.order;
  }
  return rewrite::LetterOrder::declaration_order(p.generator_count());
}

void require_generator(const Presentation& p, const Word& w) {
  const auto& syl = w.syllables();
  if (syl.size() != 1 || syl[0].exp != 1 || syl[0].gen >= p.generator_count())
    throw std::invalid_argument("obstruction_check: '" +
                                (w.generator_bound() <= p.generator_count() ? p.format_word(w)
                                                                            : std::string("?")) +
                                "' is not a generator");
}

void require_prime(std::uint32_t ell) {
  bool prime = ell >= 2;
  for (std::uint32_t q = 2; prime && q * q <= ell; ++q) prime = ell % q != 0;
  if (!prime) throw std::invalid_argument("coefficient characteristic must be prime");
}

}  // namespace

FindBasisResult find_basis(const Presentation& p, std::uint32_t ell, const std::vector<Word>& rprime,
                           const HopfOptions& options) {
  options.budget.validate();
  require_prime(ell);
  for (const Word& x : rprime)
    if (std::find(p.relators().begin(), p.relators().end(), x) == p.relators().end())
      throw std::invalid_argument("find_basis: rprime word is not a relator of the presentation");
  const rewrite::LetterOrder order = order_for(p, options);
  rewrite::CompletionBudget step = options.budget;
  if (!options.full_budget_per_iteration && !rprime.empty())
    step.max_seconds = options.budget.max_seconds / static_cast<double>(rprime.size());

  FindBasisResult out;
  std::vector<bool> alive(rprime.size(), true);
  for (std::size_t k = 0; k < rprime.size(); ++k) {
    std::vector<Word> others;
    for (std::size_t j = 0; j < rprime.size(); ++j)
      if (j != k && alive[j]) others.push_back(rprime[j]);
    const Presentation quotient = hopf_quotient_presentation(p, ell, others);
    const rewrite::RewriteSystem rs = rewrite::kb_complete(quotient, order, step);
    out.runs.push_back({rs.status(), rs.rules().size()});
    if (rewrite::is_trivial_in_quotient(rs, rprime[k]) == rewrite::Triviality::proved_trivial)
      alive[k] = false;
  }
  for (std::size_t k = 0; k < rprime.size(); ++k)
    if (alive[k]) out.surviving.push_back(rprime[k]);
  out.count = out.surviving.size();
  return out;
}

bool HopfBoundReport::may_be_non_tight() const {
  for (const QuotientRun& r : runs)
    if (r.status != rewrite::Status::confluent) return true;
  return false;
}

HopfBoundReport second_homology_bound(const Presentation& p, std::uint32_t ell,
                                      const std::optional<std::vector<Word>>& rprime,
                                      const HopfOptions& options) {
  require_prime(ell);
  const auto start = std::chrono::steady_clock::now();
  HopfBoundReport report;
  report.group = p.name();
  report.prime = ell;

  const auto m = intlin::relation_matrix(p);
  report.a = static_cast<std::int64_t>(intlin::tor_dim(p, ell));
  report.b = static_cast<std::int64_t>(intlin::prime_primary_rank(m, ell));
  // Abelianized relators of R^ell[F,F] are ell times those of R[F,F].
  const intlin::IntMatrix<> scaled = intlin::scale_matrix(m, ell);
  report.c = static_cast<std::int64_t>(intlin::prime_primary_rank(scaled, ell));

  const FindBasisResult basis = find_basis(p, ell, rprime.value_or(p.relators()), options);
  report.e = static_cast<std::int64_t>(basis.count);
  report.runs = basis.runs;
  report.surviving = basis.surviving;
  report.d = report.a + report.b - report.c + report.e;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<Word> h2_generators(const HopfBoundReport& report) { return report.surviving; }

std::string_view to_string(Obstruction o) {
  return o == Obstruction::null_homologous ? "null_homologous" : "inconclusive";
}

ObstructionResult obstruction_check(const rewrite::RewriteSystem& quotient, const Word& e1,
                                    const Word& e2) {
  ObstructionResult out;
  out.status = quotient.status();
  out.rules = quotient.rules().size();
  const rewrite::String nf = rewrite::reduce_word(quotient, commutator(e1, e2));
  out.reduced = quotient.order().decode(nf);
  out.verdict = nf.empty() ? Obstruction::null_homologous : Obstruction::inconclusive;
  return out;
}

ObstructionResult obstruction_check(const Presentation& p, std::uint32_t ell, const Word& e1,
                                    const Word& e2, const HopfOptions& options) {
  require_prime(ell);
  require_generator(p, e1);
  require_generator(p, e2);
  const Presentation quotient = hopf_quotient_presentation(p, ell, {});
  const rewrite::RewriteSystem rs = rewrite::kb_complete(quotient, order_for(p, options), options.budget);
  return obstruction_check(rs, e1, e2);
}

}  // namespace hopfbound::hopf
