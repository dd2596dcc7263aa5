#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>
#include <thread>

#include "hopfbound/rewrite.hpp"
#include "oracles.hpp"

using namespace hopfbound;
using namespace hopfbound::rewrite;

namespace {

RewriteSystem complete(const Presentation& p, CompletionBudget budget = {}) {
  return kb_complete(p, LetterOrder::declaration_order(p.generator_count()), budget);
}

std::set<std::string> rule_lines(const RewriteSystem& rs, const Presentation& p) {
  std::set<std::string> out;
  std::istringstream in(rs.export_text(p));
  for (std::string line; std::getline(in, line);)
    if (line.find("->") != std::string::npos) out.insert(line);
  return out;
}

// Every word over the doubled alphabet of length <= max_len, as letter lists.
void all_words(std::size_t gens, std::size_t max_len,
               const std::function<void(const std::vector<Letter>&)>& f) {
  std::vector<Letter> cur;
  std::function<void()> rec = [&] {
    f(cur);
    if (cur.size() == max_len) return;
    for (GenIndex g = 0; g < gens; ++g)
      for (int s : {1, -1}) {
        cur.push_back({g, s});
        rec();
        cur.pop_back();
      }
  };
  rec();
}

Word raw_word(const RewriteSystem& rs, const String& s) { return rs.order().decode(s); }

}  // namespace

TEST(Completion, CyclicOfOrderThree) {
  Presentation p = parse_presentation("gens a\nrel a^3");
  RewriteSystem rs = complete(p);
  EXPECT_EQ(rs.status(), Status::confluent);
  std::set<std::string> expect{"a a' -> 1", "a' a -> 1", "a a -> a'", "a' a' -> a"};
  EXPECT_EQ(rule_lines(rs, p), expect);

  Word a = Word::generator(0);
  EXPECT_TRUE(reduce_word(rs, power(a, 3)).empty());
  EXPECT_TRUE(reduce_word(rs, Word{}).empty());
  EXPECT_EQ(is_trivial_in_quotient(rs, power(a, 3)), Triviality::proved_trivial);
  EXPECT_EQ(is_trivial_in_quotient(rs, a), Triviality::reduced_nonempty);
  EXPECT_EQ(is_trivial_in_quotient(rs, Word{}), Triviality::proved_trivial);
}

TEST(Completion, FreeGroup) {
  Presentation p({"a", "b"}, {});
  RewriteSystem rs = complete(p);
  EXPECT_EQ(rs.status(), Status::confluent);
  Presentation one({"a"}, {});
  std::set<std::string> expect{"a a' -> 1", "a' a -> 1"};
  EXPECT_EQ(rule_lines(complete(one), one), expect);
  // Free reduction happens on the way in, so feed the unreduced string.
  const LetterOrder& o = rs.order();
  String s{o.rank({0, 1}), o.rank({1, 1}), o.rank({1, -1})};
  EXPECT_EQ(rs.reduce(s), (String{o.rank({0, 1})}));
}

TEST(Completion, ExhaustiveCyclicThree) {
  Presentation p = parse_presentation("gens a\nrel a^3");
  RewriteSystem rs = complete(p);
  std::map<String, std::int64_t> nf_class;
  all_words(1, 6, [&](const std::vector<Letter>& letters) {
    String in;
    std::int64_t sum = 0;
    for (const Letter& l : letters) {
      in.push_back(rs.order().rank(l));
      sum += l.sign;
    }
    const String nf = rs.reduce(in);
    EXPECT_FALSE(shortlex_less(in, nf));
    const std::int64_t cls = ((sum % 3) + 3) % 3;
    auto [it, fresh] = nf_class.emplace(nf, cls);
    EXPECT_EQ(it->second, cls);
  });
  EXPECT_EQ(nf_class.size(), 3u);
}

TEST(Completion, ExhaustiveFreeAbelianRankTwo) {
  Presentation p = parse_presentation("gens a b\nrel [a,b]");
  RewriteSystem rs = complete(p);
  ASSERT_EQ(rs.status(), Status::confluent);
  std::map<String, std::pair<std::int64_t, std::int64_t>> nf_class;
  std::map<std::pair<std::int64_t, std::int64_t>, String> class_nf;
  all_words(2, 6, [&](const std::vector<Letter>& letters) {
    String in;
    std::pair<std::int64_t, std::int64_t> e{0, 0};
    for (const Letter& l : letters) {
      in.push_back(rs.order().rank(l));
      (l.gen == 0 ? e.first : e.second) += l.sign;
    }
    const String nf = rs.reduce(in);
    EXPECT_FALSE(shortlex_less(in, nf));
    EXPECT_EQ(nf_class.emplace(nf, e).first->second, e);
    EXPECT_EQ(class_nf.emplace(e, nf).first->second, nf);
    // Normal forms are sorted: a^m b^n.
    Word w = raw_word(rs, nf);
    EXPECT_LE(w.syllables().size(), 2u);
    if (w.syllables().size() == 2) {
      EXPECT_EQ(w.syllables()[0].gen, 0u);
    }
  });
}

TEST(Completion, RulesAreInterreducedAndOriented) {
  Presentation p = parse_presentation("gens a b\nrel a^2\nrel b^3\nrel (a b)^2");
  RewriteSystem rs = complete(p);
  ASSERT_EQ(rs.status(), Status::confluent);
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    const Rule& r = rs.rules()[i];
    EXPECT_TRUE(shortlex_less(r.rhs, r.lhs));
    for (std::size_t j = 0; j < rs.rules().size(); ++j) {
      if (i == j) continue;
      EXPECT_EQ(r.lhs.find(rs.rules()[j].lhs), String::npos);
      EXPECT_EQ(r.rhs.find(rs.rules()[j].lhs), String::npos);
    }
  }
}

// Soundness: every rule maps to an equality in a finite group on which the
// relators vanish.
TEST(Completion, SoundUnderPermutationRepresentation) {
  // PSL(2,Z) = <a,b | a^2, b^3> onto S_3.
  Presentation p = parse_presentation("gens a b\nrel a^2\nrel b^3");
  const std::vector<oracle::Perm> images{{1, 0, 2}, {1, 2, 0}};
  for (const Word& r : p.relators()) EXPECT_EQ(oracle::evaluate(r, images), oracle::identity_perm(3));
  CompletionBudget budget;
  budget.max_rules = 600;
  RewriteSystem rs = complete(p, budget);
  ASSERT_GT(rs.rules().size(), 4u);
  for (const Rule& r : rs.rules())
    EXPECT_EQ(oracle::evaluate(raw_word(rs, r.lhs), images),
              oracle::evaluate(raw_word(rs, r.rhs), images));
}

TEST(Completion, SoundUnderMatrixRepresentation) {
  // SL(2,Z) = <a,b | a^4, a^2 b^-3> onto SL(2,5), order 120.
  Presentation p = parse_presentation("gens a b\nrel a^4\nrel a^2 = b^3");
  const auto images = oracle::find_sl2_rep(p, 5, 120);
  ASSERT_EQ(images.size(), 2u);
  CompletionBudget budget;
  budget.max_rules = 1500;
  RewriteSystem rs = complete(p, budget);
  EXPECT_EQ(rs.status(), Status::confluent);
  for (const Rule& r : rs.rules())
    EXPECT_EQ(oracle::evaluate(raw_word(rs, r.lhs), images, 5),
              oracle::evaluate(raw_word(rs, r.rhs), images, 5));
}

TEST(Completion, FiniteGroupNormalFormsCountElements) {
  // SL(2,3): completion is confluent and its normal forms enumerate the group.
  Presentation p = parse_presentation("gens a b\nrel a^3 = b^3\nrel a^3 = (a b)^2");
  RewriteSystem rs = complete(p);
  ASSERT_EQ(rs.status(), Status::confluent);
  const auto images = oracle::find_sl2_rep(p, 3, 24);
  ASSERT_EQ(images.size(), 2u);
  std::set<String> nfs;
  all_words(2, 7, [&](const std::vector<Letter>& letters) {
    String in;
    for (const Letter& l : letters) in.push_back(rs.order().rank(l));
    const String nf = rs.reduce(in);
    nfs.insert(nf);
    EXPECT_EQ(oracle::evaluate(raw_word(rs, nf), images, 3),
              oracle::evaluate(free_reduce(letters), images, 3));
  });
  EXPECT_EQ(nfs.size(), 24u);
}

TEST(Completion, BudgetExhaustionIsReported) {
  // BS(1,2) has no finite shortlex system here.
  Presentation p = parse_presentation("gens a b\nrel b^-1 a b = a^2");
  CompletionBudget budget;
  budget.max_rules = 50;
  RewriteSystem rs = complete(p, budget);
  EXPECT_EQ(rs.status(), Status::budget_exhausted);
  EXPECT_LE(rs.stats().rules_added, 51u);

  CompletionBudget bad;
  bad.max_rules = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {};
  bad.max_seconds = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Completion, Deterministic) {
  Presentation p = parse_presentation("gens a b\nrel a^4\nrel a^2 = b^3");
  CompletionBudget budget;
  budget.max_rules = 2000;
  RewriteSystem first = complete(p, budget);
  RewriteSystem second = complete(p, budget);
  EXPECT_EQ(first.rules(), second.rules());
  EXPECT_EQ(first.stats().rules_added, second.stats().rules_added);
  EXPECT_EQ(first.stats().pairs_processed, second.stats().pairs_processed);

  std::vector<RewriteSystem> threaded(3);
  std::vector<std::thread> pool;
  for (auto& slot : threaded) pool.emplace_back([&] { slot = complete(p, budget); });
  for (auto& t : pool) t.join();
  for (const auto& rs : threaded) EXPECT_EQ(rs.rules(), first.rules());
}

TEST(LetterOrder, ParseAndEncode) {
  Presentation p = parse_presentation("gens a b\nrel [a,b]");
  LetterOrder o = LetterOrder::parse("b a", p);
  EXPECT_EQ(o.rank({1, 1}), 0u);
  EXPECT_EQ(o.rank({1, -1}), 1u);
  EXPECT_EQ(o.rank({0, 1}), 2u);
  LetterOrder full = LetterOrder::parse("a', a, b, b'", p);
  EXPECT_EQ(full.rank({0, -1}), 0u);
  EXPECT_EQ(full.inverse(full.rank({0, 1})), full.rank({0, -1}));
  EXPECT_THROW(LetterOrder::parse("a", p), std::invalid_argument);
  EXPECT_THROW(LetterOrder::parse("a b c", p), std::invalid_argument);
  Word w = p.relators()[0];
  EXPECT_EQ(o.decode(o.encode(w)), w);

  // A different precedence flips the orientation of b a -> a b.
  RewriteSystem rs = kb_complete(p, o);
  EXPECT_TRUE(rule_lines(rs, p).count("a b -> b a"));
}

TEST(ExportImport, RoundTrip) {
  Presentation p = parse_presentation("gens a b\nrel a^2\nrel b^3\nrel (a b)^2");
  RewriteSystem rs = complete(p);
  RewriteSystem back = RewriteSystem::import_text(rs.export_text(p), p);
  EXPECT_EQ(back.rules(), rs.rules());
  EXPECT_EQ(back.status(), rs.status());
  EXPECT_EQ(back.order(), rs.order());
  EXPECT_EQ(back.export_text(p), rs.export_text(p));
  Word w = parse_word("a b a b^-1 a", p);
  EXPECT_EQ(reduce_word(back, w), reduce_word(rs, w));
}

TEST(RuleIndex, InsertEraseReinsert) {
  // Keys are stored reversed; match_suffix walks back from `end`.
  RuleIndex idx;
  idx.insert(U"cba", 0);
  idx.insert(U"dcb", 1);
  EXPECT_EQ(idx.match_suffix(U"xabc", 4), 0);
  EXPECT_EQ(idx.match_suffix(U"bcd", 3), 1);
  idx.erase(U"cba");
  EXPECT_EQ(idx.match_suffix(U"xabc", 4), -1);
  EXPECT_EQ(idx.match_suffix(U"bcd", 3), 1);
  idx.insert(U"cb", 2);
  EXPECT_EQ(idx.match_suffix(U"xabc", 4), 2);
  EXPECT_EQ(idx.match_suffix(U"xabc", 3), -1);
  std::vector<std::int32_t> below;
  idx.collect_below(idx.child(0, U'c'), below);
  EXPECT_EQ(below, (std::vector<std::int32_t>{2}));
}
