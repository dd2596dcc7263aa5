#include "hopfbound/rewrite.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hopfbound::rewrite {

// ---------------------------------------------------------------------------
// LetterOrder

LetterOrder LetterOrder::declaration_order(std::size_t generator_count) {
  std::vector<Letter> ranked;
  ranked.reserve(2 * generator_count);
  for (std::size_t g = 0; g < generator_count; ++g) {
    ranked.push_back({static_cast<GenIndex>(g), 1});
    ranked.push_back({static_cast<GenIndex>(g), -1});
  }
  return from_letters(generator_count, ranked);
}

LetterOrder LetterOrder::from_letters(std::size_t generator_count,
                                      const std::vector<Letter>& ranked) {
  if (ranked.size() != 2 * generator_count)
    throw std::invalid_argument("letter order must list every generator and inverse once");
  LetterOrder o;
  o.to_letter_ = ranked;
  o.to_rank_.assign(2 * generator_count, Rank(0xFFFFFFFF));
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const Letter l = ranked[r];
    if (l.gen >= generator_count) throw std::invalid_argument("letter order: generator out of range");
    Rank& slot = o.to_rank_[2 * l.gen + (l.sign < 0 ? 1 : 0)];
    if (slot != Rank(0xFFFFFFFF)) throw std::invalid_argument("letter order: repeated letter");
    slot = static_cast<Rank>(r);
  }
  o.finish();
  return o;
}

LetterOrder LetterOrder::parse(std::string_view spec, const Presentation& p) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : spec) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  const bool explicit_inverses =
      std::any_of(tokens.begin(), tokens.end(), [](const std::string& t) { return t.ends_with('\''); });
  std::vector<Letter> ranked;
  for (const std::string& t : tokens) {
    const bool inv = t.ends_with('\'');
    const std::string name = inv ? t.substr(0, t.size() - 1) : t;
    auto g = p.find_generator(name);
    if (!g) throw std::invalid_argument("letter order: unknown generator '" + name + "'");
    ranked.push_back({*g, inv ? -1 : 1});
    if (!explicit_inverses) ranked.push_back({*g, -1});
  }
  return from_letters(p.generator_count(), ranked);
}

void LetterOrder::finish() {
  inverse_.resize(to_letter_.size());
  for (std::size_t r = 0; r < to_letter_.size(); ++r) {
    Letter l = to_letter_[r];
    l.sign = -l.sign;
    inverse_[r] = rank(l);
  }
}

String LetterOrder::encode(const Word& w) const {
  String s;
  s.reserve(w.length());
  for (const Syllable& syl : w.syllables()) {
    if (2 * static_cast<std::size_t>(syl.gen) + 1 >= to_rank_.size())
      throw std::invalid_argument("word uses a generator outside the rewriting alphabet");
    const Rank r = rank({syl.gen, syl.exp < 0 ? -1 : 1});
    const std::int64_t n = syl.exp < 0 ? -syl.exp : syl.exp;
    s.append(static_cast<std::size_t>(n), r);
  }
  return s;
}

Word LetterOrder::decode(const String& s) const {
  std::vector<Letter> letters;
  letters.reserve(s.size());
  for (Rank r : s) letters.push_back(letter(r));
  return free_reduce(letters);
}

bool shortlex_less(const String& a, const String& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string_view to_string(Status s) {
  return s == Status::confluent ? "confluent" : "budget_exhausted";
}

std::string_view to_string(Triviality t) {
  return t == Triviality::proved_trivial ? "proved_trivial" : "reduced_nonempty";
}

void CompletionBudget::validate() const {
  if (max_rules == 0 || max_lhs_length == 0 || !(max_seconds > 0.0))
    throw std::invalid_argument("completion budget limits must be positive");
}

// ---------------------------------------------------------------------------
// RuleIndex

RuleIndex::RuleIndex() : nodes_(1) {}

void RuleIndex::insert(const String& key, std::int32_t rule) {
  std::int32_t node = 0;
  ++nodes_[0].live;
  for (Rank r : key) {
    std::int32_t next = -1;
    for (const auto& [letter, n] : nodes_[static_cast<std::size_t>(node)].next)
      if (letter == r) next = n;
    if (next < 0) {
      next = static_cast<std::int32_t>(nodes_.size());
      nodes_[static_cast<std::size_t>(node)].next.emplace_back(r, next);
      nodes_.emplace_back();
    }
    node = next;
    ++nodes_[static_cast<std::size_t>(node)].live;
  }
  nodes_[static_cast<std::size_t>(node)].rule = rule;
}

void RuleIndex::erase(const String& key) {
  std::int32_t node = 0;
  --nodes_[0].live;
  for (Rank r : key) {
    node = child(node, r);
    --nodes_[static_cast<std::size_t>(node)].live;
  }
  nodes_[static_cast<std::size_t>(node)].rule = -1;
}

std::int32_t RuleIndex::child(std::int32_t node, Rank r) const {
  for (const auto& [letter, next] : nodes_[static_cast<std::size_t>(node)].next)
    if (letter == r) return nodes_[static_cast<std::size_t>(next)].live > 0 ? next : -1;
  return -1;
}

std::int32_t RuleIndex::match_suffix(const String& s, std::size_t end) const {
  std::int32_t node = 0;
  for (std::size_t k = end; k-- > 0;) {
    node = child(node, s[k]);
    if (node < 0) return -1;
    const std::int32_t rule = nodes_[static_cast<std::size_t>(node)].rule;
    if (rule >= 0) return rule;
  }
  return -1;
}

void RuleIndex::collect_below(std::int32_t node, std::vector<std::int32_t>& out) const {
  std::vector<std::int32_t> stack;
  for (const auto& [r, next] : nodes_[static_cast<std::size_t>(node)].next) stack.push_back(next);
  while (!stack.empty()) {
    const std::int32_t n = stack.back();
    stack.pop_back();
    const Node& nd = nodes_[static_cast<std::size_t>(n)];
    if (nd.live <= 0) continue;
    if (nd.rule >= 0) out.push_back(nd.rule);
    for (const auto& [r, next] : nd.next) stack.push_back(next);
  }
}

namespace {

String reversed(const String& s) { return String(s.rbegin(), s.rend()); }

// Stack-based rewriting: letters are shifted onto `out`; whenever some lhs
// becomes a suffix of `out` it is replaced and the rhs is pushed back onto
// the input. Each replacement strictly decreases the shortlex rank.
String reduce_with(const RuleIndex& index, const std::vector<Rule>& rules, String s) {
  String out;
  out.reserve(s.size());
  String todo = reversed(s);
  while (!todo.empty()) {
    out.push_back(todo.back());
    todo.pop_back();
    const std::int32_t id = index.match_suffix(out, out.size());
    if (id < 0) continue;
    const Rule& rule = rules[static_cast<std::size_t>(id)];
    out.resize(out.size() - rule.lhs.size());
    todo.append(rule.rhs.rbegin(), rule.rhs.rend());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completion engine

class Completion {
 public:
  Completion(const LetterOrder& order, const CompletionBudget& budget)
      : order_(order), budget_(budget), start_(std::chrono::steady_clock::now()) {}

  RewriteSystem run(const Presentation& p) {
    const std::size_t g = p.generator_count();
    for (std::size_t i = 0; i < g; ++i) {
      const Rank x = order_.rank({static_cast<GenIndex>(i), 1});
      const Rank X = order_.rank({static_cast<GenIndex>(i), -1});
      add_equation(String{x, X}, String{}, false);
      add_equation(String{X, x}, String{}, false);
    }
    for (const Word& r : p.relators()) add_equation(order_.encode(r), String{}, false);

    bool confluent = false;
    while (!exhausted_) {
      while (!pairs_.empty() && !exhausted_) {
        Pending pe = pairs_.top();
        pairs_.pop();
        ++stats_.pairs_processed;
        add_equation(std::move(pe.u), std::move(pe.v), true);
        check_budget();
      }
      if (exhausted_) break;
      const std::int32_t next = next_unprocessed();
      if (next < 0) {
        confluent = dropped_ == 0;
        break;
      }
      process_rule(next);
      check_budget();
    }
    if (!confluent) exhausted_ = true;

    std::vector<std::pair<String, String>> active;
    for (const RuleRec& r : rules_)
      if (r.active) active.emplace_back(r.lhs, r.rhs);
    std::sort(active.begin(), active.end(), [](const auto& a, const auto& b) {
      return shortlex_less(a.first, b.first);
    });
    std::vector<Rule> out;
    out.reserve(active.size());
    for (auto& [l, r] : active) out.push_back({std::move(l), std::move(r)});

    stats_.equations_dropped = dropped_;
    stats_.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return RewriteSystem(order_, std::move(out),
                         exhausted_ ? Status::budget_exhausted : Status::confluent, stats_);
  }

 private:
  struct RuleRec {
    String lhs;
    String rhs;
    bool active = true;
    bool processed = false;
  };

  struct Pending {
    std::size_t key;
    std::uint64_t seq;
    String u;
    String v;
  };
  struct PendingAfter {
    bool operator()(const Pending& a, const Pending& b) const {
      return a.key != b.key ? a.key > b.key : a.seq > b.seq;
    }
  };

  String reduce(String s) const { return reduce_with(suffix_index_, views_, std::move(s)); }

  void check_budget() {
    if (stats_.rules_added > budget_.max_rules) exhausted_ = true;
    if (++budget_ticks_ % 64 == 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (elapsed > budget_.max_seconds) exhausted_ = true;
    }
  }

  // Adds u = v and restores interreduction. Rules evicted because their lhs
  // became reducible are re-added before returning, so the congruence
  // generated by the active rules never shrinks. Only capped equations
  // (critical pairs) are subject to the lhs length limit.
  void add_equation(String u, String v, bool capped) {
    std::vector<std::pair<String, String>> work;
    work.emplace_back(std::move(u), std::move(v));
    bool first = true;
    while (!work.empty()) {
      auto [a, b] = std::move(work.back());
      work.pop_back();
      a = reduce(std::move(a));
      b = reduce(std::move(b));
      const bool is_new = first;
      first = false;
      if (a == b) continue;
      if (shortlex_less(a, b)) std::swap(a, b);
      if (capped && is_new && a.size() > budget_.max_lhs_length) {
        ++dropped_;
        continue;
      }
      const std::size_t n = a.size();
      const std::int32_t id = insert_rule(std::move(a), std::move(b));

      // Evict rules whose lhs contains the new lhs; reduce rhs that do.
      const String& lhs = rules_[static_cast<std::size_t>(id)].lhs;
      for (std::size_t len = n; len < by_length_.size(); ++len) {
        auto& bucket = by_length_[len];
        std::size_t keep = 0;
        for (std::size_t k = 0; k < bucket.size(); ++k) {
          const std::int32_t other = bucket[k];
          RuleRec& rec = rules_[static_cast<std::size_t>(other)];
          if (!rec.active) continue;
          if (other != id && len > n && rec.lhs.find(lhs) != String::npos) {
            deactivate(other);
            work.emplace_back(rec.lhs, rec.rhs);
            continue;
          }
          bucket[keep++] = other;
          if (other != id && rec.rhs.size() >= n && rec.rhs.find(lhs) != String::npos) {
            rec.rhs = reduce(std::move(rec.rhs));
            views_[static_cast<std::size_t>(other)].rhs = rec.rhs;
          }
        }
        bucket.resize(keep);
      }
    }
  }

  std::int32_t insert_rule(String lhs, String rhs) {
    const auto id = static_cast<std::int32_t>(rules_.size());
    suffix_index_.insert(reversed(lhs), id);
    prefix_index_.insert(lhs, id);
    if (by_length_.size() <= lhs.size()) by_length_.resize(lhs.size() + 1);
    by_length_[lhs.size()].push_back(id);
    unprocessed_.push({lhs.size(), id});
    views_.push_back({lhs, rhs});
    rules_.push_back({std::move(lhs), std::move(rhs), true, false});
    ++stats_.rules_added;
    return id;
  }

  void deactivate(std::int32_t id) {
    RuleRec& rec = rules_[static_cast<std::size_t>(id)];
    rec.active = false;
    suffix_index_.erase(reversed(rec.lhs));
    prefix_index_.erase(rec.lhs);
  }

  std::int32_t next_unprocessed() {
    while (!unprocessed_.empty()) {
      const std::int32_t id = unprocessed_.top().second;
      unprocessed_.pop();
      if (rules_[static_cast<std::size_t>(id)].active) return id;
    }
    return -1;
  }

  void push_pair(String u, String v) {
    u = reduce(std::move(u));
    v = reduce(std::move(v));
    if (u == v) {
      ++stats_.pairs_processed;
      return;
    }
    const std::size_t key = std::max(u.size(), v.size());
    pairs_.push({key, seq_++, std::move(u), std::move(v)});
  }

  // Critical pairs between rule r and every processed rule (and r itself).
  void process_rule(std::int32_t r) {
    const String lhs = rules_[static_cast<std::size_t>(r)].lhs;
    const String rhs = rules_[static_cast<std::size_t>(r)].rhs;
    const std::size_t n = lhs.size();
    std::vector<std::int32_t> hits;

    // A proper suffix of lhs(r) is a proper prefix of lhs(s).
    for (std::size_t i = 1; i < n; ++i) {
      std::int32_t node = 0;
      for (std::size_t k = i; k < n && node >= 0; ++k) node = prefix_index_.child(node, lhs[k]);
      if (node < 0) continue;
      hits.clear();
      prefix_index_.collect_below(node, hits);
      std::sort(hits.begin(), hits.end());
      for (std::int32_t s : hits) {
        const RuleRec& rs = rules_[static_cast<std::size_t>(s)];
        if (s != r && !rs.processed) continue;
        const std::size_t overlap = n - i;
        String left = rhs + rs.lhs.substr(overlap);
        String right = lhs.substr(0, i) + rs.rhs;
        push_pair(std::move(left), std::move(right));
      }
    }
    // A proper prefix of lhs(r) is a proper suffix of lhs(s).
    for (std::size_t k = 1; k < n; ++k) {
      std::int32_t node = 0;
      for (std::size_t j = k; j-- > 0 && node >= 0;) node = suffix_index_.child(node, lhs[j]);
      if (node < 0) continue;
      hits.clear();
      suffix_index_.collect_below(node, hits);
      std::sort(hits.begin(), hits.end());
      for (std::int32_t s : hits) {
        if (s == r) continue;
        const RuleRec& rs = rules_[static_cast<std::size_t>(s)];
        if (!rs.processed) continue;
        String left = rs.rhs + lhs.substr(k);
        String right = rs.lhs.substr(0, rs.lhs.size() - k) + rhs;
        push_pair(std::move(left), std::move(right));
      }
    }
    rules_[static_cast<std::size_t>(r)].processed = true;
  }

  LetterOrder order_;
  CompletionBudget budget_;
  std::chrono::steady_clock::time_point start_;
  CompletionStats stats_;

  std::vector<RuleRec> rules_;
  std::vector<Rule> views_;  // lhs/rhs mirror indexed by rule id, used by reduce
  RuleIndex suffix_index_;
  RuleIndex prefix_index_;
  std::vector<std::vector<std::int32_t>> by_length_;

  using Unprocessed = std::pair<std::size_t, std::int32_t>;
  std::priority_queue<Unprocessed, std::vector<Unprocessed>, std::greater<>> unprocessed_;
  std::priority_queue<Pending, std::vector<Pending>, PendingAfter> pairs_;
  std::uint64_t seq_ = 0;

  std::size_t dropped_ = 0;
  std::uint64_t budget_ticks_ = 0;
  bool exhausted_ = false;
};

}  // namespace

// ---------------------------------------------------------------------------
// RewriteSystem

RewriteSystem::RewriteSystem(LetterOrder order, std::vector<Rule> rules, Status status,
                             CompletionStats stats)
    : order_(std::move(order)), rules_(std::move(rules)), status_(status), stats_(stats) {
  build_index();
}

void RewriteSystem::build_index() {
  index_ = RuleIndex();
  for (std::size_t i = 0; i < rules_.size(); ++i)
    index_.insert(reversed(rules_[i].lhs), static_cast<std::int32_t>(i));
}

String RewriteSystem::reduce(String s) const { return reduce_with(index_, rules_, std::move(s)); }

namespace {

std::string format_letters(const String& s, const LetterOrder& order, const Presentation& p) {
  if (s.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out.push_back(' ');
    const Letter l = order.letter(s[i]);
    out += p.generators().at(l.gen);
    if (l.sign < 0) out.push_back('\'');
  }
  return out;
}

String parse_letters(std::string_view text, const LetterOrder& order, const Presentation& p,
                     std::size_t line) {
  String out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    const bool inv = tok.ends_with('\'');
    const std::string name = inv ? tok.substr(0, tok.size() - 1) : tok;
    auto g = p.find_generator(name);
    if (!g) throw ParseError("unknown generator '" + name + "'", line, 1);
    out.push_back(order.rank({*g, inv ? -1 : 1}));
  }
  return out;
}

}  // namespace

std::string RewriteSystem::export_text(const Presentation& p) const {
  std::ostringstream os;
  os << "# rewriting system\n";
  os << "order";
  for (std::size_t r = 0; r < 2 * order_.generator_count(); ++r) {
    const Letter l = order_.letter(static_cast<Rank>(r));
    os << ' ' << p.generators().at(l.gen) << (l.sign < 0 ? "'" : "");
  }
  os << "\nstatus " << to_string(status_) << '\n';
  for (const Rule& r : rules_)
    os << format_letters(r.lhs, order_, p) << " -> " << format_letters(r.rhs, order_, p) << '\n';
  return os.str();
}

RewriteSystem RewriteSystem::import_text(std::string_view text, const Presentation& p) {
  LetterOrder order = LetterOrder::declaration_order(p.generator_count());
  Status status = Status::budget_exhausted;
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (line.starts_with("order ")) {
      order = LetterOrder::parse(line.substr(6), p);
    } else if (line.starts_with("status ")) {
      std::string_view v = line.substr(7);
      while (!v.empty() && (v.back() == ' ' || v.back() == '\r')) v.remove_suffix(1);
      if (v == "confluent")
        status = Status::confluent;
      else if (v == "budget_exhausted")
        status = Status::budget_exhausted;
      else
        throw ParseError("unknown status", line_no, 8);
    } else {
      const auto arrow = line.find("->");
      if (arrow == std::string_view::npos) throw ParseError("expected 'lhs -> rhs'", line_no, 1);
      Rule r{parse_letters(line.substr(0, arrow), order, p, line_no),
             parse_letters(line.substr(arrow + 2), order, p, line_no)};
      if (!shortlex_less(r.rhs, r.lhs))
        throw ParseError("rule is not shortlex decreasing", line_no, 1);
      rules.push_back(std::move(r));
    }
  }
  return RewriteSystem(std::move(order), std::move(rules), status, CompletionStats{});
}

RewriteSystem kb_complete(const Presentation& p, const LetterOrder& order,
                          const CompletionBudget& budget) {
  budget.validate();
  if (order.generator_count() != p.generator_count())
    throw std::invalid_argument("letter order does not cover the presentation's generators");
  return Completion(order, budget).run(p);
}

String reduce_word(const RewriteSystem& rs, const Word& z) {
  return rs.reduce(rs.order().encode(z));
}

Triviality is_trivial_in_quotient(const RewriteSystem& rs, const Word& z) {
  return reduce_word(rs, z).empty() ? Triviality::proved_trivial : Triviality::reduced_nonempty;
}

}  // namespace hopfbound::rewrite
