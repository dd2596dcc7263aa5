// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// hard criterion fails.
//
//   hopfbound_acceptance [--stretch-seconds N] [--only K]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfbound/app/cli.hpp"
#include "hopfbound/corpus.hpp"
#include "hopfbound/cyclose2.hpp"
#include "hopfbound/hopf.hpp"
#include "hopfbound/intlin.hpp"
#include "hopfbound/symbols.hpp"
#include "oracles.hpp"

using namespace hopfbound;

namespace {

// Tolerances and limits.
constexpr double kLimitExactRowsSec = 5 * 60;
constexpr double kLimitBoundRowsSec = 10 * 60;
constexpr double kLimitOracleSec = 2 * 60;
constexpr double kLimitSymbolsSec = 60;
constexpr double kLimitIntlinSec = 60;
constexpr double kDefaultStretchSec = 30 * 60;
constexpr std::size_t kStretchMaxRules = 3'000'000;
constexpr std::size_t kRandomMatrices = 500;
const std::vector<std::uint32_t> kPrimes{2, 3, 5, 7};

struct Outcome {
  bool pass = true;
  bool hard = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void note(std::string& detail, const std::string& s) {
  if (!detail.empty()) detail += "; ";
  detail += s;
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << s << " s";
  return os.str();
}

// --- 1 and 2: the reference table ----------------------------------------------

Outcome table_rows(const std::vector<std::string>& names, double limit) {
  Outcome out;
  Timer t;
  int cells = 0;
  for (const std::string& name : names) {
    const corpus::CorpusEntry e = *corpus::find_entry(name);
    for (std::uint32_t p : kPrimes) {
      const hopf::HopfBoundReport r = hopf::second_homology_bound(e.presentation, p);
      const corpus::KnownValue k = e.known.at(p);
      ++cells;
      const bool ok = k.exact ? r.d == k.value : r.d <= k.value;
      if (!ok) {
        out.pass = false;
        note(out.detail, name + "/F" + std::to_string(p) + ": d=" + std::to_string(r.d) +
                             (k.exact ? ", expected " : ", expected <= ") + std::to_string(k.value) +
                             (r.may_be_non_tight() ? " (budget hit)" : " (all confluent)"));
      }
    }
  }
  const double s = t.seconds();
  if (s > limit) {
    out.pass = false;
    note(out.detail, "runtime over " + fmt_seconds(limit));
  }
  note(out.detail, std::to_string(cells) + " cells in " + fmt_seconds(s));
  return out;
}

// --- 3 -----------------------------------------------------------------------

Outcome se2_structure() {
  Outcome out;
  std::ostringstream so, se;
  const int code = app::cli_main({"se2", "--prime", "7"}, so, se, [](const std::string&) {
    return std::optional<std::string>{};
  });
  std::istringstream in(so.str());
  std::size_t gens = 0, rels = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("gens ", 0) == 0) {
      std::istringstream ws(line.substr(5));
      for (std::string g; ws >> g;) ++gens;
    }
    rels += line.rfind("rel ", 0) == 0;
  }
  out.pass = code == 0 && gens == 14 && rels == 64;
  out.detail = std::to_string(gens) + " generators, " + std::to_string(rels) + " relators";
  return out;
}

// --- 4 -----------------------------------------------------------------------

Outcome oracle_suite() {
  Outcome out;
  Timer t;
  int checked = 0;
  auto check = [&](const Presentation& p, const std::string& name, std::uint32_t ell, int truth,
                   std::vector<int> allowed, int expected) {
    const hopf::HopfBoundReport r = hopf::second_homology_bound(p, ell);
    ++checked;
    const bool in_range = std::find(allowed.begin(), allowed.end(), r.d) != allowed.end();
    if (r.d < truth || !in_range || r.d != expected) {
      out.pass = false;
      note(out.detail, name + "/F" + std::to_string(ell) + ": d=" + std::to_string(r.d) +
                           ", truth " + std::to_string(truth));
    }
  };
  const Presentation z2 = corpus::find_entry("Z^2")->presentation;
  for (std::uint32_t ell : kPrimes) {
    const int truth = oracle::uct_dim(ell, {}, {0});
    check(z2, "Z^2", ell, truth, {truth}, truth);
  }
  for (std::uint32_t n = 1; n <= 30; ++n)
    for (std::uint32_t ell : kPrimes) {
      const std::vector<std::int64_t> h1 = n > 1 ? std::vector<std::int64_t>{n} : std::vector<std::int64_t>{};
      const int truth = oracle::uct_dim(ell, h1, {});
      check(corpus::cyclic_entry(n).presentation, "Z/" + std::to_string(n), ell, truth, {truth}, truth);
    }
  const Presentation q8 = corpus::find_entry("Q8")->presentation;
  check(q8, "Q8", 2, oracle::uct_dim(2, {2, 2}, {}), {2, 3}, 2);
  const double s = t.seconds();
  if (s > kLimitOracleSec) {
    out.pass = false;
    note(out.detail, "runtime over " + fmt_seconds(kLimitOracleSec));
  }
  note(out.detail, std::to_string(checked) + " cases in " + fmt_seconds(s));
  return out;
}

// --- 5 -----------------------------------------------------------------------

Outcome stretch(double seconds) {
  Outcome out;
  out.hard = false;
  const Presentation se2 = cyclose2::se2_presentation({3, cyclose2::Se2Mode::extended});
  hopf::HopfOptions opt;
  opt.budget.max_seconds = seconds;
  opt.budget.max_rules = kStretchMaxRules;
  Timer t;
  const hopf::ObstructionResult r =
      hopf::obstruction_check(se2, 3, se2.generator_word("z"), se2.generator_word("u1"), opt);
  const bool reproduced = r.verdict == hopf::Obstruction::null_homologous;
  const bool exhausted = r.status == rewrite::Status::budget_exhausted;
  // Either outcome is acceptable; a confluent system that leaves [z,u1]
  // nonempty would contradict the expected vanishing.
  out.pass = reproduced || exhausted;
  out.detail = std::string(hopf::to_string(r.verdict)) + ", completion " +
               std::string(rewrite::to_string(r.status)) + " with " + std::to_string(r.rules) +
               " rules, budget " + fmt_seconds(seconds) + ", took " + fmt_seconds(t.seconds());
  return out;
}

// --- 6 -----------------------------------------------------------------------

symbols::BarChain random_chain(std::mt19937& rng, std::uint32_t ell, const symbols::AbGroup& g,
                               std::size_t degree) {
  symbols::BarChain ch(ell, g, degree);
  std::uniform_int_distribution<int> terms(1, 3);
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    symbols::Symbol s;
    for (std::size_t k = 0; k < degree; ++k) {
      symbols::AbElt x;
      do {
        x.assign(g.rank(), 0);
        for (std::size_t c = 0; c < g.rank(); ++c) {
          const std::int64_t o = g.orders()[c];
          x[c] = o == 0 ? std::uniform_int_distribution<std::int64_t>(-2, 2)(rng)
                        : std::uniform_int_distribution<std::int64_t>(0, o - 1)(rng);
        }
      } while (g.is_identity(x));
      s.push_back(x);
    }
    ch.add_term(s, std::uniform_int_distribution<std::int64_t>(1, ell - 1)(rng));
  }
  return ch;
}

Outcome symbols_suite() {
  using symbols::boundary;
  using symbols::shuffle;
  Outcome out;
  Timer t;
  std::mt19937 rng(17);
  const std::vector<std::vector<std::int64_t>> groups{{2}, {3}, {6}, {0}, {4, 2}, {3, 0}, {6, 0, 0}};
  std::size_t failures = 0, cases = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const symbols::AbGroup g(groups[static_cast<std::size_t>(trial) % groups.size()]);
    const std::uint32_t ell = kPrimes[static_cast<std::size_t>(trial / 7) % kPrimes.size()];
    const std::size_t p = 1 + static_cast<std::size_t>(trial) % 2;
    const std::size_t q = 1 + static_cast<std::size_t>(trial / 2) % 2;
    const symbols::BarChain a = random_chain(rng, ell, g, p);
    const symbols::BarChain b = random_chain(rng, ell, g, q);
    const symbols::BarChain c = random_chain(rng, ell, g, 1);
    const symbols::BarChain d4 = random_chain(rng, ell, g, 2 + static_cast<std::size_t>(trial) % 3);
    cases += 4;
    failures += !boundary(boundary(d4)).is_zero();
    failures += !(shuffle(a, b) == shuffle(b, a).scaled((p * q) % 2 ? -1 : 1));
    failures += !(shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c)));
    failures += !(boundary(shuffle(a, b)) ==
                  shuffle(boundary(a), b) + shuffle(a, boundary(b)).scaled(p % 2 ? -1 : 1));
  }
  std::size_t cycles = 0;
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    const std::size_t r = (ell - 1) / 2;
    for (std::uint32_t s = 0; s <= 2; ++s)
      for (std::size_t i = 0; i <= std::min<std::size_t>(3, r + 1); ++i) {
        std::vector<std::vector<std::size_t>> idx;
        std::vector<std::size_t> cur;
        oracle::subsets(r + 1, i, idx, cur);
        for (const auto& units : idx) {
          const symbols::CycleSpec spec{s, std::vector<std::uint32_t>(units.begin(), units.end())};
          if (spec.degree() == 0) continue;
          ++cycles;
          failures += !boundary(symbols::eq1_cycle(ell, spec)).is_zero();
        }
      }
  }
  const double secs = t.seconds();
  out.pass = failures == 0 && secs <= kLimitSymbolsSec;
  out.detail = std::to_string(cases) + " random identities, " + std::to_string(cycles) +
               " cycles, " + std::to_string(failures) + " failures, " + fmt_seconds(secs);
  return out;
}

// --- 7 -----------------------------------------------------------------------

Outcome intlin_suite() {
  using intlin::BigInt;
  Outcome out;
  Timer t;
  std::mt19937 rng(23);
  std::size_t failures = 0;
  for (std::size_t trial = 0; trial < kRandomMatrices; ++trial) {
    std::uniform_int_distribution<intlin::Index> dim(1, 6);
    std::uniform_int_distribution<int> entry(-9, 9);
    intlin::IntMatrix<> m(dim(rng), dim(rng));
    oracle::IntRows rows(static_cast<std::size_t>(m.rows()));
    for (intlin::Index i = 0; i < m.rows(); ++i)
      for (intlin::Index j = 0; j < m.cols(); ++j) {
        const int v = entry(rng);
        m(i, j) = BigInt(v);
        rows[static_cast<std::size_t>(i)].push_back(v);
      }
    const auto snf = intlin::smith_normal_form<BigInt>(m);
    const auto& d = snf.invariant_factors;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) failures += d[k + 1] % d[k] != 0;
    const auto divisors = oracle::determinantal_divisors(rows, static_cast<std::size_t>(m.cols()));
    if (divisors.size() - 1 != d.size()) {
      ++failures;
    } else {
      for (std::size_t k = 1; k < divisors.size(); ++k)
        failures += oracle::cpp_int(d[k - 1]) != divisors[k] / divisors[k - 1];
    }
    for (std::uint32_t ell : kPrimes) {
      const intlin::IntMatrix<> scaled = intlin::scale_matrix(m, ell);
      failures += intlin::prime_primary_rank(scaled, ell) !=
                  intlin::prime_primary_rank(snf, ell) + static_cast<std::size_t>(snf.rank());
    }
  }
  const double secs = t.seconds();
  out.pass = failures == 0 && secs <= kLimitIntlinSec;
  out.detail = std::to_string(kRandomMatrices) + " matrices, " + std::to_string(failures) +
               " failures, " + fmt_seconds(secs);
  return out;
}

// --- 8 -----------------------------------------------------------------------

std::string strip_metadata(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  j.erase("metadata");
  return j.dump(2);
}

Outcome determinism() {
  Outcome out;
  Timer t;
  const app::EnvLookup no_env = [](const std::string&) { return std::optional<std::string>{}; };
  auto run = [&](const std::vector<std::string>& args) {
    std::ostringstream so, se;
    const int code = app::cli_main(args, so, se, no_env);
    if (code != 0) throw std::runtime_error("exit " + std::to_string(code) + ": " + se.str());
    return strip_metadata(so.str());
  };
  const std::string data = HOPFBOUND_DATA_DIR;
  const std::vector<std::vector<std::string>> commands{
      {"--json", "h2bound", data + "/corpus/sl2z3.grp", "--prime", "3"},
      {"--json", "h2bound", data + "/corpus/sl2z.grp", "--prime", "2"},
      {"--json", "table1"},
  };
  for (const auto& args : commands) {
    const std::string first = run(args), second = run(args);
    if (first != second) {
      out.pass = false;
      note(out.detail, "differs: " + args[1]);
    }
  }
  note(out.detail, std::to_string(commands.size()) + " commands run twice in " + fmt_seconds(t.seconds()));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  double stretch_seconds = kDefaultStretchSec;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--stretch-seconds" && i + 1 < argc) {
      stretch_seconds = std::stod(argv[++i]);
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: hopfbound_acceptance [--stretch-seconds N] [--only K]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"reference table exact rows (SL2 over Z/2, Z/3, Z/5)",
       [] { return table_rows({"SL2(Z2)", "SL2(Z3)", "SL2(Z5)"}, kLimitExactRowsSec); }},
      {"reference table bound rows (SL2(Z), PSL2(Z))",
       [] { return table_rows({"SL2(Z)", "PSL2(Z)"}, kLimitBoundRowsSec); }},
      {"SE2 at ell=7 has 14 generators and 64 relators", se2_structure},
      {"oracle suite (Z^2, Z/n for n <= 30, Q8)", oracle_suite},
      {"stretch: SE2(3) obstruction for (z,u1)", [&] { return stretch(stretch_seconds); }},
      {"symbols property suite", symbols_suite},
      {"integer linear algebra suite", intlin_suite},
      {"determinism of h2bound and table1 --json", determinism},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only && static_cast<int>(k + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const char* tag = o.pass ? "PASS" : (o.hard ? "FAIL" : "INFO");
    std::cout << tag << "  " << (k + 1) << ". " << criteria[k].first << ": " << o.detail << std::endl;
    if (!o.pass && o.hard) all = false;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
