#include "hopfbound/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hopfbound::corpus {
namespace {

using Known = std::map<std::uint32_t, KnownValue>;
using Oracles = std::map<std::uint32_t, OracleValue>;

Known exact(std::int64_t f2, std::int64_t f3, std::int64_t f5, std::int64_t f7) {
  return {{2, {f2, true}}, {3, {f3, true}}, {5, {f5, true}}, {7, {f7, true}}};
}

// Per-prime UCT values dim Tor(H_1, F_ell) + dim (H_2(G;Z) (x) F_ell).
Oracles uct(std::int64_t f2, std::int64_t f3, std::int64_t f5, std::int64_t f7,
            const std::string& note) {
  return {{2, {f2, note}}, {3, {f3, note}}, {5, {f5, note}}, {7, {f7, note}}};
}

CorpusEntry make(std::string name, std::string text, std::string provenance, Known known,
                 Oracles oracle, std::vector<std::int64_t> torsion, std::size_t free_rank,
                 bool table_row) {
  CorpusEntry e;
  e.presentation = parse_presentation(text);
  e.presentation.set_name(name);
  e.name = std::move(name);
  e.provenance = std::move(provenance);
  e.known = std::move(known);
  e.oracle = std::move(oracle);
  e.h1_torsion = std::move(torsion);
  e.h1_free_rank = free_rank;
  e.table_row = table_row;
  return e;
}

}  // namespace

std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back(make("SL2(Z)", "gens a b\nrel a^4\nrel a^2 b^-3\n",
                     "amalgam Z/4 *_{Z/2} Z/6 (Serre, Trees, I.4.2); a = [[0,-1],[1,0]], b of order 6",
                     {{2, {2, false}}, {3, {2, false}}, {5, {1, false}}, {7, {1, false}}},
                     uct(1, 1, 0, 0, "H_1 = Z/12, H_2(SL2(Z);Z) = 0 (amalgam of finite cyclic groups)"),
                     {12}, 0, true));
  out.push_back(make("PSL2(Z)", "gens a b\nrel a^2\nrel b^3\n",
                     "free product Z/2 * Z/3 (Serre, Trees, I.4.2)",
                     {{2, {1, false}}, {3, {1, false}}, {5, {0, true}}, {7, {0, true}}},
                     uct(1, 1, 0, 0, "H_1 = Z/6, H_2 = 0 for a free product of cyclic groups"),
                     {6}, 0, true));
  out.push_back(make("SL2(Z2)", "gens a b\nrel a^2\nrel b^3\nrel (a b)^2\n",
                     "SL(2,2) = S3, Coxeter presentation (Coxeter-Moser, 6.4)", exact(1, 0, 0, 0),
                     uct(1, 0, 0, 0, "H_1 = Z/2, Schur multiplier of S3 is 0"), {2}, 0, true));
  out.push_back(make("SL2(Z3)", "gens a b\nrel a^3 = b^3\nrel a^3 = (a b)^2\n",
                     "SL(2,3) = binary tetrahedral <2,3,3> (Coxeter-Moser, 6.5)", exact(0, 1, 0, 0),
                     uct(0, 1, 0, 0, "H_1 = Z/3, periodic cohomology so H_2(G;Z) = 0"), {3}, 0,
                     true));
  out.push_back(make("SL2(Z5)", "gens a b\nrel a^5 = b^3\nrel a^5 = (a b)^2\n",
                     "SL(2,5) = binary icosahedral <2,3,5> (Coxeter-Moser, 6.5)", exact(0, 0, 1, 0),
                     uct(0, 0, 0, 0, "perfect, periodic cohomology so H_2(G;Z) = 0"), {}, 0, true));
  out.push_back(make("Z^2", "gens x y\nrel [x, y]\n", "free abelian of rank 2", {},
                     uct(1, 1, 1, 1, "H_1 = Z^2, H_2(Z^2;Z) = Z"), {}, 2, false));
  out.push_back(make("Q8", "gens a b\nrel a^4\nrel a^2 = b^2\nrel b^-1 a b a\n",
                     "quaternion group (Coxeter-Moser, 6.5)", {},
                     uct(2, 0, 0, 0, "H_1 = Z/2 + Z/2, Schur multiplier of Q8 is 0"), {2, 2}, 0,
                     false));
  return out;
}

CorpusEntry cyclic_entry(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("cyclic_entry: n must be positive");
  CorpusEntry e;
  e.name = "Z/" + std::to_string(n);
  e.presentation = Presentation({"x"}, {power(Word::generator(0), n)}, e.name);
  e.provenance = "one-relator cyclic group";
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    e.oracle[p] = {n % p == 0 ? 1 : 0, "H_2(Z/n;Z) = 0, Tor(Z/n, F_ell) = F_ell iff ell | n"};
  if (n > 1) e.h1_torsion = {n};
  return e;
}

std::vector<MissingRow> not_attempted_rows() {
  auto bound = [](std::int64_t v) { return KnownValue{v, false}; };
  auto ex = [](std::int64_t v) { return KnownValue{v, true}; };
  return {
      {"GL2(Z)", {{2, bound(4)}, {3, bound(2)}, {5, bound(2)}, {7, bound(2)}}},
      {"SL2(Z[i])", {{2, ex(1)}, {3, ex(0)}, {5, ex(0)}, {7, ex(0)}}},
      {"SL2(Z[omega])", {{2, bound(1)}, {3, bound(2)}, {5, bound(1)}, {7, bound(1)}}},
      {"SL2(Z[sqrt-5])", {{2, bound(3)}, {3, bound(3)}, {5, ex(0)}, {7, ex(0)}}},
  };
}

std::optional<CorpusEntry> find_entry(const std::string& name) {
  for (CorpusEntry& e : load_corpus())
    if (e.name == name) return std::move(e);
  if (name.rfind("Z/", 0) == 0) {
    try {
      std::size_t used = 0;
      const unsigned long n = std::stoul(name.substr(2), &used);
      if (used == name.size() - 2 && n >= 1 && n <= 1000000) return cyclic_entry(static_cast<std::uint32_t>(n));
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

bool Table1Report::all_pass() const {
  for (const Table1Cell& c : cells)
    if (!c.pass) return false;
  return true;
}

Table1Cell judge(const CorpusEntry& entry, std::uint32_t prime, hopf::HopfBoundReport report) {
  Table1Cell cell;
  cell.entry = entry.name;
  cell.prime = prime;
  cell.report = std::move(report);
  const std::int64_t d = cell.report.d;
  if (auto it = entry.known.find(prime); it != entry.known.end()) cell.known = it->second;
  if (auto it = entry.oracle.find(prime); it != entry.oracle.end()) cell.oracle = it->second.value;

  std::vector<std::string> problems;
  if (cell.known) {
    if (cell.known->exact && d != cell.known->value)
      problems.push_back("d = " + std::to_string(d) + " but the table gives " +
                         std::to_string(cell.known->value));
    if (!cell.known->exact && d > cell.known->value)
      problems.push_back("d = " + std::to_string(d) + " exceeds the table bound " +
                         std::to_string(cell.known->value));
  }
  if (cell.oracle && d < *cell.oracle)
    problems.push_back("d = " + std::to_string(d) + " is below the true dimension " +
                       std::to_string(*cell.oracle));
  if (!cell.known && cell.oracle && d != *cell.oracle && !cell.report.may_be_non_tight())
    problems.push_back("d = " + std::to_string(d) + " differs from the oracle " +
                       std::to_string(*cell.oracle) + " with every completion confluent");
  for (std::size_t k = 0; k < problems.size(); ++k) cell.note += (k ? "; " : "") + problems[k];
  cell.pass = problems.empty();
  return cell;
}

Table1Report table1_run(const Table1Options& options) {
  for (std::uint32_t p : options.primes)
    if (p != 2 && p != 3 && p != 5 && p != 7)
      throw std::invalid_argument("table1: primes must be among 2, 3, 5, 7");
  std::vector<std::uint32_t> primes = options.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  std::vector<CorpusEntry> entries = load_corpus();
  if (options.cyclic_family)
    for (std::uint32_t n = 2; n <= 30; ++n) entries.push_back(cyclic_entry(n));

  struct Job {
    const CorpusEntry* entry;
    std::uint32_t prime;
  };
  std::vector<Job> jobs;
  for (const CorpusEntry& e : entries)
    for (std::uint32_t p : primes) jobs.push_back({&e, p});

  Table1Report out;
  out.primes = primes;
  out.cells.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const Job& j = jobs[k];
        out.cells[k] = judge(*j.entry, j.prime,
                             hopf::second_homology_bound(j.entry->presentation, j.prime, std::nullopt,
                                                         options.hopf));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(options.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  out.not_attempted = not_attempted_rows();
  return out;
}

std::string format_table1(const Table1Report& report) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "group";
  for (std::uint32_t p : report.primes) os << std::setw(10) << ("F" + std::to_string(p));
  os << "result\n";

  auto known_text = [](const std::optional<KnownValue>& k) {
    if (!k) return std::string("-");
    return (k->exact ? "" : "<=") + std::to_string(k->value);
  };

  for (std::size_t i = 0; i < report.cells.size(); i += report.primes.size()) {
    os << std::setw(16) << report.cells[i].entry;
    bool pass = true;
    std::string notes;
    for (std::size_t k = 0; k < report.primes.size(); ++k) {
      const Table1Cell& c = report.cells[i + k];
      const std::string d =
          std::to_string(c.report.d) + (c.report.may_be_non_tight() ? "*" : "");
      os << std::setw(10) << (d + " (" + known_text(c.known) + ")");
      pass = pass && c.pass;
      if (!c.pass) notes += " [F" + std::to_string(c.prime) + ": " + c.note + "]";
    }
    os << (pass ? "pass" : "FAIL") << notes << '\n';
  }
  for (const MissingRow& m : report.not_attempted) {
    os << std::setw(16) << m.name;
    for (std::uint32_t p : report.primes) {
      auto it = m.known.find(p);
      os << std::setw(10)
         << ("- (" + known_text(it == m.known.end() ? std::nullopt : std::optional(it->second)) + ")");
    }
    os << "not attempted\n";
  }
  os << "d (table value); * = some completion hit its budget, d is an upper bound\n";
  return os.str();
}

}  // namespace hopfbound::corpus
