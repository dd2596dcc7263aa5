#pragma once

// Built-in presentations with reference values, and the table harness.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfbound/hopf.hpp"
#include "hopfbound/words.hpp"

namespace hopfbound::corpus {

struct KnownValue {
  std::int64_t value = 0;
  /// false for rows printed as an upper bound.
  bool exact = true;
};

struct OracleValue {
  std::int64_t value = 0;
  std::string note;
};

struct CorpusEntry {
  std::string name;
  Presentation presentation;
  std::string provenance;
  std::map<std::uint32_t, KnownValue> known;
  std::map<std::uint32_t, OracleValue> oracle;
  /// Documented H_1: torsion invariant factors (>1) and free rank.
  std::vector<std::int64_t> h1_torsion;
  std::size_t h1_free_rank = 0;
  /// Whether the entry is a row of the reference table.
  bool table_row = false;
};

/// Table rows followed by the Z^2 and Q8 oracle entries.
std::vector<CorpusEntry> load_corpus();

/// <x | x^n> with oracle dim H_2(Z/n; F_ell) = 1 iff ell | n.
CorpusEntry cyclic_entry(std::uint32_t n);

/// Table rows with no presentation in the corpus, with their printed values.
struct MissingRow {
  std::string name;
  std::map<std::uint32_t, KnownValue> known;
};

std::vector<MissingRow> not_attempted_rows();

/// Looks an entry up by name among load_corpus() and Z/n for n >= 1.
std::optional<CorpusEntry> find_entry(const std::string& name);

struct Table1Cell {
  std::string entry;
  std::uint32_t prime = 0;
  hopf::HopfBoundReport report;
  std::optional<KnownValue> known;
  std::optional<std::int64_t> oracle;
  bool pass = false;
  /// Reason for a failure, empty on pass.
  std::string note;
};

struct Table1Report {
  std::vector<std::uint32_t> primes;
  std::vector<Table1Cell> cells;  // entry-major, primes ascending
  std::vector<MissingRow> not_attempted;

  bool all_pass() const;
};

struct Table1Options {
  hopf::HopfOptions hopf;
  std::vector<std::uint32_t> primes{2, 3, 5, 7};
  std::size_t jobs = 1;
  /// Also run Z/n for 2 <= n <= 30.
  bool cyclic_family = false;
};

/// pass: d equals an exact value, d <= a bound, and d >= the oracle.
Table1Cell judge(const CorpusEntry& entry, std::uint32_t prime, hopf::HopfBoundReport report);

Table1Report table1_run(const Table1Options& options);

/// Rows of entries, one column per prime, "d" or "d*" when some completion
/// hit its budget, then a pass/FAIL column.
std::string format_table1(const Table1Report& report);

}  // namespace hopfbound::corpus
