#include "hopfbound/app/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "hopfbound/app/cache.hpp"
#include "hopfbound/app/json_io.hpp"
#include "hopfbound/corpus.hpp"
#include "hopfbound/cyclose2.hpp"
#include "hopfbound/hopf.hpp"
#include "hopfbound/symbols.hpp"

namespace hopfbound::app {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + tok + "' is not a nonnegative integer");
    }
  }
  return out;
}

std::uint32_t require_prime(long long p) {
  if (p < 2 || p > 1000000 || !symbols::is_prime(static_cast<std::uint32_t>(p)))
    throw UsageError("--prime must be a prime, got " + std::to_string(p));
  return static_cast<std::uint32_t>(p);
}

std::uint32_t require_odd_prime(long long p) {
  const std::uint32_t ell = require_prime(p);
  if (ell == 2) throw UsageError("--prime must be an odd prime here");
  return ell;
}

struct LoadedInput {
  Presentation presentation;
  std::string text;
};

LoadedInput load_presentation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  LoadedInput li{{}, ss.str()};
  try {
    li.presentation = parse_presentation(li.text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + e.what());
  }
  if (li.presentation.name().empty()) li.presentation.set_name(fs::path(path).stem().string());
  return li;
}

// Options shared by every subcommand.
struct Globals {
  bool json = false;
  std::optional<std::string> cache;
  std::optional<std::string> seed_order;
  std::optional<std::string> budget_rules;
  std::optional<std::string> budget_time;
  std::optional<std::string> budget_lhs;
  std::optional<std::string> jobs;
  bool full_budget = false;
  std::optional<std::string> config;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, const EnvLookup& env) : out_(out), err_(err), env_(env) {}

  void resolve(const Globals& g) {
    ConfigLayer file;
    std::optional<std::string> path = g.config;
    if (!path) path = env_("HOPFBOUND_CONFIG");
    if (path) {
      file = load_config_file(*path);
    } else if (fs::exists("hopfbound.conf")) {
      file = load_config_file("hopfbound.conf");
    }
    ConfigLayer cli;
    if (g.cache) cli["cache"] = *g.cache;
    if (g.seed_order) cli["seed_order"] = *g.seed_order;
    if (g.budget_rules) cli["budget_rules"] = *g.budget_rules;
    if (g.budget_time) cli["budget_time"] = *g.budget_time;
    if (g.budget_lhs) cli["budget_lhs"] = *g.budget_lhs;
    if (g.jobs) cli["jobs"] = *g.jobs;
    if (g.full_budget) cli["full_budget_per_iteration"] = "true";
    try {
      resolve_settings({}, {}, cli);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    settings_ = resolve_settings(file, environment_layer(env_), cli);
    json_ = g.json;
    if (settings_.cache_dir) cache_.emplace(*settings_.cache_dir);
  }

  const Settings& settings() const { return settings_; }
  bool json_mode() const { return json_; }
  std::ostream& out() { return out_; }

  hopf::HopfOptions hopf_options(const Presentation& p) const {
    hopf::HopfOptions o;
    o.budget = settings_.budget;
    o.full_budget_per_iteration = settings_.full_budget_per_iteration;
    if (settings_.seed_order) o.order = rewrite::LetterOrder::parse(*settings_.seed_order, p);
    return o;
  }

  json budget_json() const {
    return {{"max_rules", settings_.budget.max_rules},
            {"max_lhs_length", settings_.budget.max_lhs_length},
            {"max_seconds", settings_.budget.max_seconds},
            {"full_budget_per_iteration", settings_.full_budget_per_iteration},
            {"seed_order", settings_.seed_order ? json(*settings_.seed_order) : json(nullptr)}};
  }

  struct Result {
    json payload;
    json meta;
  };

  // Looks the computation up in the cache when one is configured.
  Result cached(const std::string& command, const json& params, const std::string& input,
                const std::function<json()>& compute) {
    const auto start = std::chrono::steady_clock::now();
    std::string digest;
    if (cache_) {
      digest = input_digest(command, params, input, tool_version());
      if (auto hit = cache_->lookup(digest, command, params, tool_version(), err_))
        return {hit->payload, metadata(hit->wall_time_ms, utc_timestamp(), true)};
    }
    json payload = compute();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::string ts = utc_timestamp();
    if (cache_) cache_->store({digest, command, params, payload, tool_version(), ts, ms});
    return {std::move(payload), metadata(ms, ts, false)};
  }

  void emit_json(const Result& r) {
    json j = r.payload;
    j["metadata"] = r.meta;
    out_ << dump(j);
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  const EnvLookup& env_;
  Settings settings_;
  bool json_ = false;
  std::optional<ResultCache> cache_;
};

std::vector<Word> select_relators(const Presentation& p, const std::optional<std::string>& spec) {
  if (!spec) return p.relators();
  std::vector<Word> out;
  for (std::size_t k : parse_list<std::size_t>(*spec, "--rprime")) {
    if (k < 1 || k > p.relators().size())
      throw UsageError("--rprime: relator " + std::to_string(k) + " out of range 1.." +
                       std::to_string(p.relators().size()));
    out.push_back(p.relators()[k - 1]);
  }
  return out;
}

json h2bound_payload(Runner& run, const LoadedInput& in, std::uint32_t ell,
                     const std::optional<std::string>& rprime) {
  const Presentation& p = in.presentation;
  const json params = {{"prime", ell},
                       {"rprime", rprime ? json(*rprime) : json(nullptr)},
                       {"budget", run.budget_json()}};
  auto res = run.cached("h2bound", params, p.to_text(), [&] {
    const hopf::HopfBoundReport r =
        hopf::second_homology_bound(p, ell, select_relators(p, rprime), run.hopf_options(p));
    return report_to_json(r, p);
  });
  json j = res.payload;
  j["metadata"] = res.meta;
  return j;
}

void print_h2bound(std::ostream& os, const json& j) {
  os << "group " << j["group"].get<std::string>() << ", prime " << j["prime"] << '\n';
  os << "a = " << j["a"] << ", b = " << j["b"] << ", c = " << j["c"] << ", e = " << j["e"] << '\n';
  bool tight = true;
  for (const auto& s : j["kb_status"]) tight = tight && s == "confluent";
  os << "d = " << j["d"] << (tight ? "" : "  (some completion hit its budget; upper bound)") << '\n';
  os << "completions:";
  for (std::size_t k = 0; k < j["kb_status"].size(); ++k)
    os << ' ' << j["kb_status"][k].get<std::string>() << '/' << j["rules_count"][k];
  os << '\n';
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const EnvLookup& env) {
  CLI::App app{"Upper bounds for dim H_2(G; F_ell) of finitely presented groups", "hopfbound"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--cache", g.cache, "Result cache directory");
  app.add_option("--seed-order", g.seed_order, "Generator precedence, e.g. 'b,a'");
  app.add_option("--budget-rules", g.budget_rules, "Rules created per completion");
  app.add_option("--budget-time", g.budget_time, "Seconds per run");
  app.add_option("--budget-lhs", g.budget_lhs, "Longest lhs kept from a critical pair");
  app.add_flag("--full-budget-per-iteration", g.full_budget,
               "Give each completion the whole time budget");
  app.add_option("--config", g.config, "key=value config file (default ./hopfbound.conf)");
  app.add_option("--jobs", g.jobs, "Worker threads for table1");

  std::string file;
  long long prime = 0;
  std::optional<std::string> rprime;
  std::string word;
  std::optional<std::string> export_path;
  bool expanded = false;
  std::optional<std::string> pair;
  std::string primes = "2,3,5,7";
  bool cyclic = false;
  std::uint32_t s_param = 0;
  std::string units;
  std::string poly, exterior;
  std::size_t max_degree = 8;

  auto* h2 = app.add_subcommand("h2bound", "Bound dim H_2(G; F_ell)");
  h2->add_option("file", file, "Presentation file")->required();
  h2->add_option("--prime", prime, "ell")->required();
  h2->add_option("--rprime", rprime, "1-based relator positions, e.g. 1,3");

  auto* gens = app.add_subcommand("h2gens", "Relators that survive elimination");
  gens->add_option("file", file, "Presentation file")->required();
  gens->add_option("--prime", prime, "ell")->required();
  gens->add_option("--rprime", rprime, "1-based relator positions");

  auto* red = app.add_subcommand("reduce", "Reduce a word in F/[F,R]R^ell(R')");
  red->add_option("file", file, "Presentation file")->required();
  red->add_option("--prime", prime, "ell")->required();
  red->add_option("--word", word, "Word expression")->required();
  red->add_option("--rprime", rprime, "1-based relator positions killed in addition");
  red->add_option("--export", export_path, "Write the rewriting system here");

  auto* se2 = app.add_subcommand("se2", "Print the SE_2 presentation");
  se2->add_option("--prime", prime, "odd prime ell")->required();
  se2->add_flag("--expanded", expanded, "Substitute b_t and w");

  auto* obs = app.add_subcommand("obstruction", "Test [e1] ^ [e2] for null-homology in SE_2");
  obs->add_option("--prime", prime, "odd prime ell")->required();
  obs->add_option("--pair", pair, "Two generators, e.g. z,u1 (default: every pair)");
  obs->add_flag("--expanded", expanded, "Use the expanded presentation");

  auto* sym = app.add_subcommand("symbols", "Bar complex computations");
  sym->require_subcommand(1);
  auto* cyc = sym->add_subcommand("cycle", "Print the cycle for a parameter s and unit list");
  auto* ver = sym->add_subcommand("verify", "Check that a cycle has zero boundary");
  for (auto* sc : {cyc, ver}) {
    sc->add_option("--prime", prime, "odd prime ell")->required();
    sc->add_option("--s", s_param, "number of [zeta^i|zeta] blocks");
    sc->add_option("--units", units, "unit indices: 0 = -zeta, k = 1-zeta^k");
  }
  auto* hil = sym->add_subcommand("hilbert", "Hilbert series of a polynomial (x) exterior algebra");
  hil->add_option("--poly", poly, "polynomial generator degrees, e.g. 2,4");
  hil->add_option("--exterior", exterior, "exterior generator degrees, e.g. 1,3,1,3");
  hil->add_option("--max", max_degree, "highest degree");

  auto* tab = app.add_subcommand("table1", "Reproduce the reference table");
  tab->add_option("--primes", primes, "subset of 2,3,5,7");
  tab->add_flag("--cyclic", cyclic, "Also run Z/n for 2 <= n <= 30");

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();
  for (auto* sc : sym->get_subcommands({})) sc->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  Runner run(out, err, env);
  try {
    run.resolve(g);
    const bool js = run.json_mode();

    if (*h2 || *gens) {
      const std::uint32_t ell = require_prime(prime);
      const LoadedInput in = load_presentation(file);
      json j = h2bound_payload(run, in, ell, rprime);
      if (*h2) {
        if (js)
          out << dump(j);
        else
          print_h2bound(out, j);
      } else if (js) {
        out << dump({{"group", j["group"]},
                     {"prime", j["prime"]},
                     {"generators", j["surviving_relators"]},
                     {"kb_status", j["kb_status"]},
                     {"version", j["version"]},
                     {"metadata", j["metadata"]}});
      } else {
        for (const auto& w : j["surviving_relators"]) out << w.get<std::string>() << '\n';
      }
      return kExitOk;
    }

    if (*red) {
      const std::uint32_t ell = require_prime(prime);
      const LoadedInput in = load_presentation(file);
      const Presentation& p = in.presentation;
      const Word z = [&] {
        try {
          return parse_word(word, p);
        } catch (const ParseError& e) {
          throw InputError("--word: " + std::string(e.what()));
        }
      }();
      const std::vector<Word> extra = rprime ? select_relators(p, rprime) : std::vector<Word>{};
      const Presentation q = hopf_quotient_presentation(p, ell, extra);
      const json params = {{"prime", ell},
                           {"word", word},
                           {"rprime", rprime ? json(*rprime) : json(nullptr)},
                           {"budget", run.budget_json()}};
      std::string system_text;
      auto res = run.cached("reduce", params, p.to_text(), [&] {
        const auto opts = run.hopf_options(p);
        const auto order = opts.order ? *opts.order
                                      : rewrite::LetterOrder::declaration_order(p.generator_count());
        const rewrite::RewriteSystem rs = rewrite::kb_complete(q, order, opts.budget);
        system_text = rs.export_text(q);
        const rewrite::String nf = rewrite::reduce_word(rs, z);
        return json{{"group", p.name()},
                    {"prime", ell},
                    {"word", p.format_word(z)},
                    {"normal_form", p.format_word(order.decode(nf))},
                    {"trivial", std::string(rewrite::to_string(rewrite::is_trivial_in_quotient(rs, z)))},
                    {"kb_status", std::string(rewrite::to_string(rs.status()))},
                    {"rules_count", rs.rules().size()},
                    {"version", tool_version()}};
      });
      if (export_path) {
        if (system_text.empty())
          throw InputError("--export needs a fresh completion; rerun without --cache");
        std::ofstream f(*export_path);
        if (!f || !(f << system_text)) throw InputError("cannot write " + *export_path);
      }
      if (js) {
        run.emit_json(res);
      } else {
        const json& j = res.payload;
        out << "normal form: " << j["normal_form"].get<std::string>() << '\n'
            << "result: " << j["trivial"].get<std::string>() << '\n'
            << "completion: " << j["kb_status"].get<std::string>() << ", " << j["rules_count"]
            << " rules\n";
      }
      return kExitOk;
    }

    if (*se2) {
      const std::uint32_t ell = require_odd_prime(prime);
      const cyclose2::SE2Params params{ell, expanded ? cyclose2::Se2Mode::expanded
                                                     : cyclose2::Se2Mode::extended};
      const Presentation p = cyclose2::se2_presentation(params);
      if (js) {
        json j = presentation_to_json(p);
        j["prime"] = ell;
        j["c"] = params.c();
        j["mode"] = expanded ? "expanded" : "extended";
        j["version"] = tool_version();
        out << dump(j);
      } else {
        out << p.to_text();
      }
      return kExitOk;
    }

    if (*obs) {
      const std::uint32_t ell = require_odd_prime(prime);
      const Presentation p = cyclose2::se2_presentation(
          {ell, expanded ? cyclose2::Se2Mode::expanded : cyclose2::Se2Mode::extended});
      std::vector<std::pair<std::string, std::string>> pairs;
      if (pair) {
        const auto comma = pair->find(',');
        if (comma == std::string::npos) throw UsageError("--pair expects two names, e.g. z,u1");
        pairs.emplace_back(pair->substr(0, comma), pair->substr(comma + 1));
      } else {
        pairs = cyclose2::obstruction_pairs(ell);
      }
      for (const auto& [x, y] : pairs)
        for (const std::string& n : {x, y})
          if (!p.find_generator(n)) throw UsageError("--pair: unknown generator '" + n + "'");
      const json params = {{"prime", ell},
                           {"mode", expanded ? "expanded" : "extended"},
                           {"pairs", pairs},
                           {"budget", run.budget_json()}};
      auto res = run.cached("obstruction", params, p.to_text(), [&] {
        const auto opts = run.hopf_options(p);
        const auto order = opts.order ? *opts.order
                                      : rewrite::LetterOrder::declaration_order(p.generator_count());
        const rewrite::RewriteSystem rs =
            rewrite::kb_complete(hopf_quotient_presentation(p, ell, {}), order, opts.budget);
        json rows = json::array();
        for (const auto& [x, y] : pairs) {
          const hopf::ObstructionResult r =
              hopf::obstruction_check(rs, p.generator_word(x), p.generator_word(y));
          rows.push_back({{"pair", {x, y}},
                          {"verdict", std::string(hopf::to_string(r.verdict))},
                          {"reduced", p.format_word(r.reduced)}});
        }
        return json{{"group", p.name()},
                    {"prime", ell},
                    {"kb_status", std::string(rewrite::to_string(rs.status()))},
                    {"rules_count", rs.rules().size()},
                    {"results", rows},
                    {"version", tool_version()}};
      });
      if (js) {
        run.emit_json(res);
      } else {
        const json& j = res.payload;
        out << j["group"].get<std::string>() << ": completion " << j["kb_status"].get<std::string>()
            << ", " << j["rules_count"] << " rules\n";
        for (const auto& row : j["results"])
          out << row["pair"][0].get<std::string>() << ',' << row["pair"][1].get<std::string>()
              << ": " << row["verdict"].get<std::string>() << '\n';
      }
      return kExitOk;
    }

    if (*cyc || *ver) {
      const std::uint32_t ell = require_odd_prime(prime);
      symbols::CycleSpec spec{s_param, parse_list<std::uint32_t>(units, "--units")};
      const symbols::BarChain ch = symbols::eq1_cycle(ell, spec);
      const std::string cls(symbols::to_string(symbols::classify_cycle(spec)));
      const bool closed = ch.degree() == 0 || symbols::boundary(ch).is_zero();
      if (*cyc) {
        if (js) {
          json j = chain_to_json(ch);
          j["class"] = cls;
          j["bidegree"] = {spec.degree(), 1};
          j["version"] = tool_version();
          out << dump(j);
        } else {
          out << "degree " << ch.degree() << ", bidegree (" << spec.degree() << ",1), " << cls
              << ", " << ch.terms().size() << " terms\n"
              << ch.to_text();
        }
      } else if (js) {
        out << dump({{"prime", ell},
                     {"s", spec.s},
                     {"units", spec.units},
                     {"degree", ch.degree()},
                     {"terms", ch.terms().size()},
                     {"boundary_zero", closed},
                     {"class", cls},
                     {"version", tool_version()}});
      } else {
        out << (closed ? "cycle: boundary is zero" : "not a cycle: boundary is nonzero") << '\n';
      }
      return closed ? kExitOk : kExitInput;
    }

    if (*hil) {
      const auto h = symbols::hilbert_series(parse_list<std::uint32_t>(poly, "--poly"),
                                             parse_list<std::uint32_t>(exterior, "--exterior"),
                                             max_degree);
      if (js) {
        out << dump({{"coefficients", h}, {"version", tool_version()}});
      } else {
        for (std::size_t k = 0; k < h.size(); ++k) out << (k ? " " : "") << h[k];
        out << '\n';
      }
      return kExitOk;
    }

    if (*tab) {
      corpus::Table1Options opts;
      opts.primes = parse_list<std::uint32_t>(primes, "--primes");
      for (std::uint32_t p : opts.primes)
        if (p != 2 && p != 3 && p != 5 && p != 7) throw UsageError("--primes: only 2, 3, 5, 7");
      if (opts.primes.empty()) throw UsageError("--primes: empty list");
      opts.jobs = run.settings().jobs;
      opts.cyclic_family = cyclic;
      opts.hopf.budget = run.settings().budget;
      opts.hopf.full_budget_per_iteration = run.settings().full_budget_per_iteration;
      std::vector<std::uint32_t> sorted = opts.primes;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      const json params = {{"primes", sorted}, {"cyclic", cyclic}, {"budget", run.budget_json()}};
      std::string table_text;
      auto res = run.cached("table1", params, "", [&] {
        const corpus::Table1Report t = corpus::table1_run(opts);
        table_text = corpus::format_table1(t);
        json j = table1_to_json(t);
        j["text"] = table_text;
        return j;
      });
      if (js) {
        run.emit_json(res);
      } else {
        out << res.payload["text"].get<std::string>();
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace hopfbound::app
