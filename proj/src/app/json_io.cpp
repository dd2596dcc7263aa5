#include "hopfbound/app/json_io.hpp"

#include <chrono>
#include <ctime>

namespace hopfbound::app {

using nlohmann::json;

std::string tool_version() { return HOPFBOUND_VERSION; }

json report_to_json(const hopf::HopfBoundReport& r, const Presentation& p) {
  json status = json::array();
  json rules = json::array();
  for (const hopf::QuotientRun& q : r.runs) {
    status.push_back(std::string(rewrite::to_string(q.status)));
    rules.push_back(q.rules);
  }
  json surviving = json::array();
  for (const Word& w : r.surviving) surviving.push_back(p.format_word(w));
  return {{"group", r.group},       {"prime", r.prime},       {"a", r.a},
          {"b", r.b},               {"c", r.c},               {"e", r.e},
          {"d", r.d},               {"kb_status", status},    {"rules_count", rules},
          {"surviving_relators", surviving},                  {"version", tool_version()}};
}

json table1_to_json(const corpus::Table1Report& t) {
  json cells = json::array();
  for (const corpus::Table1Cell& c : t.cells) {
    json known = nullptr;
    if (c.known) known = {{"value", c.known->value}, {"exact", c.known->exact}};
    json status = json::array();
    json rules = json::array();
    for (const hopf::QuotientRun& q : c.report.runs) {
      status.push_back(std::string(rewrite::to_string(q.status)));
      rules.push_back(q.rules);
    }
    cells.push_back({{"group", c.entry},
                     {"prime", c.prime},
                     {"a", c.report.a},
                     {"b", c.report.b},
                     {"c", c.report.c},
                     {"e", c.report.e},
                     {"d", c.report.d},
                     {"kb_status", status},
                     {"rules_count", rules},
                     {"known", known},
                     {"oracle", c.oracle ? json(*c.oracle) : json(nullptr)},
                     {"pass", c.pass},
                     {"note", c.note}});
  }
  json missing = json::array();
  for (const corpus::MissingRow& m : t.not_attempted) {
    json known = json::object();
    for (const auto& [p, k] : m.known)
      known[std::to_string(p)] = {{"value", k.value}, {"exact", k.exact}};
    missing.push_back({{"group", m.name}, {"known", known}, {"status", "not attempted"}});
  }
  return {{"primes", t.primes},
          {"cells", cells},
          {"not_attempted", missing},
          {"all_pass", t.all_pass()},
          {"version", tool_version()}};
}

json presentation_to_json(const Presentation& p) {
  json rels = json::array();
  for (const Word& w : p.relators()) rels.push_back(p.format_word(w));
  return {{"name", p.name()}, {"generators", p.generators()}, {"relators", rels}};
}

json chain_to_json(const symbols::BarChain& ch) {
  json terms = json::array();
  for (const auto& [s, c] : ch.terms()) terms.push_back({{"coef", c}, {"symbol", s}});
  return {{"prime", ch.ell()},
          {"degree", ch.degree()},
          {"group_orders", ch.group().orders()},
          {"terms", terms}};
}

json metadata(double wall_time_ms, const std::string& timestamp, bool cache_hit) {
  return {{"wall_time_ms", wall_time_ms}, {"timestamp", timestamp}, {"cache_hit", cache_hit}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hopfbound::app
