#pragma once

// JSON payloads. Objects use sorted keys; run-dependent values (wall time,
// timestamp, cache status) live only in the "metadata" block.

#include <nlohmann/json.hpp>

#include <string>

#include "hopfbound/corpus.hpp"
#include "hopfbound/hopf.hpp"
#include "hopfbound/symbols.hpp"
#include "hopfbound/words.hpp"

namespace hopfbound::app {

std::string tool_version();

/// {group, prime, a, b, c, e, d, kb_status, rules_count, surviving_relators, version}
nlohmann::json report_to_json(const hopf::HopfBoundReport& r, const Presentation& p);

nlohmann::json table1_to_json(const corpus::Table1Report& t);

nlohmann::json presentation_to_json(const Presentation& p);

/// {prime, degree, group_orders, terms: [{coef, symbol: [[...], ...]}]}
nlohmann::json chain_to_json(const symbols::BarChain& ch);

nlohmann::json metadata(double wall_time_ms, const std::string& timestamp, bool cache_hit);

/// UTC, ISO 8601 with seconds.
std::string utc_timestamp();

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace hopfbound::app
