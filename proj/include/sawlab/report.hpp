#pragma once
// Machine-readable check reports with a fixed shape: stable key order and all
// numbers carried as decimal or integer strings, so downstream consumers can
// parse at full precision and identical runs serialize byte-identically.

#include <json.hpp>

#include <map>
#include <string>

#include "sawlab/arith.hpp"

namespace sawlab::report {

using Json = nlohmann::ordered_json;

struct CheckReport {
  std::string check_id;             // key into check_catalog()
  Json inputs = Json::object();
  std::string outcome;              // pass | fail | inconclusive
  Json witnesses = Json::object();  // both sides of every identity, strings
  double seconds = -1;              // < 0: timing omitted (opt-in)
  bool cached = false;              // only serialized alongside timing
};

// fixed key order: check, inputs, outcome, witnesses, timing.  Throws on an
// unknown outcome, an id missing from the catalog, or a fail without a
// witness (a bare "fail" is useless to a consumer).
Json to_json(const CheckReport& r);

// every check id the tools can emit, with a one-line statement of what
// passing means; the test suite asserts emitted ids stay inside this table
const std::map<std::string, std::string>& check_catalog();

std::string int_str(const Int& v);
std::string rat_str(const Rat& v);
std::string real_str(const Real& v, int digits = 30);

}  // namespace sawlab::report
