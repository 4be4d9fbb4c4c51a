// End-to-end tests against the installed binary (path in $SAWLAB_BIN).
// Each case shells out, captures stdout+stderr and the exit status, and
// checks the machine-readable contract: exact values, stable bytes, cache
// round trips, exit codes, and that every emitted check id is in the catalog.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "sawlab/report.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunOut {
  std::string text;
  int rc = -1;
};

std::string bin() {
  const char* p = std::getenv("SAWLAB_BIN");
  REQUIRE(p != nullptr);
  return p;
}

RunOut run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + bin() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunOut out;
  char buf[4096];
  while (size_t got = std::fread(buf, 1, sizeof buf, pipe))
    out.text.append(buf, got);
  int status = pclose(pipe);
  out.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Json parse(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  REQUIRE_FALSE(doc.is_discarded());
  return doc;
}

// every check report in the document (an object carrying both "check" and
// "outcome") must use a catalogued id
void check_ids_catalogued(const Json& doc) {
  const auto& catalog = sawlab::report::check_catalog();
  if (doc.is_object()) {
    if (doc.contains("check") && doc.contains("outcome"))
      CHECK(catalog.count(doc["check"].get<std::string>()) == 1);
    for (const auto& [k, v] : doc.items()) check_ids_catalogued(v);
  } else if (doc.is_array()) {
    for (const auto& v : doc) check_ids_catalogued(v);
  }
}

struct TempDir {
  std::filesystem::path p;
  TempDir() {
    p = std::filesystem::temp_directory_path() /
        ("sawlab-cli-test-" + std::to_string(::getpid()) + "-" +
         std::to_string(counter()++));
    std::filesystem::create_directories(p);
  }
  ~TempDir() { std::filesystem::remove_all(p); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string env() const { return "SAWLAB_CACHE=" + p.string(); }
};

}  // namespace

TEST_CASE("count emits exact values and a stable document") {
  TempDir cache;
  auto r = run("count --lattice z2 --n 6", cache.env());
  CHECK(r.rc == 0);
  Json doc = parse(r.text);
  CHECK(doc["command"] == "count");
  CHECK(doc["inputs"]["lattice"] == "z2");
  std::vector<std::string> want{"1", "4", "12", "36", "100", "284", "780"};
  REQUIRE(doc["values"].size() == want.size());
  for (size_t i = 0; i < want.size(); ++i)
    CHECK(doc["values"][i].get<std::string>() == want[i]);

  // repeat runs are byte-identical without --timing, cache hit or not
  auto again = run("count --lattice z2 --n 6", cache.env());
  CHECK(again.rc == 0);
  CHECK(again.text == r.text);
  auto fresh = run("count --lattice z2 --n 6 --no-cache", cache.env());
  CHECK(fresh.text == r.text);
}

TEST_CASE("weighted counts accept exact rational lambda") {
  auto r = run("count --lattice z2 --n 3 --lambda 1/2 --no-cache");
  CHECK(r.rc == 0);
  Json doc = parse(r.text);
  // c_2^(1/2) = 16 - 4*(1/2) = 14, c_3^(1/2): the four reversals carry (1/2)^2
  CHECK(doc["values"][2].get<std::string>() == "14");
  CHECK(doc["values"][0].get<std::string>() == "1");
  CHECK(doc["values"][1].get<std::string>() == "4");
}

TEST_CASE("cache round trip is visible under --timing") {
  TempDir cache;
  auto first = run("count --lattice z2 --n 9 --timing", cache.env());
  CHECK(first.rc == 0);
  Json d1 = parse(first.text);
  REQUIRE(d1.contains("timing"));
  CHECK(d1["timing"]["cached"] == false);

  auto second = run("count --lattice z2 --n 9 --timing", cache.env());
  Json d2 = parse(second.text);
  CHECK(d2["timing"]["cached"] == true);
  CHECK(d2["values"] == d1["values"]);

  // gc to zero bytes empties the directory and reports what it evicted
  auto gc = run("cache-gc --max-bytes 0", cache.env());
  CHECK(gc.rc == 0);
  Json dg = parse(gc.text);
  CHECK(dg["summary"]["entries_after"] == 0);
  CHECK(dg["summary"]["entries_before"].get<int>() >= 1);
  auto third = run("count --lattice z2 --n 9 --timing", cache.env());
  CHECK(parse(third.text)["timing"]["cached"] == false);
}

TEST_CASE("bridge and polygon values") {
  auto r = run("bridge --lattice z2 --n 5 --no-cache");
  CHECK(r.rc == 0);
  Json doc = parse(r.text);
  std::vector<std::string> want{"1", "1", "3", "7", "17", "41"};
  REQUIRE(doc["values"].size() == want.size());
  for (size_t i = 0; i < want.size(); ++i)
    CHECK(doc["values"][i].get<std::string>() == want[i]);

  auto p = run("polygon --lattice z2 --two-n 4");
  CHECK(p.rc == 0);
  CHECK(parse(p.text)["value"] == "1");
}

TEST_CASE("identity checks pass and carry witnesses") {
  auto hex = run("hex --check strip --T 1 --L 1");
  CHECK(hex.rc == 0);
  Json dhex = parse(hex.text);
  REQUIRE(dhex["checks"].size() == 1);
  CHECK(dhex["checks"][0]["check"] == "hex-strip-identity");
  CHECK(dhex["checks"][0]["outcome"] == "pass");
  CHECK(dhex["checks"][0]["witnesses"].contains("residual"));
  check_ids_catalogued(dhex);

  auto lace = run("lace --lattice z2 --m-max 6 --check-recursion");
  CHECK(lace.rc == 0);
  Json dlace = parse(lace.text);
  CHECK(dlace["checks"][0]["check"] == "lace-recursion-agreement");
  CHECK(dlace["checks"][0]["outcome"] == "pass");
  check_ids_catalogued(dlace);

  auto hw = run("hw --lattice z2 --n 6 --check all");
  CHECK(hw.rc == 0);
  Json dhw = parse(hw.text);
  REQUIRE(dhw["checks"].size() == 3);
  for (const auto& c : dhw["checks"]) CHECK(c["outcome"] == "pass");
  check_ids_catalogued(dhw);

  auto ode = run("series --lattice z2 --n-max 8 --check-ode");
  CHECK(ode.rc == 0);
  Json dode = parse(ode.text);
  CHECK(dode["checks"][0]["check"] == "susceptibility-ode");
  CHECK(dode["checks"][0]["outcome"] == "pass");
  check_ids_catalogued(dode);

  auto gr = run("grassmann --M 5 --seed 3 --check repsaw");
  CHECK(gr.rc == 0);
  Json dgr = parse(gr.text);
  CHECK(dgr["checks"][0]["check"] == "grassmann-repsaw");
  CHECK(dgr["checks"][0]["outcome"] == "pass");
  check_ids_catalogued(dgr);
}

TEST_CASE("srw reference value for d=3") {
  auto r = run("srw --d 3 --task return");
  CHECK(r.rc == 0);
  Json doc = parse(r.text);
  CHECK(doc["divergent"] == false);
  CHECK(doc["value"].get<std::string>().substr(0, 9) == "1.5163860");
}

TEST_CASE("failing checks exit 1 and still carry witnesses") {
  auto r = run("hex --check vertex --z 9/20");
  CHECK(r.rc == 1);
  Json doc = parse(r.text);
  CHECK(doc["checks"][0]["outcome"] == "fail");
  CHECK(doc["checks"][0]["witnesses"].contains("residual"));
  check_ids_catalogued(doc);
}

TEST_CASE("usage and budget exit codes") {
  CHECK(run("count --bogus-flag").rc == 2);
  CHECK(run("definitely-not-a-subcommand").rc == 2);
  CHECK(run("count --lattice z9 --n 4").rc == 2);
  CHECK(run("hex --check strip --T 1 --L 1 --z 1/2").rc == 2);
  CHECK(run("count --lattice z2 --n 16 --node-budget 10 --no-cache").rc == 3);
}

TEST_CASE("csv format stays parseable") {
  auto r = run("count --lattice z2 --n 3 --no-cache --format csv");
  CHECK(r.rc == 0);
  CHECK(r.text == "k,value\n0,1\n1,4\n2,12\n3,36\n");
}
