#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "expro/expro_c.h"

using nlohmann::json;

namespace {

struct Ctx {
  expro_context* p = nullptr;
  Ctx() { REQUIRE(expro_context_new(&p) == EXPRO_OK); }
  ~Ctx() { expro_context_free(p); }
};

// Runs a call, returns (status, parsed JSON or null, passed flag).
struct Out {
  expro_status status;
  json doc;
  bool passed = false;
};

template <class Call>
Out run(Call&& call) {
  expro_result* r = nullptr;
  Out o{call(&r), json(), false};
  if (o.status == EXPRO_OK) {
    o.doc = json::parse(expro_result_json(r));
    o.passed = expro_result_passed(r) != 0;
    expro_result_free(r);
  }
  return o;
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(EXPRO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) { return std::string(EXPRO_TEST_TMP) + "/" + name; }

const char* const kWarmup = "n=3\nl=h\nm=13\nml=h\nleft=P(12)\nright=P(23)\ndepth=4\n";

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(expro_version()).size() > 0);
  CHECK(std::string(expro_status_name(EXPRO_OK)) == "ok");
  CHECK(std::string(expro_status_name(EXPRO_ERR_POLE_AT_POINT)) == "pole-at-point");
  CHECK(std::string(expro_status_name(EXPRO_ERR_COST_GUARD)) == "cost-guard");
  CHECK(expro_registry_count() == 29);
  CHECK(std::string(expro_registry_id(0)) == "fin-fac-sl2");
  CHECK(expro_registry_id(1000) == nullptr);
}

TEST_CASE("context settings are validated") {
  Ctx c;
  CHECK(expro_context_set_depth(c.p, 0) == EXPRO_ERR_INVALID_ARGUMENT);
  CHECK(expro_context_set_mode(c.p, "fuzzy") == EXPRO_ERR_PARSE);
  CHECK(std::string(expro_context_last_error(c.p)).size() > 0);
  CHECK(expro_context_set_trials(c.p, 0) == EXPRO_ERR_INVALID_ARGUMENT);
  CHECK(expro_context_set_depth(c.p, 3) == EXPRO_OK);
  CHECK(expro_context_set_mode(c.p, "generic") == EXPRO_OK);
  CHECK(expro_context_set_seed(c.p, 99) == EXPRO_OK);
  CHECK(expro_context_new(nullptr) == EXPRO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("roots and normal orders") {
  Ctx c;
  const Out r = run([&](expro_result** o) { return expro_roots(c.p, 4, o); });
  REQUIRE(r.status == EXPRO_OK);
  CHECK(r.doc["schema_version"] == 1);
  CHECK(r.doc["result"]["count"] == 6);
  CHECK(r.doc["result"]["rho"] == "3,2,1,0");
  const Out bad = run([&](expro_result** o) { return expro_roots(c.p, 9, o); });
  CHECK(bad.status == EXPRO_ERR_INVALID_RANK);
  const Out no = run([&](expro_result** o) { return expro_normal_orders(c.p, 4, o); });
  CHECK(no.doc["result"]["count"] == 16);
}

TEST_CASE("verify through the C interface") {
  Ctx c;
  const Out ok = run([&](expro_result** o) { return expro_verify(c.p, "fin-fac-sl3", o); });
  REQUIRE(ok.status == EXPRO_OK);
  CHECK(ok.passed);
  CHECK(ok.doc["result"]["verdict"]["equal"] == true);
  const Out ce = run([&](expro_result** o) { return expro_verify(c.p, "counterexample-sl3", o); });
  CHECK(ce.passed);
  CHECK(ce.doc["result"]["verdict"]["equal"] == false);
  const Out unknown = run([&](expro_result** o) { return expro_verify(c.p, "no-such-id", o); });
  CHECK(unknown.status == EXPRO_ERR_INVALID_ARGUMENT);
  // Same inputs, same document.
  const Out again = run([&](expro_result** o) { return expro_verify(c.p, "fin-fac-sl3", o); });
  CHECK(again.doc == ok.doc);
}

TEST_CASE("projector, solve, denominators and Shapovalov") {
  Ctx c;
  expro_context_set_depth(c.p, 3);
  const Out p = run([&](expro_result** o) { return expro_projector(c.p, 3, nullptr, "23", o); });
  REQUIRE(p.status == EXPRO_OK);
  CHECK(p.doc["result"]["idempotent"] == true);
  const Out guard = run([&](expro_result** o) { return expro_projector(c.p, 5, nullptr, "12", o); });
  CHECK(guard.status == EXPRO_ERR_COST_GUARD);

  const Out s = run([&](expro_result** o) { return expro_solve(c.p, kWarmup, o); });
  REQUIRE(s.status == EXPRO_OK);
  CHECK(s.passed);
  CHECK(s.doc["result"]["status"] == "unique");
  const Out parse = run([&](expro_result** o) { return expro_solve(c.p, "n=3\nnonsense\n", o); });
  CHECK(parse.status == EXPRO_ERR_PARSE);

  const Out d = run([&](expro_result** o) { return expro_denominators(c.p, 3, nullptr, "12", 1, nullptr, o); });
  REQUIRE(d.status == EXPRO_OK);
  CHECK(d.doc.dump().find("x1 - x3 + 3") != std::string::npos);
  CHECK(d.doc.dump().find("x2 - x3 + 2") != std::string::npos);

  const Out g = run([&](expro_result** o) { return expro_shapovalov(c.p, 2, o); });
  REQUIRE(g.status == EXPRO_OK);
  CHECK(g.doc["result"]["blocks"][1]["determinant"] == "x1 - x2");
}

TEST_CASE("command-line exit codes") {
  CHECK(shell("roots --n 4").code == 0);
  CHECK(shell("roots --n 9").code == 2);
  CHECK(shell("--bogus").code == 2);
  CHECK(shell("verify --registry-id fin-fac-sl2").code == 0);
  CHECK(shell("verify --registry-id counterexample-sl3").code == 0);
  CHECK(shell("verify --registry-id no-such-id").code == 2);
  CHECK(shell("projector --n 5 --l 12").code == 2);

  const Shell list = shell("verify --list");
  CHECK(list.code == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 29);

  const std::string cfg = temp_path("warmup.txt"), out = temp_path("warmup.json");
  std::ofstream(cfg) << kWarmup;
  CHECK(shell("solve --config " + cfg + " --out " + out).code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const json doc = json::parse(ss.str());
  CHECK(doc["command"] == "solve");
  CHECK(doc["result"]["status"] == "unique");

  // An unequal target is a violation.
  const std::string bad = temp_path("bad.txt");
  std::ofstream(bad) << "n=3\nl=h\nm=13\nml=h\nleft=P(12)\nright=P(23)\ntarget=1\ndepth=3\n";
  CHECK(shell("solve --config " + bad).code == 1);

  const Shell a = shell("normal-orders --n 4");
  const Shell b = shell("normal-orders --n 4");
  CHECK(a.out == b.out);
}
