#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

namespace {

struct run_result {
  int code = -1;
  std::string out;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s)
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  return q + "'";
}

//! Runs the tool with the given arguments, capturing stdout only.
run_result run(const std::string& args) {
  const char* tool = std::getenv("DNB_TOOL");
  REQUIRE_MESSAGE(tool != nullptr, "DNB_TOOL must point at the dnb binary");
  std::string cmd = shell_quote(tool) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  run_result r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) {
  return shell_quote(std::string(DNB_FIXTURE_DIR "/") + name);
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("verify accepts a Poisson bracket") {
  run_result r = run("verify " + fx("torus_n2.json"));
  CHECK(r.code == 0);
  for (const char* rel : {"a1", "a2", "a3", "a4", "a5", "a6", "a7"})
    CHECK(contains(r.out, std::string("relation (") + rel + "): pass"));
  CHECK(contains(r.out, "verdict: Poisson bracket of hydrodynamic type"));
}

TEST_CASE("verify reports the first witness") {
  run_result r = run("verify " + fx("broken_a2.json"));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "relation (a2): FAIL at i=1, j=1, k=1, alpha=1"));
  CHECK(contains(r.out, "residual = 2"));
}

TEST_CASE("verify exit codes distinguish usage errors") {
  CHECK(run("verify " + fx("no_such.json")).code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("verify runs the numeric oracle on demand") {
  run_result r = run("verify --oracle --seed 5 " + fx("torus_n2.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "numeric cross-check"));
  CHECK(contains(r.out, ": pass"));
}

TEST_CASE("obstructions lists nonzero entries") {
  run_result r = run("obstructions " + fx("torus_n2.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "T^{112,12} = u1"));

  run_result c = run("obstructions " + fx("canonical_c6.json"));
  CHECK(c.code == 0);
  CHECK(contains(c.out, "T^{211,12} = 1"));
  CHECK(contains(c.out, "derived from the metrics"));

  run_result z = run("obstructions " + fx("constant_diag23.json"));
  CHECK(z.code == 0);
  CHECK(contains(z.out, "all obstruction tensors vanish"));
}

TEST_CASE("obstructions refuses degenerate metrics") {
  run_result r = run("obstructions " + fx("torus_n3.json"));
  CHECK(r.code == 2);
}

TEST_CASE("compat analyzes the pencil") {
  run_result r = run("compat " + fx("canonical_c6.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "compatible (b1 and b3): yes"));
  CHECK(contains(r.out, "nonsingular: no"));
  CHECK(contains(r.out, "-u1^2 + 2*u1*u2 - 2*u1*lam - u2^2 + 2*u2*lam - lam^2"));
  CHECK(contains(r.out, "double root lam = u2 - u1"));
}

TEST_CASE("compat takes two explicit metric files") {
  run_result r = run("compat " + fx("t10_diagonal_pair.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "nonsingular: yes"));
  CHECK(contains(r.out, "u1^2 - 2*u1*u2 + u2^2"));
}

TEST_CASE("nijenhuis prints the tensor") {
  run_result r = run("nijenhuis " + fx("canonical_c6.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "zero"));
}

TEST_CASE("classify names the canonical class") {
  run_result r = run("classify " + fx("torus_n2.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "obstructed"));
  CHECK(contains(r.out, "T^{112,12} = u1"));
  CHECK(contains(r.out, "vector fields on the two-dimensional torus"));

  run_result c = run("classify " + fx("constant_indef.json"));
  CHECK(c.code == 0);
  CHECK(contains(c.out, "constant"));

  run_result o = run("classify " + fx("onecomp_n3.json"));
  CHECK(o.code == 0);
  CHECK(contains(o.out, "c^1 = 1"));
  CHECK(contains(o.out, "c^2 = 2"));
  CHECK(contains(o.out, "c^3 = 3"));

  run_result b = run("classify " + fx("onecomp_bad.json"));
  CHECK(b.code == 1);
  CHECK(contains(b.out, "not a Poisson bracket"));
}

TEST_CASE("transform matches an expected bracket") {
  run_result r = run("transform " + fx("canonical_c6.json") + " " +
                     fx("quadratic_change.json") + " --expect " + fx("torus_n2.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "match"));

  // the reverse orientation is an honest mismatch
  run_result m = run("transform " + fx("torus_n2.json") + " " +
                     fx("quadratic_change.json") + " --expect " + fx("canonical_c6.json"));
  CHECK(m.code == 1);
  CHECK(contains(m.out, "MISMATCH"));
}

TEST_CASE("transform emits a loadable bracket") {
  run_result r = run("transform " + fx("canonical_c6.json") + " " +
                     fx("quadratic_change.json"));
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.contains("metrics"));
  CHECK(j.contains("b"));
  CHECK(j["components"] == 2);
}

TEST_CASE("liealg checks constants files") {
  run_result r = run("liealg --oracle " + fx("vector_fields_n2.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "jacobi identity (homogeneous part): pass"));
  CHECK(contains(r.out, "functional cross-check"));

  run_result c = run("liealg " + fx("canonical_constants.json"));
  CHECK(c.code == 0);
  CHECK(contains(c.out, "coboundary: no"));
  CHECK(contains(c.out, "nondegenerate normal-form conditions: satisfied"));
}

TEST_CASE("liealg accepts field-linear bracket files") {
  run_result r = run("liealg " + fx("torus_n2.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "jacobi identity (homogeneous part): pass"));
}

TEST_CASE("json output is machine readable and deterministic") {
  run_result a = run("--json verify " + fx("torus_n2.json"));
  CHECK(a.code == 0);
  nlohmann::json j = nlohmann::json::parse(a.out);
  CHECK(j["overall"] == true);
  CHECK(j["exit"] == 0);

  run_result b = run("--json verify " + fx("torus_n2.json"));
  CHECK(a.out == b.out);

  run_result c = run("verify --json " + fx("torus_n2.json"));
  CHECK(c.out == a.out); // the flag is accepted in either position
}
