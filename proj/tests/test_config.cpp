#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "hilltongue/config.hpp"

using namespace hilltongue;

namespace {

const std::string kBase = R"(# base
f = [2:1, 3:1/18]
g = [1:2/3]
order = 6
n_max = 3
)";

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("no ConfigError for:\n" << text);
  return ConfigError(0, "", "");
}

}  // namespace

TEST_CASE("minimal config") {
  const RunConfig c = parse_config(kBase);
  CHECK(c.spec.order() == 6);
  CHECK(c.spec.osc.alpha.at(3) == ratio(1, 18));
  CHECK(c.spec.coupling.gamma.at(1) == ratio(2, 3));
  CHECK(c.n_max == 3);
  CHECK(c.analyses == std::set<std::string>{"series"});
  CHECK(c.q_grid.empty());
  CHECK(c.hash == fnv1a(kBase));
}

TEST_CASE("grids, analyses and tolerances") {
  const RunConfig c = parse_config(kBase + R"(
q_grid = geom(0.02, 0.16, 4)
analyses = [tongues, order]
tol.root = 1e-12
tol.min_steps = 32
)");
  REQUIRE(c.q_grid.size() == 4);
  CHECK(c.q_grid[0] == 0.02);
  CHECK(c.q_grid[1] == doctest::Approx(0.04));
  CHECK(c.q_grid[3] == 0.16);
  CHECK(c.wants("order"));
  CHECK_FALSE(c.wants("series"));
  CHECK(c.settings.root_tolerance == 1e-12);
  CHECK(c.settings.min_steps == 32);
  const RunConfig l = parse_config(kBase + "q_grid = [0.05, 0.1]\n");
  CHECK(l.q_grid == std::vector<double>{0.05, 0.1});
}

TEST_CASE("errors point at line and field") {
  auto e = error_of(kBase + "colour = red\n");
  CHECK(e.line() == 6);
  CHECK(e.field() == "colour");

  e = error_of(kBase + "n_max = 2\n");
  CHECK(e.field() == "n_max");
  CHECK(e.line() == 6);

  e = error_of("f = [2:1]\ng = [1:x]\norder = 3\nn_max = 1\n");
  CHECK(e.field() == "g");
  CHECK(e.line() == 2);

  e = error_of("f = [1:1]\ng = [1:1]\norder = 3\nn_max = 1\n");
  CHECK(e.field() == "f");

  e = error_of("f = []\ng = [1:1]\norder = 3\nn_max = 4\n");
  CHECK(e.field() == "n_max");
  CHECK(std::string(e.what()).find("exceeds order") != std::string::npos);

  e = error_of("f = []\ng = [1:1]\nn_max = 1\n");
  CHECK(e.field() == "order");
  CHECK(e.line() == 0);

  e = error_of(kBase + "analyses = [tongues]\n");
  CHECK(e.field() == "q_grid");

  e = error_of(kBase + "q_grid = [0.1, 0.05]\n");
  CHECK(e.field() == "q_grid");

  e = error_of(kBase + "analyses = [plots]\n");
  CHECK(e.field() == "analyses");

  e = error_of(kBase + "tol.root = -1\n");
  CHECK(e.field() == "tol.root");

  e = error_of(kBase + "just words\n");
  CHECK(e.line() == 6);
}

TEST_CASE("bundled configs load") {
  for (const char* name : {"mathieu", "example1", "example2", "example4", "trombettine-K3"}) {
    CAPTURE(name);
    const RunConfig c = load_config(std::string(HILLTONGUE_CONFIGS) + "/" + name + ".cfg");
    CHECK(c.name == name);
    CHECK(c.n_max <= c.spec.order());
    CHECK_NOTHROW(c.spec.validate());
  }
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}
