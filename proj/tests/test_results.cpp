#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgswap/results.hpp"

using namespace mgswap;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int data_rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("period", 0) != 0) ++n;
  return n;
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("a joint bundle survives storage and re-emits the same tables") {
  const auto ctx = make_context(default_scenario());
  const auto r = solve_joint(ctx, 2);
  const auto b = bundle_joint(ctx, r);
  CHECK(b.strategies.size() == 3);

  const auto dir = fresh_dir("mgswap_results_test");
  save_bundle(b, (dir / "result.json").string());
  const auto back = load_bundle((dir / "result.json").string());
  CHECK(bundle_to_json(back) == bundle_to_json(b));

  for (const auto& o : b.strategies) {
    const auto [f1, f2] = recompute_objectives(o, ctx.scenario);
    CHECK(f1 == doctest::Approx(o.f1));
    CHECK(f2 == doctest::Approx(o.f2));
  }

  const auto first = emit_plotdata(b, (dir / "a").string());
  const auto second = emit_plotdata(back, (dir / "b").string());
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(slurp(first[i]) == slurp(second[i]));

  for (const char* f : {"der_load.tsv", "swap_demand.tsv", "exchange_power.tsv", "hourly_economics.tsv"})
    CHECK(data_rows(dir / "a" / f) == 24);
  CHECK(slurp(dir / "a" / "exchange_power.tsv").find("positive = charging") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("an unwritable directory is an error") {
  ResultBundle b;
  b.scenario = default_scenario();
  CHECK_THROWS_AS(emit_plotdata(b, "/proc/mgswap/none"), std::runtime_error);
}

TEST_CASE("identical inputs give identical results") {
  const auto sc = default_scenario();
  const auto ctx = make_context(sc);
  const auto a = bundle_to_json(bundle_joint(ctx, solve_joint(ctx, 2)), false);
  const auto b = bundle_to_json(bundle_joint(ctx, solve_joint(make_context(sc), 2)), false);
  CHECK(a.dump() == b.dump());
  CHECK_FALSE(a.contains("timings"));
}
