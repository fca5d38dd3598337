#include <doctest.h>

#include <cmath>
#include <map>

#include "binreg/config.hpp"
#include "binreg/csv.hpp"
#include "binreg/error.hpp"
#include "binreg/simulate.hpp"
#include "fixtures.hpp"

using binreg::LinkKind;

TEST_CASE("uniform01 uses the top 53 bits") {
  std::mt19937_64 a(1);
  std::mt19937_64 b(1);
  for (int i = 0; i < 100; ++i) {
    const double u = binreg::uniform01(a);
    CHECK(u == double(b() >> 11) * 0x1.0p-53);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // The engine itself is pinned by the standard: 10000th output of the
  // default-seeded mt19937_64.
  std::mt19937_64 ref;
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ull);
}

TEST_CASE("sample_binomial") {
  std::mt19937_64 rng(9);
  CHECK(binreg::sample_binomial(rng, 10, 0.0) == 0);
  CHECK(binreg::sample_binomial(rng, 10, 1.0) == 10);
  CHECK(binreg::sample_binomial(rng, 0, 0.3) == 0);
  CHECK_THROWS_AS(binreg::sample_binomial(rng, 5, 1.5), binreg::DomainError);
  CHECK_THROWS_AS(binreg::sample_binomial(rng, -1, 0.5), binreg::DomainError);

  // Frequencies against the exact pmf.
  for (double pi : {0.1, 0.5, 0.83}) {
    const int n = 6;
    const int draws = 200000;
    std::vector<int> counts(n + 1, 0);
    for (int i = 0; i < draws; ++i) ++counts[binreg::sample_binomial(rng, n, pi)];
    double chi = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double e = draws * std::exp(oracle::log_binomial_pmf(k, n, pi));
      chi += (counts[k] - e) * (counts[k] - e) / e;
    }
    CHECK_MESSAGE(chi < 30.0, "pi=" << pi);  // 6 df, far beyond the 0.999 quantile
  }
}

TEST_CASE("design_width") {
  CHECK(binreg::design_width(fixture::three_variables()) == 1 + 1 + 2 + 3);
}

TEST_CASE("simulate: zero truth gives the link's value at zero") {
  const auto vars = fixture::three_variables();
  binreg::SimulationSpec spec{std::vector<double>(7, 0.0), 20000, 1, 1};
  const auto d = binreg::simulate(vars, spec, LinkKind::Probit, 5);
  double y = 0;
  for (const auto& r : d.rows) {
    CHECK(r.trials == 1);
    y += double(r.successes);
  }
  CHECK(std::abs(y / 20000.0 - 0.5) < 0.015);
  const auto c = binreg::simulate(vars, spec, LinkKind::Cloglog, 5);
  double yc = 0;
  for (const auto& r : c.rows) yc += double(r.successes);
  CHECK(std::abs(yc / 20000.0 - (1.0 - std::exp(-1.0))) < 0.015);
}

TEST_CASE("simulate: levels are uniform and group sizes cover the range") {
  const auto vars = fixture::three_variables();
  binreg::SimulationSpec spec{std::vector<double>(7, 0.1), 12000, 2, 5};
  const auto d = binreg::simulate(vars, spec, LinkKind::Logit, 17);
  std::map<std::string, int> edu;
  std::map<std::int64_t, int> sizes;
  for (const auto& r : d.rows) {
    ++edu[r.levels[2]];
    ++sizes[r.trials];
    CHECK(r.successes >= 0);
    CHECK(r.successes <= r.trials);
  }
  CHECK(edu.size() == 4);
  for (const auto& [level, count] : edu) CHECK(std::abs(count - 3000) < 250);
  CHECK(sizes.size() == 4);
  CHECK(sizes.begin()->first == 2);
  CHECK(sizes.rbegin()->first == 5);
}

TEST_CASE("simulate: deterministic, seed-sensitive, and round-trips through the CSV reader") {
  const auto vars = fixture::three_variables();
  binreg::SimulationSpec spec{{-0.2, 0.5, 0.1, -0.3, 0.2, 0.4, -0.1}, 500, 1, 8};
  const auto a = binreg::dataset_to_csv(binreg::simulate(vars, spec, LinkKind::Cauchit, 99), "y", "n");
  const auto b = binreg::dataset_to_csv(binreg::simulate(vars, spec, LinkKind::Cauchit, 99), "y", "n");
  const auto c = binreg::dataset_to_csv(binreg::simulate(vars, spec, LinkKind::Cauchit, 100), "y", "n");
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.rfind("y,n,area,wealth,education\n", 0) == 0);
  CHECK(a.find('\r') == std::string::npos);

  binreg::ModelConfig cfg;
  cfg.variables = vars;
  const auto parsed = binreg::parse_csv_text(a, cfg);
  const auto original = binreg::simulate(vars, spec, LinkKind::Cauchit, 99);
  REQUIRE(parsed.rows.size() == original.rows.size());
  for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
    CHECK(parsed.rows[i].successes == original.rows[i].successes);
    CHECK(parsed.rows[i].trials == original.rows[i].trials);
    CHECK(parsed.rows[i].levels == original.rows[i].levels);
  }
}

TEST_CASE("simulate: frozen stream") {
  // First rows for a fixed seed; guards the documented draw order.
  std::vector<binreg::VariableSpec> vars = {{"v", {"a", "b", "c"}, "c"}};
  binreg::SimulationSpec spec{{0.0, 0.0, 0.0}, 3, 1, 4};
  const auto d = binreg::simulate(vars, spec, LinkKind::Logit, 2024);
  std::mt19937_64 rng(2024);
  for (const auto& r : d.rows) {
    const auto level = std::size_t(binreg::uniform01(rng) * 3);
    const auto trials = 1 + std::int64_t(binreg::uniform01(rng) * 4);
    const auto y = binreg::sample_binomial(rng, trials, 0.5);
    CHECK(r.levels[0] == vars[0].levels[level]);
    CHECK(r.trials == trials);
    CHECK(r.successes == y);
  }
}

TEST_CASE("simulate: errors") {
  const auto vars = fixture::three_variables();
  binreg::SimulationSpec wrong{{0.1, 0.2}, 10, 1, 1};
  CHECK_THROWS_AS(binreg::simulate(vars, wrong, LinkKind::Logit, 1), binreg::DimensionError);
  binreg::SimulationSpec empty_range{std::vector<double>(7, 0.0), 10, 3, 2};
  CHECK_THROWS_AS(binreg::simulate(vars, empty_range, LinkKind::Logit, 1), binreg::ValidationError);
  binreg::SimulationSpec zero_group{std::vector<double>(7, 0.0), 10, 0, 2};
  CHECK_THROWS_AS(binreg::simulate(vars, zero_group, LinkKind::Logit, 1), binreg::ValidationError);
}
