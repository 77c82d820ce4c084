#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algorank/presets.hpp"
#include "algorank/rank.hpp"
#include "algorank/rng.hpp"
#include "algorank/synthetic.hpp"

using namespace algorank;

namespace {

// Scripted comparator over unordered pairs; outcome given for (first, second).
struct ScriptedCmp {
  std::map<std::pair<std::string, std::string>, ComparisonOutcome> script;

  ComparisonOutcome operator()(const std::string& l, const std::string& r) const {
    if (const auto it = script.find({l, r}); it != script.end()) return it->second;
    if (const auto it = script.find({r, l}); it != script.end()) return flip(it->second);
    throw Error("unscripted comparison: " + l + " vs " + r);
  }
};

// Comparator induced by per-algorithm class indices: lower class is faster,
// equal class is equivalent. Always consistent and transitive.
struct ClassCmp {
  std::map<std::string, int> cls;

  ComparisonOutcome operator()(const std::string& l, const std::string& r) const {
    const int a = cls.at(l), b = cls.at(r);
    if (a < b) return ComparisonOutcome::Faster;
    if (a > b) return ComparisonOutcome::Slower;
    return ComparisonOutcome::Equivalent;
  }
};

MeasurementMap gaussian_data(const std::vector<std::pair<std::string, double>>& locations,
                             double spread, std::uint64_t seed, int n = 30) {
  MixtureSpec mix;
  for (const auto& [id, loc] : locations) mix[id] = {{1.0, loc, spread}};
  SyntheticSource source(mix, seed);
  MeasurementMap data;
  for (const auto& [id, loc] : locations)
    data.emplace(id, MeasurementSet(id, source.next_batch(id, n)));
  return data;
}

}  // namespace

TEST_CASE("a single algorithm gets rank 1") {
  const auto seq = sort_algs({"only"}, [](const std::string&, const std::string&) {
    return ComparisonOutcome::Equivalent;
  });
  REQUIRE(seq.entries.size() == 1);
  CHECK(seq.entries[0] == RankedEntry{"only", 1});
}

TEST_CASE("bubble sort walkthrough with all four update rules") {
  ScriptedCmp cmp;
  cmp.script[{"alg1", "alg2"}] = ComparisonOutcome::Slower;      // alg2 faster
  cmp.script[{"alg1", "alg3"}] = ComparisonOutcome::Equivalent;
  cmp.script[{"alg3", "alg4"}] = ComparisonOutcome::Slower;      // alg4 faster
  cmp.script[{"alg1", "alg4"}] = ComparisonOutcome::Slower;      // alg4 faster
  cmp.script[{"alg2", "alg4"}] = ComparisonOutcome::Equivalent;

  const auto seq = sort_algs({"alg1", "alg2", "alg3", "alg4"}, cmp);
  CHECK(seq.ids() == std::vector<std::string>{"alg2", "alg4", "alg1", "alg3"});
  CHECK(seq.ranks() == std::vector<int>{1, 1, 2, 2});
}

TEST_CASE("three well-separated pairs collapse into three classes") {
  const auto data = gaussian_data({{"a0", 1.0}, {"a1", 1.0}, {"b0", 2.0},
                                   {"b1", 2.0}, {"c0", 3.0}, {"c1", 3.0}},
                                  0.01, 11);
  const auto seq = sort_algs({"b1", "c0", "a0", "c1", "a1", "b0"}, data, {25, 75});
  CHECK(seq.ranks() == std::vector<int>{1, 1, 2, 2, 3, 3});
  CHECK(seq.rank_of("a0") == 1);
  CHECK(seq.rank_of("a1") == 1);
  CHECK(seq.rank_of("b0") == 2);
  CHECK(seq.rank_of("b1") == 2);
  CHECK(seq.rank_of("c0") == 3);
  CHECK(seq.rank_of("c1") == 3);
}

TEST_CASE("two algorithms: merged rank iff equivalent, else faster first") {
  const auto fast = MeasurementSet("fast", {1.0, 1.1, 1.2});
  const auto slow = MeasurementSet("slow", {5.0, 5.1, 5.2});
  MeasurementMap data;
  data.emplace("fast", fast);
  data.emplace("slow", slow);
  const auto seq = sort_algs({"slow", "fast"}, data, {25, 75});
  CHECK(seq.ids() == std::vector<std::string>{"fast", "slow"});
  CHECK(seq.ranks() == std::vector<int>{1, 2});

  MeasurementMap same;
  same.emplace("x", MeasurementSet("x", {1.0, 1.1, 1.2}));
  same.emplace("y", MeasurementSet("y", {1.0, 1.1, 1.2}));
  CHECK(sort_algs({"x", "y"}, same, {25, 75}).ranks() == std::vector<int>{1, 1});
}

TEST_CASE("rank invariants hold on random class structures") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t p = 1 + uniform_below(gen, 8);
    ClassCmp cmp;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < p; ++i) {
      const std::string id = "a" + std::to_string(i);
      cmp.cls[id] = static_cast<int>(uniform_below(gen, 4));
      order.push_back(id);
    }
    fisher_yates(order, gen);
    const auto seq = sort_algs(order, cmp);  // validate() runs internally
    // permutation completeness
    auto ids = seq.ids();
    std::sort(ids.begin(), ids.end());
    std::sort(order.begin(), order.end());
    REQUIRE(ids == order);
    // consistent classes sort into exactly the class ranks
    for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
      REQUIRE(cmp.cls.at(seq.entries[i].id) <= cmp.cls.at(seq.entries[i + 1].id));
      const bool same_class = cmp.cls.at(seq.entries[i].id) == cmp.cls.at(seq.entries[i + 1].id);
      REQUIRE(same_class == (seq.entries[i].rank == seq.entries[i + 1].rank));
    }
  }
}

TEST_CASE("scaling all measurements leaves the ranking unchanged") {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t p = 2 + uniform_below(gen, 5);
    std::vector<std::pair<std::string, double>> locations;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < p; ++i) {
      const std::string id = "a" + std::to_string(i);
      locations.emplace_back(id, 0.5 + 3.0 * unit_double(gen));
      order.push_back(id);
    }
    const auto data = gaussian_data(locations, 0.2, 1000 + trial, 12);
    const QuantileRange r{25, 75};
    const auto base = sort_algs(order, data, r);

    const double c = 0.1 + 9.0 * unit_double(gen);
    MeasurementMap scaled;
    for (const auto& [id, set] : data) {
      std::vector<double> values(set.samples().begin(), set.samples().end());
      for (double& v : values) v *= c;
      scaled.emplace(id, MeasurementSet(id, std::move(values)));
    }
    const auto seq = sort_algs(order, scaled, r);
    REQUIRE(seq.entries == base.entries);
  }
}

TEST_CASE("mean ranks reproduce the seven-range worked example") {
  // Per-range classes for the six-algorithm example; the initial order is the
  // sequence the class indices refer to.
  const std::vector<std::string> order{"alg1", "alg0", "alg3", "alg2", "alg4", "alg5"};
  const std::vector<std::vector<int>> classes_per_range = {
      {1, 1, 1, 1, 1, 1},  // (5,95)
      {1, 1, 2, 2, 2, 2},  // (10,90)
      {1, 1, 2, 2, 2, 2},  // (15,85)
      {1, 1, 2, 2, 3, 3},  // (20,80)
      {1, 1, 2, 2, 3, 3},  // (25,75)
      {1, 1, 2, 2, 3, 3},  // (30,70)
      {1, 1, 2, 3, 4, 4},  // (35,65)
  };
  const auto family = default_quantile_family();
  auto cmp = [&](const std::string& l, const std::string& r, const QuantileRange& range) {
    std::size_t range_idx = 0;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (family[i] == range) range_idx = i;
    std::map<std::string, int> cls;
    for (std::size_t i = 0; i < order.size(); ++i) cls[order[i]] = classes_per_range[range_idx][i];
    return ClassCmp{cls}(l, r);
  };

  const auto table = mean_ranks(order, family, cmp);
  CHECK(table.headline_range == QuantileRange{25, 75});
  CHECK(table.headline.ranks() == std::vector<int>{1, 1, 2, 2, 3, 3});
  CHECK_THAT(table.mean_of("alg1"), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(table.mean_of("alg0"), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(table.mean_of("alg3"), Catch::Matchers::WithinAbs(13.0 / 7.0, 1e-12));
  CHECK_THAT(table.mean_of("alg2"), Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK_THAT(table.mean_of("alg4"), Catch::Matchers::WithinAbs(18.0 / 7.0, 1e-12));
  CHECK_THAT(table.mean_of("alg5"), Catch::Matchers::WithinAbs(18.0 / 7.0, 1e-12));
}

TEST_CASE("mean rank display values round to the published two decimals") {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", 13.0 / 7.0);
  CHECK(std::string(buf) == "1.86");
  std::snprintf(buf, sizeof(buf), "%.2f", 18.0 / 7.0);
  CHECK(std::string(buf) == "2.57");
}

TEST_CASE("constant per-range ranks average to themselves") {
  ClassCmp cmp{{{"a", 1}, {"b", 2}}};
  const auto family = default_quantile_family();
  const auto table =
      mean_ranks({"a", "b"}, family,
                 [&](const std::string& l, const std::string& r, const QuantileRange&) {
                   return cmp(l, r);
                 });
  CHECK(table.mean_of("a") == 1.0);
  CHECK(table.mean_of("b") == 2.0);
}

TEST_CASE("mean_ranks rejects an empty range family") {
  std::vector<QuantileRange> none;
  CHECK_THROWS_AS(mean_ranks({"a"}, none,
                             [](const std::string&, const std::string&, const QuantileRange&) {
                               return ComparisonOutcome::Equivalent;
                             }),
                  Error);
}

TEST_CASE("headline range selection prefers (25,75), else the nearest") {
  const auto def = default_quantile_family();
  CHECK(def[headline_range_index(def)] == QuantileRange{25, 75});
  const auto fast = fast_quantile_family();
  CHECK(fast[headline_range_index(fast)] == QuantileRange{15, 45});
}
