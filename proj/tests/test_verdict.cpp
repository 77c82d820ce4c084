#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "algorank/rng.hpp"
#include "algorank/verdict.hpp"

using namespace algorank;

namespace {

RankedSequence seq(std::vector<RankedEntry> entries) { return RankedSequence{std::move(entries)}; }

}  // namespace

TEST_CASE("all minimum-FLOPs algorithms at rank 1 validate the discriminant") {
  const auto ranking = seq({{"a", 1}, {"b", 1}});
  const auto v = classify(ranking, {{"a", 100}, {"b", 100}});
  CHECK(v.kind == VerdictKind::FlopsValid);
  CHECK(v.min_flops_ids == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(v.anomaly());
}

TEST_CASE("flops stay valid when a costlier algorithm merely ties rank 1") {
  const auto ranking = seq({{"cheap", 1}, {"costly", 1}});
  const auto v = classify(ranking, {{"cheap", 100}, {"costly", 300}});
  CHECK(v.kind == VerdictKind::FlopsValid);
  CHECK(v.min_flops_ids == std::vector<std::string>{"cheap"});
}

TEST_CASE("a costlier algorithm alone at rank 1 is an outside anomaly") {
  // the fast-quantile scenario: the non-minimum algorithm clearly wins
  const auto ranking = seq({{"alg2", 1}, {"alg0", 2}, {"alg1", 2}});
  const auto v = classify(ranking, {{"alg0", 100}, {"alg1", 100}, {"alg2", 140}});
  CHECK(v.kind == VerdictKind::AnomalyOutsideMinFlops);
  CHECK(v.min_flops_ids == std::vector<std::string>{"alg0", "alg1"});
  CHECK(v.anomaly());
}

TEST_CASE("a split minimum-FLOPs set is a within anomaly") {
  // condition order: some of S_F at rank 1, so condition 1 does not fire
  const auto ranking = seq({{"a", 1}, {"other", 1}, {"b", 2}});
  const auto v = classify(ranking, {{"a", 100}, {"b", 100}, {"other", 250}});
  CHECK(v.kind == VerdictKind::AnomalyWithinMinFlops);
  CHECK(v.min_flops_ids == std::vector<std::string>{"a", "b"});
}

TEST_CASE("a lone minimum-FLOPs algorithm at rank 1 validates regardless of the rest") {
  const auto ranking = seq({{"min", 1}, {"x", 1}, {"y", 2}, {"z", 3}});
  const auto v = classify(ranking, {{"min", 10}, {"x", 20}, {"y", 30}, {"z", 40}});
  CHECK(v.kind == VerdictKind::FlopsValid);
  CHECK(v.min_flops_ids == std::vector<std::string>{"min"});
}

TEST_CASE("missing FLOP counts are an error") {
  const auto ranking = seq({{"a", 1}, {"b", 2}});
  CHECK_THROWS_AS(classify(ranking, {{"a", 100}}), Error);
}

TEST_CASE("evidence carries ranks, advisory mean ranks, and RF") {
  const auto ranking = seq({{"a", 1}, {"b", 2}});
  const auto v = classify(ranking, {{"a", 100}, {"b", 150}}, {{"a", 1.0}, {"b", 1.86}});
  REQUIRE(v.evidence.size() == 2);
  CHECK(v.evidence[0].id == "a");
  CHECK(v.evidence[0].rank == 1);
  CHECK(v.evidence[0].rf == 0.0);
  CHECK(v.evidence[1].rf == 0.5);
  REQUIRE(v.evidence[1].mean_rank.has_value());
  CHECK(*v.evidence[1].mean_rank == 1.86);
}

TEST_CASE("the verdict ignores the order of equal-rank algorithms") {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t p = 2 + uniform_below(gen, 5);
    std::vector<RankedEntry> entries;
    int rank = 1;
    for (std::size_t i = 0; i < p; ++i) {
      entries.push_back({"a" + std::to_string(i), rank});
      if (i + 1 < p && uniform_below(gen, 2) == 0) ++rank;
    }
    std::map<std::string, long long> flops;
    for (const auto& e : entries) flops[e.id] = 50 + static_cast<long long>(uniform_below(gen, 3)) * 25;

    const auto base = classify(seq(entries), flops);

    // swap two adjacent equal-rank entries if any exist
    auto permuted = entries;
    for (std::size_t i = 0; i + 1 < permuted.size(); ++i)
      if (permuted[i].rank == permuted[i + 1].rank) {
        std::swap(permuted[i].id, permuted[i + 1].id);
        break;
      }
    const auto shuffled = classify(seq(permuted), flops);
    REQUIRE(shuffled.kind == base.kind);

    // uniform scaling of all FLOP counts changes nothing
    std::map<std::string, long long> scaled;
    const long long k = 2 + static_cast<long long>(uniform_below(gen, 5));
    for (const auto& [id, f] : flops) scaled[id] = f * k;
    REQUIRE(classify(seq(entries), scaled).kind == base.kind);
  }
}
