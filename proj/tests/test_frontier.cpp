#include <doctest.h>

#include "smbc/frontier.hpp"

using namespace smbc;

namespace {

RegionFrontier make_frontier(std::vector<RateQuintuple> pts) {
  RegionFrontier f;
  const auto keep = pareto_filter_indices(
      pts, [](const auto& a, const auto& b) { return dominates(a, b); },
      [](const auto& a, const auto& b) { return lex_less(a, b); });
  for (auto i : keep) f.points.push_back(pts[i]);
  return f;
}

}  // namespace

TEST_CASE("dominance ordering") {
  const RateQuintuple a{1.0, 0.5, 0.2, 0.1, 0.1};
  const RateQuintuple b{0.9, 0.5, 0.2, 0.1, 0.2};
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, a));
  CHECK_FALSE(dominates(a, a));  // needs one strict coordinate
  // incomparable pair
  const RateQuintuple c{1.1, 0.4, 0.2, 0.1, 0.1};
  CHECK_FALSE(dominates(a, c));
  CHECK_FALSE(dominates(c, a));
}

TEST_CASE("pareto filter removes dominated points and duplicates") {
  std::vector<RateQuintuple> pts = {
      {1.0, 0.0, 0.0, 0.5, 0.5}, {0.5, 0.0, 0.0, 0.5, 0.5},  // dominated
      {1.0, 0.0, 0.0, 0.5, 0.5},                             // duplicate
      {0.0, 1.0, 0.0, 0.2, 0.9}, {0.0, 0.0, 0.0, 0.0, 0.0},
  };
  const auto f = make_frontier(pts);
  REQUIRE(f.points.size() == 3);
  // sorted lexicographically ascending
  CHECK(f.points[0] == RateQuintuple{0.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(f.points[1] == RateQuintuple{0.0, 1.0, 0.0, 0.2, 0.9});
  CHECK(f.points[2] == RateQuintuple{1.0, 0.0, 0.0, 0.5, 0.5});
}

TEST_CASE("check_point dominated corner") {
  const auto f = make_frontier({{1.0, 0.2, 0.3, 0.4, 0.6}});
  CHECK(check_point(f, {0.0, 0.0, 0.0, 0.7, 0.7}) == Verdict::Inside);
  CHECK(check_point(f, {1.0, 0.2, 0.3, 0.4, 0.6}) == Verdict::Inside);
}

TEST_CASE("check_point dominance violation") {
  const auto f = make_frontier({{1.0, 0.2, 0.3, 0.4, 0.6}});
  CHECK(check_point(f, {2.0, 0.2, 0.3, 0.4, 0.6}) == Verdict::OutsideOfFound);
  // asking for less leakage than any point guarantees
  CHECK(check_point(f, {0.0, 0.0, 0.0, 0.1, 0.1}) == Verdict::OutsideOfFound);
}

TEST_CASE("check_point accepts time-sharing midpoints") {
  const RateQuintuple p{1.0, 0.0, 0.0, 0.8, 0.1};
  const RateQuintuple q{0.0, 1.0, 0.0, 0.1, 0.8};
  const auto f = make_frontier({p, q});
  // exact midpoint is reachable with weights (1/2, 1/2)
  CHECK(check_point(f, {0.5, 0.5, 0.0, 0.45, 0.45}) == Verdict::Inside);
  // slightly more demanding than any convex combination
  CHECK(check_point(f, {0.6, 0.5, 0.0, 0.45, 0.45}) == Verdict::OutsideOfFound);
  // a point below the chord is fine
  CHECK(check_point(f, {0.5, 0.4, 0.0, 0.5, 0.5}) == Verdict::Inside);
}

TEST_CASE("check_point convexity across three points") {
  const auto f = make_frontier({{0.9, 0.0, 0.0, 0.9, 0.0},
                                {0.0, 0.9, 0.0, 0.0, 0.9},
                                {0.3, 0.3, 0.3, 0.3, 0.3}});
  // weights (1/3,1/3,1/3): rates (0.4,0.4,0.1), leaks (0.4,0.4)
  CHECK(check_point(f, {0.4, 0.4, 0.1, 0.4, 0.4}) == Verdict::Inside);
  CHECK(check_point(f, {0.4, 0.4, 0.2, 0.4, 0.4}) == Verdict::OutsideOfFound);
}

TEST_CASE("check_point rejects an empty frontier") {
  RegionFrontier empty;
  CHECK_THROWS_AS(check_point(empty, {0, 0, 0, 0, 0}), ValidationError);
}
