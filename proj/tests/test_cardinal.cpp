#include <doctest.h>

#include <vector>

#include "dmcong/cardinal.hpp"
#include "dmcong/error.hpp"

using namespace dmcong;

namespace {
  Cardinal const a0 = Cardinal::aleph(0);
  Cardinal const a1 = Cardinal::aleph(1);
  Cardinal const a2 = Cardinal::aleph(2);
  Cardinal const aw = Cardinal::aleph(1, 0);

  std::vector<Cardinal> sample() {
    return {Cardinal::fin(0), Cardinal::fin(1), Cardinal::fin(7), a0, a1, a2,
            Cardinal::aleph(0, 3), aw, Cardinal::aleph(1, 1), Cardinal::aleph(2, 0)};
  }
}  // namespace

TEST_SUITE("cardinal") {
  TEST_CASE("compare") {
    CHECK(compare(Cardinal::fin(5), a0) == std::strong_ordering::less);
    CHECK(compare(a1, a1) == std::strong_ordering::equal);
    CHECK(compare(Cardinal::aleph(0, 3), aw) == std::strong_ordering::less);
    CHECK(compare(aw, Cardinal::aleph(0, 1000)) == std::strong_ordering::greater);
  }

  TEST_CASE("compare is a total order on a sample") {
    auto const s = sample();
    // The sample is listed in increasing order.
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK((compare(s[i], s[j]) == std::strong_ordering::less) == (i < j));
        CHECK((s[i] == s[j]) == (i == j));
      }
    }
  }

  TEST_CASE("successor") {
    CHECK(successor(Cardinal::fin(0)) == Cardinal::fin(1));
    CHECK(successor(a0) == a1);
    CHECK(successor(aw) == Cardinal::aleph(1, 1));
    for (auto const& c : sample()) {
      CHECK(c < successor(c));
      if (c.is_infinite()) {
        CHECK(cofinality(successor(c)) == Cardinal::fin(1));
      }
    }
  }

  TEST_CASE("cofinality") {
    CHECK(cofinality(a1) == Cardinal::fin(1));
    CHECK(cofinality(a0) == a0);
    CHECK(cofinality(aw) == a0);
    CHECK(cofinality(Cardinal::aleph(3, 0)) == a0);
    CHECK(cofinality(Cardinal::fin(4)) == Cardinal::fin(1));
    CHECK_THROWS_AS(cofinality(Cardinal::fin(0)), InvalidArgument);
    for (auto const& c : sample()) {
      if (c.is_infinite()) {
        CHECK(cofinality(c) <= c);
      }
    }
  }

  TEST_CASE("interval") {
    CHECK(interval(a0, a2) == std::vector<Cardinal>{a0, a1, a2});
    CHECK(interval(Cardinal::fin(1), a1, IntervalFilter::one_or_infinite)
          == std::vector<Cardinal>{Cardinal::fin(1), a0, a1});
    CHECK(interval(a2, a1).empty());
    CHECK(interval(Cardinal::fin(2), Cardinal::fin(4)).size() == 3);
    CHECK(interval(Cardinal::fin(2), Cardinal::fin(4), IntervalFilter::one_or_infinite).empty());
    CHECK_THROWS_AS(interval(Cardinal::fin(0), a0), InvalidArgument);
    CHECK_THROWS_AS(interval(a0, aw), InvalidArgument);
  }

  TEST_CASE("interval is sorted and duplicate-free") {
    auto const v = interval(Cardinal::fin(0), a2, IntervalFilter::one_or_infinite);
    for (std::size_t i = 1; i < v.size(); ++i) {
      CHECK(v[i - 1] < v[i]);
    }
    for (auto const& c : v) {
      CHECK((c == Cardinal::fin(1) || c.is_infinite()));
    }
  }

  TEST_CASE("text round trip") {
    for (auto const& c : sample()) {
      CHECK(parse_cardinal(to_string(c)) == c);
    }
    CHECK(to_string(a1) == "aleph_1");
    CHECK(parse_cardinal("aleph_w") == aw);
    CHECK(parse_cardinal("aleph_w*2+3") == Cardinal::aleph(2, 3));
    CHECK(parse_cardinal("12") == Cardinal::fin(12));
    CHECK_THROWS_AS(parse_cardinal("aleph_"), InvalidArgument);
    CHECK_THROWS_AS(parse_cardinal("beth_1"), InvalidArgument);
  }

  TEST_CASE("context") {
    CardinalContext const ctx(a1);
    CHECK(ctx.x() == a1);
    CHECK(ctx.x_plus() == a2);
    CHECK_THROWS_AS(CardinalContext(Cardinal::fin(3)), InvalidArgument);
  }
}
