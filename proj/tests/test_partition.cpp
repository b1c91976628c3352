#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dmcong/error.hpp"
#include "dmcong/monoid.hpp"
#include "dmcong/partition.hpp"
#include "dmcong/random.hpp"

using namespace dmcong;

namespace {
  // Product by connected components of the product graph, found by
  // depth-first search over an adjacency list (no union-find).
  Partition naive_compose(Partition const& a, Partition const& b) {
    auto const n = a.degree();
    // Vertices: 0..n-1 upper of a, n..2n-1 middle, 2n..3n-1 lower of b.
    std::vector<std::vector<std::uint32_t>> adj(3 * n);
    auto link = [&](Partition const& p, std::uint32_t shift) {
      for (auto const& block : p.blocks()) {
        for (std::size_t i = 1; i < block.size(); ++i) {
          auto const u = block[0] + shift;
          auto const v = block[i] + shift;
          adj[u].push_back(v);
          adj[v].push_back(u);
        }
      }
    };
    link(a, 0);
    link(b, n);
    std::vector<std::uint32_t> comp(3 * n, ~0u);
    std::uint32_t              next = 0;
    for (std::uint32_t s = 0; s < 3 * n; ++s) {
      if (comp[s] != ~0u) {
        continue;
      }
      std::vector<std::uint32_t> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto v : adj[u]) {
          if (comp[v] == ~0u) {
            comp[v] = next;
            stack.push_back(v);
          }
        }
      }
      ++next;
    }
    std::vector<std::uint32_t> labels(2 * n);
    for (std::uint32_t i = 0; i < n; ++i) {
      labels[i]     = comp[i];
      labels[n + i] = comp[2 * n + i];
    }
    return Partition::from_labels(n, labels);
  }

  Partition const alpha = parse_partition("6; {1,4},{2,3,4',5'},{5,6},{1',2',6'},{3'}");
  Partition const beta  = parse_partition("6; {1,2},{3,4,1'},{5,4',5',6'},{6},{2'},{3'}");
}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("make_partition") {
    CHECK(make_partition(2, {{0, 2}, {1, 3}}) == identity(2));
    CHECK_NOTHROW(make_partition(6, {{0, 3}, {1, 2, 9, 10}, {4, 5}, {6, 7, 11}, {8}}));
    CHECK_THROWS_AS(make_partition(2, {{0}, {0, 1}}), InvalidArgument);
    CHECK_THROWS_AS(make_partition(2, {{0, 4}}), InvalidArgument);
  }

  TEST_CASE("text form") {
    CHECK(make_partition(6, {{0, 3}, {1, 2, 9, 10}, {4, 5}, {6, 7, 11}, {8}}) == alpha);
    CHECK(parse_partition(to_string(alpha)) == alpha);
    CHECK(to_string(identity(2)) == "2; {1,1'},{2,2'}");
    CHECK(parse_partition("0;") == Partition::from_labels(0, {}));
    CHECK_THROWS_AS(parse_partition("2; {1,3}"), InvalidArgument);
  }

  TEST_CASE("compose: worked example") {
    auto const expected = parse_partition("6; {2,3,1',4',5',6'},{1,4},{5,6},{2'},{3'}");
    CHECK(compose(alpha, beta) == expected);
    CHECK(naive_compose(alpha, beta) == expected);
  }

  TEST_CASE("compose: identity and idempotents") {
    CHECK(compose(identity(6), alpha) == alpha);
    CHECK(compose(alpha, identity(6)) == alpha);
    CHECK(compose(partial_identity(3, {0, 1}), partial_identity(3, {1, 2}))
          == partial_identity(3, {1}));
    CHECK_THROWS_AS(compose(identity(2), identity(3)), Mismatch);
  }

  TEST_CASE("compose agrees with a graph-search product") {
    Rng rng(11);
    for (int i = 0; i < 3000; ++i) {
      auto const n = static_cast<std::uint32_t>(rng() % 6);
      auto const a = random_element(Family::P, n, rng);
      auto const b = random_element(Family::P, n, rng);
      REQUIRE(compose(a, b) == naive_compose(a, b));
    }
  }

  TEST_CASE("associativity") {
    auto const p2 = enumerate({Family::P, 2});
    for (auto const& a : p2.elements()) {
      for (auto const& b : p2.elements()) {
        for (auto const& c : p2.elements()) {
          REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
        }
      }
    }
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
      auto const f = i % 2 == 0 ? Family::P : Family::PB;
      auto const n = f == Family::P ? 4u : 5u;
      auto const a = random_element(f, n, rng);
      auto const b = random_element(f, n, rng);
      auto const c = random_element(f, n, rng);
      REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
  }

  TEST_CASE("involution") {
    CHECK(star(identity(4)) == identity(4));
    CHECK(star(alpha) == parse_partition("6; {1',4'},{4,5,2',3'},{5',6'},{1,2,6},{3}"));
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
      auto const a = random_element(Family::P, 4, rng);
      auto const b = random_element(Family::P, 4, rng);
      REQUIRE(star(star(a)) == a);
      REQUIRE(star(compose(a, b)) == compose(star(b), star(a)));
      REQUIRE(compose(compose(a, star(a)), a) == a);
    }
  }

  TEST_CASE("stats") {
    auto const e = stats(partial_identity(3, {0, 2}));
    CHECK(e.rank == 2);
    CHECK(e.dom == std::vector<bool>{true, false, true});
    CHECK(e.codom == std::vector<bool>{true, false, true});
    CHECK(e.ker == TracePartition{0, 1, 2});
    CHECK(e.coker == TracePartition{0, 1, 2});

    auto const s = stats(alpha);
    CHECK(s.rank == 1);
    CHECK(s.ker == TracePartition{0, 1, 1, 0, 2, 2});
    CHECK(s.coker == TracePartition{0, 0, 1, 2, 2, 0});

    auto const z = stats(all_singletons(4));
    CHECK(z.rank == 0);
    CHECK(std::none_of(z.dom.begin(), z.dom.end(), [](bool b) { return b; }));
    CHECK(std::none_of(z.codom.begin(), z.codom.end(), [](bool b) { return b; }));
  }

  TEST_CASE("rank by direct block scan") {
    auto const p3 = enumerate({Family::P, 3});
    for (auto const& a : p3.elements()) {
      std::uint32_t rank = 0;
      for (auto const& block : a.blocks()) {
        bool const up = std::any_of(block.begin(), block.end(), [](Vertex v) { return v < 3; });
        bool const lo = std::any_of(block.begin(), block.end(), [](Vertex v) { return v >= 3; });
        rank += up && lo;
      }
      REQUIRE(stats(a).rank == rank);
    }
  }

  TEST_CASE("hat") {
    CHECK(hat(identity(3)) == all_singletons(3));
    Rng rng(9);
    for (int i = 0; i < 2000; ++i) {
      auto const a = random_element(Family::P, 4, rng);
      auto const h = hat(a);
      REQUIRE(stats(h).rank == 0);
      REQUIRE(stats(h).ker == stats(a).ker);
      REQUIRE(stats(h).coker == stats(a).coker);
      REQUIRE(hat(h) == h);
    }
    // On partitions of rank at most 1 the retraction is multiplicative.
    auto const p3 = enumerate({Family::P, 3});
    for (auto const& a : p3.elements()) {
      if (stats(a).rank > 1) {
        continue;
      }
      for (auto const& b : p3.elements()) {
        if (stats(b).rank > 1) {
          continue;
        }
        REQUIRE(hat(compose(a, b)) == compose(hat(a), hat(b)));
      }
    }
  }

  TEST_CASE("symmetric difference") {
    CHECK(sym_diff_counts(alpha, alpha) == SymDiff{0, 0, 0});
    auto const d = sym_diff_counts(partial_identity(5, {0, 1, 2, 3, 4}),
                                   partial_identity(5, {0, 1, 2}));
    CHECK(d.d_total == 6);
    // Independent count: blocks in exactly one of the two block sets.
    Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
      auto const a  = random_element(Family::P, 4, rng);
      auto const b  = random_element(Family::P, 4, rng);
      auto       ba = a.blocks();
      auto       bb = b.blocks();
      std::sort(ba.begin(), ba.end());
      std::sort(bb.begin(), bb.end());
      std::vector<std::vector<Vertex>> diff;
      std::set_symmetric_difference(ba.begin(), ba.end(), bb.begin(), bb.end(),
                                    std::back_inserter(diff));
      auto const s = sym_diff_counts(a, b);
      REQUIRE(s.d_total == diff.size());
      REQUIRE(s.d_over <= s.d_total);
      REQUIRE(s.d_under <= s.d_total);
    }
  }

  TEST_CASE("green: partial identities and ranks") {
    auto const y = partial_identity(3, {0, 1});
    auto const z = partial_identity(3, {1, 2});
    CHECK(green(y, y).r);
    CHECK_FALSE(green(y, z).r);
    CHECK(green(y, z).j);
    CHECK(green(alpha, beta).j == (stats(alpha).rank == stats(beta).rank));
  }

  TEST_CASE("green: division oracle on P_2, P_3 and PB_3") {
    for (MonoidFamily f : {MonoidFamily{Family::P, 2}, MonoidFamily{Family::P, 3},
                           MonoidFamily{Family::PB, 3}}) {
      auto const m = enumerate(f);
      std::vector<std::set<Partition>> right(m.size());
      std::vector<std::set<Partition>> left(m.size());
      for (std::size_t b = 0; b < m.size(); ++b) {
        for (auto const& x : m.elements()) {
          right[b].insert(compose(m.element(static_cast<std::uint32_t>(b)), x));
          left[b].insert(compose(x, m.element(static_cast<std::uint32_t>(b))));
        }
      }
      std::size_t bad = 0;
      for (std::uint32_t a = 0; a < m.size(); ++a) {
        for (std::uint32_t b = 0; b < m.size(); ++b) {
          auto const g  = green(m.element(a), m.element(b));
          bool const lr = right[b].count(m.element(a)) > 0;
          bool const ll = left[b].count(m.element(a)) > 0;
          bool const rr = lr && right[a].count(m.element(b)) > 0;
          bool const rl = ll && left[a].count(m.element(b)) > 0;
          bad += g.leq_r != lr || g.leq_l != ll || g.r != rr || g.l != rl || g.h != (rr && rl);
        }
      }
      CHECK_MESSAGE(bad == 0, to_string(f));
    }
  }

  TEST_CASE("phi cycle type") {
    auto const g = parse_partition("3; {1,2'},{2,1'},{3}");
    CHECK(phi_cycle_type(g, g) == CycleType{1, 1});
    auto const a = parse_partition("3; {1,1'},{2,2'}");
    auto const b = parse_partition("3; {1,2'},{2,1'}");
    CHECK(phi_cycle_type(a, b) == CycleType{2});
    CHECK_THROWS_AS(phi_cycle_type(a, identity(3)), InvalidArgument);
  }

  TEST_CASE("refinement order") {
    Rng rng(2);
    for (int i = 0; i < 2000; ++i) {
      auto const a = random_element(Family::P, 4, rng);
      auto const b = random_element(Family::P, 4, rng);
      auto const t = random_element(Family::P, 4, rng);
      REQUIRE(refines(all_singletons(4), a));
      auto const r = refine_lattice(a, a);
      REQUIRE(r.meet == a);
      REQUIRE(r.join == a);
      auto const ab = refine_lattice(a, b);
      REQUIRE(refines(ab.meet, a));
      REQUIRE(refines(a, ab.join));
      REQUIRE(sym_diff_counts(a, ab.join).d_total <= sym_diff_counts(a, b).d_total);
      REQUIRE(sym_diff_counts(b, ab.join).d_total <= sym_diff_counts(a, b).d_total);
      if (refines(a, b)) {
        REQUIRE(refines(compose(t, a), compose(t, b)));
        REQUIRE(refines(compose(a, t), compose(b, t)));
      }
    }
  }

  TEST_CASE("drank") {
    auto const id = identity(3);
    CHECK(drank(id, id) == 0);
    // The constant map onto 1 moves 2 and 3; the images of X0 = {2, 3}
    // are {1} and {2, 3}.
    auto const c = parse_partition("3; {1,2,3,1'}");
    CHECK(drank(c, id) == 2);
    Rng rng(8);
    for (int i = 0; i < 3000; ++i) {
      auto const a = random_element(Family::T, 5, rng);
      auto const b = random_element(Family::T, 5, rng);
      REQUIRE(is_transformation(a));
      auto const d  = drank(a, b);
      auto const sd = sym_diff_counts(a, b).d_total;
      REQUIRE(d <= sd);
      REQUIRE(sd <= 4 * d);
    }
  }

  TEST_CASE("basic relations") {
    auto const p3 = enumerate({Family::P, 3});
    Rng        rng(4);
    for (int i = 0; i < 2000; ++i) {
      auto const& a = p3.element(static_cast<std::uint32_t>(rng() % p3.size()));
      auto const& b = p3.element(static_cast<std::uint32_t>(rng() % p3.size()));
      REQUIRE(basic_relation_member({RelationKind::mu, 1, {}}, a, b) == (a == b));
    }
    CHECK(basic_relation_member({RelationKind::rees, 2, {}}, all_singletons(3),
                                partial_identity(3, {1})));
    for (auto const& a : p3.elements()) {
      for (auto const& b : p3.elements()) {
        REQUIRE(sym_diff_counts(a, b).d_over < 6);
      }
    }
  }

  TEST_CASE("partial Brauer is closed") {
    Rng rng(6);
    for (int i = 0; i < 2000; ++i) {
      auto const a = random_element(Family::PB, 5, rng);
      auto const b = random_element(Family::PB, 5, rng);
      for (auto const& block : compose(a, b).blocks()) {
        REQUIRE(block.size() <= 2);
      }
    }
  }
}
