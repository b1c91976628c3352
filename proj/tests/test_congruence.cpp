#include <doctest.h>

#include <random>
#include <set>

#include "dmcong/congruence.hpp"
#include "dmcong/poset.hpp"

using namespace dmcong;

namespace {
  FiniteMonoid with_table(Family f, std::uint32_t n) {
    auto m = enumerate({f, n});
    build_table(m);
    return m;
  }

  bool related_all(FiniteMonoid const& m, EqRel const& r) {
    for (std::uint32_t a = 0; a < m.size(); ++a) {
      for (std::uint32_t b = 0; b < m.size(); ++b) {
        if (!r.related(a, b)) {
          continue;
        }
        for (std::uint32_t s = 0; s < m.size(); ++s) {
          if (!r.related(m.product(s, a), m.product(s, b))
              || !r.related(m.product(a, s), m.product(b, s))) {
            return false;
          }
        }
      }
    }
    return true;
  }
}  // namespace

TEST_SUITE("congruence") {
  TEST_CASE("closure bounds") {
    auto const m = with_table(Family::P, 2);
    CHECK(closure(m, {}) == EqRel::diagonal(m.size()));
    std::vector<IdPair> all;
    for (std::uint32_t i = 1; i < m.size(); ++i) {
      all.emplace_back(0, i);
    }
    CHECK(closure(m, all) == EqRel::universal(m.size()));
  }

  TEST_CASE("closure agrees with the naive fixed point") {
    std::mt19937_64 rng(13);
    for (auto f : {Family::P, Family::PB, Family::T, Family::I}) {
      auto const m = with_table(f, f == Family::P ? 2u : 3u);
      for (int k = 0; k < 60; ++k) {
        std::vector<IdPair> seed;
        for (int j = 0; j < 1 + k % 3; ++j) {
          seed.emplace_back(static_cast<std::uint32_t>(rng() % m.size()),
                            static_cast<std::uint32_t>(rng() % m.size()));
        }
        auto const c = closure(m, seed);
        REQUIRE(c == closure_naive(m, seed));
        REQUIRE(related_all(m, c));
        REQUIRE(is_congruence(m, c));
        // Idempotent, and monotone in the seed.
        std::vector<IdPair> again;
        for (auto const& cls : c.classes()) {
          for (auto x : cls) {
            again.emplace_back(cls.front(), x);
          }
        }
        REQUIRE(closure(m, again) == c);
        auto bigger = seed;
        bigger.emplace_back(static_cast<std::uint32_t>(rng() % m.size()),
                            static_cast<std::uint32_t>(rng() % m.size()));
        REQUIRE(c.subset_of(closure(m, bigger)));
      }
    }
  }

  TEST_CASE("closure of an element and its retraction") {
    auto const m = with_table(Family::P, 2);
    auto const e = partial_identity(2, {0});
    auto const pairs = std::vector<IdPair>{{m.id_of(e), m.id_of(hat(e))}};
    CHECK(closure(m, pairs) == closure_naive(m, pairs));
  }

  TEST_CASE("principal congruences") {
    auto const t2 = with_table(Family::T, 2);
    auto const pt = principal_congruences(t2);
    for (auto const& a : pt) {
      for (auto const& b : pt) {
        CHECK((a.subset_of(b) || b.subset_of(a)));
      }
    }
    auto const p2 = with_table(Family::P, 2);
    CHECK(principal_congruences(p2).size() <= 13);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 50; ++k) {
      auto const a = static_cast<std::uint32_t>(rng() % p2.size());
      auto const b = static_cast<std::uint32_t>(rng() % p2.size());
      CHECK(closure(p2, {{a, b}}) == closure(p2, {{b, a}}));
    }
  }

  TEST_CASE("lattice sizes") {
    CHECK(all_congruences(with_table(Family::P, 2)).size() == 13);
    CHECK(all_congruences(with_table(Family::P, 3)).size() == 16);
    CHECK(all_congruences(with_table(Family::PB, 3)).size() == 16);
    auto const t3 = all_congruences(with_table(Family::T, 3));
    CHECK(t3.size() == 7);
    CHECK(is_chain(t3.leq));
  }

  TEST_CASE("lattice operations") {
    auto const l = all_congruences(with_table(Family::P, 2));
    for (std::size_t i = 0; i < l.size(); ++i) {
      CHECK(l.meet_table[i][l.top] == i);
      CHECK(l.join_table[i][l.bottom] == i);
      for (std::size_t j = 0; j < l.size(); ++j) {
        auto const ops = lattice_ops(l, i, j);
        // Intersection by pairs.
        auto const& a = l.congruences[i];
        auto const& b = l.congruences[j];
        auto const& c = l.congruences[ops.meet];
        for (std::uint32_t x = 0; x < a.size(); ++x) {
          for (std::uint32_t y = 0; y < a.size(); ++y) {
            REQUIRE(c.related(x, y) == (a.related(x, y) && b.related(x, y)));
          }
        }
        CHECK(ops.meet == l.meet_table[i][j]);
        CHECK(ops.join == l.join_table[i][j]);
      }
    }
    auto const p3 = all_congruences(with_table(Family::P, 3));
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k) {
      auto i = rng() % p3.size();
      auto j = rng() % p3.size();
      auto h = rng() % p3.size();
      CHECK(p3.join_table[p3.join_table[i][j]][h] == p3.join_table[i][p3.join_table[j][h]]);
    }
  }

  TEST_CASE("analysis") {
    auto const p3 = analyze(all_congruences(with_table(Family::P, 3)));
    CHECK(p3.is_distributive);
    auto const t3 = analyze(all_congruences(with_table(Family::T, 3)));
    CHECK(t3.is_chain);
    CHECK(t3.is_distributive);
    CHECK(t3.atoms.size() == 1);
    CHECK(analyze(all_congruences(with_table(Family::P, 2))).coatoms.size() == 1);
  }

  TEST_CASE("brute-force crank") {
    auto const l = all_congruences(with_table(Family::P, 2));
    CHECK(crank_bruteforce(l, l.bottom) == 0);
    for (std::size_t i = 0; i < l.size(); ++i) {
      auto const k = crank_bruteforce(l, i);
      CHECK(k <= 2);
      if (l.principal[i]) {
        CHECK(k == 1);
      }
    }
  }

  TEST_CASE("star") {
    auto const m = with_table(Family::P, 2);
    for (auto const& r : all_congruences(m).congruences) {
      CHECK(star(m, star(m, r)) == r);
    }
  }

  TEST_CASE("deterministic numbering") {
    auto const m = with_table(Family::PB, 3);
    auto const a = all_congruences(m, {}, 1);
    auto const b = all_congruences(m, {}, 4);
    CHECK(a.congruences == b.congruences);
    CHECK(a.hasse == b.hasse);
  }
}
