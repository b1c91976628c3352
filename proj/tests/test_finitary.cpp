#include <doctest.h>

#include <random>

#include "dmcong/descriptor.hpp"
#include "dmcong/error.hpp"
#include "dmcong/finitary.hpp"
#include "dmcong/random.hpp"

using namespace dmcong;

namespace {
  CardinalContext const c0(aleph0);
  CardinalContext const c1(Cardinal::aleph(1));

  FinitaryPartition random_fin(CardinalContext const& ctx, Rng& rng) {
    auto const w    = static_cast<std::uint32_t>(rng() % 4);
    auto const tail = rng() % 2 == 0 ? Tail::identity : Tail::singleton;
    return {ctx, random_element(Family::P, w, rng), tail};
  }
}  // namespace

TEST_SUITE("finitary") {
  TEST_CASE("canonical window") {
    FinitaryPartition const a(c0, identity(3), Tail::identity);
    CHECK(a.window() == 0);
    CHECK(a == fin_identity(c0));
    FinitaryPartition const b(c0, all_singletons(2), Tail::singleton);
    CHECK(b == fin_all_singletons(c0));
    CHECK(fin_cofinite_identity(c0, 2).window() == 2);
  }

  TEST_CASE("composition") {
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
      auto const g = random_fin(c1, rng);
      CHECK(compose_fin(fin_identity(c1), g) == g);
      CHECK(compose_fin(g, fin_identity(c1)) == g);
    }
    // ε_{X∖{1,2}} ε_{X∖{1}} = ε_{X∖{1,2}}, and D_0 is idempotent.
    CHECK(compose_fin(fin_cofinite_identity(c0, 2), fin_cofinite_identity(c0, 1))
          == fin_cofinite_identity(c0, 2));
    CHECK(compose_fin(fin_all_singletons(c0), fin_all_singletons(c0)) == fin_all_singletons(c0));
    CHECK_THROWS_AS(compose_fin(fin_identity(c0), fin_identity(c1)), Mismatch);
  }

  TEST_CASE("associativity") {
    Rng rng(32);
    for (int i = 0; i < 2000; ++i) {
      auto const a = random_fin(c0, rng);
      auto const b = random_fin(c0, rng);
      auto const c = random_fin(c0, rng);
      REQUIRE(compose_fin(compose_fin(a, b), c) == compose_fin(a, compose_fin(b, c)));
    }
  }

  TEST_CASE("ranks") {
    CHECK(fin_stats(fin_identity(c1)).rank == c1.x());
    CHECK(fin_stats(fin_finite_identity(c1, 3)).rank == Cardinal::fin(3));
    CHECK(fin_stats(fin_all_singletons(c1)).rank == Cardinal::fin(0));
    // υ_Y: the points of Y joined above and below, no transversals.
    FinitaryPartition const u(c1, parse_partition("3; {1,2,3},{1',2',3'}"), Tail::singleton);
    CHECK(fin_stats(u).rank == Cardinal::fin(0));
  }

  TEST_CASE("pair profiles") {
    Rng rng(33);
    auto const g = random_fin(c1, rng);
    CHECK(pair_profile(g, g).equal);
    auto const p = pair_profile(fin_cofinite_identity(c1, 2), fin_identity(c1));
    CHECK(p.rank_a == c1.x());
    CHECK(p.rank_b == c1.x());
    CHECK(p.d_total == Cardinal::fin(6));
    CHECK(p.d_over == Cardinal::fin(0));
    CHECK(p.d_under == Cardinal::fin(0));
    CHECK(pair_profile(fin_identity(c1), fin_all_singletons(c1)).d_total == c1.x());
  }

  TEST_CASE("window differences") {
    Rng rng(34);
    for (int i = 0; i < 3000; ++i) {
      auto const a = random_fin(c0, rng);
      auto       b = random_fin(c0, rng);
      if (b.tail() != a.tail()) {
        b = FinitaryPartition(c0, b.core(), a.tail());
      }
      auto const p = pair_profile(a, b);
      REQUIRE(!profile_violation(p));
      auto const w  = std::max(a.window(), b.window()) + 2;
      auto const sd = sym_diff_counts(a.widened(w), b.widened(w));
      REQUIRE(p.d_total == Cardinal::fin(sd.d_total));
      REQUIRE(p.d_over == Cardinal::fin(sd.d_over));
      REQUIRE(p.d_under == Cardinal::fin(sd.d_under));
    }
  }

  TEST_CASE("synth_profile") {
    PairProfile p;
    p.context = c1;
    p.rank_a = p.rank_b = aleph0;
    p.d_total           = aleph0;
    CHECK_NOTHROW(synth_profile(p));

    PairProfile e;
    e.equal   = true;
    e.d_total = Cardinal::fin(1);
    CHECK_THROWS_AS(synth_profile(e), InvalidArgument);

    PairProfile h;
    h.rank_a = h.rank_b = Cardinal::fin(3);
    h.h_related         = true;
    h.phi_type          = CycleType{2, 1};
    h.d_total           = Cardinal::fin(4);
    CHECK_NOTHROW(synth_profile(h));
  }

  TEST_CASE("principal descriptor contains its finitary pair") {
    Rng rng(35);
    for (auto const* ctx : {&c0, &c1}) {
      for (int i = 0; i < 2000; ++i) {
        auto const a = random_fin(*ctx, rng);
        auto const b = random_fin(*ctx, rng);
        auto const p = pair_profile(a, b);
        REQUIRE(!profile_violation(p));
        REQUIRE(membership(principal_descriptor(p), p));
        REQUIRE(membership(principal_descriptor(p), swapped(p)));
      }
    }
  }

  TEST_CASE("text form") {
    auto const a = parse_finitary("2; {1,2'},{2,1'} | tail=identity | X=aleph_1");
    CHECK(a.context() == c1);
    CHECK(a.tail() == Tail::identity);
    CHECK(parse_finitary(to_string(a)) == a);
    CHECK_THROWS_AS(parse_finitary("2; {1,2'} | tail=odd | X=aleph_0"), InvalidArgument);
  }
}
