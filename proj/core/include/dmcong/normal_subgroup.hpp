#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dmcong {

  //! Cycle type of a permutation: cycle lengths in non-increasing order,
  //! fixed points included, so the entries sum to the degree.
  using CycleType = std::vector<std::uint32_t>;

  //! True if `ct` describes an even permutation.
  bool is_even(CycleType const& ct) noexcept;

  //! True if every cycle is a fixed point.
  bool is_identity(CycleType const& ct) noexcept;

  //! A normal subgroup of the symmetric group S_q.
  class NormalSubgroup {
   public:
    enum class Tag : std::uint8_t { trivial, klein4, alternating, symmetric };

    //! Canonicalizes S_1 and A_2 to the trivial group; rejects K_4 unless
    //! q = 4 and A_q for q < 2.
    NormalSubgroup(std::uint32_t q, Tag tag);

    [[nodiscard]] std::uint32_t q() const noexcept {
      return _q;
    }
    [[nodiscard]] Tag tag() const noexcept {
      return _tag;
    }

    //! Membership of a permutation of degree q, given by cycle type.
    [[nodiscard]] bool contains(CycleType const& ct) const;

    //! `S_q`, `A_q`, `K_4`, `id_q`; S_1 prints as `S_1`.
    [[nodiscard]] std::string to_string() const;

    bool operator==(NormalSubgroup const&) const = default;

    //! The chain order: by q, then trivial < K_4 < A_q < S_q.
    std::strong_ordering operator<=>(NormalSubgroup const& other) const noexcept;

   private:
    std::uint32_t _q;
    Tag           _tag;
  };

  //! All normal subgroups of S_q, ascending.
  std::vector<NormalSubgroup> normal_subgroups(std::uint32_t q);

  //! The normal subgroup of S_q generated by a permutation of the given type.
  NormalSubgroup normal_closure(CycleType const& ct);

  NormalSubgroup parse_normal_subgroup(std::string_view text);

}  // namespace dmcong
