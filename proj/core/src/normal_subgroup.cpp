#include "dmcong/normal_subgroup.hpp"

#include <charconv>
#include <numeric>

#include "dmcong/error.hpp"

namespace dmcong {

  bool is_even(CycleType const& ct) noexcept {
    std::uint64_t parity = 0;
    for (auto len : ct) {
      parity += len - 1;
    }
    return parity % 2 == 0;
  }

  bool is_identity(CycleType const& ct) noexcept {
    for (auto len : ct) {
      if (len != 1) {
        return false;
      }
    }
    return true;
  }

  NormalSubgroup::NormalSubgroup(std::uint32_t q, Tag tag) : _q(q), _tag(tag) {
    if (q == 0) {
      throw InvalidArgument("normal subgroup: q must be at least 1");
    }
    if (tag == Tag::klein4 && q != 4) {
      throw InvalidArgument("normal subgroup: K_4 requires q = 4");
    }
    if (q == 1 || (q == 2 && tag == Tag::alternating)) {
      _tag = Tag::trivial;
    }
  }

  bool NormalSubgroup::contains(CycleType const& ct) const {
    auto const sum = std::accumulate(ct.begin(), ct.end(), std::uint64_t{0});
    if (sum != _q) {
      throw InvalidArgument("normal subgroup: cycle type of degree "
                            + std::to_string(sum) + " tested against S_"
                            + std::to_string(_q));
    }
    switch (_tag) {
      case Tag::trivial:
        return is_identity(ct);
      case Tag::klein4:
        return is_identity(ct) || ct == CycleType{2, 2};
      case Tag::alternating:
        return is_even(ct);
      case Tag::symmetric:
        return true;
    }
    return false;
  }

  std::string NormalSubgroup::to_string() const {
    auto const q = std::to_string(_q);
    if (_q == 1) {
      return "S_1";
    }
    switch (_tag) {
      case Tag::trivial:
        return "id_" + q;
      case Tag::klein4:
        return "K_4";
      case Tag::alternating:
        return "A_" + q;
      case Tag::symmetric:
        return "S_" + q;
    }
    return {};
  }

  std::strong_ordering
  NormalSubgroup::operator<=>(NormalSubgroup const& other) const noexcept {
    if (auto c = _q <=> other._q; c != 0) {
      return c;
    }
    return _tag <=> other._tag;
  }

  std::vector<NormalSubgroup> normal_subgroups(std::uint32_t q) {
    using T = NormalSubgroup::Tag;
    if (q == 0) {
      throw InvalidArgument("normal subgroups: q must be at least 1");
    }
    if (q == 1) {
      return {NormalSubgroup(1, T::trivial)};
    }
    if (q == 2) {
      return {NormalSubgroup(2, T::trivial), NormalSubgroup(2, T::symmetric)};
    }
    std::vector<NormalSubgroup> out{NormalSubgroup(q, T::trivial)};
    if (q == 4) {
      out.emplace_back(4, T::klein4);
    }
    out.emplace_back(q, T::alternating);
    out.emplace_back(q, T::symmetric);
    return out;
  }

  NormalSubgroup normal_closure(CycleType const& ct) {
    using T     = NormalSubgroup::Tag;
    auto const q = static_cast<std::uint32_t>(
        std::accumulate(ct.begin(), ct.end(), std::uint64_t{0}));
    if (is_identity(ct)) {
      return NormalSubgroup(q, T::trivial);
    }
    if (!is_even(ct)) {
      return NormalSubgroup(q, T::symmetric);
    }
    if (q == 4 && ct == CycleType{2, 2}) {
      return NormalSubgroup(4, T::klein4);
    }
    return NormalSubgroup(q, T::alternating);
  }

  NormalSubgroup parse_normal_subgroup(std::string_view text) {
    using T = NormalSubgroup::Tag;
    auto bad = [&] {
      throw InvalidArgument("cannot parse normal subgroup '" + std::string(text)
                            + "'");
    };
    if (text == "K_4") {
      return NormalSubgroup(4, T::klein4);
    }
    T                tag{};
    std::string_view rest;
    if (text.starts_with("S_")) {
      tag  = T::symmetric;
      rest = text.substr(2);
    } else if (text.starts_with("A_")) {
      tag  = T::alternating;
      rest = text.substr(2);
    } else if (text.starts_with("id_")) {
      tag  = T::trivial;
      rest = text.substr(3);
    } else {
      bad();
    }
    std::uint32_t q = 0;
    auto [ptr, ec]  = std::from_chars(rest.data(), rest.data() + rest.size(), q);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || q == 0) {
      bad();
    }
    if (tag == T::alternating && q < 3) {
      bad();
    }
    return NormalSubgroup(q, tag);
  }

}  // namespace dmcong
