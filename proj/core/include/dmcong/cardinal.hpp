#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dmcong {

  //! The ordinal ω·a + b.
  struct OrdIndex {
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    constexpr auto operator<=>(OrdIndex const&) const = default;

    //! True for ω·a with a > 0.
    [[nodiscard]] constexpr bool is_limit() const noexcept {
      return b == 0 && a != 0;
    }
  };

  //! A natural number or an aleph ℵ_{ω·a+b}.
  class Cardinal {
   public:
    enum class Kind : std::uint8_t { finite, aleph };

    constexpr Cardinal() noexcept = default;

    static constexpr Cardinal fin(std::uint64_t k) noexcept {
      Cardinal c;
      c._kind = Kind::finite;
      c._k    = k;
      return c;
    }

    static constexpr Cardinal aleph(std::uint32_t b) noexcept {
      return aleph(OrdIndex{0, b});
    }

    static constexpr Cardinal aleph(std::uint32_t a, std::uint32_t b) noexcept {
      return aleph(OrdIndex{a, b});
    }

    static constexpr Cardinal aleph(OrdIndex idx) noexcept {
      Cardinal c;
      c._kind = Kind::aleph;
      c._idx  = idx;
      return c;
    }

    [[nodiscard]] constexpr Kind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] constexpr bool is_finite() const noexcept {
      return _kind == Kind::finite;
    }
    [[nodiscard]] constexpr bool is_infinite() const noexcept {
      return _kind == Kind::aleph;
    }
    //! Value of a finite cardinal (0 for alephs).
    [[nodiscard]] constexpr std::uint64_t value() const noexcept {
      return _kind == Kind::finite ? _k : 0;
    }
    //! Index of an aleph ((0,0) for finite cardinals).
    [[nodiscard]] constexpr OrdIndex index() const noexcept {
      return _kind == Kind::aleph ? _idx : OrdIndex{};
    }

    //! ℵ_0 or ℵ_{ω·a}, a > 0.
    [[nodiscard]] constexpr bool is_limit() const noexcept {
      return _kind == Kind::aleph && _idx.b == 0;
    }

    //! ℵ_{ω·a} with a > 0.
    [[nodiscard]] constexpr bool is_uncountable_limit() const noexcept {
      return _kind == Kind::aleph && _idx.is_limit();
    }

    constexpr bool operator==(Cardinal const& other) const noexcept {
      if (_kind != other._kind) {
        return false;
      }
      return is_finite() ? _k == other._k : _idx == other._idx;
    }

    constexpr std::strong_ordering operator<=>(Cardinal const& other) const noexcept {
      if (_kind != other._kind) {
        return is_finite() ? std::strong_ordering::less
                           : std::strong_ordering::greater;
      }
      if (is_finite()) {
        return _k <=> other._k;
      }
      return _idx <=> other._idx;
    }

   private:
    Kind          _kind = Kind::finite;
    std::uint64_t _k    = 0;
    OrdIndex      _idx{};
  };

  inline constexpr Cardinal aleph0 = Cardinal::aleph(0);

  //! Three-way comparison as a value; same as operator<=>.
  std::strong_ordering compare(Cardinal const& c1, Cardinal const& c2) noexcept;

  //! Fin(k) to Fin(k+1), ℵ_{ω·a+b} to ℵ_{ω·a+b+1}.
  Cardinal successor(Cardinal const& c);

  //! Cofinality under the convention where successors (and nonzero naturals)
  //! have cofinality 1.  Throws InvalidArgument on Fin(0).
  Cardinal cofinality(Cardinal const& c);

  enum class IntervalFilter { all, one_or_infinite };

  //! Ascending list of the cardinals in [lo, hi] (after filtering).
  //! Throws InvalidArgument if the result would be infinite.
  std::vector<Cardinal> interval(Cardinal const& lo,
                                 Cardinal const& hi,
                                 IntervalFilter  filter = IntervalFilter::all);

  std::string to_string(Cardinal const& c);
  std::string to_string(OrdIndex const& idx);

  //! Parses `k`, `aleph_b`, `aleph_w`, `aleph_w+b`, `aleph_w*a`, `aleph_w*a+b`.
  Cardinal parse_cardinal(std::string_view text);

  std::ostream& operator<<(std::ostream& os, Cardinal const& c);

  //! The ambient |X|, always an aleph.
  class CardinalContext {
   public:
    explicit CardinalContext(Cardinal x_card);

    [[nodiscard]] Cardinal const& x() const noexcept {
      return _x;
    }
    //! |X|⁺
    [[nodiscard]] Cardinal const& x_plus() const noexcept {
      return _x_plus;
    }

    bool operator==(CardinalContext const&) const = default;

   private:
    Cardinal _x;
    Cardinal _x_plus;
  };

}  // namespace dmcong

template <>
struct std::hash<dmcong::Cardinal> {
  std::size_t operator()(dmcong::Cardinal const& c) const noexcept {
    if (c.is_finite()) {
      return std::hash<std::uint64_t>{}(c.value());
    }
    auto const i = c.index();
    return std::hash<std::uint64_t>{}(
        (std::uint64_t{1} << 63) ^ (std::uint64_t{i.a} << 32) ^ i.b);
  }
};
