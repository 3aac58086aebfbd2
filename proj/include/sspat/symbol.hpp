#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>

namespace sspat {

/// Entry of a pattern matrix: forced zero, forced nonzero, or arbitrary real.
enum class Symbol : std::uint8_t { Zero = 0, Star = 1, Quest = 2 };

inline constexpr std::array<Symbol, 3> kAllSymbols{Symbol::Zero, Symbol::Star, Symbol::Quest};

/// Sum of two entries: 0 is the identity, * + * may cancel, ? absorbs.
constexpr Symbol operator+(Symbol a, Symbol b) noexcept {
  if (a == Symbol::Zero) return b;
  if (b == Symbol::Zero) return a;
  return Symbol::Quest;
}

/// Product of two entries: 0 absorbs, * is the identity, otherwise ?.
constexpr Symbol operator*(Symbol a, Symbol b) noexcept {
  if (a == Symbol::Zero || b == Symbol::Zero) return Symbol::Zero;
  if (a == Symbol::Star) return b;
  if (b == Symbol::Star) return a;
  return Symbol::Quest;
}

constexpr Symbol add_symbol(Symbol a, Symbol b) noexcept { return a + b; }
constexpr Symbol mul_symbol(Symbol a, Symbol b) noexcept { return a * b; }

/// Star or Quest, i.e. an entry that may be nonzero.
constexpr bool is_free(Symbol s) noexcept { return s != Symbol::Zero; }

constexpr char to_char(Symbol s) noexcept {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::Star: return '*';
    case Symbol::Quest: return '?';
  }
  return '0';
}

constexpr std::optional<Symbol> symbol_from_char(char c) noexcept {
  switch (c) {
    case '0': return Symbol::Zero;
    case '*': return Symbol::Star;
    case '?': return Symbol::Quest;
    default: return std::nullopt;
  }
}

inline std::ostream& operator<<(std::ostream& os, Symbol s) { return os << to_char(s); }

}  // namespace sspat
