#include "sspat/symbol.hpp"

#include <gtest/gtest.h>

namespace sspat {
namespace {

constexpr Symbol O = Symbol::Zero;
constexpr Symbol S = Symbol::Star;
constexpr Symbol Q = Symbol::Quest;

TEST(SymbolTest, AdditionTable) {
  // Rows/columns ordered 0, *, ?.
  const Symbol table[3][3] = {{O, S, Q}, {S, Q, Q}, {Q, Q, Q}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(add_symbol(kAllSymbols[i], kAllSymbols[j]), table[i][j]);
  EXPECT_EQ(O + S, S);
  EXPECT_EQ(S + S, Q);
  EXPECT_EQ(O + O, O);
}

TEST(SymbolTest, MultiplicationTable) {
  const Symbol table[3][3] = {{O, O, O}, {O, S, Q}, {O, Q, Q}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(mul_symbol(kAllSymbols[i], kAllSymbols[j]), table[i][j]);
  EXPECT_EQ(S * S, S);
  EXPECT_EQ(O * Q, O);
  EXPECT_EQ(S * Q, Q);
}

TEST(SymbolTest, QuestAbsorbsAddition) {
  for (Symbol x : kAllSymbols) {
    EXPECT_EQ(Q + x, Q);
    EXPECT_EQ(x + Q, Q);
  }
}

TEST(SymbolTest, SemiringLaws) {
  for (Symbol a : kAllSymbols) {
    EXPECT_EQ(a + O, a);
    EXPECT_EQ(a * O, O);
    EXPECT_EQ(a * S, a);
    for (Symbol b : kAllSymbols) {
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      for (Symbol c : kAllSymbols) {
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) * c, a * c + b * c);
      }
    }
  }
}

TEST(SymbolTest, CharRoundTrip) {
  for (Symbol s : kAllSymbols) EXPECT_EQ(symbol_from_char(to_char(s)), s);
  EXPECT_FALSE(symbol_from_char('x').has_value());
}

}  // namespace
}  // namespace sspat
