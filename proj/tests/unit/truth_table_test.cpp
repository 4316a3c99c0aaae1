#include "logicmine/truth_table.hpp"

#include <gtest/gtest.h>

namespace logicmine {
namespace {

TEST(TruthTable, IndexConvention) {
  EXPECT_EQ(input_index(true, false, false, false), 8u);
  EXPECT_EQ(input_index(false, false, false, true), 1u);
  EXPECT_EQ(input_index(true, false, true, true), 11u);
}

TEST(TruthTable, BitsAndId) {
  const auto nand = TruthTable::from_id(32767);
  EXPECT_TRUE(nand(false, false, false, false));
  EXPECT_FALSE(nand(true, true, true, true));
  EXPECT_EQ((~nand).id(), 32768);
  EXPECT_EQ(TruthTable::constant(true).id(), 65535);
  EXPECT_TRUE(TruthTable::constant(false).is_trivial());
  EXPECT_FALSE(nand.is_trivial());
  EXPECT_EQ(to_bit_string(TruthTable::from_id(65534)), "0111111111111111");
}

TEST(TruthTable, WithBit) {
  TruthTable t;
  t = t.with_bit(15, true).with_bit(0, true).with_bit(0, false);
  EXPECT_EQ(t.id(), 32768);
}

}  // namespace
}  // namespace logicmine
