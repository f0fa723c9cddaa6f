#include <gtest/gtest.h>

#include "synth.hpp"
#include "vidrank/error.hpp"
#include "vidrank/frame.hpp"

namespace vidrank {
namespace {

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("1"), (Rational{1, 1}));
  EXPECT_EQ(parse_rational("2/4"), (Rational{1, 2}));
  EXPECT_EQ(parse_rational("0.5"), (Rational{1, 2}));
  EXPECT_EQ(parse_rational("30000/1001"), (Rational{30000, 1001}));
  EXPECT_EQ(to_string(Rational{1, 2}), "1/2");
  EXPECT_EQ(to_string(Rational{3, 1}), "3");
}

TEST(Rational, RejectsNonPositiveAndGarbage) {
  for (const char* bad : {"0", "-1", "1/0", "abc", "", "1/-2", "2x"}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
}

TEST(Timestamp, IsIndexOverRate) {
  EXPECT_EQ(timestamp_for(37, Rational{1, 1}), 37.0);
  EXPECT_EQ(timestamp_for(3, Rational{1, 2}), 6.0);
  EXPECT_EQ(timestamp_for(5, Rational{2, 1}), 2.5);
}

TEST(FrameSequence, ValidationRejectsMixedSizesAndUnorderedIndices) {
  auto seq = testing::make_sequence({testing::solid_frame(20, 20, 1, 2, 3),
                                     testing::solid_frame(20, 20, 1, 2, 3)});
  EXPECT_NO_THROW(validate_sequence(seq));

  auto mixed = seq;
  mixed.frames[1] = testing::solid_frame(21, 20, 1, 2, 3, 1);
  try {
    validate_sequence(mixed);
    FAIL() << "expected mixed_dimensions";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::mixed_dimensions);
  }

  auto unordered = seq;
  unordered.frames[1].index = 0;
  EXPECT_THROW(validate_sequence(unordered), Error);

  Frame broken = testing::solid_frame(4, 4, 0, 0, 0);
  broken.pixels.pop_back();
  EXPECT_THROW(validate_frame(broken), Error);
}

TEST(FrameSequence, FindLooksUpByIndex) {
  auto seq = testing::make_sequence({testing::solid_frame(4, 4, 0, 0, 0),
                                     testing::solid_frame(4, 4, 0, 0, 0),
                                     testing::solid_frame(4, 4, 0, 0, 0)});
  seq.frames.erase(seq.frames.begin() + 1);
  ASSERT_NE(seq.find(2), nullptr);
  EXPECT_EQ(seq.find(2)->index, 2u);
  EXPECT_EQ(seq.find(1), nullptr);
  EXPECT_EQ(seq.find(7), nullptr);
}

}  // namespace
}  // namespace vidrank
