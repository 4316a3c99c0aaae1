#include "logicmine/complexity.hpp"

#include <gtest/gtest.h>
#include <zlib.h>

#include <cmath>
#include <cstring>

#include "generators.hpp"
#include "logicmine/png.hpp"

namespace logicmine::complexity {
namespace {

// Quadratic LZ76 parse straight from the definition.
std::size_t lz76_naive(const std::string& s) {
  std::size_t factors = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t len = 1;
    while (i + len <= s.size()) {
      const auto history = s.substr(0, i + len - 1);
      const auto pos = history.find(s.substr(i, len));
      if (pos == std::string::npos || pos >= i) break;
      ++len;
    }
    ++factors;
    i += len;
  }
  return factors;
}

ca::SpaceTime space_time(std::initializer_list<std::string_view> rows) {
  auto it = rows.begin();
  ca::SpaceTime st(ca::Config::from_string(*it));
  for (++it; it != rows.end(); ++it) st.push_back(ca::Config::from_string(*it));
  return st;
}

ca::SpaceTime random_space_time(std::size_t width, std::size_t height, std::uint64_t seed) {
  testing::Gen gen(seed);
  ca::SpaceTime st(gen.config(width));
  while (st.height() < height) st.push_back(gen.config(width));
  return st;
}

ca::SpaceTime homogeneous_space_time(std::size_t width, std::size_t height) {
  ca::SpaceTime st(ca::Config{width});
  while (st.height() < height) st.push_back(ca::Config{width});
  return st;
}

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

// Walks the chunks, checks every CRC and inflates IDAT back to raw scanlines.
std::vector<std::uint8_t> decode_scanlines(const std::vector<std::uint8_t>& png, std::size_t expected,
                                           std::vector<std::string>& chunk_types) {
  EXPECT_EQ(std::memcmp(png.data(), "\x89PNG\r\n\x1a\n", 8), 0);
  std::vector<std::uint8_t> idat;
  std::size_t pos = 8;
  while (pos + 12 <= png.size()) {
    const auto len = be32(&png[pos]);
    const std::string type(reinterpret_cast<const char*>(&png[pos + 4]), 4);
    chunk_types.push_back(type);
    const auto crc = crc32(0, &png[pos + 4], 4 + len);
    EXPECT_EQ(crc, be32(&png[pos + 8 + len])) << type;
    if (type == "IDAT") idat.insert(idat.end(), &png[pos + 8], &png[pos + 8 + len]);
    pos += 12 + len;
  }
  EXPECT_EQ(pos, png.size());
  std::vector<std::uint8_t> raw(expected);
  uLongf raw_len = raw.size();
  EXPECT_EQ(uncompress(raw.data(), &raw_len, idat.data(), idat.size()), Z_OK);
  EXPECT_EQ(raw_len, expected);
  return raw;
}

TEST(Lz76, Examples) {
  EXPECT_EQ(lz76("0"), 1u);
  EXPECT_EQ(lz76("0000000000"), 2u);
  EXPECT_EQ(lz76("01"), 2u);
  EXPECT_EQ(lz76("0001101001000101"), 6u);
  EXPECT_THROW(lz76(""), std::invalid_argument);
}

TEST(Lz76, ConstantStringsHaveTwoFactors) {
  for (std::size_t n = 2; n < 300; ++n) {
    EXPECT_EQ(lz76(std::string(n, '1')), 2u);
  }
}

TEST(Lz76, MatchesNaiveParse) {
  testing::Gen gen(76);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string s = gen.bits(gen.range(1, 200));
    // Bias some inputs towards long repeats.
    if (trial % 3 == 0) {
      const auto p = gen.range(1, 6);
      for (std::size_t i = p; i < s.size(); ++i) {
        if (gen.index(10) != 0) s[i] = s[i - p];
      }
    }
    ASSERT_EQ(lz76(s), lz76_naive(s)) << s;
  }
}

TEST(Lz76, BoundedByLength) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen.bits(gen.range(1, 2000));
    const auto f = lz76(s);
    EXPECT_GE(f, 1u);
    EXPECT_LE(f, s.size());
  }
}

TEST(NormalizedLz76, RandomNearOne) {
  const auto st = random_space_time(200, 200, 8);
  const auto bits = space_time_bits(st);
  const double v = normalized_lz76(lz76(bits), bits.size());
  EXPECT_GT(v, 0.85);
  EXPECT_LT(v, 1.15);
}

TEST(SpaceTimeBits, RowMajor) {
  const auto st = space_time({"10000", "00001"});
  const std::vector<std::uint8_t> expected{1, 0, 0, 0, 0, 0, 0, 0, 0, 1};
  EXPECT_EQ(space_time_bits(st), expected);
}

TEST(Activity, CountsChangedCells) {
  EXPECT_DOUBLE_EQ(activity(space_time({"10000", "00001", "00001"})), (2.0 / 5.0 + 0.0) / 2.0);
  EXPECT_DOUBLE_EQ(activity(space_time({"10000"})), 0.0);
}

TEST(Png, OnePixelGolden) {
  const std::vector<std::uint8_t> golden{
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
      0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x00, 0x00, 0x00,
      0x00, 0x3a, 0x7e, 0x9b, 0x55, 0x00, 0x00, 0x00, 0x0a, 0x49, 0x44, 0x41, 0x54, 0x78,
      0x9c, 0x63, 0xf8, 0x0f, 0x00, 0x01, 0x01, 0x01, 0x00, 0xb1, 0x38, 0xf6, 0x14, 0x00,
      0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
  const std::vector<std::uint8_t> white{255};
  EXPECT_EQ(png::encode_gray8(white, 1, 1), golden);
}

TEST(Png, SizeMismatchRejected) {
  const std::vector<std::uint8_t> px(5, 0);
  EXPECT_THROW(png::encode_gray8(px, 2, 2), std::invalid_argument);
}

TEST(RenderPng, DecodesToSpaceTime) {
  const auto st = random_space_time(37, 11, 2);
  const auto png = render_png(st);
  std::vector<std::string> types;
  const auto raw = decode_scanlines(png, 11 * (37 + 1), types);
  EXPECT_EQ(types, (std::vector<std::string>{"IHDR", "IDAT", "IEND"}));
  EXPECT_EQ(be32(&png[16]), 37u);
  EXPECT_EQ(be32(&png[20]), 11u);
  EXPECT_EQ(png[24], 8);  // bit depth
  EXPECT_EQ(png[25], 0);  // grayscale
  EXPECT_EQ(png[28], 0);  // no interlace
  for (std::size_t t = 0; t < 11; ++t) {
    EXPECT_EQ(raw[t * 38], 0) << "filter byte";
    for (std::size_t i = 0; i < 37; ++i) {
      EXPECT_EQ(raw[t * 38 + 1 + i], st.row(t).get(i) ? 0 : 255);
    }
  }
}

TEST(RenderPng, DeterministicAndContentSensitive) {
  const auto st = random_space_time(120, 60, 5);
  EXPECT_EQ(render_png(st), render_png(st));
  auto rows = std::vector<ca::Config>(st.rows().begin(), st.rows().end());
  rows[30].set(17, !rows[30].get(17));
  ca::SpaceTime changed(rows[0]);
  for (std::size_t t = 1; t < rows.size(); ++t) changed.push_back(rows[t]);
  EXPECT_NE(render_png(st), render_png(changed));
}

TEST(LzPngSize, RandomFarAboveHomogeneous) {
  const auto homogeneous = lz_png_size(homogeneous_space_time(500, 500));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_GE(lz_png_size(random_space_time(500, 500, seed)), 20 * homogeneous);
  }
}

TEST(LzPngSize, DuplicateRowSlack) {
  // Measured worst case on these fixtures is 10 bytes.
  constexpr std::size_t kSlack = 16;
  testing::Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto st = random_space_time(gen.range(5, 300), gen.range(1, 120), gen.u64());
    const auto before = lz_png_size(st);
    st.push_back(st.row(st.height() - 1));
    EXPECT_LE(lz_png_size(st), before + kSlack);
  }
}

TEST(Classify, Rules) {
  ca::AttractorInfo hom{ca::AttractorKind::fixed_point, 3, 1, false};
  EXPECT_EQ(classify_wolfram(hom, 0.0, 0.0), WolframClass::I);
  ca::AttractorInfo still{ca::AttractorKind::fixed_point, 3, 1, std::nullopt};
  EXPECT_EQ(classify_wolfram(still, 0.0, 0.0), WolframClass::II);
  ca::AttractorInfo cycle{ca::AttractorKind::cycle, 0, 12, std::nullopt};
  EXPECT_EQ(classify_wolfram(cycle, 0.5, 0.5), WolframClass::II);
  ClassifierOptions strict;
  strict.max_period = 8;
  EXPECT_EQ(classify_wolfram(cycle, 0.5, 0.5, strict), WolframClass::III_IV);
  ca::AttractorInfo none{};
  EXPECT_EQ(classify_wolfram(none, 0.5, 0.5), WolframClass::III_IV);
  EXPECT_EQ(classify_wolfram(none, 0.01, 0.5), WolframClass::unclassified);
  EXPECT_EQ(classify_wolfram(none, 0.5, 0.0), WolframClass::unclassified);
}

TEST(Classify, TableOneExamples) {
  auto run = [](std::uint16_t id, std::uint64_t seed) {
    const auto st = ca::evolve(ca::random_config(500, 0.5, seed),
                               ca::rule_from_function(TruthTable::from_id(id)), 500);
    return analyze(id, seed, st).wolfram_class;
  };
  EXPECT_EQ(run(2048, 1), WolframClass::I);
  EXPECT_EQ(run(22526, 1), WolframClass::II);
  EXPECT_EQ(run(32746, 1), WolframClass::III_IV);
}

TEST(WolframClass, Names) {
  for (auto c : {WolframClass::I, WolframClass::II, WolframClass::III_IV, WolframClass::unclassified}) {
    EXPECT_EQ(parse_wolfram_class(to_string(c)), c);
  }
  EXPECT_THROW(parse_wolfram_class("V"), std::invalid_argument);
}

TEST(Report, JsonRoundTrip) {
  const auto st = ca::evolve(ca::random_config(64, 0.5, 3),
                             ca::rule_from_function(TruthTable::from_id(32750)), 64);
  const auto r = analyze(32750, 3, st);
  EXPECT_GT(r.png_bytes, 0u);
  EXPECT_GE(r.lz76_factors, 1u);
  EXPECT_EQ(report_from_json(to_json(r)), r);
  const auto hom = analyze(65534, 0, ca::evolve(ca::random_config(64, 0.5, 0),
                                                ca::rule_from_function(TruthTable::from_id(65534)), 64));
  EXPECT_NE(to_json(hom).find("\"homogeneous_value\": 1"), std::string::npos);
  EXPECT_EQ(report_from_json(to_json(hom)), hom);
  EXPECT_THROW(report_from_json("{"), std::invalid_argument);
  EXPECT_THROW(report_from_json("{\"id\": 1}"), std::invalid_argument);
}

TEST(Correlation, Examples) {
  const std::vector<std::pair<double, double>> line{{1, 1}, {2, 2}, {3, 3}};
  EXPECT_NEAR(correlation(line).pearson_r, 1.0, 1e-12);
  const std::vector<std::pair<double, double>> flat{{1, 5}, {2, 5}, {3, 5}};
  const auto c = correlation(flat);
  EXPECT_EQ(c.pearson_r, 0.0);
  EXPECT_TRUE(c.degenerate);
  const std::vector<std::pair<double, double>> one{{1, 5}};
  EXPECT_THROW(correlation(one), std::invalid_argument);
}

TEST(CorrelationProperty, BoundedAndSymmetric) {
  testing::Gen gen(13);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<double, double>> pts(gen.range(2, 30));
    for (auto& p : pts) p = {gen.real(-100, 100), gen.real(-5, 5)};
    const auto r = correlation(pts).pearson_r;
    EXPECT_LE(std::abs(r), 1.0);
    for (auto& p : pts) std::swap(p.first, p.second);
    EXPECT_NEAR(correlation(pts).pearson_r, r, 1e-9);
  }
}

}  // namespace
}  // namespace logicmine::complexity
