#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace logicmine::png {

/// zlib level used for every image; part of the output format.
inline constexpr int kDeflateLevel = 6;

/// Deterministic 8-bit grayscale PNG: IHDR, one IDAT, IEND; no ancillary
/// chunks, no interlace, filter type None on every scanline.
std::vector<std::uint8_t> encode_gray8(std::span<const std::uint8_t> pixels, std::size_t width,
                                       std::size_t height, int level = kDeflateLevel);

}  // namespace logicmine::png
