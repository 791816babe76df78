#pragma once

#include "mrli/coding.h"

namespace mrli {

struct DecodeResult {
  BitstreamHeader header;
  std::vector<Frame> frames;
};

DecodeResult decode_stream(const std::vector<uint8_t>& data);

// Syntax-level statistics pulled from a stream without reconstructing any
// samples; parsing is sample-independent.
struct StreamStats {
  BitstreamHeader header;
  struct FrameStats {
    uint64_t cus = 0;
    uint64_t nxn_cus = 0;
    std::array<uint64_t, 4> cus_per_line{};
    std::array<uint64_t, 4> luma_area_per_line{};
    std::array<uint64_t, kNumIntraModes> cus_per_mode{};
  };
  std::vector<FrameStats> frames;
  FrameStats totals;
};

StreamStats extract_stream_stats(const std::vector<uint8_t>& data);

}  // namespace mrli
