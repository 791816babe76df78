#pragma once

#include "mrli/coding.h"

namespace mrli {

struct EncoderConfig {
  int qp = 32;
  bool lossless = false;
  uint8_t line_mode = kLineModeSingle;
  // Fast line search: pruned alphabet gates, halved rough-mode lists,
  // and the cost-ratio early terminations.
  bool fast = false;
  bool wide_horizontal_range = false;
  // When nonzero, the quadtree is forced to this CU size (no NxN). Used by
  // the analysis passes that need transform blocks on a fixed grid.
  int force_cu_size = 0;
};

// One row per coded CU in the decision log.
struct CuLog {
  int frame = 0;
  int x = 0, y = 0, size = 0;
  bool nxn = false;
  int line = 0;
  int mode = 0;  // first PU's mode for NxN
  uint64_t dist = 0;
  uint64_t bits = 0;
  double cost = 0.0;
  std::string gates;   // early terminations hit while searching this CU
  int candidates = 0;  // full-RD (line, mode) evaluations spent on this CU
};

struct EncodeStats {
  std::vector<CuLog> cus;
  uint64_t bits = 0;            // payload bits for the frame
  uint64_t rd_candidates = 0;   // full-RD evaluations over the frame
  std::array<uint64_t, 3> sse{};  // per plane, over the true frame area
};

struct EncodeResult {
  std::vector<uint8_t> payload;  // byte-aligned frame payload, no header
  Frame recon;                   // cropped to the input dimensions
  EncodeStats stats;
};

double rd_lambda(int qp);

// Fast-search gate predicates. All are encoder-side only.
// Further lines are never tried at 64x64, nor at 32x32 when both neighbor
// PUs are available and smaller than 16.
bool check_further_lines_for_size(int cu_size, int left_pu_size,
                                  int above_pu_size);
// After the second line: keep searching only while its cost stays within
// the ratio of the first line's.
bool continue_after_second_line(double cost_l1, double cost_l0,
                                double f1 = 1.1);
// Further lines for the NxN partition only when its first-line cost is not
// far above the best 2Nx2N cost.
bool check_nxn_further_lines(double cost_nxn_l0, double cost_2nx2n_best,
                             double f2 = 1.2);

EncodeResult encode_frame(const Frame& frame, const EncoderConfig& config,
                          int frame_index = 0);

// Header plus the payloads of all frames.
std::vector<uint8_t> encode_sequence(const std::vector<Frame>& frames,
                                     const EncoderConfig& config,
                                     std::vector<EncodeResult>* per_frame);

void write_stats_csv(const std::string& path, const std::vector<CuLog>& rows);

}  // namespace mrli
