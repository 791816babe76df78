#pragma once

#include "mrli/decoder.h"
#include "mrli/encoder.h"

namespace mrli {

struct CensusConfig {
  int block_size = 8;      // 8 or 16
  int compressed_qp = -1;  // < 0: census over the original samples
};

struct CensusResult {
  int block_size = 0;
  uint64_t blocks = 0;
  std::array<uint64_t, 4> per_line{};
  uint64_t superset_violations = 0;  // min over all lines beats L0? never

  double share(int line) const {
    return blocks ? 100.0 * static_cast<double>(per_line[line]) /
                        static_cast<double>(blocks)
                  : 0.0;
  }
  double further_share() const {
    return share(1) + share(2) + share(3);
  }
};

// Best (line, mode) per non-overlapping luma block by SATD of the plain
// per-line predictions, 35 modes on each of L0..L3. Ties go to the nearer
// line. With compressed_qp >= 0 the frames are first coded all-intra at
// that QP and the census runs on the reconstruction.
CensusResult line_usage_census(const std::vector<Frame>& frames,
                               const CensusConfig& config);

struct VarianceMap {
  int block_size = 0;
  uint64_t blocks = 0;
  std::vector<double> variance;  // block_size^2, raster

  double border_mean() const;
  double interior_mean() const;
};

// Per-position variance of the reconstruction error over all aligned N x N
// luma blocks of an all-intra encode at the given QP. The quadtree is
// forced to N so transform blocks coincide with the grid.
VarianceMap quant_error_variance_map(const std::vector<Frame>& frames, int qp,
                                     int block_size, bool lossless = false);

struct BoundaryMseRow {
  int block_line = 0;   // 0..2, samples with min(x, y) == block_line
  double mse_off = 0.0;
  double mse_on = 0.0;
};

struct BoundaryMseReport {
  int block_size = 0;
  uint64_t blocks = 0;
  std::array<BoundaryMseRow, 3> rows{};
};

// Prediction-error MSE per block line with and without the boundary
// compensation, references taken from an all-intra reconstruction at the
// given QP and the (line, mode) chosen per block by SATD.
BoundaryMseReport boundary_mse_report(const std::vector<Frame>& frames,
                                      int qp, int block_size);

struct SubsetResult {
  uint8_t mask = 0;
  uint64_t bits = 0;
  std::array<uint64_t, 3> sse{};
  double rd_cost = 0.0;  // total SSE + lambda(qp) * bits over the corpus
};

std::vector<uint8_t> default_sweep_masks();
std::vector<SubsetResult> subset_sweep(const std::vector<Frame>& frames,
                                       int qp,
                                       const std::vector<uint8_t>& masks);

}  // namespace mrli
