#pragma once

#include <array>

#include "mrli/frame.h"
#include "mrli/residue.h"
#include "mrli/syntax.h"

namespace mrli {

constexpr int kCtuSize = 64;
constexpr int kMinCuSize = 8;
constexpr int kMaxTuSize = 32;
constexpr int kMaxRefLines = 4;

// Loop state shared by the encoder and the decoder: the evolving
// reconstruction, per-sample coded flags, and per-4x4 mode / PU-size grids
// used for MPM derivation and the neighbor-size gate.
class CodingState {
 public:
  CodingState() = default;
  CodingState(int padded_width, int padded_height, int bit_depth);

  Frame recon;
  std::array<std::vector<uint8_t>, 3> coded;

  const std::vector<uint8_t>& mask(int plane) const { return coded[plane]; }
  void mark_coded(const BlockRegion& region);

  void set_block_info(int x, int y, int size, int mode, int pu_size);
  // -1 when the position is outside the frame or not yet coded.
  int mode_at(int x, int y) const;
  int pu_size_at(int x, int y) const;

  struct Snapshot {
    int x = 0, y = 0, size = 0;
    std::array<std::vector<Sample>, 3> samples;
    std::array<std::vector<uint8_t>, 3> flags;
    std::vector<uint8_t> modes, pu_sizes;
  };
  Snapshot save(int x, int y, int size) const;
  void restore(const Snapshot& snapshot);

 private:
  int cells_w_ = 0, cells_h_ = 0;
  std::vector<uint8_t> mode_grid_;     // mode + 1, 0 = uncoded
  std::vector<uint8_t> pu_size_grid_;  // log2 + 1, 0 = uncoded
};

// Whole prediction path for one block: gather and condition the reference
// line, predict, and for further lines estimate the interval residue,
// compensate the boundary and blend with the nearest-line prediction.
PredBlock predict_for_coding(const CodingState& state,
                             const BlockRegion& region, int line, int mode,
                             bool wide_horizontal_range = false);

// Syntax content of one leaf CU.
struct CuData {
  int x = 0, y = 0, size = 0;
  bool nxn = false;
  int line = 0;
  std::array<int, 4> modes{};
  std::vector<CoeffBlock> luma_tus;  // 1 normally, 4 for NxN and 64x64
  CoeffBlock cb_tu, cr_tu;
};

int chroma_line_for_luma(int luma_line);

// Luma TU geometry of a CU: {region, pred block size} pairs. 64x64 CUs
// carry one 64x64 prediction split into four 32x32 transforms.
std::vector<BlockRegion> luma_tu_regions(const CuData& cu);

// Quantized (or bypassed) residual for one TU given its prediction.
CoeffBlock code_tu_residual(const Plane& orig, const BlockRegion& region,
                            const PredBlock& pred, int pred_x, int pred_y,
                            int qp, bool lossless, bool is_luma,
                            int bit_depth);

// Adds the TU residual onto the prediction and writes the reconstruction.
void reconstruct_tu(CodingState& state, const BlockRegion& region,
                    const PredBlock& pred, int pred_x, int pred_y,
                    const CoeffBlock& coeffs, bool lossless);

// Replays a fully specified CU into the state: predictions, residual
// addition, coded flags, and grids. Identical between encoder and decoder.
void reconstruct_cu(CodingState& state, const CuData& cu, bool lossless,
                    bool wide_horizontal_range);

// Writes the CU payload syntax (without the split flag).
void write_cu_syntax(const CuData& cu, const CodingState& state,
                     uint8_t line_mode, BitWriter& writer);

std::array<int, 3> mpm_list_at(const CodingState& state, int x, int y);

}  // namespace mrli
