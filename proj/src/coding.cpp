#include "mrli/coding.h"

namespace mrli {

CodingState::CodingState(int padded_width, int padded_height, int bit_depth)
    : recon(padded_width, padded_height, bit_depth) {
  for (int p = 0; p < 3; ++p) {
    const Plane& plane = recon.plane(p);
    coded[p].assign(static_cast<size_t>(plane.width) * plane.height, 0);
  }
  cells_w_ = padded_width / 4;
  cells_h_ = padded_height / 4;
  mode_grid_.assign(static_cast<size_t>(cells_w_) * cells_h_, 0);
  pu_size_grid_.assign(static_cast<size_t>(cells_w_) * cells_h_, 0);
}

void CodingState::mark_coded(const BlockRegion& region) {
  const Plane& plane = recon.plane(region.plane_id);
  std::vector<uint8_t>& flags = coded[region.plane_id];
  for (int y = 0; y < region.n; ++y) {
    uint8_t* row =
        flags.data() + static_cast<size_t>(region.y + y) * plane.width;
    std::fill(row + region.x, row + region.x + region.n, uint8_t{1});
  }
}

void CodingState::set_block_info(int x, int y, int size, int mode,
                                 int pu_size) {
  const uint8_t pu_code = static_cast<uint8_t>(log2_size(pu_size) + 1);
  for (int cy = y / 4; cy < (y + size) / 4; ++cy) {
    for (int cx = x / 4; cx < (x + size) / 4; ++cx) {
      mode_grid_[static_cast<size_t>(cy) * cells_w_ + cx] =
          static_cast<uint8_t>(mode + 1);
      pu_size_grid_[static_cast<size_t>(cy) * cells_w_ + cx] = pu_code;
    }
  }
}

int CodingState::mode_at(int x, int y) const {
  if (x < 0 || y < 0 || x >= cells_w_ * 4 || y >= cells_h_ * 4) return -1;
  const uint8_t v = mode_grid_[static_cast<size_t>(y / 4) * cells_w_ + x / 4];
  return static_cast<int>(v) - 1;
}

int CodingState::pu_size_at(int x, int y) const {
  if (x < 0 || y < 0 || x >= cells_w_ * 4 || y >= cells_h_ * 4) return 0;
  const uint8_t v =
      pu_size_grid_[static_cast<size_t>(y / 4) * cells_w_ + x / 4];
  return v == 0 ? 0 : 1 << (v - 1);
}

CodingState::Snapshot CodingState::save(int x, int y, int size) const {
  Snapshot s;
  s.x = x;
  s.y = y;
  s.size = size;
  for (int p = 0; p < 3; ++p) {
    const Plane& plane = recon.plane(p);
    const int sub = p == 0 ? 1 : 2;
    const int bx = x / sub, by = y / sub, bs = size / sub;
    s.samples[p].resize(static_cast<size_t>(bs) * bs);
    s.flags[p].resize(static_cast<size_t>(bs) * bs);
    for (int j = 0; j < bs; ++j) {
      const size_t src = static_cast<size_t>(by + j) * plane.width + bx;
      std::copy_n(plane.samples.data() + src, bs,
                  s.samples[p].data() + static_cast<size_t>(j) * bs);
      std::copy_n(coded[p].data() + src, bs,
                  s.flags[p].data() + static_cast<size_t>(j) * bs);
    }
  }
  const int cells = size / 4;
  s.modes.resize(static_cast<size_t>(cells) * cells);
  s.pu_sizes.resize(static_cast<size_t>(cells) * cells);
  for (int j = 0; j < cells; ++j) {
    const size_t src = static_cast<size_t>(y / 4 + j) * cells_w_ + x / 4;
    std::copy_n(mode_grid_.data() + src, cells,
                s.modes.data() + static_cast<size_t>(j) * cells);
    std::copy_n(pu_size_grid_.data() + src, cells,
                s.pu_sizes.data() + static_cast<size_t>(j) * cells);
  }
  return s;
}

void CodingState::restore(const Snapshot& s) {
  for (int p = 0; p < 3; ++p) {
    Plane& plane = recon.plane(p);
    const int sub = p == 0 ? 1 : 2;
    const int bx = s.x / sub, by = s.y / sub, bs = s.size / sub;
    for (int j = 0; j < bs; ++j) {
      const size_t dst = static_cast<size_t>(by + j) * plane.width + bx;
      std::copy_n(s.samples[p].data() + static_cast<size_t>(j) * bs, bs,
                  plane.samples.data() + dst);
      std::copy_n(s.flags[p].data() + static_cast<size_t>(j) * bs, bs,
                  coded[p].data() + dst);
    }
  }
  const int cells = s.size / 4;
  for (int j = 0; j < cells; ++j) {
    const size_t dst = static_cast<size_t>(s.y / 4 + j) * cells_w_ + s.x / 4;
    std::copy_n(s.modes.data() + static_cast<size_t>(j) * cells, cells,
                mode_grid_.data() + dst);
    std::copy_n(s.pu_sizes.data() + static_cast<size_t>(j) * cells, cells,
                pu_size_grid_.data() + dst);
  }
}

PredBlock predict_for_coding(const CodingState& state,
                             const BlockRegion& region, int line, int mode,
                             bool wide_horizontal_range) {
  const Plane& plane = state.recon.plane(region.plane_id);
  const bool is_luma = region.plane_id == kPlaneY;
  const int bd = state.recon.bit_depth;
  const std::vector<uint8_t>* mask = &state.coded[region.plane_id];

  RefLine rl = gather_reference_line(plane, region, line, bd, mask);
  if (is_luma) rl = smooth_reference(rl, mode);
  PredBlock pred = predict(rl, mode, true, is_luma);
  if (line == 0) return pred;

  const ExtendedPred ext = extended_prediction(rl, mode);
  const ResidueLine residue = compute_interval_residue(plane, mask, region, ext);
  compensate(pred, residue, mode, bd, wide_horizontal_range);

  RefLine rl0 = gather_reference_line(plane, region, 0, bd, mask);
  if (is_luma) rl0 = smooth_reference(rl0, mode);
  const PredBlock pred0 = predict(rl0, mode, true, is_luma);
  PredBlock out = blend_with_nearest(pred, pred0);
  out.line = line;
  return out;
}

int chroma_line_for_luma(int luma_line) { return luma_line <= 1 ? 0 : 1; }

std::vector<BlockRegion> luma_tu_regions(const CuData& cu) {
  std::vector<BlockRegion> regions;
  if (cu.nxn) {
    for (int q = 0; q < 4; ++q) {
      regions.push_back({kPlaneY, cu.x + (q & 1) * 4, cu.y + (q >> 1) * 4, 4});
    }
  } else if (cu.size > kMaxTuSize) {
    const int half = cu.size / 2;
    for (int q = 0; q < 4; ++q) {
      regions.push_back(
          {kPlaneY, cu.x + (q & 1) * half, cu.y + (q >> 1) * half, half});
    }
  } else {
    regions.push_back({kPlaneY, cu.x, cu.y, cu.size});
  }
  return regions;
}

CoeffBlock code_tu_residual(const Plane& orig, const BlockRegion& region,
                            const PredBlock& pred, int pred_x, int pred_y,
                            int qp, bool lossless, bool is_luma,
                            int bit_depth) {
  const int n = region.n;
  std::vector<int32_t> residual(static_cast<size_t>(n) * n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      residual[static_cast<size_t>(y) * n + x] =
          static_cast<int32_t>(orig.at(region.x + x, region.y + y)) -
          static_cast<int32_t>(pred.at(pred_x + x, pred_y + y));
    }
  }
  const bool use_dst = is_luma && n == 4;
  if (lossless) {
    CoeffBlock block;
    block.n = n;
    block.qp = qp;
    block.is_dst = use_dst;
    block.levels.resize(residual.size());
    for (size_t i = 0; i < residual.size(); ++i) {
      block.levels[i] = static_cast<int16_t>(residual[i]);
    }
    return block;
  }
  return quantize(forward_transform(residual, n, use_dst, bit_depth), n, qp,
                  use_dst, bit_depth);
}

void reconstruct_tu(CodingState& state, const BlockRegion& region,
                    const PredBlock& pred, int pred_x, int pred_y,
                    const CoeffBlock& coeffs, bool lossless) {
  const int n = region.n;
  const int bd = state.recon.bit_depth;
  Plane& plane = state.recon.plane(region.plane_id);
  std::vector<int32_t> residual;
  if (lossless) {
    residual.assign(coeffs.levels.begin(), coeffs.levels.end());
  } else if (coeffs.all_zero()) {
    residual.assign(static_cast<size_t>(n) * n, 0);
  } else {
    residual = reconstruct_residual(coeffs, bd);
  }
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const int32_t v =
          static_cast<int32_t>(pred.at(pred_x + x, pred_y + y)) +
          residual[static_cast<size_t>(y) * n + x];
      plane.at(region.x + x, region.y + y) = clamp_sample(v, bd);
    }
  }
}

void reconstruct_cu(CodingState& state, const CuData& cu, bool lossless,
                    bool wide_horizontal_range) {
  const std::vector<BlockRegion> tus = luma_tu_regions(cu);
  if (!cu.nxn) {
    const BlockRegion luma{kPlaneY, cu.x, cu.y, cu.size};
    const PredBlock pred =
        predict_for_coding(state, luma, cu.line, cu.modes[0],
                           wide_horizontal_range);
    for (size_t i = 0; i < tus.size(); ++i) {
      reconstruct_tu(state, tus[i], pred, tus[i].x - cu.x, tus[i].y - cu.y,
                     cu.luma_tus[i], lossless);
    }
    state.mark_coded(luma);
    state.set_block_info(cu.x, cu.y, cu.size, cu.modes[0], cu.size);
  } else {
    for (size_t p = 0; p < 4; ++p) {
      const PredBlock pred = predict_for_coding(
          state, tus[p], cu.line, cu.modes[p], wide_horizontal_range);
      reconstruct_tu(state, tus[p], pred, 0, 0, cu.luma_tus[p], lossless);
      state.mark_coded(tus[p]);
      state.set_block_info(tus[p].x, tus[p].y, 4, cu.modes[p], 4);
    }
  }
  const int chroma_line = chroma_line_for_luma(cu.line);
  for (int plane_id = kPlaneCb; plane_id <= kPlaneCr; ++plane_id) {
    const BlockRegion region{plane_id, cu.x / 2, cu.y / 2, cu.size / 2};
    const PredBlock pred = predict_for_coding(
        state, region, chroma_line, cu.modes[0], wide_horizontal_range);
    reconstruct_tu(state, region, pred, 0, 0,
                   plane_id == kPlaneCb ? cu.cb_tu : cu.cr_tu, lossless);
    state.mark_coded(region);
  }
}

std::array<int, 3> mpm_list_at(const CodingState& state, int x, int y) {
  return derive_mpm_list(state.mode_at(x - 1, y), state.mode_at(x, y - 1));
}

void write_cu_syntax(const CuData& cu, const CodingState& state,
                     uint8_t line_mode, BitWriter& writer) {
  if (cu.size == kMinCuSize) writer.put_bit(cu.nxn ? 1 : 0);
  encode_line_index(cu.line, line_mode, writer);
  const std::vector<BlockRegion> tus = luma_tu_regions(cu);
  if (!cu.nxn) {
    encode_mode(cu.modes[0], mpm_list_at(state, cu.x, cu.y), writer);
    for (size_t i = 0; i < tus.size(); ++i) {
      encode_levels(cu.luma_tus[i], writer);
    }
  } else {
    for (size_t p = 0; p < 4; ++p) {
      encode_mode(cu.modes[p], mpm_list_at(state, tus[p].x, tus[p].y), writer);
      encode_levels(cu.luma_tus[p], writer);
    }
  }
  encode_levels(cu.cb_tu, writer);
  encode_levels(cu.cr_tu, writer);
}

}  // namespace mrli
