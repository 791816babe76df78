#include "mrli/analysis.h"

#include "mrli/satd.h"

namespace mrli {

namespace {

void check_block_size(const std::vector<Frame>& frames, int block_size) {
  if (block_size != 8 && block_size != 16) {
    throw CodecError("analysis block size must be 8 or 16");
  }
  if (frames.empty()) throw CodecError("no frames to analyze");
  for (const Frame& f : frames) {
    if (f.width % block_size != 0 || f.height % block_size != 0) {
      throw CodecError("block size does not divide the frame dimensions");
    }
  }
}

Frame compressed_reference(const Frame& frame, int qp) {
  EncoderConfig cfg;
  cfg.qp = qp;
  cfg.line_mode = kLineModeSingle;
  return encode_frame(frame, cfg).recon;
}

// Plain per-line SATD sweep: 35 modes on one reference line, no smoothing,
// no boundary filters, no compensation. Returns the best SATD and mode.
uint64_t best_satd_on_line(const Plane& target, const Plane& ref,
                           const BlockRegion& region, int line, int bit_depth,
                           int* best_mode) {
  const RefLine rl = gather_reference_line(ref, region, line, bit_depth, nullptr);
  const Sample* t = target.samples.data() +
                    static_cast<size_t>(region.y) * target.width + region.x;
  uint64_t best = ~uint64_t{0};
  for (int mode = 0; mode < kNumIntraModes; ++mode) {
    const PredBlock pred = predict(rl, mode, false, true);
    const uint64_t s =
        satd(t, target.width, pred.samples.data(), pred.n, region.n);
    if (s < best) {
      best = s;
      if (best_mode) *best_mode = mode;
    }
  }
  return best;
}

}  // namespace

CensusResult line_usage_census(const std::vector<Frame>& frames,
                               const CensusConfig& config) {
  check_block_size(frames, config.block_size);
  CensusResult result;
  result.block_size = config.block_size;
  for (const Frame& frame : frames) {
    Frame recon;
    const Plane* ref = &frame.plane(kPlaneY);
    if (config.compressed_qp >= 0) {
      recon = compressed_reference(frame, config.compressed_qp);
      ref = &recon.plane(kPlaneY);
    }
    const Plane& target = frame.plane(kPlaneY);
    for (int y = 0; y + config.block_size <= frame.height;
         y += config.block_size) {
      for (int x = 0; x + config.block_size <= frame.width;
           x += config.block_size) {
        const BlockRegion region{kPlaneY, x, y, config.block_size};
        std::array<uint64_t, 4> line_satd{};
        for (int m = 0; m < 4; ++m) {
          line_satd[m] = best_satd_on_line(target, *ref, region, m,
                                           frame.bit_depth, nullptr);
        }
        int best_line = 0;
        for (int m = 1; m < 4; ++m) {
          if (line_satd[m] < line_satd[best_line]) best_line = m;
        }
        if (line_satd[best_line] > line_satd[0]) ++result.superset_violations;
        ++result.per_line[best_line];
        ++result.blocks;
      }
    }
  }
  return result;
}

double VarianceMap::border_mean() const {
  double sum = 0.0;
  int count = 0;
  for (int y = 0; y < block_size; ++y) {
    for (int x = 0; x < block_size; ++x) {
      if (x == 0 || y == 0 || x == block_size - 1 || y == block_size - 1) {
        sum += variance[static_cast<size_t>(y) * block_size + x];
        ++count;
      }
    }
  }
  return count ? sum / count : 0.0;
}

double VarianceMap::interior_mean() const {
  double sum = 0.0;
  int count = 0;
  for (int y = 1; y < block_size - 1; ++y) {
    for (int x = 1; x < block_size - 1; ++x) {
      sum += variance[static_cast<size_t>(y) * block_size + x];
      ++count;
    }
  }
  return count ? sum / count : 0.0;
}

VarianceMap quant_error_variance_map(const std::vector<Frame>& frames, int qp,
                                     int block_size, bool lossless) {
  check_block_size(frames, block_size);
  VarianceMap map;
  map.block_size = block_size;
  const size_t cells = static_cast<size_t>(block_size) * block_size;
  std::vector<double> sum(cells, 0.0), sum_sq(cells, 0.0);
  for (const Frame& frame : frames) {
    EncoderConfig cfg;
    cfg.qp = qp;
    cfg.lossless = lossless;
    cfg.line_mode = kLineModeSingle;
    cfg.force_cu_size = block_size == 8 ? 8 : 16;
    const Frame recon = encode_frame(frame, cfg).recon;
    const Plane& a = frame.plane(kPlaneY);
    const Plane& b = recon.plane(kPlaneY);
    for (int y = 0; y + block_size <= frame.height; y += block_size) {
      for (int x = 0; x + block_size <= frame.width; x += block_size) {
        for (int j = 0; j < block_size; ++j) {
          for (int i = 0; i < block_size; ++i) {
            const double e = static_cast<double>(a.at(x + i, y + j)) -
                             static_cast<double>(b.at(x + i, y + j));
            const size_t pos = static_cast<size_t>(j) * block_size + i;
            sum[pos] += e;
            sum_sq[pos] += e * e;
          }
        }
        ++map.blocks;
      }
    }
  }
  map.variance.assign(cells, 0.0);
  if (map.blocks > 0) {
    const double n = static_cast<double>(map.blocks);
    for (size_t i = 0; i < cells; ++i) {
      const double mean = sum[i] / n;
      map.variance[i] = std::max(0.0, sum_sq[i] / n - mean * mean);
    }
  }
  return map;
}

BoundaryMseReport boundary_mse_report(const std::vector<Frame>& frames,
                                      int qp, int block_size) {
  check_block_size(frames, block_size);
  BoundaryMseReport report;
  report.block_size = block_size;
  std::array<double, 3> err_off{}, err_on{};
  std::array<uint64_t, 3> count{};
  for (const Frame& frame : frames) {
    const Frame recon = compressed_reference(frame, qp);
    const Plane& ref = recon.plane(kPlaneY);
    const Plane& orig = frame.plane(kPlaneY);
    for (int y = 0; y + block_size <= frame.height; y += block_size) {
      for (int x = 0; x + block_size <= frame.width; x += block_size) {
        const BlockRegion region{kPlaneY, x, y, block_size};
        int best_line = 0, best_mode = 0;
        uint64_t best = ~uint64_t{0};
        for (int m = 0; m < 4; ++m) {
          int mode = 0;
          const uint64_t s =
              best_satd_on_line(orig, ref, region, m, frame.bit_depth, &mode);
          if (s < best) {
            best = s;
            best_line = m;
            best_mode = mode;
          }
        }
        const RefLine rl = gather_reference_line(ref, region, best_line,
                                                 frame.bit_depth, nullptr);
        const PredBlock pred_off = predict(rl, best_mode, false, true);
        PredBlock pred_on = pred_off;
        if (best_line > 0) {
          const ExtendedPred ext = extended_prediction(rl, best_mode);
          const ResidueLine residue =
              compute_interval_residue(ref, nullptr, region, ext);
          compensate(pred_on, residue, best_mode, frame.bit_depth);
        }
        for (int j = 0; j < block_size; ++j) {
          for (int i = 0; i < block_size; ++i) {
            const int k = std::min(i, j);
            if (k > 2) continue;
            const double o = orig.at(x + i, y + j);
            const double d_off = o - pred_off.at(i, j);
            const double d_on = o - pred_on.at(i, j);
            err_off[k] += d_off * d_off;
            err_on[k] += d_on * d_on;
            ++count[k];
          }
        }
        ++report.blocks;
      }
    }
  }
  for (int k = 0; k < 3; ++k) {
    report.rows[k].block_line = k;
    if (count[k] > 0) {
      report.rows[k].mse_off = err_off[k] / static_cast<double>(count[k]);
      report.rows[k].mse_on = err_on[k] / static_cast<double>(count[k]);
    }
  }
  return report;
}

std::vector<uint8_t> default_sweep_masks() {
  return {0x03, 0x05, 0x09, 0x07, 0x0B, 0x0D, 0x0F};
}

std::vector<SubsetResult> subset_sweep(const std::vector<Frame>& frames,
                                       int qp,
                                       const std::vector<uint8_t>& masks) {
  if (frames.empty()) throw CodecError("no frames to analyze");
  std::vector<SubsetResult> results;
  for (uint8_t mask : masks) {
    if (!(mask & 1)) throw CodecError("subset must contain L0");
    SubsetResult r;
    r.mask = mask;
    EncoderConfig cfg;
    cfg.qp = qp;
    cfg.line_mode = mask;
    for (size_t i = 0; i < frames.size(); ++i) {
      const EncodeResult e = encode_frame(frames[i], cfg, static_cast<int>(i));
      r.bits += e.stats.bits;
      for (int p = 0; p < 3; ++p) r.sse[p] += e.stats.sse[p];
    }
    r.rd_cost = static_cast<double>(r.sse[0] + r.sse[1] + r.sse[2]) +
                rd_lambda(qp) * static_cast<double>(r.bits);
    results.push_back(r);
  }
  return results;
}

}  // namespace mrli
