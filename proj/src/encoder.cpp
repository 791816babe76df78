#include "mrli/encoder.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "mrli/satd.h"

namespace mrli {

double rd_lambda(int qp) { return 0.57 * std::pow(2.0, (qp - 12) / 3.0); }

bool check_further_lines_for_size(int cu_size, int left_pu_size,
                                  int above_pu_size) {
  if (cu_size >= kCtuSize) return false;
  if (cu_size == 32 && left_pu_size > 0 && above_pu_size > 0 &&
      left_pu_size < 16 && above_pu_size < 16) {
    return false;
  }
  return true;
}

bool continue_after_second_line(double cost_l1, double cost_l0, double f1) {
  return cost_l1 <= f1 * cost_l0;
}

bool check_nxn_further_lines(double cost_nxn_l0, double cost_2nx2n_best,
                             double f2) {
  return cost_nxn_l0 <= f2 * cost_2nx2n_best;
}

namespace {

int rmd_count(int n) { return n <= 8 ? 8 : 3; }

// One fully evaluated (line, mode) option for a prediction unit.
struct Candidate {
  int mode = -1;
  uint64_t dist = 0;
  uint64_t bits = 0;  // mode plus residual bits
  double cost = 0.0;
  std::vector<CoeffBlock> luma_tus;
  CoeffBlock cb_tu, cr_tu;
};

struct LeafChoice {
  CuData cu;
  uint64_t dist = 0;
  uint64_t bits = 0;
  double cost = 0.0;
  std::string gates;
  int candidates = 0;
};

struct CuChoice {
  int x = 0, y = 0, size = 0;
  bool split = false;
  LeafChoice leaf;
  std::vector<CuChoice> children;
  uint64_t dist = 0;
  uint64_t bits = 0;
  double cost = 0.0;
};

class FrameEncoder {
 public:
  FrameEncoder(const Frame& frame, const EncoderConfig& cfg, int frame_index)
      : cfg_(cfg),
        frame_index_(frame_index),
        src_w_(frame.width),
        src_h_(frame.height),
        orig_(pad_to_multiple(frame, kCtuSize)),
        state_(orig_.width, orig_.height, orig_.bit_depth),
        lambda_(rd_lambda(cfg.qp)),
        lambda_sqrt_(std::sqrt(rd_lambda(cfg.qp))),
        lines_(lines_in_mask(cfg.line_mode)) {
    if (cfg.force_cu_size != 0 &&
        (cfg.force_cu_size < kMinCuSize || cfg.force_cu_size > kCtuSize ||
         (cfg.force_cu_size & (cfg.force_cu_size - 1)) != 0)) {
      throw CodecError("forced CU size must be 8, 16, 32 or 64");
    }
  }

  EncodeResult run() {
    EncodeResult result;
    BitWriter writer;
    for (int cy = 0; cy < orig_.height; cy += kCtuSize) {
      for (int cx = 0; cx < orig_.width; cx += kCtuSize) {
        CuChoice root = search_cu(cx, cy, kCtuSize);
        collect_logs(root, result.stats);
        write_tree(root, writer);
      }
    }
    writer.byte_align();
    result.payload = writer.bytes();
    result.stats.bits = writer.bit_count();
    result.stats.rd_candidates = frame_candidates_;
    for (int p = 0; p < 3; ++p) {
      const Plane& a = orig_.plane(p);
      const Plane& b = state_.recon.plane(p);
      const int sub = p == 0 ? 1 : 2;
      result.stats.sse[p] =
          sse(a.samples.data(), a.width, b.samples.data(), b.width,
              src_w_ / sub, src_h_ / sub);
    }
    result.recon = crop(state_.recon, src_w_, src_h_);
    return result;
  }

 private:
  // Residual-codes one TU against the prediction, counts its level bits and
  // returns its reconstruction SSE. Does not touch the coding state.
  uint64_t code_and_measure_tu(const BlockRegion& region,
                               const PredBlock& pred, int pred_x, int pred_y,
                               int qp, bool is_luma, BitWriter& counter,
                               CoeffBlock* out) {
    const Plane& plane = orig_.plane(region.plane_id);
    *out = code_tu_residual(plane, region, pred, pred_x, pred_y, qp,
                            cfg_.lossless, is_luma, orig_.bit_depth);
    encode_levels(*out, counter);
    if (cfg_.lossless) return 0;
    const int n = region.n;
    std::vector<int32_t> residual;
    if (out->all_zero()) {
      residual.assign(static_cast<size_t>(n) * n, 0);
    } else {
      residual = reconstruct_residual(*out, orig_.bit_depth);
    }
    uint64_t d = 0;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const int rec = clamp_sample(
            pred.at(pred_x + x, pred_y + y) +
                residual[static_cast<size_t>(y) * n + x],
            orig_.bit_depth);
        const int64_t diff = plane.at(region.x + x, region.y + y) - rec;
        d += static_cast<uint64_t>(diff * diff);
      }
    }
    return d;
  }

  // Rough mode decision: SATD plus weighted mode bits over all 35 modes,
  // keeping the `count` cheapest.
  std::vector<int> rough_modes(const BlockRegion& region, int line,
                               int count) {
    const Plane& plane = orig_.plane(kPlaneY);
    const Sample* o =
        plane.samples.data() +
        static_cast<size_t>(region.y) * plane.width + region.x;
    const std::array<int, 3> mpm = mpm_list_at(state_, region.x, region.y);
    std::array<double, kNumIntraModes> costs{};
    parallel_for(kNumIntraModes, [&](int mode) {
      const PredBlock pred = predict_for_coding(state_, region, line, mode,
                                                cfg_.wide_horizontal_range);
      const uint64_t s =
          satd(o, plane.width, pred.samples.data(), pred.n, region.n);
      BitWriter ctr(true);
      encode_mode(mode, mpm, ctr);
      costs[mode] = static_cast<double>(s) +
                    lambda_sqrt_ * static_cast<double>(ctr.bit_count());
    });
    std::vector<int> order(kNumIntraModes);
    for (int i = 0; i < kNumIntraModes; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[a] < costs[b]; });
    order.resize(std::min<size_t>(count, order.size()));
    return order;
  }

  Candidate eval_2nx2n(int x, int y, int size, int line, int mode) {
    Candidate c;
    c.mode = mode;
    BitWriter counter(true);
    const BlockRegion luma{kPlaneY, x, y, size};
    const PredBlock pred = predict_for_coding(state_, luma, line, mode,
                                              cfg_.wide_horizontal_range);
    encode_mode(mode, mpm_list_at(state_, x, y), counter);
    CuData geom;
    geom.x = x;
    geom.y = y;
    geom.size = size;
    geom.line = line;
    geom.modes[0] = mode;
    for (const BlockRegion& tu : luma_tu_regions(geom)) {
      CoeffBlock block;
      c.dist += code_and_measure_tu(tu, pred, tu.x - x, tu.y - y, cfg_.qp,
                                    true, counter, &block);
      c.luma_tus.push_back(std::move(block));
    }
    const int cqp = chroma_qp_from_luma(cfg_.qp);
    const int chroma_line = chroma_line_for_luma(line);
    for (int plane_id = kPlaneCb; plane_id <= kPlaneCr; ++plane_id) {
      const BlockRegion region{plane_id, x / 2, y / 2, size / 2};
      const PredBlock cpred = predict_for_coding(
          state_, region, chroma_line, mode, cfg_.wide_horizontal_range);
      CoeffBlock* out = plane_id == kPlaneCb ? &c.cb_tu : &c.cr_tu;
      c.dist += code_and_measure_tu(region, cpred, 0, 0, cqp, false, counter,
                                    out);
    }
    c.bits = counter.bit_count();
    c.cost = static_cast<double>(c.dist) +
             lambda_ * static_cast<double>(c.bits);
    ++frame_candidates_;
    ++cu_candidates_;
    return c;
  }

  // Four 4x4 prediction units inside an 8x8 CU, each PU applied to the
  // state before the next so the later PUs predict from it. The state is
  // restored before returning.
  LeafChoice eval_nxn(int x, int y, int line) {
    LeafChoice e;
    e.cu.x = x;
    e.cu.y = y;
    e.cu.size = kMinCuSize;
    e.cu.nxn = true;
    e.cu.line = line;
    const CodingState::Snapshot snap = state_.save(x, y, kMinCuSize);
    int count = rmd_count(4);
    if (cfg_.fast && line > 0) count = (count + 1) / 2;
    BitWriter counter(true);
    for (const BlockRegion& region : luma_tu_regions(e.cu)) {
      const std::vector<int> modes = rough_modes(region, line, count);
      Candidate best;
      for (int mode : modes) {
        Candidate c;
        c.mode = mode;
        BitWriter ctr(true);
        const PredBlock pred = predict_for_coding(
            state_, region, line, mode, cfg_.wide_horizontal_range);
        encode_mode(mode, mpm_list_at(state_, region.x, region.y), ctr);
        CoeffBlock block;
        c.dist = code_and_measure_tu(region, pred, 0, 0, cfg_.qp, true, ctr,
                                     &block);
        c.luma_tus.push_back(std::move(block));
        c.bits = ctr.bit_count();
        c.cost = static_cast<double>(c.dist) +
                 lambda_ * static_cast<double>(c.bits);
        ++frame_candidates_;
        ++cu_candidates_;
        if (best.mode < 0 || c.cost < best.cost) best = std::move(c);
      }
      const PredBlock pred = predict_for_coding(
          state_, region, line, best.mode, cfg_.wide_horizontal_range);
      reconstruct_tu(state_, region, pred, 0, 0, best.luma_tus[0],
                     cfg_.lossless);
      state_.mark_coded(region);
      state_.set_block_info(region.x, region.y, 4, best.mode, 4);
      e.cu.modes[e.cu.luma_tus.size()] = best.mode;
      e.cu.luma_tus.push_back(std::move(best.luma_tus[0]));
      e.dist += best.dist;
      e.bits += best.bits;
    }
    const int cqp = chroma_qp_from_luma(cfg_.qp);
    const int chroma_line = chroma_line_for_luma(line);
    for (int plane_id = kPlaneCb; plane_id <= kPlaneCr; ++plane_id) {
      const BlockRegion region{plane_id, x / 2, y / 2, kMinCuSize / 2};
      const PredBlock cpred =
          predict_for_coding(state_, region, chroma_line, e.cu.modes[0],
                             cfg_.wide_horizontal_range);
      CoeffBlock* out = plane_id == kPlaneCb ? &e.cu.cb_tu : &e.cu.cr_tu;
      e.dist += code_and_measure_tu(region, cpred, 0, 0, cqp, false, counter,
                                    out);
    }
    e.bits += counter.bit_count();
    e.cost = static_cast<double>(e.dist) +
             lambda_ * static_cast<double>(e.bits);
    state_.restore(snap);
    return e;
  }

  uint64_t line_index_bits(int line) {
    BitWriter ctr(true);
    encode_line_index(line, cfg_.line_mode, ctr);
    return ctr.bit_count();
  }

  LeafChoice search_leaf(int x, int y, int size) {
    cu_candidates_ = 0;
    std::string gates;
    std::vector<int> lines = lines_;
    if (cfg_.fast && lines.size() > 1 &&
        !check_further_lines_for_size(size, state_.pu_size_at(x - 1, y),
                                      state_.pu_size_at(x, y - 1))) {
      lines = {0};
      gates += size == kCtuSize ? "skip-lines-64;" : "skip-lines-nbr;";
    }
    const BlockRegion region{kPlaneY, x, y, size};
    LeafChoice best;
    bool have = false;
    double cost_l0 = 0.0;
    for (size_t li = 0; li < lines.size(); ++li) {
      const int m = lines[li];
      int count = rmd_count(size);
      if (cfg_.fast && m > 0) count = (count + 1) / 2;
      Candidate line_best;
      for (int mode : rough_modes(region, m, count)) {
        Candidate c = eval_2nx2n(x, y, size, m, mode);
        if (line_best.mode < 0 || c.cost < line_best.cost) {
          line_best = std::move(c);
        }
      }
      const uint64_t bits = line_best.bits + line_index_bits(m);
      const double cost = static_cast<double>(line_best.dist) +
                          lambda_ * static_cast<double>(bits);
      if (m == 0) cost_l0 = cost;
      if (!have || cost < best.cost) {
        have = true;
        best.cu.x = x;
        best.cu.y = y;
        best.cu.size = size;
        best.cu.nxn = false;
        best.cu.line = m;
        best.cu.modes = {line_best.mode, 0, 0, 0};
        best.cu.luma_tus = std::move(line_best.luma_tus);
        best.cu.cb_tu = std::move(line_best.cb_tu);
        best.cu.cr_tu = std::move(line_best.cr_tu);
        best.dist = line_best.dist;
        best.bits = bits;
        best.cost = cost;
      }
      if (cfg_.fast && m == 1 && li + 1 < lines.size() &&
          !continue_after_second_line(cost, cost_l0)) {
        gates += "stop-line-ratio;";
        break;
      }
    }

    if (size == kMinCuSize && cfg_.force_cu_size == 0) {
      LeafChoice nxn_best;
      bool nxn_have = false;
      double nxn_cost_l0 = 0.0;
      for (size_t li = 0; li < lines_.size(); ++li) {
        const int m = lines_[li];
        LeafChoice e = eval_nxn(x, y, m);
        e.bits += line_index_bits(m);
        e.cost = static_cast<double>(e.dist) +
                 lambda_ * static_cast<double>(e.bits);
        if (m == 0) nxn_cost_l0 = e.cost;
        if (!nxn_have || e.cost < nxn_best.cost) {
          nxn_have = true;
          nxn_best = std::move(e);
        }
        if (li + 1 == lines_.size()) break;
        if (cfg_.fast && m == 0 &&
            !check_nxn_further_lines(nxn_cost_l0, best.cost)) {
          gates += "stop-part-ratio;";
          break;
        }
        if (cfg_.fast && m == 1 &&
            !continue_after_second_line(e.cost, nxn_cost_l0)) {
          gates += "stop-line-ratio;";
          break;
        }
      }
      // Both partitionings carry the one partition flag bit.
      best.bits += 1;
      best.cost += lambda_;
      if (nxn_have) {
        nxn_best.bits += 1;
        nxn_best.cost += lambda_;
        if (nxn_best.cost < best.cost) {
          nxn_best.gates = std::move(best.gates);
          best = std::move(nxn_best);
        }
      }
    }
    best.gates = gates + best.gates;
    best.candidates = cu_candidates_;
    return best;
  }

  CuChoice search_cu(int x, int y, int size) {
    CuChoice node;
    node.x = x;
    node.y = y;
    node.size = size;
    const bool can_leaf =
        cfg_.force_cu_size == 0 || size <= cfg_.force_cu_size;
    const bool can_split =
        size > kMinCuSize &&
        (cfg_.force_cu_size == 0 || size > cfg_.force_cu_size);
    const bool has_flag = size > kMinCuSize;

    const CodingState::Snapshot base = state_.save(x, y, size);
    LeafChoice leaf;
    CodingState::Snapshot after_leaf;
    if (can_leaf) {
      leaf = search_leaf(x, y, size);
      reconstruct_cu(state_, leaf.cu, cfg_.lossless,
                     cfg_.wide_horizontal_range);
      if (has_flag) {
        leaf.bits += 1;
        leaf.cost += lambda_;
      }
      if (!can_split) {
        node.leaf = std::move(leaf);
        node.dist = node.leaf.dist;
        node.bits = node.leaf.bits;
        node.cost = node.leaf.cost;
        return node;
      }
      after_leaf = state_.save(x, y, size);
      state_.restore(base);
    }

    CuChoice split;
    split.x = x;
    split.y = y;
    split.size = size;
    split.split = true;
    split.bits = has_flag ? 1 : 0;
    split.cost = lambda_ * static_cast<double>(split.bits);
    const int half = size / 2;
    for (int q = 0; q < 4; ++q) {
      CuChoice child =
          search_cu(x + (q & 1) * half, y + (q >> 1) * half, half);
      split.dist += child.dist;
      split.bits += child.bits;
      split.cost += child.cost;
      split.children.push_back(std::move(child));
    }
    if (can_leaf && leaf.cost <= split.cost) {
      state_.restore(after_leaf);
      node.leaf = std::move(leaf);
      node.dist = node.leaf.dist;
      node.bits = node.leaf.bits;
      node.cost = node.leaf.cost;
      return node;
    }
    return split;
  }

  void write_tree(const CuChoice& node, BitWriter& writer) {
    if (node.size > kMinCuSize) writer.put_bit(node.split ? 1 : 0);
    if (node.split) {
      for (const CuChoice& child : node.children) write_tree(child, writer);
      return;
    }
    write_cu_syntax(node.leaf.cu, state_, cfg_.line_mode, writer);
  }

  void collect_logs(const CuChoice& node, EncodeStats& stats) {
    if (node.split) {
      for (const CuChoice& child : node.children) collect_logs(child, stats);
      return;
    }
    CuLog log;
    log.frame = frame_index_;
    log.x = node.x;
    log.y = node.y;
    log.size = node.size;
    log.nxn = node.leaf.cu.nxn;
    log.line = node.leaf.cu.line;
    log.mode = node.leaf.cu.modes[0];
    log.dist = node.leaf.dist;
    log.bits = node.leaf.bits;
    log.cost = node.leaf.cost;
    log.gates = node.leaf.gates;
    log.candidates = node.leaf.candidates;
    stats.cus.push_back(std::move(log));
  }

  EncoderConfig cfg_;
  int frame_index_;
  int src_w_, src_h_;
  Frame orig_;
  CodingState state_;
  double lambda_, lambda_sqrt_;
  std::vector<int> lines_;
  uint64_t frame_candidates_ = 0;
  int cu_candidates_ = 0;
};

}  // namespace

EncodeResult encode_frame(const Frame& frame, const EncoderConfig& config,
                          int frame_index) {
  if (config.qp < 0 || config.qp > 51) {
    throw CodecError("qp must be in [0, 51]");
  }
  if (!(config.line_mode & 1)) {
    throw CodecError("line mode must include L0");
  }
  FrameEncoder encoder(frame, config, frame_index);
  return encoder.run();
}

std::vector<uint8_t> encode_sequence(const std::vector<Frame>& frames,
                                     const EncoderConfig& config,
                                     std::vector<EncodeResult>* per_frame) {
  if (frames.empty()) throw CodecError("no frames to encode");
  BitstreamHeader header;
  header.width = frames[0].width;
  header.height = frames[0].height;
  header.bit_depth = frames[0].bit_depth;
  header.qp = config.qp;
  header.lossless = config.lossless;
  header.line_mode = config.line_mode;
  header.frame_count = static_cast<int>(frames.size());
  header.wide_horizontal_range = config.wide_horizontal_range;
  std::vector<uint8_t> out = serialize_header(header);
  for (size_t i = 0; i < frames.size(); ++i) {
    if (!frames[i].same_geometry(frames[0])) {
      throw CodecError("frame geometry changes mid-sequence");
    }
    EncodeResult r = encode_frame(frames[i], config, static_cast<int>(i));
    out.insert(out.end(), r.payload.begin(), r.payload.end());
    if (per_frame) per_frame->push_back(std::move(r));
  }
  return out;
}

void write_stats_csv(const std::string& path, const std::vector<CuLog>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CodecError("cannot write " + path);
  out << "frame,x,y,size,part,line,mode,dist,bits,cost,gates,candidates\n";
  for (const CuLog& r : rows) {
    out << r.frame << ',' << r.x << ',' << r.y << ',' << r.size << ','
        << (r.nxn ? "NxN" : "2Nx2N") << ',' << r.line << ',' << r.mode << ','
        << r.dist << ',' << r.bits << ',' << r.cost << ',' << r.gates << ','
        << r.candidates << '\n';
  }
}

}  // namespace mrli
