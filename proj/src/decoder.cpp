#include "mrli/decoder.h"

namespace mrli {

namespace {

int padded_dim(int v) { return ((v + kCtuSize - 1) / kCtuSize) * kCtuSize; }

class FrameParser {
 public:
  FrameParser(BitReader& reader, const BitstreamHeader& header,
              bool reconstruct, StreamStats::FrameStats* stats)
      : reader_(reader),
        header_(header),
        reconstruct_(reconstruct),
        stats_(stats),
        state_(padded_dim(header.width), padded_dim(header.height),
               header.bit_depth) {}

  Frame parse_frame() {
    const int pw = state_.recon.width;
    const int ph = state_.recon.height;
    for (int cy = 0; cy < ph; cy += kCtuSize) {
      for (int cx = 0; cx < pw; cx += kCtuSize) {
        parse_cu(cx, cy, kCtuSize);
      }
    }
    reader_.byte_align();
    if (!reconstruct_) return Frame();
    return crop(state_.recon, header_.width, header_.height);
  }

 private:
  void parse_cu(int x, int y, int size) {
    if (size > kMinCuSize && reader_.get_bit()) {
      const int half = size / 2;
      for (int q = 0; q < 4; ++q) {
        parse_cu(x + (q & 1) * half, y + (q >> 1) * half, half);
      }
      return;
    }
    CuData cu;
    try {
      cu = parse_leaf(x, y, size);
    } catch (const CodecError& e) {
      throw CodecError("CU (" + std::to_string(x) + "," + std::to_string(y) +
                       ") size " + std::to_string(size) + ": " + e.what());
    }
    if (stats_) record(cu);
    if (reconstruct_) {
      reconstruct_cu(state_, cu, header_.lossless,
                     header_.wide_horizontal_range);
    }
  }

  CuData parse_leaf(int x, int y, int size) {
    CuData cu;
    cu.x = x;
    cu.y = y;
    cu.size = size;
    if (size == kMinCuSize) cu.nxn = reader_.get_bit() != 0;
    cu.line = decode_line_index(reader_, header_.line_mode);
    const std::vector<BlockRegion> tus = luma_tu_regions(cu);
    if (!cu.nxn) {
      cu.modes[0] = decode_mode(reader_, mpm_list_at(state_, x, y));
      for (const BlockRegion& tu : tus) {
        cu.luma_tus.push_back(
            decode_levels(reader_, tu.n, header_.qp, tu.n == 4));
      }
      state_.set_block_info(x, y, size, cu.modes[0], size);
    } else {
      for (size_t p = 0; p < 4; ++p) {
        cu.modes[p] =
            decode_mode(reader_, mpm_list_at(state_, tus[p].x, tus[p].y));
        cu.luma_tus.push_back(decode_levels(reader_, 4, header_.qp, true));
        state_.set_block_info(tus[p].x, tus[p].y, 4, cu.modes[p], 4);
      }
    }
    const int cqp = chroma_qp_from_luma(header_.qp);
    cu.cb_tu = decode_levels(reader_, size / 2, cqp, false);
    cu.cr_tu = decode_levels(reader_, size / 2, cqp, false);
    return cu;
  }

  void record(const CuData& cu) {
    ++stats_->cus;
    if (cu.nxn) ++stats_->nxn_cus;
    ++stats_->cus_per_line[cu.line];
    stats_->luma_area_per_line[cu.line] +=
        static_cast<uint64_t>(cu.size) * cu.size;
    ++stats_->cus_per_mode[cu.modes[0]];
  }

  BitReader& reader_;
  const BitstreamHeader& header_;
  bool reconstruct_;
  StreamStats::FrameStats* stats_;
  CodingState state_;
};

}  // namespace

DecodeResult decode_stream(const std::vector<uint8_t>& data) {
  DecodeResult result;
  result.header = parse_header(data.data(), data.size());
  BitReader reader(data.data() + kHeaderBytes, data.size() - kHeaderBytes);
  for (int f = 0; f < result.header.frame_count; ++f) {
    FrameParser parser(reader, result.header, true, nullptr);
    result.frames.push_back(parser.parse_frame());
  }
  return result;
}

StreamStats extract_stream_stats(const std::vector<uint8_t>& data) {
  StreamStats stats;
  stats.header = parse_header(data.data(), data.size());
  BitReader reader(data.data() + kHeaderBytes, data.size() - kHeaderBytes);
  for (int f = 0; f < stats.header.frame_count; ++f) {
    StreamStats::FrameStats frame;
    FrameParser parser(reader, stats.header, false, &frame);
    parser.parse_frame();
    stats.totals.cus += frame.cus;
    stats.totals.nxn_cus += frame.nxn_cus;
    for (int i = 0; i < 4; ++i) {
      stats.totals.cus_per_line[i] += frame.cus_per_line[i];
      stats.totals.luma_area_per_line[i] += frame.luma_area_per_line[i];
    }
    for (int i = 0; i < kNumIntraModes; ++i) {
      stats.totals.cus_per_mode[i] += frame.cus_per_mode[i];
    }
    stats.frames.push_back(frame);
  }
  return stats;
}

}  // namespace mrli
