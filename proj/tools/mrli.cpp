#include <cstdio>
#include <fstream>

#include <CLI11.hpp>

#include "mrli/analysis.h"
#include "mrli/corpus.h"
#include "mrli/decoder.h"
#include "mrli/encoder.h"

namespace {

using namespace mrli;

struct InputArgs {
  std::string input;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int frames = 1;
  bool seed_corpus = false;
};

void add_input_flags(CLI::App* cmd, InputArgs& args, bool allow_corpus) {
  cmd->add_option("--input", args.input, "raw planar YUV 4:2:0 input");
  cmd->add_option("--width", args.width, "luma width");
  cmd->add_option("--height", args.height, "luma height");
  cmd->add_option("--bit-depth", args.bit_depth, "8 or 10")
      ->check(CLI::IsMember({8, 10}));
  cmd->add_option("--frames", args.frames, "number of frames to read")
      ->check(CLI::PositiveNumber);
  if (allow_corpus) {
    cmd->add_flag("--seed-corpus", args.seed_corpus,
                  "use the built-in procedural corpus instead of --input");
  }
}

std::vector<Frame> load_input(const InputArgs& args,
                              const std::vector<NamedFrame>& corpus) {
  if (args.seed_corpus) {
    std::vector<Frame> frames;
    for (const NamedFrame& f : corpus) frames.push_back(f.frame);
    return frames;
  }
  if (args.input.empty()) {
    throw CodecError("--input (or --seed-corpus) is required");
  }
  if (args.width <= 0 || args.height <= 0) {
    throw CodecError("--width and --height are required with --input");
  }
  std::vector<Frame> frames;
  for (int i = 0; i < args.frames; ++i) {
    frames.push_back(
        load_yuv(args.input, args.width, args.height, args.bit_depth, i));
  }
  return frames;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CodecError("cannot write " + path);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Block-based intra codec with multi-line reference prediction"};
  app.require_subcommand(1);

  InputArgs in;
  std::string output, stats_csv, line_mode = "single", ref_source = "original";
  int qp = 32, block_size = 8;
  bool lossless = false, wide_range = false;

  auto* enc = app.add_subcommand("encode", "encode raw YUV to a stream");
  add_input_flags(enc, in, false);
  enc->add_option("--output", output, "output stream path")->required();
  enc->add_option("--qp", qp, "quantization parameter 0..51");
  enc->add_flag("--lossless", lossless, "bypass transform and quantization");
  enc->add_option("--line-mode", line_mode, "single, full4 or fast3");
  enc->add_option("--stats-csv", stats_csv, "per-CU decision log");
  enc->add_flag("--wide-horizontal-range", wide_range,
                "extend horizontal compensation to mode 30");

  auto* dec = app.add_subcommand("decode", "decode a stream to raw YUV");
  dec->add_option("--input", in.input, "input stream path")->required();
  dec->add_option("--output", output, "output YUV path")->required();

  auto* census = app.add_subcommand("census", "best reference line per block");
  add_input_flags(census, in, true);
  census->add_option("--block-size", block_size, "8 or 16");
  census->add_option("--qp", qp, "QP for the compressed reference source");
  census->add_option("--reference-source", ref_source,
                     "original or compressed")
      ->check(CLI::IsMember({"original", "compressed"}));
  census->add_option("--output", output, "CSV output path");

  auto* variance =
      app.add_subcommand("variance", "per-position quantization error variance");
  add_input_flags(variance, in, true);
  variance->add_option("--block-size", block_size, "8 or 16");
  variance->add_option("--qp", qp, "quantization parameter 0..51");
  variance->add_flag("--lossless", lossless, "lossless control run");
  variance->add_option("--output", output, "CSV output path");

  auto* bmse = app.add_subcommand(
      "boundary-mse", "prediction error per block line, compensation on/off");
  add_input_flags(bmse, in, true);
  bmse->add_option("--block-size", block_size, "8 or 16");
  bmse->add_option("--qp", qp, "quantization parameter 0..51");
  bmse->add_option("--output", output, "CSV output path");

  auto* sweep =
      app.add_subcommand("subset-sweep", "encode once per line subset");
  add_input_flags(sweep, in, true);
  sweep->add_option("--qp", qp, "quantization parameter 0..51");
  sweep->add_option("--output", output, "CSV output path");

  auto* sstats =
      app.add_subcommand("stream-stats", "syntax statistics of a stream");
  sstats->add_option("--input", in.input, "input stream path")->required();
  sstats->add_option("--output", output, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  if (enc->parsed()) {
    in.seed_corpus = false;
    const std::vector<Frame> frames = load_input(in, {});
    EncoderConfig cfg;
    cfg.qp = qp;
    cfg.lossless = lossless;
    cfg.line_mode = line_mode_from_name(line_mode);
    cfg.fast = cfg.line_mode == kLineModeFast3;
    cfg.wide_horizontal_range = wide_range;
    std::vector<EncodeResult> per_frame;
    const std::vector<uint8_t> stream =
        encode_sequence(frames, cfg, &per_frame);
    write_file(output, stream);
    uint64_t bits = 0;
    std::vector<CuLog> logs;
    for (const EncodeResult& r : per_frame) {
      bits += r.stats.bits;
      logs.insert(logs.end(), r.stats.cus.begin(), r.stats.cus.end());
    }
    if (!stats_csv.empty()) write_stats_csv(stats_csv, logs);
    std::printf("frames=%zu bytes=%zu payload_bits=%llu\n", frames.size(),
                stream.size(), static_cast<unsigned long long>(bits));
    return 0;
  }

  if (dec->parsed()) {
    const DecodeResult result = decode_stream(read_file(in.input));
    for (size_t i = 0; i < result.frames.size(); ++i) {
      write_yuv(result.frames[i], output, i > 0);
    }
    std::printf("frames=%zu width=%d height=%d\n", result.frames.size(),
                result.header.width, result.header.height);
    return 0;
  }

  if (census->parsed()) {
    const std::vector<Frame> frames = load_input(in, census_corpus());
    CensusConfig cfg;
    cfg.block_size = block_size;
    cfg.compressed_qp = ref_source == "compressed" ? qp : -1;
    const CensusResult r = line_usage_census(frames, cfg);
    std::string csv = "line,blocks,share\n";
    char buf[64];
    for (int m = 0; m < 4; ++m) {
      std::snprintf(buf, sizeof(buf), "L%d,%llu,%.4f\n", m,
                    static_cast<unsigned long long>(r.per_line[m]),
                    r.share(m));
      csv += buf;
    }
    if (output.empty()) {
      std::fputs(csv.c_str(), stdout);
    } else {
      open_csv(output) << csv;
    }
    std::printf("blocks=%llu further_share=%.4f\n",
                static_cast<unsigned long long>(r.blocks), r.further_share());
    return 0;
  }

  if (variance->parsed()) {
    const std::vector<Frame> frames = load_input(in, smooth_corpus());
    const VarianceMap map =
        quant_error_variance_map(frames, qp, block_size, lossless);
    std::string csv = "y,x,variance\n";
    char buf[64];
    for (int y = 0; y < map.block_size; ++y) {
      for (int x = 0; x < map.block_size; ++x) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.6f\n", y, x,
                      map.variance[static_cast<size_t>(y) * map.block_size + x]);
        csv += buf;
      }
    }
    if (output.empty()) {
      std::fputs(csv.c_str(), stdout);
    } else {
      open_csv(output) << csv;
    }
    std::printf("border_mean=%.6f interior_mean=%.6f\n", map.border_mean(),
                map.interior_mean());
    return 0;
  }

  if (bmse->parsed()) {
    const std::vector<Frame> frames = load_input(in, census_corpus());
    const BoundaryMseReport r = boundary_mse_report(frames, qp, block_size);
    std::string csv = "block_line,mse_off,mse_on\n";
    char buf[64];
    for (const BoundaryMseRow& row : r.rows) {
      std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", row.block_line,
                    row.mse_off, row.mse_on);
      csv += buf;
    }
    if (output.empty()) {
      std::fputs(csv.c_str(), stdout);
    } else {
      open_csv(output) << csv;
    }
    return 0;
  }

  if (sweep->parsed()) {
    const std::vector<Frame> frames = load_input(in, coding_corpus());
    const std::vector<SubsetResult> results =
        subset_sweep(frames, qp, default_sweep_masks());
    std::string csv = "subset,bits,sse_y,sse_cb,sse_cr,rd_cost\n";
    char buf[160];
    for (const SubsetResult& r : results) {
      std::snprintf(buf, sizeof(buf), "%s,%llu,%llu,%llu,%llu,%.3f\n",
                    line_mode_name(r.mask).c_str(),
                    static_cast<unsigned long long>(r.bits),
                    static_cast<unsigned long long>(r.sse[0]),
                    static_cast<unsigned long long>(r.sse[1]),
                    static_cast<unsigned long long>(r.sse[2]), r.rd_cost);
      csv += buf;
    }
    if (output.empty()) {
      std::fputs(csv.c_str(), stdout);
    } else {
      open_csv(output) << csv;
    }
    return 0;
  }

  if (sstats->parsed()) {
    const StreamStats stats = extract_stream_stats(read_file(in.input));
    std::string csv = "frame,line,cus,luma_area,share\n";
    char buf[96];
    auto emit = [&](int frame_id, const StreamStats::FrameStats& f) {
      for (int m = 0; m < 4; ++m) {
        const double share =
            f.cus ? 100.0 * static_cast<double>(f.cus_per_line[m]) /
                        static_cast<double>(f.cus)
                  : 0.0;
        std::snprintf(buf, sizeof(buf), "%d,L%d,%llu,%llu,%.4f\n", frame_id, m,
                      static_cast<unsigned long long>(f.cus_per_line[m]),
                      static_cast<unsigned long long>(f.luma_area_per_line[m]),
                      share);
        csv += buf;
      }
    };
    for (size_t i = 0; i < stats.frames.size(); ++i) {
      emit(static_cast<int>(i), stats.frames[i]);
    }
    emit(-1, stats.totals);
    if (output.empty()) {
      std::fputs(csv.c_str(), stdout);
    } else {
      open_csv(output) << csv;
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
