// End-to-end acceptance gate. Runs the statistical studies at desk scale on
// the procedural corpus and prints one PASS/FAIL line per criterion.
// Usage: acceptance <golden-stream-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>

#include "mrli/analysis.h"
#include "mrli/corpus.h"
#include "mrli/decoder.h"
#include "mrli/encoder.h"
#include "oracle_intra.h"
#include "test_util.h"

using namespace mrli;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// One cached encode: a single-frame stream plus its measurements.
struct EncodeRun {
  uint64_t bits = 0;
  uint64_t sse = 0;
  uint64_t candidates = 0;
  double seconds = 0.0;
  bool closed = false;  // decode matched the encoder reconstruction
};

bool planes_equal(const Frame& a, const Frame& b) {
  for (int p = 0; p < 3; ++p) {
    if (a.plane(p).samples != b.plane(p).samples) return false;
  }
  return a.same_geometry(b);
}

EncodeRun run_one(const Frame& frame, int qp, uint8_t line_mode) {
  EncoderConfig cfg;
  cfg.qp = qp;
  cfg.line_mode = line_mode;
  cfg.fast = line_mode == kLineModeFast3;
  EncodeRun out;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<EncodeResult> per_frame;
  const std::vector<uint8_t> stream = encode_sequence({frame}, cfg, &per_frame);
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  out.bits = per_frame[0].stats.bits;
  out.sse = per_frame[0].stats.sse[0] + per_frame[0].stats.sse[1] +
            per_frame[0].stats.sse[2];
  out.candidates = per_frame[0].stats.rd_candidates;
  const DecodeResult dec = decode_stream(stream);
  out.closed = planes_equal(dec.frames[0], per_frame[0].recon);
  return out;
}

double psnr_of(uint64_t sse, int width, int height) {
  const double count = static_cast<double>(width) * height * 1.5;
  return 10.0 * std::log10(255.0 * 255.0 * count / static_cast<double>(sse));
}

// Average rate difference (percent) of `b` against `a` at matched
// distortion: piecewise-linear integration of log-rate over the common
// PSNR range of the two four-point curves.
double rate_saving_percent(const std::vector<std::pair<double, double>>& a,
                           const std::vector<std::pair<double, double>>& b) {
  auto integrate = [](std::vector<std::pair<double, double>> pts, double lo,
                      double hi) {
    std::sort(pts.begin(), pts.end());
    auto value_at = [&](double p) {
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (p >= pts[i].first && p <= pts[i + 1].first) {
          const double t =
              (p - pts[i].first) / (pts[i + 1].first - pts[i].first);
          return pts[i].second + t * (pts[i + 1].second - pts[i].second);
        }
      }
      return p < pts.front().first ? pts.front().second : pts.back().second;
    };
    const int steps = 64;
    double sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
      const double p = lo + (hi - lo) * i / steps;
      sum += value_at(p) * (i == 0 || i == steps ? 0.5 : 1.0);
    }
    return sum * (hi - lo) / steps;
  };
  auto bounds = [](const std::vector<std::pair<double, double>>& pts) {
    double lo = pts[0].first, hi = pts[0].first;
    for (const auto& [p, r] : pts) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    return std::pair{lo, hi};
  };
  const auto [alo, ahi] = bounds(a);
  const auto [blo, bhi] = bounds(b);
  const double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
  if (hi <= lo) return 0.0;
  const double avg = (integrate(b, lo, hi) - integrate(a, lo, hi)) / (hi - lo);
  return (std::pow(10.0, avg) - 1.0) * 100.0;
}

void criterion_1_oracle() {
  std::mt19937 rng(71);
  const int kCases = 1000;
  int bad = 0;
  for (int c = 0; c < kCases; ++c) {
    const int n = 4 << (rng() % 4);
    const RefLine rl = random_refline(rng, n, 0, rng() % 2 ? 8 : 10);
    for (int mode = 0; mode < kNumIntraModes; ++mode) {
      const PredBlock got = predict(rl, mode, true, true);
      const std::vector<int> want = naive::predict(rl, mode, true, true);
      for (size_t i = 0; i < want.size(); ++i) {
        if (got.samples[i] != want[i]) {
          ++bad;
          break;
        }
      }
    }
  }
  report(1, bad == 0,
         "nearest-line prediction matches the naive reimplementation on " +
             std::to_string(kCases) + " random blocks, all 35 modes (" +
             std::to_string(bad) + " mismatches)");
}

void criterion_10_spot_checks() {
  bool ok = true;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      std::printf("  spot check failed: %s\n", what);
      ok = false;
    }
  };

  auto weight_probe = [](int mode, int32_t top, int32_t left) {
    PredBlock p;
    p.n = 8;
    p.mode = mode;
    p.line = 1;
    p.samples.assign(64, 100);
    ResidueLine r;
    r.n = 8;
    r.top.assign(12, top);
    r.left.assign(12, left);
    compensate(p, r, mode, 8);
    return p;
  };
  expect(weight_probe(10, 64, 0).at(4, 0) == 142, "pure-horizontal weight 42/64");
  expect(weight_probe(7, 64, 0).at(4, 0) == 133, "family-edge weight 33/64");
  expect(weight_probe(13, 64, 0).at(4, 0) == 133, "family-edge weight 33/64");
  const PredBlock both = weight_probe(1, 64, 0);
  expect(both.at(4, 0) == 148 && both.at(4, 1) == 132 && both.at(4, 2) == 116,
         "two-sided weights 3/4, 1/2, 1/4");

  PredBlock a;
  a.n = 4;
  a.mode = 26;
  a.line = 2;
  a.samples.assign(16, 100);
  PredBlock b = a;
  b.line = 0;
  b.samples.assign(16, 60);
  expect(blend_with_nearest(a, b).samples[0] == 90, "3:1 blend of 100 and 60");

  auto code = [](int m, uint8_t mask) {
    BitWriter w;
    encode_line_index(m, mask, w);
    std::string s;
    for (uint64_t i = 0; i < w.bit_count(); ++i) {
      s += (w.bytes()[i / 8] >> (7 - i % 8)) & 1 ? '1' : '0';
    }
    return s;
  };
  expect(code(0, kLineModeFull4) == "0" && code(1, kLineModeFull4) == "10" &&
             code(2, kLineModeFull4) == "110" &&
             code(3, kLineModeFull4) == "111",
         "four-line index words");
  expect(code(0, kLineModeFast3) == "0" && code(1, kLineModeFast3) == "10" &&
             code(3, kLineModeFast3) == "11",
         "three-line index words");

  expect(!check_further_lines_for_size(64, 8, 8), "64x64 skips further lines");
  expect(!check_further_lines_for_size(32, 8, 8),
         "32x32 with small neighbors skips further lines");
  expect(check_further_lines_for_size(32, 8, 16),
         "32x32 with a large neighbor keeps searching");
  expect(!continue_after_second_line(115.0, 100.0),
         "cost 115 vs 100 stops the line loop");
  expect(continue_after_second_line(110.0, 100.0),
         "cost 110 vs 100 continues (boundary)");
  expect(!check_nxn_further_lines(130.0, 100.0),
         "cost 130 vs 100 skips small-partition lines");
  expect(check_nxn_further_lines(120.0, 100.0),
         "cost 120 vs 100 continues (boundary)");

  report(10, ok, "worked-value spot checks (weights, codes, search gates)");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <golden-stream-dir>\n");
    return 2;
  }
  const fs::path golden_dir = argv[1];

  criterion_1_oracle();

  // Shared encode cache over the coding corpus.
  const std::vector<NamedFrame> corpus = coding_corpus();
  const std::vector<int> qps = {22, 27, 32, 37};
  const std::vector<uint8_t> modes = {kLineModeSingle, kLineModeFull4,
                                      kLineModeFast3};
  // runs[mode][qp][frame]
  std::map<uint8_t, std::map<int, std::vector<EncodeRun>>> runs;
  int closure_fails = 0;
  for (uint8_t mode : modes) {
    for (int qp : qps) {
      for (const NamedFrame& nf : corpus) {
        EncodeRun r = run_one(nf.frame, qp, mode);
        if (!r.closed) ++closure_fails;
        runs[mode][qp].push_back(r);
      }
    }
  }
  {
    EncoderConfig cfg;
    cfg.lossless = true;
    cfg.line_mode = kLineModeFull4;
    const std::vector<Frame> two = {corpus[0].frame, corpus[4].frame};
    const std::vector<uint8_t> stream = encode_sequence(two, cfg, nullptr);
    const DecodeResult dec = decode_stream(stream);
    if (!planes_equal(dec.frames[0], two[0]) ||
        !planes_equal(dec.frames[1], two[1])) {
      ++closure_fails;
    }
    report(2, closure_fails == 0,
           "decoder matches the encoder reconstruction over " +
               std::to_string(corpus.size() * qps.size() * modes.size()) +
               " lossy encodes plus a lossless round trip (" +
               std::to_string(closure_fails) + " failures)");
  }

  // Line-usage census, original and compressed references.
  const std::vector<NamedFrame> census_frames = census_corpus();
  std::vector<Frame> census_inputs;
  for (const NamedFrame& nf : census_frames) census_inputs.push_back(nf.frame);
  CensusConfig census_cfg;
  census_cfg.block_size = 8;
  const CensusResult census_orig = line_usage_census(census_inputs, census_cfg);
  census_cfg.compressed_qp = 37;
  const CensusResult census_comp = line_usage_census(census_inputs, census_cfg);
  report(3, census_orig.superset_violations == 0 &&
                census_comp.superset_violations == 0,
         "per-block best line never beats searching all lines (" +
             std::to_string(census_orig.superset_violations +
                            census_comp.superset_violations) +
             " violations over " +
             std::to_string(census_orig.blocks + census_comp.blocks) +
             " blocks)");
  report(4, census_orig.further_share() >= 15.0,
         "further lines win " + fmt(census_orig.further_share()) +
             "% of blocks on original references (need >= 15%)");
  report(5, census_comp.further_share() > census_orig.further_share(),
         "compressed references raise the further-line share to " +
             fmt(census_comp.further_share()) + "% from " +
             fmt(census_orig.further_share()) + "%");

  // Reconstruction-error variance on the smooth corpus.
  std::vector<Frame> smooth_inputs;
  for (const NamedFrame& nf : smooth_corpus()) smooth_inputs.push_back(nf.frame);
  const VarianceMap vmap = quant_error_variance_map(smooth_inputs, 37, 8);
  report(6, vmap.border_mean() > vmap.interior_mean(),
         "error variance is higher on block borders (" +
             fmt(vmap.border_mean()) + ") than in the interior (" +
             fmt(vmap.interior_mean()) + ")");

  // Boundary compensation lowers the first-line prediction error.
  bool bmse_ok = true;
  std::string bmse_detail;
  for (int bs : {8, 16}) {
    const BoundaryMseReport r = boundary_mse_report(census_inputs, 37, bs);
    bmse_ok = bmse_ok && r.rows[0].mse_on < r.rows[0].mse_off;
    bmse_detail += std::to_string(bs) + "x" + std::to_string(bs) + ": " +
                   fmt(r.rows[0].mse_off) + " -> " + fmt(r.rows[0].mse_on) +
                   "  ";
  }
  report(7, bmse_ok,
         "compensation lowers the first-line prediction MSE (" + bmse_detail +
             ")");

  // Multi-line RD behavior against the single-line baseline.
  {
    bool ok = true;
    std::string detail;
    for (int qp : qps) {
      int non_dominated = 0;
      for (size_t f = 0; f < corpus.size(); ++f) {
        const EncodeRun& s = runs[kLineModeSingle][qp][f];
        const EncodeRun& m = runs[kLineModeFull4][qp][f];
        if (!(s.bits < m.bits && s.sse < m.sse)) ++non_dominated;
      }
      const double share =
          100.0 * non_dominated / static_cast<double>(corpus.size());
      if (share < 80.0) ok = false;
      detail += "qp" + std::to_string(qp) + ": " + fmt(share) + "%  ";
    }
    double avg_saving = 0.0;
    for (size_t f = 0; f < corpus.size(); ++f) {
      std::vector<std::pair<double, double>> single_pts, full_pts;
      for (int qp : qps) {
        const EncodeRun& s = runs[kLineModeSingle][qp][f];
        const EncodeRun& m = runs[kLineModeFull4][qp][f];
        single_pts.emplace_back(psnr_of(s.sse, 128, 128),
                                std::log10(static_cast<double>(s.bits)));
        full_pts.emplace_back(psnr_of(m.sse, 128, 128),
                              std::log10(static_cast<double>(m.bits)));
      }
      avg_saving += rate_saving_percent(single_pts, full_pts);
    }
    avg_saving /= static_cast<double>(corpus.size());
    if (avg_saving >= 0.0) ok = false;
    report(8, ok,
           "all lines vs nearest-only: non-dominated frames " + detail +
               "and average rate change at matched quality " +
               fmt(avg_saving) + "% (need < 0)");
  }

  // Pruned search stays close to the full search and spends less.
  {
    bool ok = true;
    std::string detail;
    for (int qp : qps) {
      double cost_full = 0.0, cost_fast = 0.0, t_full = 0.0, t_fast = 0.0;
      bool fewer = true;
      const double lambda = rd_lambda(qp);
      for (size_t f = 0; f < corpus.size(); ++f) {
        const EncodeRun& a = runs[kLineModeFull4][qp][f];
        const EncodeRun& b = runs[kLineModeFast3][qp][f];
        cost_full += static_cast<double>(a.sse) +
                     lambda * static_cast<double>(a.bits);
        cost_fast += static_cast<double>(b.sse) +
                     lambda * static_cast<double>(b.bits);
        t_full += a.seconds;
        t_fast += b.seconds;
        if (b.candidates >= a.candidates) fewer = false;
      }
      const double gap = 100.0 * (cost_fast - cost_full) / cost_full;
      if (gap > 1.5 || !fewer || t_fast >= t_full) ok = false;
      detail += "qp" + std::to_string(qp) + ": +" + fmt(gap) + "% " +
                fmt(t_fast) + "s/" + fmt(t_full) + "s  ";
    }
    report(9, ok,
           "pruned line search within 1.5% RD cost with fewer candidates "
           "and less time (" +
               detail + ")");
  }

  criterion_10_spot_checks();

  // Golden streams: byte-stable across runs and against committed files.
  {
    bool ok = true;
    int generated = 0, compared = 0;
    std::string note;
    for (const NamedFrame& nf : golden_corpus()) {
      for (int qp : {27, 37}) {
        for (uint8_t mode : modes) {
          EncoderConfig cfg;
          cfg.qp = qp;
          cfg.line_mode = mode;
          cfg.fast = mode == kLineModeFast3;
          const std::vector<uint8_t> once =
              encode_sequence({nf.frame}, cfg, nullptr);
          const std::vector<uint8_t> twice =
              encode_sequence({nf.frame}, cfg, nullptr);
          if (once != twice) {
            ok = false;
            note += nf.name + " unstable; ";
            continue;
          }
          const fs::path path =
              golden_dir / (nf.name + "_qp" + std::to_string(qp) + "_" +
                            line_mode_name(mode) + ".mrli");
          if (!fs::exists(path)) {
            write_file(path.string(), once);
            ++generated;
          } else if (read_file(path.string()) != once) {
            ok = false;
            note += path.filename().string() + " differs; ";
          } else {
            ++compared;
          }
        }
      }
    }
    report(11, ok,
           "golden streams stable and matching (" + std::to_string(compared) +
               " compared, " + std::to_string(generated) + " generated" +
               (note.empty() ? "" : "; " + note) + ")");
  }

  return failures == 0 ? 0 : 1;
}
