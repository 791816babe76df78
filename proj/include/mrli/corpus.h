#pragma once

#include "mrli/frame.h"

namespace mrli {

// Procedural 8-bit 4:2:0 test content. Everything is generated with integer
// arithmetic only so the frames (and any stream built from them) are
// byte-identical across platforms.

Frame make_grating(int w, int h, int dx, int dy, int period, int amplitude);
Frame make_noisy_grating(int w, int h, int dx, int dy, int period,
                         int amplitude, int noise_range, uint64_t seed);
Frame make_ramp(int w, int h, int gx, int gy);
Frame make_dome(int w, int h);
// Multi-octave value noise, a stand-in for natural texture.
Frame make_natural(int w, int h, uint64_t seed);

struct NamedFrame {
  std::string name;
  Frame frame;
};

// Textured frames for the reference-line usage studies.
std::vector<NamedFrame> census_corpus();
// Smooth gradients for the quantization-error variance study.
std::vector<NamedFrame> smooth_corpus();
// Mixed non-trivial frames for the coding experiments.
std::vector<NamedFrame> coding_corpus();
// Three fixed inputs for the golden-stream checks.
std::vector<NamedFrame> golden_corpus();

}  // namespace mrli
