#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrli {

using Sample = uint16_t;

inline int clamp_sample(int v, int bit_depth) {
  const int max_val = (1 << bit_depth) - 1;
  return std::clamp(v, 0, max_val);
}

inline int mid_gray(int bit_depth) { return 1 << (bit_depth - 1); }

inline int log2_size(int n) {
  assert(n > 0 && (n & (n - 1)) == 0);
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

// Thrown on malformed input files, bad configs, truncated bitstreams.
class CodecError : public std::runtime_error {
 public:
  explicit CodecError(const std::string& msg) : std::runtime_error(msg) {}
};

// Worker count for candidate evaluation, capped by MRLI_THREADS (default 1).
int worker_thread_count();

// Deterministic parallel map: fn(i) for i in [0, count). Results must be
// written to per-index slots by the caller; reduction order is the caller's.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace mrli
