#pragma once

#include <vector>

#include "mrli/refline.h"

// Straight-line reimplementation of intra prediction used only for
// cross-checking. Written per-pixel with its own angle derivation; shares
// nothing with the library beyond the RefLine accessors.
namespace naive {

int displacement(int mode);

std::vector<int> predict(const mrli::RefLine& rl, int mode,
                         bool boundary_filters, bool is_luma);

}  // namespace naive
