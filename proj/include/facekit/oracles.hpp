// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

// Reference implementations used to cross-check the fast paths. Each oracle
// recomputes its answer by the most literal method available (full 2-D
// convolution, cell counting, prefix rescans, wide arithmetic) and shares no
// code with the implementation it checks. They back both the test suites and
// the `selfcheck` CLI subcommand.

#ifndef FACEKIT_ORACLES_HPP
#define FACEKIT_ORACLES_HPP

#include <span>
#include <string>
#include <vector>

#include "facekit/bbox.hpp"
#include "facekit/raster.hpp"

namespace facekit::oracles {

/// Direct (non-separable) O(h*w*k^2) Gaussian convolution with the same
/// sampled, truncated, renormalized kernel and replicate borders.
ImageBuffer direct_gaussian_blur(const ImageBuffer& buffer, double sigma);
MaskBuffer direct_gaussian_blur(const MaskBuffer& buffer, double sigma);

/// Union area by counting cells of a uniform grid whose centers lie inside
/// any box. Exact for boxes whose coordinates sit on the cell lattice.
double grid_union_area(std::span<const BBox> boxes, double width, double height,
                       double cell = 0.25);

/// One scored item in a retrieval ranking.
struct ScoredItem {
  std::string id;
  double score = 0.0;
  bool positive = false;
};

/// Average precision by brute force: sort by (score desc, id asc), then at
/// every positive recount the whole prefix for its precision.
double brute_force_average_precision(std::vector<ScoredItem> items);

struct PearsonReference {
  long double r = 0;
  long double p = 0;
  long double log_p = 0;  // natural log
};

/// Pearson r from wide-precision raw moment sums; two-sided p through the
/// power series of the regularized incomplete beta (not the continued
/// fraction the implementation uses).
PearsonReference pearson_reference(std::span<const double> x, std::span<const double> y);

struct SelfcheckReport {
  std::vector<std::string> lines;
  int failures = 0;
};

/// Built-in oracle sweep: separable vs direct convolution, geometric vs
/// grid-counted union area, average precision vs brute force.
SelfcheckReport run_selfcheck();

}  // namespace facekit::oracles

#endif  // FACEKIT_ORACLES_HPP
