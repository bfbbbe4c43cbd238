// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "facekit/eval.hpp"
#include "facekit/rng.hpp"
#include "facekit/stats.hpp"

namespace facekit::oracles {

namespace {

// The oracle derives its own weights instead of calling the library's
// kernel builder.
std::vector<double> reference_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const int radius = int(std::ceil(3.0 * sigma));
  std::vector<double> k(std::size_t(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-double(i) * double(i) / (2.0 * sigma * sigma));
    k[std::size_t(i + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

int clamp_index(int v, int n) { return std::clamp(v, 0, n - 1); }

}  // namespace

ImageBuffer direct_gaussian_blur(const ImageBuffer& buffer, double sigma) {
  const std::vector<double> k = reference_kernel(sigma);
  const int radius = int(k.size() / 2);
  ImageBuffer out(buffer.h, buffer.w);
  for (int i = 0; i < buffer.h; ++i) {
    for (int j = 0; j < buffer.w; ++j) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int dy = -radius; dy <= radius; ++dy) {
          for (int dx = -radius; dx <= radius; ++dx) {
            const double w = k[std::size_t(dy + radius)] * k[std::size_t(dx + radius)];
            acc += w * buffer.at(clamp_index(i + dy, buffer.h), clamp_index(j + dx, buffer.w), c);
          }
        }
        out.at(i, j, c) = std::clamp(acc, 0.0, 1.0);
      }
    }
  }
  return out;
}

MaskBuffer direct_gaussian_blur(const MaskBuffer& buffer, double sigma) {
  const std::vector<double> k = reference_kernel(sigma);
  const int radius = int(k.size() / 2);
  MaskBuffer out(buffer.h, buffer.w);
  for (int i = 0; i < buffer.h; ++i) {
    for (int j = 0; j < buffer.w; ++j) {
      double acc = 0.0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          const double w = k[std::size_t(dy + radius)] * k[std::size_t(dx + radius)];
          acc += w * buffer.at(clamp_index(i + dy, buffer.h), clamp_index(j + dx, buffer.w));
        }
      }
      out.at(i, j) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return out;
}

double grid_union_area(std::span<const BBox> boxes, double width, double height, double cell) {
  if (!(cell > 0.0)) throw std::invalid_argument("cell size must be positive");
  const long nx = long(std::ceil(width / cell));
  const long ny = long(std::ceil(height / cell));
  long covered = 0;
  for (long cy = 0; cy < ny; ++cy) {
    const double y = (double(cy) + 0.5) * cell;
    for (long cx = 0; cx < nx; ++cx) {
      const double x = (double(cx) + 0.5) * cell;
      for (const BBox& b : boxes) {
        if (b.contains(x, y)) {
          ++covered;
          break;
        }
      }
    }
  }
  return double(covered) * cell * cell;
}

double brute_force_average_precision(std::vector<ScoredItem> items) {
  std::sort(items.begin(), items.end(), [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  double sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!items[k].positive) continue;
    ++positives;
    // Re-scan the whole prefix for its precision rather than keeping a
    // running count.
    std::size_t hits = 0;
    for (std::size_t j = 0; j <= k; ++j)
      if (items[j].positive) ++hits;
    sum += double(hits) / double(k + 1);
  }
  if (positives == 0) throw std::invalid_argument("no positive items");
  return sum / double(positives);
}

namespace {

long double lbeta_wide(long double a, long double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Gauss series for the regularized incomplete beta: I_x(a,b) =
/// x^a (1-x)^b / (a B(a,b)) * sum_n t_n with t_0 = 1 and
/// t_{n+1} = t_n * x * (a+b+n)/(a+1+n).
long double ibeta_series_sum(long double a, long double b, long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (long n = 0; n < 100000000L; ++n) {
    term *= x * (a + b + (long double)(n)) / (a + 1.0L + (long double)(n));
    sum += term;
    if (term < sum * 1e-21L) return sum;
  }
  throw std::runtime_error("beta series did not converge");
}

long double log_ibeta_wide(long double a, long double b, long double x) {
  if (x <= 0.0L) return -std::numeric_limits<long double>::infinity();
  if (x >= 1.0L) return 0.0L;
  if (x < (a + 1.0L) / (a + b + 2.0L)) {
    return a * std::log(x) + b * std::log1p(-x) - std::log(a) - lbeta_wide(a, b) +
           std::log(ibeta_series_sum(a, b, x));
  }
  const long double other = a * std::log(x) + b * std::log1p(-x) - std::log(b) -
                            lbeta_wide(a, b) + std::log(ibeta_series_sum(b, a, 1.0L - x));
  return std::log1p(-std::min(std::exp(other), 1.0L));
}

}  // namespace

PearsonReference pearson_reference(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("need n >= 3 pairs");
  const std::size_t n = x.size();
  long double mx = 0.0L;
  long double my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= (long double)(n);
  my /= (long double)(n);
  long double sxx = 0.0L;
  long double syy = 0.0L;
  long double sxy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0L || syy == 0.0L) throw std::invalid_argument("zero variance input");

  PearsonReference ref;
  ref.r = sxy / std::sqrt(sxx * syy);
  const long double xb = std::clamp((1.0L - ref.r) * (1.0L + ref.r), 0.0L, 1.0L);
  const long double nu = (long double)(n - 2);
  ref.log_p = log_ibeta_wide(nu / 2.0L, 0.5L, xb);
  ref.p = std::exp(ref.log_p);
  return ref;
}

namespace {

void record(SelfcheckReport& report, const std::string& name, bool ok) {
  report.lines.push_back((ok ? "ok:   " : "FAIL: ") + name);
  if (!ok) ++report.failures;
}

}  // namespace

SelfcheckReport run_selfcheck() {
  SelfcheckReport report;
  SplitMix64 rng(0x5e1fc4ecULL);

  {
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
      const int h = rng.uniform_int(8, 24);
      const int w = rng.uniform_int(8, 24);
      const double sigma = rng.uniform(0.6, 3.0);
      ImageBuffer img(h, w);
      for (double& v : img.data) v = rng.uniform();
      const ImageBuffer fast = gaussian_blur(img, sigma);
      const ImageBuffer slow = direct_gaussian_blur(img, sigma);
      for (std::size_t i = 0; i < fast.data.size(); ++i)
        worst = std::max(worst, std::fabs(fast.data[i] - slow.data[i]));
    }
    record(report, "separable blur vs direct convolution (max |diff| " + std::to_string(worst) + ")",
           worst < 1e-9);
  }

  {
    bool all_equal = true;
    for (int trial = 0; trial < 40 && all_equal; ++trial) {
      std::vector<BBox> boxes;
      const int count = rng.uniform_int(0, 8);
      for (int b = 0; b < count; ++b) {
        const int ix = rng.uniform_int(0, 119);
        const int iy = rng.uniform_int(0, 119);
        const int iw = rng.uniform_int(1, 120 - ix);
        const int ih = rng.uniform_int(1, 120 - iy);
        boxes.push_back({ix * 0.25, iy * 0.25, (ix + iw) * 0.25, (iy + ih) * 0.25});
      }
      all_equal = rect_union_area(boxes) == grid_union_area(boxes, 30.0, 30.0);
    }
    record(report, "geometric union area vs grid counting (0.25 lattice)", all_equal);
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int count = rng.uniform_int(2, 12);
      std::vector<ScoredItem> items;
      std::vector<ScoredPositive> mirror;
      bool any_positive = false;
      for (int i = 0; i < count; ++i) {
        ScoredItem item;
        item.id = "img" + std::to_string(i);
        item.score = double(rng.uniform_int(0, 4));  // coarse scores force ties
        item.positive = rng.chance(0.4);
        any_positive = any_positive || item.positive;
        items.push_back(item);
        mirror.push_back({item.id, item.score, item.positive});
      }
      if (!any_positive) {
        items.back().positive = true;
        mirror.back().positive = true;
      }
      worst = std::max(worst, std::fabs(average_precision_from_scores(mirror) -
                                        brute_force_average_precision(items)));
    }
    record(report, "average precision vs brute force (max |diff| " + std::to_string(worst) + ")",
           worst < 1e-12);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const int n = rng.uniform_int(5, 60);
      std::vector<double> xs;
      std::vector<double> ys;
      for (int i = 0; i < n; ++i) {
        xs.push_back(rng.uniform(-3.0, 3.0));
        ys.push_back(0.7 * xs.back() + rng.uniform(-1.0, 1.0));
      }
      const CorrelationResult got = pearson(xs, ys);
      const PearsonReference want = pearson_reference(xs, ys);
      ok = std::fabs(got.r - double(want.r)) < 1e-10 &&
           std::fabs(got.log_p - double(want.log_p)) < std::log(1.05);
    }
    record(report, "pearson r and p vs wide-precision series", ok);
  }

  return report;
}

}  // namespace facekit::oracles
