#include "vidrank/prefilter.hpp"

#include <cmath>

#include "vidrank/error.hpp"
#include "vidrank/features.hpp"
#include "vidrank/parallel.hpp"

namespace vidrank {

namespace {

template <typename Range>
double population_variance(const Range& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(std::size(values));
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return var / static_cast<double>(std::size(values));
}

}  // namespace

double adaptive_threshold(std::span<const double> values, const AdaptiveThresholdParams& params) {
  if (values.empty()) throw Error(Errc::empty_input, "adaptive threshold over no values");
  if (!(params.beta >= 0.0)) throw Error(Errc::invalid_argument, "beta must be non-negative");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  return mean + params.beta * std::sqrt(population_variance(values));
}

double histogram_bin_variance(const Frame& frame, VarianceBasis basis) {
  if (basis == VarianceBasis::raw_counts) {
    auto counts = color_histogram_counts(frame);
    std::array<double, kColorBins> values{};
    for (std::size_t i = 0; i < kColorBins; ++i) values[i] = static_cast<double>(counts[i]);
    return population_variance(values);
  }
  return population_variance(color_histogram(frame));
}

PrefilterResult remove_monochromatic(const FrameSequence& seq,
                                     const AdaptiveThresholdParams& params, VarianceBasis basis,
                                     unsigned threads) {
  if (seq.frames.empty()) throw Error(Errc::empty_input, "no frames to filter");

  PrefilterResult result;
  NoiseReport& report = result.report;
  report.beta = params.beta;
  report.variances.resize(seq.frames.size());
  parallel_for(seq.frames.size(), threads, [&](std::size_t i) {
    report.variances[i] = histogram_bin_variance(seq.frames[i], basis);
  });
  report.threshold = adaptive_threshold(report.variances, params);

  result.kept.sample_rate = seq.sample_rate;
  result.kept.source_id = seq.source_id;
  result.kept.warnings = seq.warnings;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    if (report.variances[i] > report.threshold) {
      report.discarded.push_back(seq.frames[i].index);
    } else {
      result.kept.frames.push_back(seq.frames[i]);
    }
  }
  return result;
}

}  // namespace vidrank
