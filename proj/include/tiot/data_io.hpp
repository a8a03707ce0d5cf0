#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tiot/time_series.hpp"

namespace tiot {

struct LabeledDataset {
    std::string name;
    std::vector<TimeSeries> series; // all same length for UCR problems
};

// UCR archive TSV: one series per row, integer label first, then the
// values, tab-separated. Timestamps are synthesized as 1..L before any
// normalization. With normalize set (the default) values and timestamps
// are z-scored per series at load. Ragged rows and non-numeric fields
// raise ParseError naming the offending line.
LabeledDataset read_ucr_tsv(const std::string& path, bool normalize = true);

// Inverse of read_ucr_tsv for the unnormalized view; full precision so a
// load/save/load round trip reproduces values to the last bit.
void write_ucr_tsv(const LabeledDataset& ds, const std::string& path);

// Synthetic bump pair: both series live on t = 1..n with two Gaussian
// bumps each (x at 50 and 140, y at 75 and 165, heights 0.2 and 1) plus
// N(0, 0.01^2) noise. Same seed, same bytes: x noise is drawn first.
std::pair<TimeSeries, TimeSeries> gen_gaussian_pair(std::uint64_t seed, int n = 200,
                                                    bool with_noise = true);

// Daily climate CSV with a header naming a `meantemp` column (other
// columns are ignored). Returns a univariate series on t = 1..N, raw.
TimeSeries read_climate_csv(const std::string& path);

// 1-based window [ell, ell + window_len - 1] with timestamps reindexed
// to 1..window_len; raw values (normalization is the caller's business).
TimeSeries lag_window(const TimeSeries& ts, int ell, int window_len = 365);

} // namespace tiot
