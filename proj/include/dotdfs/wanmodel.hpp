/*
 * Copyright (C) 2026 The DotDFS Project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef DOTDFS_WANMODEL_HPP
#define DOTDFS_WANMODEL_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

// Analytical WAN throughput model: steady-state single-stream TCP bandwidth,
// the aggregate multi-stream bound, and an empirical z = f(n, W) surface
// fitted from measured samples with an optimum-(n, W) finder. All bandwidths
// are bytes/s internally.

namespace dotdfs::wanmodel {

// Acknowledgment constants: every-other-segment acked vs every segment.
inline constexpr double kAckEveryOther = 0.87;
inline constexpr double kAckEverySegment = 1.22;

struct ThroughputParams {
    double mss = 1460;  // maximum segment size, bytes
    double rtt = 0.1;   // round-trip time, seconds
    double c = kAckEveryOther;
    double p = 1e-4;    // packet loss ratio, 0 < p <= 1

    double rate_factor() const { return mss / rtt; }       // k
    double window_factor() const { return c / std::sqrt(p); } // W
};

// BW = (MSS/RTT) * (C/sqrt(p))
double single_stream_bw(const ThroughputParams& params);

// BW_agg <= C * sum_i (MSS_i/RTT_i) * (1/sqrt(p_i)); C shared across streams.
double aggregate_bw_bound(std::span<const ThroughputParams> streams);

// Identical-stream reduction: k * n * W, exactly n * single_stream_bw.
double aggregate_bw_identical(const ThroughputParams& params, uint64_t n);

double to_mbit_per_s(double bytes_per_s);
std::string format_mbit(double bytes_per_s); // 3 significant digits

struct ThroughputSample {
    double n = 0;      // stream count
    double window = 0; // TCP window, bytes
    double bw = 0;     // measured bytes/s
};

struct Recommendation {
    double n = 0;
    double window = 0;
    double bw = 0;
};

// Bilinear surface over the rectangular grid spanned by the samples' unique
// axis values. Passes exactly through every grid node.
class Surface {
public:
    static Surface fit(std::span<const ThroughputSample> samples);

    double eval(double n, double window) const; // clamped to the sampled hull

    // Dense scan over the hull (resolution x resolution lattice, grid nodes
    // included); ties broken toward smaller n then smaller window.
    Recommendation recommend(size_t resolution = 200) const;

    const std::vector<double>& n_axis() const { return n_axis_; }
    const std::vector<double>& window_axis() const { return window_axis_; }
    double node(size_t i, size_t j) const { return z_[i * window_axis_.size() + j]; }

private:
    std::vector<double> n_axis_;      // sorted unique
    std::vector<double> window_axis_; // sorted unique
    std::vector<double> z_;           // row-major [n][window]
};

// CSV with header `n,window_bytes,bw_bytes_per_s`.
std::vector<ThroughputSample> parse_samples_csv(std::istream& in);
void export_grid_csv(const Surface& surface, std::ostream& out);

} // namespace dotdfs::wanmodel

#endif
