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
#include "dotdfs/wanmodel.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dotdfs/errors.hpp"

namespace dotdfs::wanmodel {

namespace {

void check_params(const ThroughputParams& params) {
    if (!(params.p > 0) || params.p > 1) fail(Errc::DomainError, "loss ratio p must be in (0, 1]");
    if (!(params.mss > 0)) fail(Errc::DomainError, "mss must be positive");
    if (!(params.rtt > 0)) fail(Errc::DomainError, "rtt must be positive");
    if (!(params.c > 0)) fail(Errc::DomainError, "ack constant must be positive");
}

} // namespace

double single_stream_bw(const ThroughputParams& params) {
    check_params(params);
    return (params.mss / params.rtt) * (params.c / std::sqrt(params.p));
}

double aggregate_bw_bound(std::span<const ThroughputParams> streams) {
    if (streams.empty()) fail(Errc::DomainError, "no streams");
    double c = streams.front().c;
    double sum = 0;
    for (const auto& s : streams) {
        check_params(s);
        sum += (s.mss / s.rtt) * (1.0 / std::sqrt(s.p));
    }
    return c * sum;
}

double aggregate_bw_identical(const ThroughputParams& params, uint64_t n) {
    return static_cast<double>(n) * single_stream_bw(params);
}

double to_mbit_per_s(double bytes_per_s) { return bytes_per_s * 8.0 / 1e6; }

std::string format_mbit(double bytes_per_s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", to_mbit_per_s(bytes_per_s));
    return std::string(buf) + " Mbit/s";
}

Surface Surface::fit(std::span<const ThroughputSample> samples) {
    if (samples.size() < 4) fail(Errc::DegenerateGrid, "need at least 4 samples");

    std::vector<double> ns, ws;
    for (const auto& s : samples) {
        if (s.bw < 0) fail(Errc::DomainError, "negative bandwidth sample");
        ns.push_back(s.n);
        ws.push_back(s.window);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(ns);
    uniq(ws);
    if (ns.size() < 2 || ws.size() < 2)
        fail(Errc::DegenerateGrid, "samples span a single n or window value");

    // Snap scattered samples onto the grid of unique axis values, averaging
    // duplicates that land in the same cell.
    auto index_of = [](const std::vector<double>& axis, double v) {
        return static_cast<size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
    };
    std::vector<double> sum(ns.size() * ws.size(), 0.0);
    std::vector<uint32_t> count(ns.size() * ws.size(), 0);
    for (const auto& s : samples) {
        size_t idx = index_of(ns, s.n) * ws.size() + index_of(ws, s.window);
        sum[idx] += s.bw;
        count[idx] += 1;
    }

    Surface out;
    out.n_axis_ = std::move(ns);
    out.window_axis_ = std::move(ws);
    out.z_.resize(sum.size());
    for (size_t i = 0; i < sum.size(); ++i) {
        if (count[i] == 0)
            fail(Errc::IncompleteGrid, "no sample for a grid node; the unique axis values "
                                       "must tile a full rectangle");
        out.z_[i] = sum[i] / count[i];
    }
    return out;
}

double Surface::eval(double n, double window) const {
    auto cell = [](const std::vector<double>& axis, double v, size_t& lo, double& t) {
        if (v <= axis.front()) {
            lo = 0;
            t = 0;
            return;
        }
        if (v >= axis.back()) {
            lo = axis.size() - 2;
            t = 1;
            return;
        }
        lo = static_cast<size_t>(std::upper_bound(axis.begin(), axis.end(), v) -
                                 axis.begin()) - 1;
        t = (v - axis[lo]) / (axis[lo + 1] - axis[lo]);
    };
    size_t i = 0, j = 0;
    double tn = 0, tw = 0;
    cell(n_axis_, n, i, tn);
    cell(window_axis_, window, j, tw);
    double z00 = node(i, j), z01 = node(i, j + 1);
    double z10 = node(i + 1, j), z11 = node(i + 1, j + 1);
    double lo = z00 + (z01 - z00) * tw;
    double hi = z10 + (z11 - z10) * tw;
    return lo + (hi - lo) * tn;
}

Recommendation Surface::recommend(size_t resolution) const {
    if (resolution < 2) resolution = 2;

    // Candidate set: the dense lattice plus every grid node, scanned in
    // ascending (n, window) order so a strict comparison implements the
    // fewer-resources tie break.
    std::vector<double> ncand, wcand;
    double n0 = n_axis_.front(), n1 = n_axis_.back();
    double w0 = window_axis_.front(), w1 = window_axis_.back();
    for (size_t i = 0; i < resolution; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        ncand.push_back(n0 + (n1 - n0) * t);
        wcand.push_back(w0 + (w1 - w0) * t);
    }
    ncand.insert(ncand.end(), n_axis_.begin(), n_axis_.end());
    wcand.insert(wcand.end(), window_axis_.begin(), window_axis_.end());
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(ncand);
    uniq(wcand);

    Recommendation best{ncand.front(), wcand.front(),
                        eval(ncand.front(), wcand.front())};
    for (double n : ncand) {
        for (double w : wcand) {
            double z = eval(n, w);
            if (z > best.bw) best = {n, w, z};
        }
    }
    return best;
}

std::vector<ThroughputSample> parse_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(Errc::MalformedOp, "empty CSV");
    // tolerate trailing CR from foreign tooling
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "n,window_bytes,bw_bytes_per_s")
        fail(Errc::MalformedOp, "expected header n,window_bytes,bw_bytes_per_s");

    std::vector<ThroughputSample> out;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ThroughputSample s;
        char extra = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &s.n, &s.window, &s.bw, &extra) != 3)
            fail(Errc::MalformedOp, "bad CSV row at line " + std::to_string(lineno));
        out.push_back(s);
    }
    return out;
}

void export_grid_csv(const Surface& surface, std::ostream& out) {
    out << "n,window_bytes,bw_bytes_per_s\n";
    char buf[128];
    for (size_t i = 0; i < surface.n_axis().size(); ++i) {
        for (size_t j = 0; j < surface.window_axis().size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", surface.n_axis()[i],
                          surface.window_axis()[j], surface.node(i, j));
            out << buf;
        }
    }
}

} // namespace dotdfs::wanmodel
