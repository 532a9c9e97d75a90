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
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dotdfs/errors.hpp"
#include "dotdfs/wanmodel.hpp"

using namespace dotdfs;
using namespace dotdfs::wanmodel;

namespace {

double rel_err(double got, double expect) {
    return std::fabs(got - expect) / std::fabs(expect);
}

// Reference WAN testbed figures: 1460-byte MSS, 76 ms RTT, every-other-segment
// acking, 1e-4 loss.
ThroughputParams testbed() { return {1460, 0.076, 0.87, 1e-4}; }

} // namespace

TEST_CASE("single stream bandwidth matches an independent evaluation") {
    // independent route: long double arithmetic, no shared helpers
    long double oracle = (1460.0L / 0.076L) * (0.87L / sqrtl(1e-4L));
    CHECK(llroundl(oracle) == 1671316); // the frozen reference value, bytes/s

    double got = single_stream_bw(testbed());
    CHECK(rel_err(got, static_cast<double>(oracle)) < 1e-9);
    CHECK(to_mbit_per_s(got) == doctest::Approx(13.37).epsilon(0.01));
    CHECK(format_mbit(got) == "13.4 Mbit/s");
}

TEST_CASE("scaling laws hold to 1e-12 relative") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mss(100, 9000), rtt(1e-3, 1.0), loss(1e-8, 0.25);
    for (int i = 0; i < 1000; ++i) {
        ThroughputParams p{mss(rng), rtt(rng), 0.87, loss(rng)};
        double bw = single_stream_bw(p);

        ThroughputParams p4 = p;
        p4.p = 4 * p.p;
        CHECK(rel_err(single_stream_bw(p4), bw / 2) < 1e-12);

        ThroughputParams pr = p;
        pr.rtt = 2 * p.rtt;
        CHECK(rel_err(single_stream_bw(pr), bw / 2) < 1e-12);

        ThroughputParams pm = p;
        pm.mss = 3 * p.mss;
        CHECK(rel_err(single_stream_bw(pm), 3 * bw) < 1e-12);
    }
}

TEST_CASE("aggregate bound") {
    SUBCASE("identical streams reduce to n times the single stream value, exactly") {
        auto p = testbed();
        double one = single_stream_bw(p);
        for (uint64_t n = 1; n <= 64; ++n) {
            CHECK(aggregate_bw_identical(p, n) == static_cast<double>(n) * one);
            std::vector<ThroughputParams> v(n, p);
            CHECK(rel_err(aggregate_bw_bound(v), static_cast<double>(n) * one) < 1e-12);
        }
    }

    SUBCASE("term-wise evaluation, two unequal loss rates") {
        auto p1 = testbed();
        auto p2 = testbed();
        p2.p = 4e-4;
        double bw1 = single_stream_bw(p1);
        std::vector<ThroughputParams> v{p1, p2};
        CHECK(rel_err(aggregate_bw_bound(v), bw1 + bw1 / 2) < 1e-12);
    }

    SUBCASE("domain errors") {
        auto p = testbed();
        p.p = 0;
        CHECK_THROWS_AS(single_stream_bw(p), Error);
        p.p = -1;
        CHECK_THROWS_AS(single_stream_bw(p), Error);
        p = testbed();
        p.rtt = 0;
        CHECK_THROWS_AS(single_stream_bw(p), Error);
        CHECK_THROWS_AS(aggregate_bw_bound(std::span<const ThroughputParams>{}), Error);
    }
}

namespace {

std::vector<ThroughputSample> sample_grid(const std::vector<double>& ns,
                                          const std::vector<double>& ws,
                                          double (*f)(double, double)) {
    std::vector<ThroughputSample> out;
    for (double n : ns)
        for (double w : ws) out.push_back({n, w, f(n, w)});
    return out;
}

std::vector<double> linspace(double a, double b, size_t k) {
    std::vector<double> v;
    for (size_t i = 0; i < k; ++i)
        v.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1));
    return v;
}

} // namespace

TEST_CASE("surface fit and interpolation") {
    SUBCASE("flat 2x2 field") {
        std::vector<ThroughputSample> s{{1, 10, 5e6}, {1, 20, 5e6}, {2, 10, 5e6}, {2, 20, 5e6}};
        auto surf = Surface::fit(s);
        CHECK(surf.eval(1.5, 15) == doctest::Approx(5e6));
        CHECK(surf.eval(1, 10) == 5e6);
        CHECK(surf.eval(100, 100) == doctest::Approx(5e6)); // clamped to hull
    }

    SUBCASE("bilinear field reproduced exactly at cell interiors") {
        auto ns = linspace(1, 60, 7);
        auto ws = linspace(65536, 2 << 20, 9);
        auto samples = sample_grid(ns, ws, [](double n, double w) { return n * w; });
        auto surf = Surface::fit(samples);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> un(1, 60), uw(65536, 2 << 20);
        for (int i = 0; i < 2000; ++i) {
            double n = un(rng), w = uw(rng);
            CHECK(rel_err(surf.eval(n, w), n * w) < 1e-9);
        }
    }

    SUBCASE("paper-shaped 500-sample set, node residuals zero") {
        auto ns = linspace(1, 60, 25);
        auto ws = linspace(64 << 10, 2 << 20, 20);
        std::vector<ThroughputSample> samples;
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> noise(0.5, 1.5);
        for (double n : ns)
            for (double w : ws)
                samples.push_back({n, w, 1e6 * noise(rng) * std::log2(1 + n) * std::sqrt(w)});
        REQUIRE(samples.size() == 500);
        auto surf = Surface::fit(samples);
        REQUIRE(surf.n_axis().size() == 25);
        REQUIRE(surf.window_axis().size() == 20);
        size_t k = 0;
        for (size_t i = 0; i < 25; ++i)
            for (size_t j = 0; j < 20; ++j, ++k)
                CHECK(surf.node(i, j) == samples[k].bw); // exactly through every node
    }

    SUBCASE("duplicate cells averaged") {
        std::vector<ThroughputSample> s{{1, 10, 4e6}, {1, 10, 6e6}, {1, 20, 1e6},
                                        {2, 10, 1e6}, {2, 20, 1e6}};
        auto surf = Surface::fit(s);
        CHECK(surf.node(0, 0) == doctest::Approx(5e6));
    }

    SUBCASE("degenerate and incomplete grids rejected") {
        std::vector<ThroughputSample> one_n{{1, 10, 1}, {1, 20, 1}, {1, 30, 1}, {1, 40, 1}};
        CHECK_THROWS_AS(Surface::fit(one_n), Error);
        std::vector<ThroughputSample> holes{{1, 10, 1}, {1, 20, 1}, {2, 10, 1}, {3, 30, 1}};
        CHECK_THROWS_AS(Surface::fit(holes), Error);
        std::vector<ThroughputSample> few{{1, 10, 1}, {2, 20, 1}};
        CHECK_THROWS_AS(Surface::fit(few), Error);
    }
}

TEST_CASE("recommendation") {
    SUBCASE("synthetic concave surface, analytic max at n=45 W=2MiB") {
        auto ns = linspace(1, 60, 8);
        auto ws = linspace(64 << 10, 2 << 20, 8);
        // lifted by a constant so every sample is a legal bandwidth;
        // the argmax location is shift-invariant
        auto samples = sample_grid(ns, ws, [](double n, double w) {
            double a = n - 45, b = w / 32768.0 - 64;
            return -(a * a) - (b * b) + 1000.0 + 6000.0;
        });
        auto surf = Surface::fit(samples);
        auto rec = surf.recommend();
        double n_cell = ns[1] - ns[0];
        double w_cell = ws[1] - ws[0];
        CHECK(std::fabs(rec.n - 45.0) <= n_cell);
        CHECK(std::fabs(rec.window - 2097152.0) <= w_cell);

        // argmax dominance over every sample node
        for (const auto& s : samples) CHECK(rec.bw >= s.bw);
    }

    SUBCASE("flat surface returns the smallest corner by tie-break") {
        std::vector<ThroughputSample> s{{2, 10, 7}, {2, 40, 7}, {5, 10, 7}, {5, 40, 7}};
        auto rec = Surface::fit(s).recommend();
        CHECK(rec.n == 2);
        CHECK(rec.window == 10);
        CHECK(rec.bw == 7);
    }

    SUBCASE("monotone surface returns the max corner") {
        auto ns = linspace(1, 16, 4);
        auto ws = linspace(1024, 65536, 4);
        auto samples = sample_grid(ns, ws, [](double n, double w) { return n * 1000 + w; });
        auto rec = Surface::fit(samples).recommend();
        CHECK(rec.n == 16);
        CHECK(rec.window == 65536);
    }

    SUBCASE("random surfaces: argmax dominates all nodes") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> uz(0, 1e8);
        for (int trial = 0; trial < 20; ++trial) {
            auto ns = linspace(1, 32, 5);
            auto ws = linspace(4096, 1 << 20, 6);
            std::vector<ThroughputSample> samples;
            for (double n : ns)
                for (double w : ws) samples.push_back({n, w, uz(rng)});
            auto surf = Surface::fit(samples);
            auto rec = surf.recommend(64);
            for (const auto& s : samples) CHECK(rec.bw >= s.bw);
        }
    }
}

TEST_CASE("csv round-trip") {
    auto ns = linspace(1, 8, 3);
    auto ws = linspace(1024, 8192, 3);
    auto samples = sample_grid(ns, ws, [](double n, double w) { return n * w + 0.125; });
    auto surf = Surface::fit(samples);

    std::stringstream ss;
    export_grid_csv(surf, ss);
    auto parsed = parse_samples_csv(ss);
    REQUIRE(parsed.size() == 9);
    auto surf2 = Surface::fit(parsed);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK(surf.node(i, j) == surf2.node(i, j));

    SUBCASE("header and row validation") {
        std::stringstream bad1("nope\n1,2,3\n");
        CHECK_THROWS_AS(parse_samples_csv(bad1), Error);
        std::stringstream bad2("n,window_bytes,bw_bytes_per_s\n1,2\n");
        CHECK_THROWS_AS(parse_samples_csv(bad2), Error);
        std::stringstream crlf("n,window_bytes,bw_bytes_per_s\r\n1,2,3\r\n\r\n");
        auto ok = parse_samples_csv(crlf);
        REQUIRE(ok.size() == 1);
        CHECK(ok[0].bw == 3);
    }
}
