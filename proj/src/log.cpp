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
#include "dotdfs/log.hpp"

#include <atomic>
#include <chrono>
#include <cstring>
#include <ctime>
#include <mutex>

namespace dotdfs::log {

namespace {
std::atomic<int> g_level{static_cast<int>(Level::Warn)};
std::atomic<FILE*> g_sink{stderr};
std::mutex g_mutex;
const char* kNames[] = {"ERROR", "WARN", "INFO", "DEBUG"};
} // namespace

void set_level(Level lvl) { g_level.store(static_cast<int>(lvl)); }
Level level() { return static_cast<Level>(g_level.load()); }
void set_sink(FILE* f) { g_sink.store(f ? f : stderr); }

bool parse_level(const char* name, Level& out) {
    for (int i = 0; i < 4; ++i) {
        if (strcasecmp(name, kNames[i]) == 0) {
            out = static_cast<Level>(i);
            return true;
        }
    }
    if (strcasecmp(name, "warning") == 0) {
        out = Level::Warn;
        return true;
    }
    return false;
}

void write(Level lvl, const char* fmt, ...) {
    if (static_cast<int>(lvl) > g_level.load(std::memory_order_relaxed)) return;

    auto now = std::chrono::system_clock::now();
    auto secs = std::chrono::system_clock::to_time_t(now);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch())
                  .count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%S", &tm);

    std::lock_guard lock(g_mutex);
    FILE* f = g_sink.load();
    std::fprintf(f, "%s.%03lldZ %-5s ", stamp, static_cast<long long>(ms),
                 kNames[static_cast<int>(lvl)]);
    va_list ap;
    va_start(ap, fmt);
    std::vfprintf(f, fmt, ap);
    va_end(ap);
    std::fputc('\n', f);
    std::fflush(f);
}

} // namespace dotdfs::log
