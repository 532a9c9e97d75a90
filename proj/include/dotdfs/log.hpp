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
#ifndef DOTDFS_LOG_HPP
#define DOTDFS_LOG_HPP

#include <cstdarg>
#include <cstdio>

namespace dotdfs::log {

enum class Level : int { Error = 0, Warn = 1, Info = 2, Debug = 3 };

void set_level(Level lvl);
Level level();
void set_sink(FILE* f); // default stderr

bool parse_level(const char* name, Level& out);

void write(Level lvl, const char* fmt, ...) __attribute__((format(printf, 2, 3)));

#define DDFS_LOGE(...) ::dotdfs::log::write(::dotdfs::log::Level::Error, __VA_ARGS__)
#define DDFS_LOGW(...) ::dotdfs::log::write(::dotdfs::log::Level::Warn, __VA_ARGS__)
#define DDFS_LOGI(...) ::dotdfs::log::write(::dotdfs::log::Level::Info, __VA_ARGS__)
#define DDFS_LOGD(...) ::dotdfs::log::write(::dotdfs::log::Level::Debug, __VA_ARGS__)

} // namespace dotdfs::log

#endif
