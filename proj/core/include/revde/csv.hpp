/*
 * Copyright 2026 The revde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef REVDE_CSV_HPP
#define REVDE_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace revde {

/// Shortest decimal string that round-trips to the same double. Infinities
/// print as "inf"/"-inf", NaN as "nan".
std::string format_double(double value);

/// Writes to a sibling temp file and renames over the target.
void atomic_write_file(const std::filesystem::path& path, std::string_view contents);

/// Splits one CSV line on commas; no quoting support.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace revde

#endif  // REVDE_CSV_HPP
