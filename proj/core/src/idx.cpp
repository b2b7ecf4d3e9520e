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

#include "revde/idx.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

namespace revde::idx {
namespace {

// gzread passes uncompressed input through unchanged, so one path handles
// both plain and .gz files.
std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
    gzFile f = gzopen(path.string().c_str(), "rb");
    if (!f) throw IdxError(ErrorKind::Io, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes;
    std::uint8_t buf[1 << 16];
    while (true) {
        const int n = gzread(f, buf, sizeof(buf));
        if (n < 0) {
            gzclose(f);
            throw IdxError(ErrorKind::Io, "read error in " + path.string());
        }
        if (n == 0) break;
        bytes.insert(bytes.end(), buf, buf + n);
    }
    gzclose(f);
    return bytes;
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t offset) {
    return (std::uint32_t{b[offset]} << 24) | (std::uint32_t{b[offset + 1]} << 16) |
           (std::uint32_t{b[offset + 2]} << 8) | std::uint32_t{b[offset + 3]};
}

void put_be32(std::ofstream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                           static_cast<char>(v >> 8), static_cast<char>(v)};
    out.write(bytes, 4);
}

void require(bool ok, ErrorKind kind, const std::string& what) {
    if (!ok) throw IdxError(kind, what);
}

}  // namespace

ImageDataset load_idx(const std::filesystem::path& images_path,
                      const std::filesystem::path& labels_path) {
    const auto img = slurp(images_path);
    const auto lab = slurp(labels_path);
    const std::string in = images_path.string();
    const std::string ln = labels_path.string();

    require(img.size() >= 4, ErrorKind::Truncated, in + ": truncated header");
    require(be32(img, 0) == kImagesMagic, ErrorKind::BadMagic, in + ": bad image magic");
    require(img.size() >= 16, ErrorKind::Truncated, in + ": truncated header");
    require(lab.size() >= 4, ErrorKind::Truncated, ln + ": truncated header");
    require(be32(lab, 0) == kLabelsMagic, ErrorKind::BadMagic, ln + ": bad label magic");
    require(lab.size() >= 8, ErrorKind::Truncated, ln + ": truncated header");

    const std::size_t count = be32(img, 4);
    const std::size_t rows = be32(img, 8);
    const std::size_t cols = be32(img, 12);
    const std::size_t label_count = be32(lab, 4);
    require(count == label_count, ErrorKind::CountMismatch,
            "image count " + std::to_string(count) + " != label count " +
                std::to_string(label_count));
    require(img.size() - 16 >= count * rows * cols, ErrorKind::Truncated,
            in + ": truncated pixel data");
    require(lab.size() - 8 >= count, ErrorKind::Truncated, ln + ": truncated label data");

    ImageDataset data;
    data.rows = rows;
    data.cols = cols;
    data.pixels.resize(count * rows * cols);
    std::transform(img.begin() + 16, img.begin() + 16 + static_cast<std::ptrdiff_t>(data.pixels.size()),
                   data.pixels.begin(), [](std::uint8_t v) { return v / 255.0; });
    data.labels.assign(lab.begin() + 8, lab.begin() + 8 + static_cast<std::ptrdiff_t>(count));
    return data;
}

void write_idx_images(const std::filesystem::path& path, const ImageDataset& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IdxError(ErrorKind::Io, "cannot open " + path.string());
    put_be32(out, kImagesMagic);
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    put_be32(out, static_cast<std::uint32_t>(data.rows));
    put_be32(out, static_cast<std::uint32_t>(data.cols));
    for (double v : data.pixels) {
        out.put(static_cast<char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
    }
    if (!out) throw IdxError(ErrorKind::Io, "write failed for " + path.string());
}

void write_idx_labels(const std::filesystem::path& path, std::span<const std::uint8_t> labels) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IdxError(ErrorKind::Io, "cannot open " + path.string());
    put_be32(out, kLabelsMagic);
    put_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
    if (!out) throw IdxError(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace revde::idx
