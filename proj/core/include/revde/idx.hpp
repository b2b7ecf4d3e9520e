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

#ifndef REVDE_IDX_HPP
#define REVDE_IDX_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace revde::idx {

enum class ErrorKind { Io, BadMagic, Truncated, CountMismatch };

class IdxError : public std::runtime_error {
public:
    IdxError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline constexpr std::uint32_t kImagesMagic = 0x00000803;
inline constexpr std::uint32_t kLabelsMagic = 0x00000801;

/// Grayscale images flattened row-major, pixels in [0, 1].
struct ImageDataset {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> pixels;  // size() * rows * cols
    std::vector<std::uint8_t> labels;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t pixels_per_image() const noexcept { return rows * cols; }
    std::span<const double> image(std::size_t i) const {
        return {pixels.data() + i * pixels_per_image(), pixels_per_image()};
    }
};

/// Reads an IDX image/label file pair. Either file may be gzip-compressed;
/// compression is detected from the leading bytes. Pixel bytes are scaled by
/// 1/255.
ImageDataset load_idx(const std::filesystem::path& images_path,
                      const std::filesystem::path& labels_path);

/// Writes uncompressed IDX files. Pixels are expected in [0, 1] and are
/// rounded to bytes.
void write_idx_images(const std::filesystem::path& path, const ImageDataset& data);
void write_idx_labels(const std::filesystem::path& path, std::span<const std::uint8_t> labels);

}  // namespace revde::idx

#endif  // REVDE_IDX_HPP
