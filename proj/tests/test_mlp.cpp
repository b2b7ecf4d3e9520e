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

#include <doctest.h>

#include <zlib.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "revde/mlp.hpp"
#include "support/synthetic_digits.hpp"

using namespace revde;
using namespace revde::mlp;
namespace fs = std::filesystem;

namespace {

using Bytes = std::vector<unsigned char>;

void put_u32(Bytes& b, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<unsigned char>(v >> s));
}

Bytes image_file(std::uint32_t count, std::uint32_t rows, std::uint32_t cols, unsigned char fill,
                 std::uint32_t magic = idx::kImagesMagic) {
    Bytes b;
    put_u32(b, magic);
    put_u32(b, count);
    put_u32(b, rows);
    put_u32(b, cols);
    b.insert(b.end(), static_cast<std::size_t>(count) * rows * cols, fill);
    return b;
}

Bytes label_file(const std::vector<unsigned char>& labels, std::uint32_t magic = idx::kLabelsMagic) {
    Bytes b;
    put_u32(b, magic);
    put_u32(b, static_cast<std::uint32_t>(labels.size()));
    b.insert(b.end(), labels.begin(), labels.end());
    return b;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("revde_mlp_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const Bytes& b) const {
        const auto p = path / name;
        std::ofstream(p, std::ios::binary)
            .write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
        return p;
    }
    fs::path write_gz(const std::string& name, const Bytes& b) const {
        const auto p = path / name;
        gzFile f = gzopen(p.c_str(), "wb");
        gzwrite(f, b.data(), static_cast<unsigned>(b.size()));
        gzclose(f);
        return p;
    }
};

idx::ErrorKind load_error(const fs::path& images, const fs::path& labels) {
    try {
        idx::load_idx(images, labels);
    } catch (const idx::IdxError& e) {
        return e.kind();
    }
    FAIL("expected IdxError");
    return idx::ErrorKind::Io;
}

Vector random_weights(std::uint64_t seed, double limit = 1.0) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(-limit, limit);
    Vector w(MlpShape::total_weights);
    for (auto& v : w) v = u(rng);
    return w;
}

ImageDataset small_images(std::vector<std::uint8_t> labels) {
    ImageDataset d;
    d.rows = d.cols = 14;
    d.labels = std::move(labels);
    d.pixels.assign(d.size() * 196, 0.5);
    return d;
}

}  // namespace

TEST_CASE("load_idx reads zero images and labels") {
    TempDir dir;
    const auto img = dir.write("img", image_file(1, 28, 28, 0));
    const auto lab = dir.write("lab", label_file({4}));
    const auto d = idx::load_idx(img, lab);
    CHECK(d.size() == 1);
    CHECK(d.rows == 28);
    CHECK(d.cols == 28);
    CHECK(d.pixels == std::vector<double>(784, 0.0));
    CHECK(d.labels == std::vector<std::uint8_t>{4});
}

TEST_CASE("load_idx byte-level fixture") {
    TempDir dir;
    Bytes img = image_file(2, 2, 2, 0);
    img[16] = 255;
    img[23] = 51;
    const auto d = idx::load_idx(dir.write("img", img), dir.write("lab", label_file({3, 7})));
    CHECK(d.labels == std::vector<std::uint8_t>{3, 7});
    CHECK(d.pixels == std::vector<double>{1, 0, 0, 0, 0, 0, 0, 0.2});
}

TEST_CASE("load_idx reports distinct errors") {
    TempDir dir;
    const auto good_img = dir.write("img", image_file(2, 28, 28, 0));
    const auto good_lab = dir.write("lab", label_file({1, 2}));

    CHECK(load_error(good_img, dir.write("lab3", label_file({1, 2, 3}))) ==
          idx::ErrorKind::CountMismatch);
    CHECK(load_error(dir.write("bad", image_file(2, 28, 28, 0, 0x0803 + 1)), good_lab) ==
          idx::ErrorKind::BadMagic);
    CHECK(load_error(good_img, dir.write("badlab", label_file({1, 2}, idx::kImagesMagic))) ==
          idx::ErrorKind::BadMagic);

    Bytes cut = image_file(2, 28, 28, 0);
    cut.resize(cut.size() - 10);
    CHECK(load_error(dir.write("cut", cut), good_lab) == idx::ErrorKind::Truncated);
    CHECK(load_error(dir.write("hdr", Bytes{0, 0, 8}), good_lab) == idx::ErrorKind::Truncated);
    CHECK(load_error(dir.path / "missing", good_lab) == idx::ErrorKind::Io);
}

TEST_CASE("load_idx accepts gzip input") {
    TempDir dir;
    Bytes img = image_file(2, 28, 28, 0);
    img[16 + 784] = 255;
    const auto plain = idx::load_idx(dir.write("img", img), dir.write("lab", label_file({3, 7})));
    const auto gz = idx::load_idx(dir.write_gz("img.gz", img), dir.write_gz("lab.gz", label_file({3, 7})));
    CHECK(gz.pixels == plain.pixels);
    CHECK(gz.labels == plain.labels);
    CHECK(gz.image(1)[0] == 1.0);
}

TEST_CASE("write_idx round trip") {
    TempDir dir;
    const auto data = testing::synthetic_digits(20, 5);
    idx::write_idx_images(dir.path / "i", data);
    idx::write_idx_labels(dir.path / "l", data.labels);
    const auto back = idx::load_idx(dir.path / "i", dir.path / "l");
    CHECK(back.labels == data.labels);
    REQUIRE(back.pixels.size() == data.pixels.size());
    for (std::size_t k = 0; k < data.pixels.size(); ++k) {
        CHECK(std::abs(back.pixels[k] - data.pixels[k]) <= 0.5 / 255 + 1e-12);
    }
}

TEST_CASE("downsample") {
    ImageDataset d;
    d.rows = d.cols = 28;
    d.labels = {0, 1, 2};
    d.pixels.assign(3 * 784, 0.0);
    for (std::size_t k = 0; k < 784; ++k) d.pixels[k] = 0.37;
    for (std::size_t k = 784; k < 2 * 784; ++k) d.pixels[k] = 1.0;
    // Third image: top-left block rows (0, 0) and (1, 1).
    d.pixels[2 * 784 + 28] = 1.0;
    d.pixels[2 * 784 + 29] = 1.0;

    const auto s = downsample(d);
    CHECK(s.rows == 14);
    CHECK(s.cols == 14);
    CHECK(s.labels == d.labels);
    for (double v : s.image(0)) CHECK(v == doctest::Approx(0.37).epsilon(1e-15));
    for (double v : s.image(1)) CHECK(v == 1.0);
    CHECK(s.image(2)[0] == 0.5);
    CHECK(s.image(2)[1] == 0.0);

    ImageDataset wrong;
    wrong.rows = wrong.cols = 14;
    wrong.labels = {0};
    wrong.pixels.assign(196, 0.0);
    CHECK_THROWS_AS(downsample(wrong), ContractViolation);
}

TEST_CASE("forward") {
    const std::vector<double> image(196, 0.5);
    const auto zero = forward(Vector(MlpShape::total_weights, 0.0), image);
    for (double p : zero) CHECK(p == doctest::Approx(0.1).epsilon(1e-15));

    Vector killed = random_weights(1);
    for (std::size_t k = 0; k < MlpShape::hidden_weights; ++k) killed[k] = -std::abs(killed[k]) - 1e-3;
    for (double p : forward(killed, image)) CHECK(p == doctest::Approx(0.1).epsilon(1e-15));

    Rng rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto w = random_weights(seed, 5.0);
        std::vector<double> img(196);
        for (auto& v : img) v = u(rng);
        const auto p = forward(w, img);
        double sum = 0.0;
        for (double v : p) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        // Positivity holds while logit gaps stay inside the exp range.
        for (double v : forward(random_weights(seed, 0.2), img)) CHECK(v > 0.0);
    }

    // Huge logits stay finite thanks to max subtraction.
    const auto huge = forward(Vector(MlpShape::total_weights, 1e3), image);
    for (double v : huge) CHECK(std::isfinite(v));
}

TEST_CASE("classification_error tie rule and crafted weights") {
    auto data = small_images({0, 3, 0, 9, 5});
    CHECK(classification_error(Vector(MlpShape::total_weights, 0.0), data) ==
          doctest::Approx(1.0 - 2.0 / 5.0));

    // Hidden unit 0 sums the image; output row 7 reads hidden unit 0.
    Vector w(MlpShape::total_weights, 0.0);
    for (std::size_t i = 0; i < 196; ++i) w[i] = 1.0;
    w[MlpShape::hidden_weights + 7 * MlpShape::hidden_dim + 0] = 1.0;
    const auto one = small_images({7});
    CHECK(predict(w, one.image(0)) == 7);
    CHECK(classification_error(w, one) == 0.0);

    CHECK_THROWS_AS(classification_error(w, small_images({})), ContractViolation);
}

TEST_CASE("random predictor is wrong about nine times in ten") {
    const auto data = downsample(testing::synthetic_digits(2000, 11));
    double acc = 0.0;
    const int trials = 10;
    for (int t = 0; t < trials; ++t) {
        const double e = classification_error(random_weights(100 + t), data);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        acc += e;
    }
    CHECK(acc / trials == doctest::Approx(0.9).epsilon(0.05 / 0.9));
}

TEST_CASE("argmax is invariant to scaling the output layer") {
    const auto data = downsample(testing::synthetic_digits(300, 2));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Vector w = random_weights(seed);
        const double base = classification_error(w, data);
        for (double c : {1e-3, 0.5, 7.0, 250.0}) {
            Vector scaled = w;
            for (std::size_t k = MlpShape::hidden_weights; k < scaled.size(); ++k) scaled[k] *= c;
            CHECK(classification_error(scaled, data) == base);
        }
        CHECK(classification_error(w, data) == base);
    }
}

TEST_CASE("take_subset and evaluator") {
    const auto data = downsample(testing::synthetic_digits(50, 4));
    const auto first = take_subset(data, 10);
    CHECK(first.size() == 10);
    CHECK(std::vector<std::uint8_t>(data.labels.begin(), data.labels.begin() + 10) == first.labels);
    const auto a = take_subset(data, 10, 99);
    const auto b = take_subset(data, 10, 99);
    CHECK(a.labels == b.labels);
    CHECK(a.pixels == b.pixels);
    CHECK(take_subset(data, 500).size() == 50);

    const auto bounds = weight_bounds();
    CHECK(bounds.lower.size() == 4120);
    CHECK(bounds.lower.front() == -1.0);
    CHECK(bounds.upper.back() == 1.0);

    Objective obj(bounds, make_evaluator(first), "mlp");
    const Vector w = random_weights(8);
    CHECK(obj(w) == classification_error(w, first));
    CHECK_THROWS_AS(make_evaluator(testing::synthetic_digits(5, 1)), ContractViolation);
}
