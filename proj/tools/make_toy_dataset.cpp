// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

// Generates the bundled demo dataset: PNG images plus annotations.jsonl.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "facekit/toyset.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a small synthetic face-annotation dataset"};
  std::string out_dir;
  std::size_t count = 20;
  std::uint64_t seed = facekit::kToySeed;
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--count", count, "Number of images")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const facekit::ToyDataset toy = facekit::make_toy_dataset(count, seed);
    facekit::write_toy_dataset(toy, out_dir);
    std::size_t with_faces = 0;
    for (const auto& rec : toy.set.records())
      if (!rec.faces.empty()) ++with_faces;
    std::cout << "wrote " << toy.set.size() << " images (" << with_faces
              << " with faces) under " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
