// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include "sct/checkpoint.hpp"
#include "sct/errors.hpp"
#include "test_util.hpp"

namespace sct {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sct_unit_checkpoint";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Checkpoint, RoundTripsNamesShapesAndValues) {
  std::mt19937_64 rng(1);
  ParameterList<float> params = {
      {"a", testing::random_tensor<float>({2, 3}, rng)},
      {"b.c", testing::random_tensor<float>({4}, rng)},
  };
  const auto path = temp_file("roundtrip.ckpt");
  save_parameters(path, params);

  ParameterList<float> loaded = {{"a", Tensor<float>({2, 3})}, {"b.c", Tensor<float>({4})}};
  load_parameters(path, loaded);
  for (std::size_t i = 0; i < params.size(); ++i) {
    EXPECT_EQ(testing::max_abs_diff(params[i].tensor, loaded[i].tensor), 0.0);
  }
  const auto raw = read_checkpoint(path);
  ASSERT_EQ(raw.size(), 2u);
  EXPECT_EQ(raw[0].name, "a");
  EXPECT_EQ(raw[0].shape, (Shape{2, 3}));
}

TEST(Checkpoint, MismatchListsEveryOffendingArray) {
  const auto path = temp_file("mismatch.ckpt");
  write_checkpoint(path, {{"w", {2, 2}, std::vector<float>(4, 1.f)},
                          {"extra", {1}, std::vector<float>{1.f}}});
  ParameterList<float> want = {{"w", Tensor<float>({3, 2})}, {"missing", Tensor<float>({1})}};
  try {
    load_parameters(path, want);
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("shape mismatch: w"), std::string::npos);
    EXPECT_NE(msg.find("missing: missing"), std::string::npos);
    EXPECT_NE(msg.find("unexpected: extra"), std::string::npos);
  }
}

TEST(Checkpoint, CorruptFilesAreRejected) {
  const auto bad_magic = temp_file("bad_magic.ckpt");
  {
    std::ofstream out(bad_magic, std::ios::binary);
    out << "NOPE0000000000000000";
  }
  EXPECT_THROW(read_checkpoint(bad_magic), LoadError);

  const auto good = temp_file("good.ckpt");
  write_checkpoint(good, {{"w", {64}, std::vector<float>(64, 2.f)}});
  const auto size = std::filesystem::file_size(good);
  const auto truncated = temp_file("truncated.ckpt");
  std::filesystem::copy_file(good, truncated, std::filesystem::copy_options::overwrite_existing);
  std::filesystem::resize_file(truncated, size - 10);
  EXPECT_THROW(read_checkpoint(truncated), LoadError);
  EXPECT_THROW(read_checkpoint(temp_file("does_not_exist.ckpt")), LoadError);
}

}  // namespace
}  // namespace sct
