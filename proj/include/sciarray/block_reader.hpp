// Copyright 2026 The sciarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>

#include "sciarray/header.hpp"

namespace sciarray {

/// Random-access byte source.
class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual std::uint64_t size() const = 0;
  /// Fills `out` from `offset`. The caller guarantees the range is in bounds.
  virtual void read_at(std::uint64_t offset, std::span<std::byte> out) = 0;
};

/// Non-owning view over bytes already in memory.
class MemorySource final : public ByteSource {
 public:
  explicit MemorySource(std::span<const std::byte> bytes) : bytes_(bytes) {}
  std::uint64_t size() const override { return bytes_.size(); }
  void read_at(std::uint64_t offset, std::span<std::byte> out) override;

 private:
  std::span<const std::byte> bytes_;
};

/// Owns a copy of its bytes.
class OwnedMemorySource final : public ByteSource {
 public:
  explicit OwnedMemorySource(Bytes bytes) : bytes_(std::move(bytes)) {}
  std::uint64_t size() const override { return bytes_.size(); }
  void read_at(std::uint64_t offset, std::span<std::byte> out) override;

 private:
  Bytes bytes_;
};

/// Positional reads from a file descriptor.
class FileSource final : public ByteSource {
 public:
  explicit FileSource(const std::filesystem::path& path);
  ~FileSource() override;
  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;

  std::uint64_t size() const override { return size_; }
  void read_at(std::uint64_t offset, std::span<std::byte> out) override;

 private:
  int fd_ = -1;
  std::uint64_t size_ = 0;
};

/// Counting random-access reader over a blob. Offsets are relative to the
/// start of the blob. Not safe for concurrent use.
class BlockReader {
 public:
  explicit BlockReader(std::unique_ptr<ByteSource> source);

  static BlockReader over(std::span<const std::byte> bytes);
  static BlockReader open_file(const std::filesystem::path& path);

  /// Reads exactly out.size() bytes at `offset`; kTruncated if the source is
  /// too short. Counters change only on success.
  void read_at(std::uint64_t offset, std::span<std::byte> out);

  std::uint64_t size() const { return source_->size(); }
  std::uint64_t bytes_read() const noexcept { return bytes_read_; }
  std::uint64_t read_calls() const noexcept { return read_calls_; }
  void reset_counters() noexcept {
    bytes_read_ = 0;
    read_calls_ = 0;
  }

 private:
  std::unique_ptr<ByteSource> source_;
  std::uint64_t bytes_read_ = 0;
  std::uint64_t read_calls_ = 0;
};

}  // namespace sciarray
