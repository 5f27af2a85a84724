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

#include "sciarray/block_reader.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <string>

#include "sciarray/error.hpp"

namespace sciarray {

void MemorySource::read_at(std::uint64_t offset, std::span<std::byte> out) {
  std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(offset), out.size(),
              out.begin());
}

void OwnedMemorySource::read_at(std::uint64_t offset, std::span<std::byte> out) {
  std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(offset), out.size(),
              out.begin());
}

FileSource::FileSource(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd_ < 0) {
    fail(ErrorCode::kIo, "cannot open " + path.string() + ": " + std::strerror(errno));
  }
  struct stat st {};
  if (::fstat(fd_, &st) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    fail(ErrorCode::kIo, "cannot stat " + path.string() + ": " + std::strerror(err));
  }
  size_ = static_cast<std::uint64_t>(st.st_size);
}

FileSource::~FileSource() {
  if (fd_ >= 0) ::close(fd_);
}

void FileSource::read_at(std::uint64_t offset, std::span<std::byte> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    const ssize_t n = ::pread(fd_, out.data() + done, out.size() - done,
                              static_cast<off_t>(offset + done));
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(ErrorCode::kIo, std::string("read failed: ") + std::strerror(errno));
    }
    if (n == 0) fail(ErrorCode::kTruncated, "unexpected end of file");
    done += static_cast<std::size_t>(n);
  }
}

BlockReader::BlockReader(std::unique_ptr<ByteSource> source)
    : source_(std::move(source)) {
  if (!source_) fail(ErrorCode::kInvalidArgument, "null byte source");
}

BlockReader BlockReader::over(std::span<const std::byte> bytes) {
  return BlockReader(std::make_unique<MemorySource>(bytes));
}

BlockReader BlockReader::open_file(const std::filesystem::path& path) {
  return BlockReader(std::make_unique<FileSource>(path));
}

void BlockReader::read_at(std::uint64_t offset, std::span<std::byte> out) {
  const std::uint64_t size = source_->size();
  if (offset > size || out.size() > size - offset) {
    fail(ErrorCode::kTruncated, "read of " + std::to_string(out.size()) +
                                    " bytes at offset " + std::to_string(offset) +
                                    " exceeds source size " + std::to_string(size));
  }
  if (out.empty()) return;
  source_->read_at(offset, out);
  bytes_read_ += out.size();
  ++read_calls_;
}

}  // namespace sciarray
