// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace phasemem {

/// Fixed-capacity ring of consecutive frames. Pushing into a full ring
/// overwrites the oldest frame. Stored frames always carry contiguous
/// absolute indices ending at the most recently pushed one.
template <typename T>
class FrameRing {
 public:
  explicit FrameRing(std::size_t capacity = 0) : slots_(capacity) {}

  std::size_t capacity() const noexcept { return slots_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  // Absolute index of the oldest stored frame.
  std::int64_t first_index() const noexcept { return next_index_ - static_cast<std::int64_t>(size_); }
  // Absolute index the next push will receive.
  std::int64_t next_index() const noexcept { return next_index_; }

  void push(std::int64_t absolute_index, T value) {
    assert(size_ == 0 || absolute_index == next_index_);
    if (slots_.empty()) return;
    slots_[head_] = std::move(value);
    head_ = (head_ + 1) % slots_.size();
    if (size_ < slots_.size()) ++size_;
    next_index_ = absolute_index + 1;
  }

  // i-th oldest stored frame, 0 <= i < size().
  const T& at(std::size_t i) const {
    assert(i < size_);
    const std::size_t start = (head_ + slots_.size() - size_) % slots_.size();
    return slots_[(start + i) % slots_.size()];
  }

  // The `n` most recent frames, oldest first. n is clamped to size().
  std::vector<T> latest(std::size_t n) const {
    if (n > size_) n = size_;
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = size_ - n; i < size_; ++i) out.push_back(at(i));
    return out;
  }

 private:
  std::vector<T> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  std::int64_t next_index_ = 0;
};

}  // namespace phasemem
