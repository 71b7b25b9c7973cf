#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace naw {

/// Append-only array stored in fixed-size chunks. Growing never moves or
/// copies existing elements; references stay valid across push_back.
template <class V, std::size_t ChunkBits = 16>
class ChunkedArray {
 public:
  static constexpr std::size_t kChunk = std::size_t{1} << ChunkBits;
  using value_type = V;

  ChunkedArray() = default;
  ChunkedArray(ChunkedArray&&) noexcept = default;
  ChunkedArray& operator=(ChunkedArray&&) noexcept = default;

  ChunkedArray(const ChunkedArray& other) { *this = other; }
  ChunkedArray& operator=(const ChunkedArray& other) {
    if (this == &other) return *this;
    clear();
    for (std::size_t i = 0; i < other.size(); ++i) push_back(other[i]);
    return *this;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  V& operator[](std::size_t i) noexcept { return chunks_[i >> ChunkBits][i & (kChunk - 1)]; }
  const V& operator[](std::size_t i) const noexcept { return chunks_[i >> ChunkBits][i & (kChunk - 1)]; }

  V& back() noexcept { return (*this)[size_ - 1]; }
  const V& back() const noexcept { return (*this)[size_ - 1]; }

  void push_back(const V& v) {
    if ((size_ >> ChunkBits) == chunks_.size()) chunks_.push_back(std::make_unique_for_overwrite<V[]>(kChunk));
    (*this)[size_] = v;
    ++size_;
  }

  /// Drops trailing elements, releasing chunks that become unused.
  void truncate(std::size_t n) {
    if (n >= size_) return;
    size_ = n;
    chunks_.resize((n + kChunk - 1) >> ChunkBits);
  }

  void clear() noexcept {
    chunks_.clear();
    size_ = 0;
  }

  std::vector<V> to_vector() const {
    std::vector<V> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
    return out;
  }

 private:
  std::vector<std::unique_ptr<V[]>> chunks_;
  std::size_t size_ = 0;
};

}  // namespace naw
