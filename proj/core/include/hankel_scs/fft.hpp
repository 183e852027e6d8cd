#pragma once

#include <cstdint>
#include <cstddef>

#include "hankel_scs/types.hpp"

namespace hscs::fft {

/// Per-thread operation counters. Each structured-operator call adds one
/// "column pass" per factor column it processes (one convolution-type step on
/// one column) and one "transform" per length-N FFT actually executed.
struct Counters {
    std::uint64_t column_passes = 0;
    std::uint64_t transforms = 0;
};

Counters& counters();

/// Smallest power of two >= min_len.
Index transform_length(Index min_len);

/// Heap buffer obtained from the FFT library allocator (SIMD aligned).
class Buffer {
public:
    Buffer() = default;
    explicit Buffer(std::size_t size);
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    Buffer(Buffer&& other) noexcept;
    Buffer& operator=(Buffer&& other) noexcept;
    ~Buffer();

    cplx* data() { return data_; }
    const cplx* data() const { return data_; }
    std::size_t size() const { return size_; }

    /// Grows (never shrinks) to hold at least `size` values.
    void reserve(std::size_t size);

private:
    cplx* data_ = nullptr;
    std::size_t size_ = 0;
};

/// In-place batched transforms of `howmany` contiguous blocks of length `len`.
/// Buffers must come from `Buffer`. Plans are cached process-wide; execution
/// is safe from concurrent threads. The inverse is unnormalized.
void forward(cplx* data, Index len, Index howmany = 1);
void inverse(cplx* data, Index len, Index howmany = 1);

}  // namespace hscs::fft
