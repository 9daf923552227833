#pragma once

#include <cstddef>
#include <cstdint>

namespace cc {

// Bit-set word kernels used by adjacency-row intersection counting.  A scalar
// reference implementation always exists; on x86-64 an AVX2 variant is
// compiled in a separate translation unit and selected at runtime after a CPU
// feature check.  Both variants must return identical results on all inputs
// (covered by an equivalence test).
enum class KernelVariant { auto_detect, scalar, avx2, neon };

// Number of set bits in a[i] & b[i] summed over n words.
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

// Number of set bits over n words.
std::uint64_t popcount_words(const std::uint64_t* a, std::size_t n);

// Number of set bits in (a[i] ^ b[i]) summed over n words (symmetric
// difference size when the words encode sets).
std::uint64_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

// Scalar reference implementations (always available, used by tests as the
// ground truth for the dispatched variants).
std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_words_scalar(const std::uint64_t* a, std::size_t n);
std::uint64_t xor_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

// Forces a particular variant for testing; auto_detect restores the runtime
// CPU-feature dispatch.  Returns the variant actually in effect afterwards
// (forcing an unavailable variant keeps scalar).
KernelVariant force_kernel_variant(KernelVariant v);

// The variant currently in effect.
KernelVariant active_kernel_variant();

const char* kernel_variant_name(KernelVariant v);

}  // namespace cc
