#include "cc/kernels.hpp"

#include <atomic>

namespace cc {

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return total;
}

std::uint64_t popcount_words_scalar(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return total;
}

std::uint64_t xor_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i] ^ b[i]));
  return total;
}

// ---------------------------------------------------------------------------
// AVX2 variants (separate translation unit, x86-64 only)
// ---------------------------------------------------------------------------

#if defined(CC_HAVE_AVX2_TU)
std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_words_avx2(const std::uint64_t* a, std::size_t n);
std::uint64_t xor_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
#endif

// ---------------------------------------------------------------------------
// NEON variants (aarch64: vcntq_u8 + horizontal add)
// ---------------------------------------------------------------------------

#if defined(__aarch64__)
#include <arm_neon.h>

namespace {

std::uint64_t neon_pop_pair(uint64x2_t v) {
  const uint8x16_t counts = vcntq_u8(vreinterpretq_u8_u64(v));
  return vaddvq_u8(counts);
}

}  // namespace

std::uint64_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t va = vld1q_u64(a + i);
    const uint64x2_t vb = vld1q_u64(b + i);
    total += neon_pop_pair(vandq_u64(va, vb));
  }
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return total;
}

std::uint64_t popcount_words_neon(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) total += neon_pop_pair(vld1q_u64(a + i));
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return total;
}

std::uint64_t xor_popcount_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t va = vld1q_u64(a + i);
    const uint64x2_t vb = vld1q_u64(b + i);
    total += neon_pop_pair(veorq_u64(va, vb));
  }
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i] ^ b[i]));
  return total;
}
#endif  // __aarch64__

// ---------------------------------------------------------------------------
// Runtime dispatch
// ---------------------------------------------------------------------------

namespace {

KernelVariant detect_variant() {
#if defined(CC_HAVE_AVX2_TU)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) return KernelVariant::avx2;
#endif
#if defined(__aarch64__)
  return KernelVariant::neon;
#endif
  return KernelVariant::scalar;
}

std::atomic<KernelVariant> g_variant{KernelVariant::auto_detect};

KernelVariant resolved_variant() {
  KernelVariant v = g_variant.load(std::memory_order_relaxed);
  if (v == KernelVariant::auto_detect) {
    v = detect_variant();
    g_variant.store(v, std::memory_order_relaxed);
  }
  return v;
}

}  // namespace

KernelVariant force_kernel_variant(KernelVariant v) {
  KernelVariant effective = v;
  if (v == KernelVariant::auto_detect) {
    effective = detect_variant();
  } else if (v == KernelVariant::avx2) {
#if defined(CC_HAVE_AVX2_TU)
    if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt"))) effective = KernelVariant::scalar;
#else
    effective = KernelVariant::scalar;
#endif
  } else if (v == KernelVariant::neon) {
#if !defined(__aarch64__)
    effective = KernelVariant::scalar;
#endif
  }
  g_variant.store(effective, std::memory_order_relaxed);
  return effective;
}

KernelVariant active_kernel_variant() { return resolved_variant(); }

const char* kernel_variant_name(KernelVariant v) {
  switch (v) {
    case KernelVariant::auto_detect: return "auto";
    case KernelVariant::scalar: return "scalar";
    case KernelVariant::avx2: return "avx2";
    case KernelVariant::neon: return "neon";
  }
  return "unknown";
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  switch (resolved_variant()) {
#if defined(CC_HAVE_AVX2_TU)
    case KernelVariant::avx2: return and_popcount_avx2(a, b, n);
#endif
#if defined(__aarch64__)
    case KernelVariant::neon: return and_popcount_neon(a, b, n);
#endif
    default: return and_popcount_scalar(a, b, n);
  }
}

std::uint64_t popcount_words(const std::uint64_t* a, std::size_t n) {
  switch (resolved_variant()) {
#if defined(CC_HAVE_AVX2_TU)
    case KernelVariant::avx2: return popcount_words_avx2(a, n);
#endif
#if defined(__aarch64__)
    case KernelVariant::neon: return popcount_words_neon(a, n);
#endif
    default: return popcount_words_scalar(a, n);
  }
}

std::uint64_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  switch (resolved_variant()) {
#if defined(CC_HAVE_AVX2_TU)
    case KernelVariant::avx2: return xor_popcount_avx2(a, b, n);
#endif
#if defined(__aarch64__)
    case KernelVariant::neon: return xor_popcount_neon(a, b, n);
#endif
    default: return xor_popcount_scalar(a, b, n);
  }
}

}  // namespace cc
