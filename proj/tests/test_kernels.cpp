#include "cc/kernels.hpp"

#include "cc/rng.hpp"
#include "doctest.h"

#include <vector>

using namespace cc;

namespace {

std::vector<std::uint64_t> random_words(Rng& rng, std::size_t n) {
  std::vector<std::uint64_t> out(n);
  for (auto& w : out) w = rng.next_u64();
  return out;
}

}  // namespace

TEST_CASE("scalar kernels match a bit-by-bit count") {
  Rng rng(1);
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{8}}) {
    const auto a = random_words(rng, n);
    const auto b = random_words(rng, n);
    std::uint64_t expect_and = 0, expect_xor = 0, expect_pop = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (int bit = 0; bit < 64; ++bit) {
        const std::uint64_t m = 1ULL << bit;
        if ((a[i] & b[i]) & m) ++expect_and;
        if ((a[i] ^ b[i]) & m) ++expect_xor;
        if (a[i] & m) ++expect_pop;
      }
    }
    CHECK(and_popcount_scalar(a.data(), b.data(), n) == expect_and);
    CHECK(xor_popcount_scalar(a.data(), b.data(), n) == expect_xor);
    CHECK(popcount_words_scalar(a.data(), n) == expect_pop);
  }
}

TEST_CASE("dispatched variants agree with the scalar reference") {
  Rng rng(7);
  const KernelVariant variants[] = {KernelVariant::scalar, KernelVariant::avx2, KernelVariant::neon};
  for (std::size_t n = 0; n <= 17; ++n) {
    const auto a = random_words(rng, n);
    const auto b = random_words(rng, n);
    const std::uint64_t ref_and = and_popcount_scalar(a.data(), b.data(), n);
    const std::uint64_t ref_xor = xor_popcount_scalar(a.data(), b.data(), n);
    const std::uint64_t ref_pop = popcount_words_scalar(a.data(), n);
    for (KernelVariant v : variants) {
      const KernelVariant effective = force_kernel_variant(v);
      INFO("variant ", kernel_variant_name(effective), " words ", n);
      CHECK(and_popcount(a.data(), b.data(), n) == ref_and);
      CHECK(xor_popcount(a.data(), b.data(), n) == ref_xor);
      CHECK(popcount_words(a.data(), n) == ref_pop);
    }
  }
  force_kernel_variant(KernelVariant::auto_detect);
}

TEST_CASE("forcing an unavailable variant falls back to scalar") {
#if !defined(__aarch64__)
  CHECK(force_kernel_variant(KernelVariant::neon) == KernelVariant::scalar);
#endif
  const KernelVariant restored = force_kernel_variant(KernelVariant::auto_detect);
  CHECK(restored == active_kernel_variant());
}

TEST_CASE("rng produces deterministic streams and unbiased-bounded draws") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c(42);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t r = c.below(13);
    CHECK(r < 13);
    const double x = c.real01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    const double y = c.real01_open_zero();
    CHECK(y > 0.0);
    CHECK(y <= 1.0);
  }
  CHECK(c.below(1) == 0);
  CHECK(c.below(0) == 0);

  CHECK(derive_seed(1, "x", 0) != derive_seed(1, "x", 1));
  CHECK(derive_seed(1, "x", 0) != derive_seed(1, "y", 0));
  CHECK(derive_seed(1, "x", 5) == derive_seed(1, "x", 5));
}
