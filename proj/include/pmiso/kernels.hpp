#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Hot inner loops with a scalar reference implementation and SIMD variants
// chosen at runtime. Every variant must give bit-identical results.
namespace pmiso::kernels {

enum class Variant { kScalar, kAvx2 };

struct KernelTable {
  Variant variant;
  const char* name;
  // dst[i] = (dst[i] - factor * src[i]) mod p for i < len.
  // Requires p < 2^31, dst[i] < p, src[i] < p, factor < p.
  void (*mod_submul)(std::uint32_t* dst, const std::uint32_t* src, std::size_t len,
                     std::uint32_t factor, std::uint32_t p);
  // out[r] = sum_j rows[r * len + j] * w[j] for r < num_rows.
  // Requires w[j] < 2^31 and |sum| < 2^63 (callers bound it by ||y||_1 * max w).
  void (*dot_rows)(const std::int32_t* rows, std::size_t num_rows, std::size_t len,
                   const std::uint32_t* w, std::int64_t* out);
};

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();

// Table in use. Picked on first call: PMISO_KERNELS=scalar|avx2 if set, else
// the best supported variant.
const KernelTable& active();
// Forces a variant; returns false (and changes nothing) if unsupported.
bool select(Variant v);
bool parse_variant(std::string_view name, Variant& out);

}  // namespace pmiso::kernels
