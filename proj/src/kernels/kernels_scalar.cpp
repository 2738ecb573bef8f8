#include "pmiso/kernels.hpp"

namespace pmiso::kernels {
namespace {

void mod_submul_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t len,
                       std::uint32_t factor, std::uint32_t p) {
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t r = static_cast<std::uint64_t>(factor) * src[i] % p;
    std::uint64_t d = dst[i];
    dst[i] = static_cast<std::uint32_t>(d >= r ? d - r : d + p - r);
  }
}

void dot_rows_scalar(const std::int32_t* rows, std::size_t num_rows, std::size_t len,
                     const std::uint32_t* w, std::int64_t* out) {
  for (std::size_t r = 0; r < num_rows; ++r) {
    const std::int32_t* row = rows + r * len;
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < len; ++j) acc += static_cast<std::int64_t>(row[j]) * w[j];
    out[r] = acc;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Variant::kScalar, "scalar", &mod_submul_scalar,
                                 &dot_rows_scalar};
  return table;
}

}  // namespace pmiso::kernels
