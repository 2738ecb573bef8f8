#include <atomic>
#include <cstdlib>

#include "pmiso/kernels.hpp"

namespace pmiso::kernels {

#if defined(PMISO_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable& pick_default() {
  if (const char* env = std::getenv("PMISO_KERNELS")) {
    Variant v;
    if (parse_variant(env, v)) {
      if (v == Variant::kScalar) return scalar_table();
      if (const KernelTable* t = avx2_table()) return *t;
    }
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(PMISO_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  if (supported) return &avx2_table_unchecked();
#endif
  return nullptr;
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = &pick_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

bool select(Variant v) {
  const KernelTable* t = v == Variant::kScalar ? &scalar_table() : avx2_table();
  if (t == nullptr) return false;
  g_active.store(t, std::memory_order_release);
  return true;
}

bool parse_variant(std::string_view name, Variant& out) {
  if (name == "scalar") {
    out = Variant::kScalar;
    return true;
  }
  if (name == "avx2") {
    out = Variant::kAvx2;
    return true;
  }
  return false;
}

}  // namespace pmiso::kernels
