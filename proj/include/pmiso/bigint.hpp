#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pmiso {

using BigInt = mpz_class;

inline BigInt big_from_u64(std::uint64_t x) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return r;
}

inline BigInt big_from_i64(std::int64_t x) {
  BigInt r = big_from_u64(x < 0 ? 0 - static_cast<std::uint64_t>(x)
                                 : static_cast<std::uint64_t>(x));
  if (x < 0) r = -r;
  return r;
}

// Caller guarantees 0 <= x < 2^64.
inline std::uint64_t big_to_u64(const BigInt& x) {
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, 1, sizeof(r), 0, 0, x.get_mpz_t());
  return r;
}

inline bool big_fits_u64(const BigInt& x) {
  return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt big_pow2(unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exp);
  return r;
}

inline std::size_t big_bit_length(const BigInt& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

// Exponent of the largest power of two dividing x; x must be nonzero.
inline std::size_t big_ord2(const BigInt& x) {
  return mpz_scan1(x.get_mpz_t(), 0);
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

}  // namespace pmiso
