#pragma once

#include <optional>
#include <vector>

#include "pmiso/bigint.hpp"

namespace pmiso {

// An integer modulo 2^L stored as a sum of odd coefficients times powers of
// two with big-integer exponents. Terms are sorted by base with strictly
// increasing bases, so the valuation is the first base.
struct DyadicTerm {
  BigInt base;
  BigInt coeff;  // odd
};

class DyadicNumber {
 public:
  bool is_zero() const { return terms_.empty(); }
  // ord2 of the residue; nullopt for zero.
  std::optional<BigInt> valuation() const;
  const std::vector<DyadicTerm>& terms() const { return terms_; }

  // *this += sign * x * 2^shift, dropping everything at or above 2^cutoff.
  void add_shifted(const DyadicNumber& x, const BigInt& shift, int sign, const BigInt& cutoff);
  // *this += sign * 2^shift (below cutoff).
  void add_power(const BigInt& shift, int sign, const BigInt& cutoff);
  // Exact value as an integer; only sensible for small bases.
  BigInt to_integer() const;

 private:
  void merge_in(std::vector<DyadicTerm> incoming, const BigInt& cutoff);
  std::vector<DyadicTerm> terms_;
};

}  // namespace pmiso
