#include "pmiso/dyadic.hpp"

#include <algorithm>

namespace pmiso {
namespace {

// Coefficient reduction is skipped when the room above a term is this large;
// the coefficients stay tiny relative to it anyway.
constexpr unsigned long kReduceRoomBits = 1ul << 16;
constexpr unsigned long kMergeSlackBits = 64;

void push_normalized(std::vector<DyadicTerm>& out, BigInt base, BigInt coeff,
                     const BigInt& cutoff) {
  if (sgn(coeff) == 0) return;
  std::size_t t = big_ord2(coeff);
  if (t > 0) {
    coeff >>= t;
    base += static_cast<unsigned long>(t);
  }
  if (base >= cutoff) return;
  BigInt room = cutoff - base;
  if (room < kReduceRoomBits) {
    unsigned long r = room.get_ui();
    if (big_bit_length(coeff) >= r) {
      mpz_fdiv_r_2exp(coeff.get_mpz_t(), coeff.get_mpz_t(), r);
      // Symmetric residue keeps magnitudes small for negative values.
      if (r > 1 && mpz_tstbit(coeff.get_mpz_t(), r - 1)) coeff -= big_pow2(r);
      if (sgn(coeff) == 0) return;
      std::size_t t2 = big_ord2(coeff);
      if (t2 > 0) {
        coeff >>= t2;
        base += static_cast<unsigned long>(t2);
      }
    }
  }
  out.push_back(DyadicTerm{std::move(base), std::move(coeff)});
}

}  // namespace

std::optional<BigInt> DyadicNumber::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().base;
}

void DyadicNumber::merge_in(std::vector<DyadicTerm> incoming, const BigInt& cutoff) {
  std::vector<DyadicTerm> all;
  all.reserve(terms_.size() + incoming.size());
  std::merge(std::make_move_iterator(terms_.begin()), std::make_move_iterator(terms_.end()),
             std::make_move_iterator(incoming.begin()), std::make_move_iterator(incoming.end()),
             std::back_inserter(all),
             [](const DyadicTerm& a, const DyadicTerm& b) { return a.base < b.base; });
  terms_.clear();
  if (all.empty()) return;
  BigInt cur_base = std::move(all[0].base);
  BigInt cur_coeff = std::move(all[0].coeff);
  BigInt gap;
  for (std::size_t i = 1; i < all.size(); ++i) {
    gap = all[i].base - cur_base;
    if (gap <= big_bit_length(cur_coeff) + kMergeSlackBits) {
      cur_coeff += all[i].coeff << static_cast<mp_bitcnt_t>(gap.get_ui());
    } else {
      push_normalized(terms_, std::move(cur_base), std::move(cur_coeff), cutoff);
      cur_base = std::move(all[i].base);
      cur_coeff = std::move(all[i].coeff);
    }
  }
  push_normalized(terms_, std::move(cur_base), std::move(cur_coeff), cutoff);
  // A normalization shift never passes the next base (the gap exceeded the
  // coefficient length), but two blocks can still land on the same base after
  // reduction; fold those.
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].base <= terms_[i - 1].base) {
      std::vector<DyadicTerm> again = std::move(terms_);
      terms_.clear();
      std::sort(again.begin(), again.end(),
                [](const DyadicTerm& a, const DyadicTerm& b) { return a.base < b.base; });
      merge_in(std::move(again), cutoff);
      return;
    }
  }
}

void DyadicNumber::add_shifted(const DyadicNumber& x, const BigInt& shift, int sign,
                               const BigInt& cutoff) {
  std::vector<DyadicTerm> incoming;
  incoming.reserve(x.terms_.size());
  for (const DyadicTerm& t : x.terms_) {
    BigInt b = t.base + shift;
    if (b >= cutoff) break;  // sorted: the rest are higher
    incoming.push_back(DyadicTerm{std::move(b), sign < 0 ? BigInt(-t.coeff) : t.coeff});
  }
  if (!incoming.empty()) merge_in(std::move(incoming), cutoff);
}

void DyadicNumber::add_power(const BigInt& shift, int sign, const BigInt& cutoff) {
  if (shift >= cutoff) return;
  std::vector<DyadicTerm> incoming;
  incoming.push_back(DyadicTerm{shift, BigInt(sign < 0 ? -1 : 1)});
  merge_in(std::move(incoming), cutoff);
}

BigInt DyadicNumber::to_integer() const {
  BigInt r = 0;
  for (const DyadicTerm& t : terms_) r += t.coeff << static_cast<mp_bitcnt_t>(t.base.get_ui());
  return r;
}

}  // namespace pmiso
