#include "wilson4/mont128.hpp"

#include "wilson4/errors.hpp"

namespace wilson4 {

Montgomery128::Montgomery128(u128 modulus) : n_(modulus) {
  if ((n_ & 1) == 0 || (n_ >> 127) != 0 || n_ < 3) {
    throw Error("Montgomery128 needs an odd modulus in [3, 2^127)");
  }
  u128 inv = n_;  // correct to 3 bits for odd n; Newton doubles each step
  for (int i = 0; i < 7; ++i) inv *= 2 - n_ * inv;
  ninv_ = -inv;
  one_ = (-n_) % n_;
  u128 r2 = one_;
  for (int i = 0; i < 128; ++i) r2 = add(r2, r2);
  r2_ = r2;
}

u128 Montgomery128::pow(u128 base_mont, std::uint64_t e) const {
  u128 r = one_;
  while (e != 0) {
    if (e & 1) r = mul(r, base_mont);
    base_mont = mul(base_mont, base_mont);
    e >>= 1;
  }
  return r;
}

u128 to_u128(const Integer& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 128) throw Error("value does not fit in 128 bits");
  u128 r = 0;
  std::size_t count = 0;
  std::uint64_t limbs[2] = {0, 0};
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  r = (static_cast<u128>(limbs[1]) << 64) | limbs[0];
  return r;
}

Integer from_u128(u128 v) {
  const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  Integer r;
  mpz_import(r.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  return r;
}

}  // namespace wilson4
