#include "pca/nat.hpp"

#include <algorithm>
#include <stdexcept>

namespace pca {

Nat cantor_pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& n) {
  // w = floor((sqrt(8n+1)-1)/2) is exact with integer sqrt.
  Nat t = 8 * n + 1;
  Nat r;
  mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
  Nat w = (r - 1) / 2;
  Nat b = n - w * (w + 1) / 2;
  Nat a = w - b;
  return {a, b};
}

Nat seq_encode(const std::vector<Nat>& xs) {
  Nat code = 0;
  for (const Nat& x : xs) code = cantor_pair(code, x) + 1;
  return code;
}

std::vector<Nat> seq_decode(const Nat& n) {
  std::vector<Nat> out;
  Nat cur = n;
  while (cur != 0) {
    auto [rest, last] = cantor_unpair(cur - 1);
    out.push_back(last);
    cur = rest;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Nat query_code(const Nat& coord, const std::vector<Nat>& prefix) {
  return cantor_pair(coord, seq_encode(prefix));
}

std::vector<bool> bits_of_nat(const Nat& n) {
  Nat m = n + 1;
  std::size_t len = mpz_sizeinbase(m.get_mpz_t(), 2);
  std::vector<bool> bits;
  if (len <= 1) return bits;  // n = 0 ↔ empty string
  bits.reserve(len - 1);
  for (std::size_t i = len - 1; i-- > 0;)
    bits.push_back(mpz_tstbit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0);
  return bits;
}

Nat nat_of_bits(const std::vector<bool>& bits) {
  Nat m = 1;
  for (bool b : bits) {
    m <<= 1;
    if (b) m += 1;
  }
  return m - 1;
}

std::string nat_brief(const Nat& n, std::size_t max_digits) {
  std::string s = n.get_str();
  if (s.size() <= max_digits) return s;
  return s.substr(0, 12) + "..." + s.substr(s.size() - 6) + "(" +
         std::to_string(s.size()) + " digits)";
}

bool fits_u64(const Nat& n) {
  return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Nat& n) {
  if (!fits_u64(n)) throw std::overflow_error("natural does not fit in u64: " + nat_brief(n));
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
  return mpz_get_ui(n.get_mpz_t());
}

}  // namespace pca
