#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pca {

using Nat = mpz_class;

// Cantor pairing pair(a,b) = (a+b)(a+b+1)/2 + b, the one pairing used at
// every protocol surface (two-argument programs, stage codes, query codes).
Nat cantor_pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> cantor_unpair(const Nat& n);

// Finite sequences of naturals: code([]) = 0, code(s ++ [x]) = pair(code(s), x) + 1.
Nat seq_encode(const std::vector<Nat>& xs);
std::vector<Nat> seq_decode(const Nat& n);

// Coordinate query q = pair(coord, seq_encode(prefix)) shared by the
// sequence-application surface.
Nat query_code(const Nat& coord, const std::vector<Nat>& prefix);

// Bijective binary: 0 ↔ "", 1 ↔ [0], 2 ↔ [1], 3 ↔ [0,0], ... Bits are
// most-significant-first. Inverse pair used by the program codec.
std::vector<bool> bits_of_nat(const Nat& n);
Nat nat_of_bits(const std::vector<bool>& bits);

// Decimal rendering for logs: the full value when it fits in max_digits,
// otherwise a deterministic elided preview (head...tail(#digits)).
std::string nat_brief(const Nat& n, std::size_t max_digits = 40);

// Narrowing with a loud failure instead of silent truncation.
std::uint64_t to_u64(const Nat& n);
bool fits_u64(const Nat& n);

}  // namespace pca
