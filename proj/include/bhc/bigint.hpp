#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace bhc {

using BigInt = mpz_class;

inline BigInt big_from_u64(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }
inline BigInt big_from_i64(std::int64_t v) { return BigInt(static_cast<long>(v)); }

BigInt big_from_i128(__int128 v);
BigInt big_from_string(const std::string& digits);

/// Value as u64 when 0 <= v < 2^64.
std::optional<std::uint64_t> big_to_u64(const BigInt& v);
/// Value as i64 when it fits.
std::optional<std::int64_t> big_to_i64(const BigInt& v);

/// v mod m in [0, m), for m > 0.
std::uint64_t big_mod_u64(const BigInt& v, std::uint64_t m);

inline std::string big_to_string(const BigInt& v) { return v.get_str(); }

} // namespace bhc
