#include "bhc/bigint.hpp"

#include "bhc/errors.hpp"

namespace bhc {

BigInt big_from_i128(__int128 v) {
    const bool negative = v < 0;
    unsigned __int128 m = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
    BigInt r = (hi << 64) + lo;
    return negative ? BigInt(-r) : r;
}

BigInt big_from_string(const std::string& digits) {
    BigInt r;
    if (r.set_str(digits, 10) != 0) throw DomainError("not an integer: '" + digits + "'");
    return r;
}

std::optional<std::uint64_t> big_to_u64(const BigInt& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
    return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

std::optional<std::int64_t> big_to_i64(const BigInt& v) {
    if (!mpz_fits_slong_p(v.get_mpz_t())) return std::nullopt;
    return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

std::uint64_t big_mod_u64(const BigInt& v, std::uint64_t m) {
    return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

} // namespace bhc
