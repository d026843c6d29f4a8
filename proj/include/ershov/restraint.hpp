#pragma once

#include "ershov/approximation.hpp"
#include "ershov/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace ershov {

/// First `len` bits of the characteristic function of p over ordered
/// pair codes: bit pair_code(x, y) is 1 iff x p y.
Bits char_prefix(Partition const& p, std::uint64_t len);

bool is_prefix(Bits const& a, Bits const& b);

/// {(x, y) : s(<x, y>) = 1} together with the identity is an equivalence
/// relation.
bool is_equivalence_string(Bits const& s);

/// Least equivalence string of length >= min_len that extends `base` and
/// agrees with `forced`, relating nothing outside [0, n). Diagonal
/// positions are filled with 1 so the result is an initial segment of a
/// characteristic function. Shorter beats longer; at equal length the
/// lexicographically least string wins. nullopt when no such string exists.
std::optional<Bits> least_extension(Bits const& base, std::map<std::uint64_t, bool> const& forced,
                                    std::uint64_t min_len, std::uint64_t n);

/// T_s restricted to [0, n).
Partition string_relation(Bits const& s, std::uint64_t n);

std::string to_string(Bits const& s);
Bits bits_from_string(std::string const& s);

} // namespace ershov
