#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ershov {

/// One Cantor-normal-form summand omega^exponent * coefficient.
struct Term {
    std::uint64_t exponent = 0;
    std::uint64_t coefficient = 1;

    auto operator<=>(Term const&) const = default;
};

/// Ordinal notation below omega^omega in Cantor normal form.
///
/// Terms are kept with strictly decreasing exponents and positive
/// coefficients, so every ordinal in range has exactly one notation and
/// comparison is lexicographic on the term list. The empty list is 0, the
/// least notation (the role Kleene's notation 1 plays for |1| = 0).
class Notation {
public:
    Notation() = default;

    /// Throws std::invalid_argument unless the terms are in normal form.
    explicit Notation(std::vector<Term> terms);

    static Notation fin(std::uint64_t n);
    static Notation omega_power(std::uint64_t exponent, std::uint64_t coefficient = 1);
    static Notation omega() { return omega_power(1); }

    std::vector<Term> const& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_finite() const noexcept;
    /// The natural number denoted, when finite.
    std::optional<std::uint64_t> finite_value() const noexcept;

    Notation successor() const;

    /// Human form, e.g. "w^2*3+w+4"; "0" for the empty notation.
    std::string to_string() const;

    friend std::strong_ordering operator<=>(Notation const& a, Notation const& b) noexcept
    {
        return a.terms_ <=> b.terms_;
    }
    friend bool operator==(Notation const&, Notation const&) = default;

private:
    std::vector<Term> terms_;
};

std::strong_ordering cmp(Notation const& a, Notation const& b) noexcept;

/// A notation strictly below `a`, drawn from `rng`; nullopt when `a` is 0.
std::optional<Notation> random_below(Notation const& a, std::mt19937_64& rng);

} // namespace ershov
