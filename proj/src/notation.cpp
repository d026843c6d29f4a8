#include "ershov/notation.hpp"

#include <stdexcept>

namespace ershov {

Notation::Notation(std::vector<Term> terms)
    : terms_(std::move(terms))
{
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient == 0) {
            throw std::invalid_argument("notation: zero coefficient");
        }
        if (i > 0 && terms_[i].exponent >= terms_[i - 1].exponent) {
            throw std::invalid_argument("notation: exponents must strictly decrease");
        }
    }
}

Notation Notation::fin(std::uint64_t n)
{
    if (n == 0) {
        return {};
    }
    return Notation({Term{0, n}});
}

Notation Notation::omega_power(std::uint64_t exponent, std::uint64_t coefficient)
{
    if (coefficient == 0) {
        return {};
    }
    return Notation({Term{exponent, coefficient}});
}

bool Notation::is_finite() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

std::optional<std::uint64_t> Notation::finite_value() const noexcept
{
    if (terms_.empty()) {
        return 0;
    }
    if (is_finite()) {
        return terms_[0].coefficient;
    }
    return std::nullopt;
}

Notation Notation::successor() const
{
    Notation next = *this;
    if (!next.terms_.empty() && next.terms_.back().exponent == 0) {
        ++next.terms_.back().coefficient;
    }
    else {
        next.terms_.push_back(Term{0, 1});
    }
    return next;
}

std::string Notation::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (auto const& t : terms_) {
        if (!out.empty()) {
            out += '+';
        }
        if (t.exponent == 0) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += 'w';
        if (t.exponent > 1) {
            out += '^' + std::to_string(t.exponent);
        }
        if (t.coefficient > 1) {
            out += '*' + std::to_string(t.coefficient);
        }
    }
    return out;
}

std::strong_ordering cmp(Notation const& a, Notation const& b) noexcept
{
    return a <=> b;
}

std::optional<Notation> random_below(Notation const& a, std::mt19937_64& rng)
{
    auto const& src = a.terms();
    if (src.empty()) {
        return std::nullopt;
    }
    // Keep a prefix, shrink the next term's coefficient, then optionally
    // append something strictly smaller in exponent.
    std::uniform_int_distribution<std::size_t> pick_pos(0, src.size() - 1);
    std::size_t const k = pick_pos(rng);
    std::vector<Term> out(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(k));
    Term const t = src[k];
    std::uniform_int_distribution<std::uint64_t> pick_coeff(0, t.coefficient - 1);
    std::uint64_t const c = pick_coeff(rng);
    if (c > 0) {
        out.push_back(Term{t.exponent, c});
    }
    if (t.exponent > 0 && std::bernoulli_distribution(0.5)(rng)) {
        std::uniform_int_distribution<std::uint64_t> pick_exp(0, t.exponent - 1);
        std::uniform_int_distribution<std::uint64_t> pick_small(1, 4);
        out.push_back(Term{pick_exp(rng), pick_small(rng)});
    }
    return Notation(std::move(out));
}

} // namespace ershov
