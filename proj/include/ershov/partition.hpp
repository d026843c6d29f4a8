#pragma once

#include "ershov/approximation.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ershov {

/// Total map on [0, size()); f[x] is the image of x.
using FiniteMap = std::vector<std::uint64_t>;

/// Equivalence relation on the naturals that is the identity outside
/// [0, support). Stored as the least element of each point's class.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::uint64_t support);

    /// Throws std::invalid_argument unless the blocks are disjoint,
    /// nonempty and cover [0, support) exactly.
    static Partition from_blocks(std::uint64_t support,
                                 std::vector<std::vector<std::uint64_t>> const& blocks);

    std::uint64_t support() const noexcept { return rep_.size(); }
    /// Least element of the class of x.
    std::uint64_t rep(std::uint64_t x) const noexcept { return x < rep_.size() ? rep_[x] : x; }
    bool related(std::uint64_t x, std::uint64_t y) const noexcept { return rep(x) == rep(y); }
    std::vector<std::uint64_t> class_of(std::uint64_t x) const;
    /// Blocks sorted by least element, each ascending.
    std::vector<std::vector<std::uint64_t>> blocks() const;
    std::uint64_t class_count() const;

    /// In-place collapse; the caller guarantees x, y < support.
    void merge(std::uint64_t x, std::uint64_t y);
    /// In-place split of z into a singleton.
    void isolate(std::uint64_t z);

    bool operator==(Partition const&) const = default;

private:
    std::vector<std::uint64_t> rep_;
};

Partition id_rel(std::uint64_t n);
/// Residues mod k on [0, n). Throws std::invalid_argument when k == 0.
Partition id_n(std::uint64_t k, std::uint64_t n);
Partition f_x(std::set<std::uint64_t> const& x, std::uint64_t n);
Partition q_from_set(std::set<std::uint64_t> const& a, std::uint64_t n);
/// Evens carry R, odds carry S.
Partition direct_sum(Partition const& r, Partition const& s);
/// Throws std::out_of_range outside the support, std::invalid_argument if x R y.
Partition collapse(Partition const& r, std::uint64_t x, std::uint64_t y);
/// Throws std::out_of_range outside the support, std::invalid_argument if [z] = {z}.
Partition split(Partition const& r, std::uint64_t z);
/// R plus a fresh identity copy on the odd numbers.
Partition plus_point(Partition const& r);

struct SplitReductions {
    Partition split;   ///< R_[z]
    Partition target;  ///< R (+) Id_1, all odd numbers in one class
    FiniteMap f;       ///< R_[z] -> target
    FiniteMap g;       ///< target -> R_[z]
};

SplitReductions build_split_reductions(Partition const& r, std::uint64_t z);

/// card(W_i n [0,s]) == card(W_j n [0,t]). Throws std::out_of_range on bad indices.
bool rb_equiv(std::vector<std::set<std::uint64_t>> const& w, std::size_t i, std::uint64_t s,
              std::size_t j, std::uint64_t t);

/// Lexicographically least f: [0, sup R) -> [0, range_bound) with
/// x R y <=> f(x) S f(y), if any.
std::optional<FiniteMap> reduce_exists(Partition const& r, Partition const& s,
                                       std::uint64_t range_bound);

/// Throws std::invalid_argument if f does not cover [0, sup R).
bool verify_reduction(FiniteMap const& f, Partition const& r, Partition const& s);

/// b, h(b), ..., h^budget(b), stopping before the first repeat.
/// Throws std::out_of_range if h is undefined where it must be applied.
std::vector<std::uint64_t> orbit(std::map<std::uint64_t, std::uint64_t> const& h, std::uint64_t b,
                                 std::uint64_t budget);

/// Least-first transversal of the final slice of a Pi relation trace.
/// Throws std::invalid_argument for other traces and std::domain_error if
/// some pair re-enters the relation.
std::vector<std::uint64_t> greedy_transversal(ApproxTrace const& trace, std::uint64_t k);

/// f(0) = g(0); f(n+1) = f(i) for the least i <= n with i S n+1, else g(n+1).
/// Throws std::out_of_range if g runs out first.
FiniteMap transversal_to_reduction(std::vector<std::uint64_t> const& g, Partition const& s);

struct InfTriple {
    Partition r;
    Partition s;
    Partition t;
};

/// R = F_X (+) Q, S = F_Y (+) Q, T = Id_2 (+) Q. X and Y must split [0, n)
/// into two nonempty parts, otherwise Id_2 cannot reduce to F_X.
InfTriple build_inf_triple(std::set<std::uint64_t> const& x, std::set<std::uint64_t> const& y,
                           std::uint64_t n, Partition const& q);

struct Poset {
    std::vector<std::vector<bool>> matrix;
    /// Catalog indices grouped into degrees, ordered by least member.
    std::vector<std::vector<std::size_t>> degrees;
    std::vector<std::size_t> degree_of;
    /// Covering pairs (lower, upper) between degrees.
    std::vector<std::pair<std::size_t, std::size_t>> hasse;

    std::string to_dot() const;
};

Poset poset(std::vector<Partition> const& catalog, std::uint64_t range_bound);

/// Some triple, ascending, on which the slice at time t is not transitive.
std::optional<std::array<std::uint64_t, 3>> transitivity_failure(ApproxTrace const& trace,
                                                                 std::uint64_t t);
/// Slice of a relation trace at time t. Throws std::domain_error when the
/// slice is not an equivalence relation.
Partition slice(ApproxTrace const& trace, std::uint64_t t);

std::string to_string(Partition const& p);

} // namespace ershov
