#pragma once

#include "ershov/approximation.hpp"
#include "ershov/construction.hpp"
#include "ershov/partition.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ershov::detail {

struct Witness {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t cell() const { return cell_of(x, y); }
};

void check_dark_level(Kind variant, Notation const& level);
void check_dark_opponents(std::vector<ApproxTrace> const& opponents, Kind variant,
                          Notation const& level);

inline std::string const limit_note =
    "limit surrogate: every limit value is read at the supplying trace's own budget";

/// Cells joining the classes of u and v.
inline std::vector<std::uint64_t> cross_cells(Partition const& p, std::uint64_t u, std::uint64_t v)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t a : p.class_of(u)) {
        for (std::uint64_t b : p.class_of(v)) {
            out.push_back(cell_of(a, b));
        }
    }
    return out;
}

/// Collapses u and v in both the partition and the trace, one cell per
/// trace time. Returns the cells written.
inline std::vector<std::uint64_t> collapse_into(TraceBuilder& tb, Partition& p, std::uint64_t u,
                                                std::uint64_t v, Notation const& gamma)
{
    auto cells = cross_cells(p, u, v);
    for (std::uint64_t c : cells) {
        tb.set(c, true, gamma);
    }
    p.merge(u, v);
    return cells;
}

/// Largest point in the classes of u and v.
inline std::uint64_t class_max(Partition const& p, std::uint64_t x)
{
    return p.class_of(x).back();
}

inline nlohmann::json blocks_json(Partition const& p)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto const& b : p.blocks()) {
        if (b.size() > 1) {
            out.push_back(b);
        }
    }
    return out;
}

inline Requirement req(std::string kind, std::uint64_t index, std::string side,
                       std::uint64_t position)
{
    return Requirement{std::move(kind), index, std::move(side), position};
}

inline Requirement stage_step(std::uint64_t index = 0)
{
    return Requirement{"stage", index, "single", 0};
}

} // namespace ershov::detail
