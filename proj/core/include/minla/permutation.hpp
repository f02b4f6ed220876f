#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minla {

using NodeId = std::uint32_t;
using Position = std::uint32_t;
using Cost = std::uint64_t;

/// Number of unordered pairs among `n` items.
constexpr Cost choose2(Cost n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// A contiguous run of positions `[start, start + len)`.
struct BlockRange {
    Position start = 0;
    std::size_t len = 0;

    constexpr Position end() const noexcept { return start + static_cast<Position>(len); }
    friend constexpr bool operator==(const BlockRange&, const BlockRange&) = default;
};

/// Bijection between positions and node ids, stored in both directions.
///
/// `node_at(pos_of(v)) == v` holds for every node after every mutation. The
/// in-place edits below touch only the affected span of both tables and
/// return the number of adjacent swaps the edit is worth.
class Permutation {
public:
    Permutation() = default;

    /// Builds from a position -> node table; throws InvalidInput unless it is
    /// a permutation of `0..n-1`.
    explicit Permutation(std::vector<NodeId> node_at);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return node_at_.size(); }
    NodeId node_at(Position p) const { return node_at_[p]; }
    Position pos_of(NodeId v) const { return pos_of_[v]; }

    std::span<const NodeId> order() const noexcept { return node_at_; }
    std::span<const Position> positions() const noexcept { return pos_of_; }

    /// Slides `block` so that it starts at `dest_start`; the nodes it passes
    /// over shift the other way. Returns `len * |dest_start - start|`.
    Cost move_block_inplace(BlockRange block, Position dest_start);

    /// Reverses the nodes inside `block`; returns `C(len, 2)`.
    Cost reverse_block_inplace(BlockRange block);

    /// Overwrites positions `[start, start + nodes.size())` with `nodes`,
    /// which must be a rearrangement of the nodes already there. Returns the
    /// Kendall-tau distance of the change.
    Cost assign_block(Position start, std::span<const NodeId> nodes);

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.node_at_ == b.node_at_;
    }
    /// Lexicographic on the position -> node table.
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
        return a.node_at_ <=> b.node_at_;
    }

private:
    void check_block(BlockRange block) const;

    std::vector<NodeId> node_at_;
    std::vector<Position> pos_of_;
};

struct BlockEdit {
    Permutation result;
    Cost swap_cost = 0;
};

/// Number of inversions of `values` (pairs i < j with values[i] > values[j]),
/// by merge-based divide and conquer. `values` is left sorted.
Cost count_inversions(std::span<Position> values);

/// Number of unordered node pairs whose relative order differs between
/// `p` and `q`. O(n log n). Throws InstanceMismatch on a size mismatch.
Cost kendall_tau(const Permutation& p, const Permutation& q);

/// |L_p \ L_q|: ordered pairs (x, y) with x left of y in `p` but not in `q`.
/// Counted with a Fenwick tree, independently of `kendall_tau`.
Cost ordered_pairs_diff(const Permutation& p, const Permutation& q);

BlockEdit move_block(Permutation p, BlockRange block, Position dest_start);
BlockEdit reverse_block(Permutation p, BlockRange block);

/// Space-separated node ids in position order.
std::string to_string(const Permutation& p);
Permutation parse_permutation(std::string_view text);

}  // namespace minla
