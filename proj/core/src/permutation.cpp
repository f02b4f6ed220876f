#include "minla/permutation.hpp"

#include <algorithm>
#include <charconv>

#include "minla/errors.hpp"

namespace minla {

Permutation::Permutation(std::vector<NodeId> node_at) : node_at_(std::move(node_at)) {
    const auto n = node_at_.size();
    constexpr Position unset = ~Position{0};
    pos_of_.assign(n, unset);
    for (std::size_t p = 0; p < n; ++p) {
        const NodeId v = node_at_[p];
        if (v >= n) {
            throw InvalidInput("permutation entry " + std::to_string(v) + " out of range for n=" +
                               std::to_string(n));
        }
        if (pos_of_[v] != unset) {
            throw InvalidInput("permutation repeats node " + std::to_string(v));
        }
        pos_of_[v] = static_cast<Position>(p);
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<NodeId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
    return Permutation(std::move(order));
}

void Permutation::check_block(BlockRange block) const {
    if (block.start + block.len > size()) {
        throw InvalidInput("block [" + std::to_string(block.start) + ", +" +
                           std::to_string(block.len) + ") outside permutation of size " +
                           std::to_string(size()));
    }
}

Cost Permutation::move_block_inplace(BlockRange block, Position dest_start) {
    check_block(block);
    if (dest_start + block.len > size()) {
        throw InvalidInput("move destination " + std::to_string(dest_start) + " out of range");
    }
    if (dest_start == block.start) return 0;

    const Position lo = std::min(block.start, dest_start);
    const Position hi = std::max(block.start, dest_start) + static_cast<Position>(block.len);
    auto first = node_at_.begin() + lo;
    auto last = node_at_.begin() + hi;
    if (dest_start < block.start) {
        std::rotate(first, node_at_.begin() + block.start, last);
    } else {
        std::rotate(first, node_at_.begin() + block.end(), last);
    }
    for (Position p = lo; p < hi; ++p) pos_of_[node_at_[p]] = p;

    const Cost jumped = dest_start < block.start ? block.start - dest_start : dest_start - block.start;
    return static_cast<Cost>(block.len) * jumped;
}

Cost Permutation::reverse_block_inplace(BlockRange block) {
    check_block(block);
    std::reverse(node_at_.begin() + block.start, node_at_.begin() + block.end());
    for (Position p = block.start; p < block.end(); ++p) pos_of_[node_at_[p]] = p;
    return choose2(block.len);
}

Cost Permutation::assign_block(Position start, std::span<const NodeId> nodes) {
    const BlockRange block{start, nodes.size()};
    check_block(block);
    std::vector<Position> old_pos;
    old_pos.reserve(nodes.size());
    for (const NodeId v : nodes) {
        if (v >= size() || pos_of_[v] < block.start || pos_of_[v] >= block.end()) {
            throw InvalidInput("assign_block: node " + std::to_string(v) + " not inside the block");
        }
        old_pos.push_back(pos_of_[v]);
    }
    {
        auto sorted = old_pos;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidInput("assign_block: repeated node");
        }
    }
    const Cost cost = count_inversions(old_pos);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        node_at_[start + i] = nodes[i];
        pos_of_[nodes[i]] = static_cast<Position>(start + i);
    }
    return cost;
}

namespace {

Cost merge_count(std::span<Position> values, std::span<Position> scratch) {
    const std::size_t n = values.size();
    if (n < 2) return 0;
    const std::size_t mid = n / 2;
    Cost inv = merge_count(values.first(mid), scratch.first(mid)) +
               merge_count(values.subspan(mid), scratch.subspan(mid));
    std::size_t i = 0, j = mid, k = 0;
    while (i < mid && j < n) {
        if (values[j] < values[i]) {
            inv += mid - i;
            scratch[k++] = values[j++];
        } else {
            scratch[k++] = values[i++];
        }
    }
    while (i < mid) scratch[k++] = values[i++];
    while (j < n) scratch[k++] = values[j++];
    std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n), values.begin());
    return inv;
}

void require_same_size(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) {
        throw InstanceMismatch("permutations over different node counts (" + std::to_string(p.size()) +
                               " vs " + std::to_string(q.size()) + ")");
    }
}

}  // namespace

Cost count_inversions(std::span<Position> values) {
    std::vector<Position> scratch(values.size());
    return merge_count(values, scratch);
}

Cost kendall_tau(const Permutation& p, const Permutation& q) {
    require_same_size(p, q);
    std::vector<Position> seq(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) seq[i] = q.pos_of(p.node_at(static_cast<Position>(i)));
    return count_inversions(seq);
}

Cost ordered_pairs_diff(const Permutation& p, const Permutation& q) {
    require_same_size(p, q);
    const std::size_t n = p.size();
    // tree[i] counts already-visited nodes by their position in q (1-based).
    std::vector<std::uint32_t> tree(n + 1, 0);
    Cost diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t qpos = q.pos_of(p.node_at(static_cast<Position>(i))) + 1;
        Cost at_or_before = 0;
        for (std::size_t j = qpos; j > 0; j -= j & (~j + 1)) at_or_before += tree[j];
        // earlier in p, later in q
        diff += i - at_or_before;
        for (std::size_t j = qpos; j <= n; j += j & (~j + 1)) ++tree[j];
    }
    return diff;
}

BlockEdit move_block(Permutation p, BlockRange block, Position dest_start) {
    const Cost cost = p.move_block_inplace(block, dest_start);
    return {std::move(p), cost};
}

BlockEdit reverse_block(Permutation p, BlockRange block) {
    const Cost cost = p.reverse_block_inplace(block);
    return {std::move(p), cost};
}

std::string to_string(const Permutation& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(p.node_at(static_cast<Position>(i)));
    }
    return out;
}

Permutation parse_permutation(std::string_view text) {
    std::vector<NodeId> ids;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        if (i == text.size()) break;
        NodeId v = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc{} || (ptr != text.data() + text.size() && *ptr != ' ' && *ptr != '\t')) {
            throw InvalidInput("bad node id in permutation: '" + std::string(text) + "'");
        }
        ids.push_back(v);
        i = static_cast<std::size_t>(ptr - text.data());
    }
    return Permutation(std::move(ids));
}

}  // namespace minla
