#pragma once

#include "dyadic/interval.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace dyadic::detail {

// Bottom-up reduction over the dyadic tree spanned by a sorted piece array.
//
//   State      default-constructible "empty subtree" value
//   leaf(v)    state of a single base-scale piece with value v
//   node(K,L,R) combined state of an interior interval from its halves;
//              called for every visited interval, bottom-up
//
// Subtrees with no pieces in them are skipped wholesale (every Haar
// coefficient there is identically zero, as is their contribution to any of
// the reductions built on this walk). Large mostly-full spans switch from
// recursion to an iterative level-by-level halving pass.
template <class State, class LeafFn, class NodeFn>
State walk_span(const DyadicInterval& K, int32_t base_scale, std::span<const int64_t> idx,
                std::span<const double> val, std::size_t lo, std::size_t hi, const LeafFn& leaf,
                const NodeFn& node) {
    if (lo == hi) return State{};
    if (K.scale == base_scale) return leaf(val[lo]);

    const int64_t d = int64_t(K.scale) - base_scale;
    const std::size_t count = hi - lo;
    if (d < 62 && count >= 4096 && (std::size_t(1) << d) <= 2 * count) {
        // Dense pass: one State per base slot (gaps filled with State{}),
        // then halve level by level.
        const std::size_t width = std::size_t(1) << d;
        const int64_t start = static_cast<int64_t>(__int128(K.index) << d);
        std::vector<State> cur(width);
        for (std::size_t i = lo; i < hi; ++i)
            cur[static_cast<std::size_t>(idx[i] - start)] = leaf(val[i]);
        int64_t level_start = start;
        for (int32_t t = base_scale + 1; t <= K.scale; ++t) {
            level_start >>= 1; // exact: level starts stay aligned
            const std::size_t w = cur.size() / 2;
            for (std::size_t j = 0; j < w; ++j)
                cur[j] = node(DyadicInterval{t, level_start + static_cast<int64_t>(j)},
                              cur[2 * j], cur[2 * j + 1]);
            cur.resize(w);
        }
        return cur[0];
    }

    const auto [L, R] = children(K);
    const int64_t mid = static_cast<int64_t>(__int128(R.index) << (d - 1));
    const std::size_t split = static_cast<std::size_t>(
        std::lower_bound(idx.begin() + lo, idx.begin() + hi, mid) - idx.begin());
    State sL = walk_span<State>(L, base_scale, idx, val, lo, split, leaf, node);
    State sR = walk_span<State>(R, base_scale, idx, val, split, hi, leaf, node);
    return node(K, sL, sR);
}

} // namespace dyadic::detail
