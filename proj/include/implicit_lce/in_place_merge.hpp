#pragma once

#include <algorithm>
#include <iterator>

namespace implicit_lce {

// Stable merge of the sorted runs [first, mid) and [mid, last) without a
// buffer: binary-search a split, rotate, recurse on both sides.
// O(1) extra words plus O(log n) recursion, O(n log n) comparisons.
template <class It, class Less>
void in_place_merge(It first, It mid, It last, Less less) {
    using D = typename std::iterator_traits<It>::difference_type;
    D const a = 0;
    D const m = mid - first;
    D const b = last - first;
    if (m == a || m == b) return;

    if (m - a == 1) {
        D i = m, j = b;
        while (i < j) {
            D const h = i + (j - i) / 2;
            if (less(first[h], first[a]))
                i = h + 1;
            else
                j = h;
        }
        std::rotate(first + a, first + m, first + i);
        return;
    }
    if (b - m == 1) {
        D i = a, j = m;
        while (i < j) {
            D const h = i + (j - i) / 2;
            if (!less(first[m], first[h]))
                i = h + 1;
            else
                j = h;
        }
        std::rotate(first + i, first + m, first + b);
        return;
    }

    D const half = (a + b) / 2;
    D const n = half + m;
    D start, r;
    if (m > half) {
        start = n - b;
        r = half;
    } else {
        start = a;
        r = m;
    }
    D const p = n - 1;
    while (start < r) {
        D const c = start + (r - start) / 2;
        if (!less(first[p - c], first[c]))
            start = c + 1;
        else
            r = c;
    }
    D const end = n - start;
    if (start < m && m < end) std::rotate(first + start, first + m, first + end);
    if (a < start && start < half) in_place_merge(first + a, first + start, first + half, less);
    if (half < end && end < b) in_place_merge(first + half, first + end, first + b, less);
}

} // namespace implicit_lce
