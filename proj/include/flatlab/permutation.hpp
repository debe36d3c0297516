#pragma once

#include <string>
#include <vector>

namespace flatlab {

// Labeled two-row permutation: top lists the domain intervals left to right,
// bottom lists their images left to right. Labels are 0..n-1.
struct Permutation {
    std::vector<int> top;
    std::vector<int> bottom;

    Permutation() = default;
    Permutation(std::vector<int> t, std::vector<int> b);

    int size() const { return static_cast<int>(top.size()); }
    int top_pos(int label) const;
    int bottom_pos(int label) const;
    // No proper prefix of top and bottom contains the same labels.
    bool irreducible() const;
    // Positions: pi(k) = top position of bottom[k].
    std::vector<int> one_line() const;
    std::string str() const;

    // Reversal permutation (n-1 ... 0 in the bottom row).
    static Permutation symmetric(int n);
    // Top = identity, bottom given as list of labels.
    static Permutation from_bottom(std::vector<int> bottom);

    bool operator==(const Permutation& o) const { return top == o.top && bottom == o.bottom; }
};

}  // namespace flatlab
