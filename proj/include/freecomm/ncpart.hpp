#pragma once

// Non-crossing partitions of {1..n}: enumeration, refinement order,
// Kreweras and epsilon-complementation, parity classes and the twist
// involutions on NCO(n).
//
// Ground-set elements are 1-based throughout, matching the usual notation.
// Errors: std::out_of_range for sizes outside the supported range,
// std::invalid_argument for mismatched or malformed arguments,
// std::domain_error for operations that are undefined on their input
// (twisting an NCE partition).

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freecomm::ncpart {

inline constexpr int kMaxGroundSet = 24;
inline constexpr int kMaxEnumerate = 14;

/// A set partition of {1..n}. Stored as a restricted-growth string: element i
/// carries the index of its block, blocks being numbered by increasing
/// minimum. Two partitions are equal iff they have the same blocks.
class Partition {
public:
    Partition() = default;

    /// Blocks may be given in any order, elements in any order; they must be
    /// disjoint, nonempty and cover {1..n}.
    static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
    /// Element i+1 goes to the block named labels[i]; names are arbitrary.
    static Partition from_labels(std::span<const int> labels);
    static Partition singletons(int n);
    static Partition one_block(int n);

    int size() const { return n_; }
    int block_count() const { return nblocks_; }
    /// Block index (0-based, by increasing block minimum) of element i in 1..n.
    int label(int i) const { return labels_[static_cast<std::size_t>(i - 1)]; }

    std::vector<std::vector<int>> blocks() const;
    /// Block sizes, in block order.
    std::vector<int> block_sizes() const;
    bool is_noncrossing() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

private:
    std::array<std::uint8_t, kMaxGroundSet> labels_{};
    std::uint8_t n_ = 0;
    std::uint8_t nblocks_ = 0;
};

/// A word (l_1, ..., l_n) over {1,2}.
class EpsSignature {
public:
    EpsSignature() = default;
    explicit EpsSignature(std::vector<int> letters);
    static EpsSignature constant(int n, int letter);
    /// The i-th word of length n in lexicographic order, i in [0, 2^n):
    /// bit (n-k) of i set means l_k = 2.
    static EpsSignature from_index(int n, unsigned index);

    int size() const { return static_cast<int>(letters_.size()); }
    /// Letter l_i, 1-based.
    int at(int i) const { return letters_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<int>& letters() const { return letters_; }
    /// d(eps): number of letters equal to 2.
    int twos() const;
    bool balanced() const { return 2 * twos() == size(); }

    friend bool operator==(const EpsSignature&, const EpsSignature&) = default;

private:
    std::vector<int> letters_;
};

enum class ParityClass { NCE, NCO };

/// All non-crossing partitions of {1..n}, 1 <= n <= kMaxEnumerate, in
/// lexicographic order of their restricted-growth strings.
std::vector<Partition> enumerate_nc(int n);

/// Refinement order: every block of rho is a union of blocks of pi.
bool leq(const Partition& pi, const Partition& rho);

Partition kreweras(const Partition& pi);
/// The epsilon-complement C_eps(pi).
Partition eps_complement(const EpsSignature& eps, const Partition& pi);

bool is_eps_alternating(const EpsSignature& eps, const Partition& pi);
ParityClass parity_class(const Partition& pi);

/// [min B_o, max B_o] for the odd block B_o with min, max of equal parity and
/// smallest minimum.
std::pair<int, int> twist_interval(const Partition& pi);
Partition twist(const Partition& pi);
std::pair<Partition, EpsSignature> twist_signed(const Partition& pi, const EpsSignature& eps);

/// `{{1,2},{3,4,5}}`
std::string to_string(const Partition& pi);
/// `11221`
std::string to_string(const EpsSignature& eps);
Partition parse_partition(std::string_view text);
EpsSignature parse_signature(std::string_view text);

} // namespace freecomm::ncpart
