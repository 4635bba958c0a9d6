#include "freecomm/ncpart.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace freecomm::ncpart {

namespace {

void check_ground_size(int n)
{
    if (n < 0 || n > kMaxGroundSet) {
        throw std::out_of_range("partition ground set size " + std::to_string(n) +
                                " outside [0, " + std::to_string(kMaxGroundSet) + "]");
    }
}

void check_same_size(int a, int b, const char* what)
{
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

} // namespace

Partition Partition::from_labels(std::span<const int> labels)
{
    const int n = static_cast<int>(labels.size());
    check_ground_size(n);
    Partition p;
    p.n_ = static_cast<std::uint8_t>(n);
    std::vector<std::pair<int, int>> renaming; // raw name -> canonical index
    for (int i = 0; i < n; ++i) {
        int raw = labels[static_cast<std::size_t>(i)];
        auto it = std::find_if(renaming.begin(), renaming.end(),
                               [raw](const auto& kv) { return kv.first == raw; });
        int canon;
        if (it == renaming.end()) {
            canon = static_cast<int>(renaming.size());
            renaming.emplace_back(raw, canon);
        } else {
            canon = it->second;
        }
        p.labels_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(canon);
    }
    p.nblocks_ = static_cast<std::uint8_t>(renaming.size());
    return p;
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<int>>& blocks)
{
    check_ground_size(n);
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw std::invalid_argument("partition has an empty block");
        }
        for (int e : blocks[b]) {
            if (e < 1 || e > n) {
                throw std::invalid_argument("partition element " + std::to_string(e) +
                                            " outside {1.." + std::to_string(n) + "}");
            }
            auto& slot = labels[static_cast<std::size_t>(e - 1)];
            if (slot != -1) {
                throw std::invalid_argument("partition blocks are not disjoint (element " +
                                            std::to_string(e) + ")");
            }
            slot = static_cast<int>(b);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (labels[static_cast<std::size_t>(i)] == -1) {
            throw std::invalid_argument("partition blocks do not cover element " +
                                        std::to_string(i + 1));
        }
    }
    return from_labels(labels);
}

Partition Partition::singletons(int n)
{
    check_ground_size(n);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        labels[static_cast<std::size_t>(i)] = i;
    }
    return from_labels(labels);
}

Partition Partition::one_block(int n)
{
    check_ground_size(n);
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    return from_labels(labels);
}

std::vector<std::vector<int>> Partition::blocks() const
{
    std::vector<std::vector<int>> out(nblocks_);
    for (int i = 1; i <= n_; ++i) {
        out[static_cast<std::size_t>(label(i))].push_back(i);
    }
    return out;
}

std::vector<int> Partition::block_sizes() const
{
    std::vector<int> sizes(nblocks_, 0);
    for (int i = 1; i <= n_; ++i) {
        ++sizes[static_cast<std::size_t>(label(i))];
    }
    return sizes;
}

bool Partition::is_noncrossing() const
{
    // Two blocks cross iff their merged label sequence, with runs collapsed,
    // has length >= 4 (pattern c d c d).
    for (int c = 0; c < nblocks_; ++c) {
        for (int d = c + 1; d < nblocks_; ++d) {
            int runs = 0;
            int prev = -1;
            for (int i = 1; i <= n_; ++i) {
                int l = label(i);
                if (l != c && l != d) {
                    continue;
                }
                if (l != prev) {
                    ++runs;
                    prev = l;
                }
            }
            if (runs >= 4) {
                return false;
            }
        }
    }
    return true;
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b)
{
    if (auto c = a.n_ <=> b.n_; c != 0) {
        return c;
    }
    for (int i = 0; i < a.n_; ++i) {
        if (auto c = a.labels_[static_cast<std::size_t>(i)] <=> b.labels_[static_cast<std::size_t>(i)];
            c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

EpsSignature::EpsSignature(std::vector<int> letters)
    : letters_(std::move(letters))
{
    for (int l : letters_) {
        if (l != 1 && l != 2) {
            throw std::invalid_argument("epsilon signature letters must be 1 or 2");
        }
    }
}

EpsSignature EpsSignature::constant(int n, int letter)
{
    return EpsSignature(std::vector<int>(static_cast<std::size_t>(n), letter));
}

EpsSignature EpsSignature::from_index(int n, unsigned index)
{
    std::vector<int> letters(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        letters[static_cast<std::size_t>(k)] = ((index >> (n - 1 - k)) & 1U) != 0 ? 2 : 1;
    }
    return EpsSignature(std::move(letters));
}

int EpsSignature::twos() const
{
    return static_cast<int>(std::count(letters_.begin(), letters_.end(), 2));
}

std::vector<Partition> enumerate_nc(int n)
{
    if (n < 1 || n > kMaxEnumerate) {
        throw std::out_of_range("enumerate_nc: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxEnumerate) + "]");
    }
    std::vector<Partition> out;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::vector<int> block_min;  // first element (0-based) of each open block
    std::vector<int> block_last; // current last element (0-based)

    // Depth-first over restricted-growth strings; labels are tried in
    // increasing order, so output is lexicographic.
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.push_back(Partition::from_labels(labels));
            return;
        }
        const int nb = static_cast<int>(block_min.size());
        for (int b = 0; b <= nb; ++b) {
            if (b < nb) {
                // Joining b adds the chord (last(b), i); it crosses any block
                // with an element strictly between and one before last(b).
                const int last = block_last[static_cast<std::size_t>(b)];
                bool ok = true;
                for (int j = last + 1; j < i && ok; ++j) {
                    ok = block_min[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] > last;
                }
                if (!ok) {
                    continue;
                }
                labels[static_cast<std::size_t>(i)] = b;
                block_last[static_cast<std::size_t>(b)] = i;
                self(self, i + 1);
                block_last[static_cast<std::size_t>(b)] = last;
            } else {
                labels[static_cast<std::size_t>(i)] = b;
                block_min.push_back(i);
                block_last.push_back(i);
                self(self, i + 1);
                block_min.pop_back();
                block_last.pop_back();
            }
        }
    };
    rec(rec, 0);
    return out;
}

bool leq(const Partition& pi, const Partition& rho)
{
    check_same_size(pi.size(), rho.size(), "leq");
    std::vector<int> image(static_cast<std::size_t>(pi.block_count()), -1);
    for (int i = 1; i <= pi.size(); ++i) {
        int& target = image[static_cast<std::size_t>(pi.label(i))];
        if (target == -1) {
            target = rho.label(i);
        } else if (target != rho.label(i)) {
            return false;
        }
    }
    return true;
}

Partition eps_complement(const EpsSignature& eps, const Partition& pi)
{
    check_same_size(eps.size(), pi.size(), "eps_complement");
    if (!pi.is_noncrossing()) {
        throw std::invalid_argument("eps_complement: input partition is crossing");
    }
    const int n = pi.size();
    const int nb = pi.block_count();

    // Circular token sequence: slot i holds (P_i, Q_i) when l_i = 1 and
    // (Q_i, P_i) when l_i = 2.
    auto p_pos = [&](int i) { return 2 * (i - 1) + (eps.at(i) == 1 ? 0 : 1); };
    auto q_pos = [&](int i) { return 2 * (i - 1) + (eps.at(i) == 1 ? 1 : 0); };

    // gap[i][B]: which arc between consecutive P-points of block B holds Q_i.
    std::vector<int> gap(static_cast<std::size_t>(n * nb), 0);
    std::vector<int> bsize(static_cast<std::size_t>(nb), 0);
    for (int j = 1; j <= n; ++j) {
        ++bsize[static_cast<std::size_t>(pi.label(j))];
    }
    for (int i = 1; i <= n; ++i) {
        const int q = q_pos(i);
        int* row = &gap[static_cast<std::size_t>((i - 1) * nb)];
        for (int j = 1; j <= n; ++j) {
            if (p_pos(j) < q) {
                ++row[pi.label(j)];
            }
        }
        for (int b = 0; b < nb; ++b) {
            row[b] %= bsize[static_cast<std::size_t>(b)];
        }
    }

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int i = 1; i <= n; ++i) {
        if (labels[static_cast<std::size_t>(i - 1)] != -1) {
            continue;
        }
        labels[static_cast<std::size_t>(i - 1)] = next;
        const int* ri = &gap[static_cast<std::size_t>((i - 1) * nb)];
        for (int j = i + 1; j <= n; ++j) {
            const int* rj = &gap[static_cast<std::size_t>((j - 1) * nb)];
            if (std::equal(ri, ri + nb, rj)) {
                labels[static_cast<std::size_t>(j - 1)] = next;
            }
        }
        ++next;
    }
    return Partition::from_labels(labels);
}

Partition kreweras(const Partition& pi)
{
    return eps_complement(EpsSignature::constant(pi.size(), 1), pi);
}

bool is_eps_alternating(const EpsSignature& eps, const Partition& pi)
{
    check_same_size(eps.size(), pi.size(), "is_eps_alternating");
    for (const auto& block : pi.blocks()) {
        const std::size_t k = block.size();
        for (std::size_t m = 0; m < k; ++m) {
            if (eps.at(block[m]) == eps.at(block[(m + 1) % k])) {
                return false;
            }
        }
    }
    return true;
}

ParityClass parity_class(const Partition& pi)
{
    for (int s : pi.block_sizes()) {
        if (s % 2 != 0) {
            return ParityClass::NCO;
        }
    }
    return ParityClass::NCE;
}

std::pair<int, int> twist_interval(const Partition& pi)
{
    for (const auto& block : pi.blocks()) { // blocks come ordered by minimum
        if (block.size() % 2 == 1 && (block.front() - block.back()) % 2 == 0) {
            return {block.front(), block.back()};
        }
    }
    throw std::domain_error("twist_interval: partition " + to_string(pi) +
                            " has no odd block (it is in NCE)");
}

namespace {

int reflect(int i, std::pair<int, int> interval)
{
    auto [t0, t1] = interval;
    return (i >= t0 && i <= t1) ? t0 + t1 - i : i;
}

} // namespace

Partition twist(const Partition& pi)
{
    const auto interval = twist_interval(pi);
    std::vector<int> labels(static_cast<std::size_t>(pi.size()));
    for (int i = 1; i <= pi.size(); ++i) {
        labels[static_cast<std::size_t>(reflect(i, interval) - 1)] = pi.label(i);
    }
    return Partition::from_labels(labels);
}

std::pair<Partition, EpsSignature> twist_signed(const Partition& pi, const EpsSignature& eps)
{
    check_same_size(eps.size(), pi.size(), "twist_signed");
    const auto interval = twist_interval(pi);
    std::vector<int> letters(static_cast<std::size_t>(eps.size()));
    for (int i = 1; i <= eps.size(); ++i) {
        const int r = reflect(i, interval);
        letters[static_cast<std::size_t>(i - 1)] = r == i && (i < interval.first || i > interval.second)
                                                       ? eps.at(i)
                                                       : 3 - eps.at(r);
    }
    return {twist(pi), EpsSignature(std::move(letters))};
}

std::string to_string(const Partition& pi)
{
    std::string s = "{";
    bool first_block = true;
    for (const auto& block : pi.blocks()) {
        if (!first_block) {
            s += ",";
        }
        first_block = false;
        s += "{";
        for (std::size_t k = 0; k < block.size(); ++k) {
            if (k != 0) {
                s += ",";
            }
            s += std::to_string(block[k]);
        }
        s += "}";
    }
    s += "}";
    return s;
}

std::string to_string(const EpsSignature& eps)
{
    std::string s;
    for (int l : eps.letters()) {
        s += static_cast<char>('0' + l);
    }
    return s;
}

Partition parse_partition(std::string_view text)
{
    std::vector<std::vector<int>> blocks;
    int depth = 0;
    int max_elem = 0;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("malformed partition '" + std::string(text) + "': " + why);
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
        } else if (c == '{') {
            ++depth;
            if (depth == 2) {
                blocks.emplace_back();
            } else if (depth > 2) {
                fail("nesting too deep");
            }
            ++i;
        } else if (c == '}') {
            --depth;
            if (depth < 0) {
                fail("unbalanced braces");
            }
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (depth != 2) {
                fail("element outside a block");
            }
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > kMaxGroundSet) {
                    fail("element too large");
                }
                ++i;
            }
            blocks.back().push_back(v);
            max_elem = std::max(max_elem, v);
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    if (depth != 0) {
        fail("unbalanced braces");
    }
    return Partition::from_blocks(max_elem, blocks);
}

EpsSignature parse_signature(std::string_view text)
{
    std::vector<int> letters;
    for (char c : text) {
        if (c == '1' || c == '2') {
            letters.push_back(c - '0');
        } else if (c == ',' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
            continue;
        } else {
            throw std::invalid_argument("malformed epsilon signature '" + std::string(text) + "'");
        }
    }
    return EpsSignature(std::move(letters));
}

} // namespace freecomm::ncpart
