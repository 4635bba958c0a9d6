#include "freecomm/series.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace freecomm {

namespace {

void require_same_order(int a, int b, const char* op)
{
    if (a != b) {
        throw std::invalid_argument(std::string(op) + ": order mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

std::size_t idx(int k) { return static_cast<std::size_t>(k); }

} // namespace

// ---------------------------------------------------------------- PowerSeries

PowerSeries::PowerSeries(int order)
{
    if (order < 1) {
        throw std::invalid_argument("PowerSeries order must be >= 1");
    }
    c_.assign(idx(order), Rat(0));
}

PowerSeries::PowerSeries(std::vector<Rat> coeffs)
    : c_(std::move(coeffs))
{
    if (c_.empty()) {
        throw std::invalid_argument("PowerSeries order must be >= 1");
    }
}

PowerSeries PowerSeries::identity(int order) { return monomial(order, 1); }

PowerSeries PowerSeries::monomial(int order, int k, const Rat& c)
{
    PowerSeries f(order);
    if (k >= 1 && k <= order) {
        f.c_[idx(k - 1)] = c;
    }
    return f;
}

const Rat& PowerSeries::coef(int n) const
{
    if (n < 1 || n > order()) {
        throw std::out_of_range("coefficient index " + std::to_string(n) + " outside [1, " +
                                std::to_string(order()) + "]");
    }
    return c_[idx(n - 1)];
}

Rat PowerSeries::coef_or_zero(int n) const
{
    if (n > order()) {
        return 0;
    }
    return coef(n);
}

bool PowerSeries::is_zero() const
{
    for (const auto& a : c_) {
        if (a != 0) {
            return false;
        }
    }
    return true;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& g)
{
    require_same_order(order(), g.order(), "add");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] += g.c_[k];
    }
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& g)
{
    require_same_order(order(), g.order(), "sub");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] -= g.c_[k];
    }
    return *this;
}

PowerSeries& PowerSeries::operator*=(const Rat& s)
{
    for (auto& a : c_) {
        a *= s;
    }
    return *this;
}

PowerSeries operator+(PowerSeries f, const PowerSeries& g) { return f += g; }
PowerSeries operator-(PowerSeries f, const PowerSeries& g) { return f -= g; }
PowerSeries operator-(PowerSeries f) { return f *= Rat(-1); }
PowerSeries operator*(const Rat& s, PowerSeries f) { return f *= s; }

PowerSeries operator*(const PowerSeries& f, const PowerSeries& g)
{
    require_same_order(f.order(), g.order(), "mul");
    const int n = f.order();
    std::vector<Rat> out(idx(n), Rat(0));
    for (int i = 1; i < n; ++i) {
        const Rat& a = f.coef(i);
        if (a == 0) {
            continue;
        }
        for (int j = 1; i + j <= n; ++j) {
            out[idx(i + j - 1)] += a * g.coef(j);
        }
    }
    return PowerSeries(std::move(out));
}

PowerSeries operator*(const PowerSeries& f, const UnitSeries& g)
{
    require_same_order(f.order(), g.order(), "mul");
    const int n = f.order();
    std::vector<Rat> out(idx(n), Rat(0));
    for (int i = 1; i <= n; ++i) {
        const Rat& a = f.coef(i);
        if (a == 0) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            out[idx(i + j - 1)] += a * g.coef(j);
        }
    }
    return PowerSeries(std::move(out));
}

PowerSeries operator/(const PowerSeries& f, const UnitSeries& g)
{
    return f * reciprocal(g);
}

// ----------------------------------------------------------------- UnitSeries

UnitSeries::UnitSeries(int order)
{
    if (order < 0) {
        throw std::invalid_argument("UnitSeries order must be >= 0");
    }
    c_.assign(idx(order + 1), Rat(0));
}

UnitSeries::UnitSeries(std::vector<Rat> coeffs)
    : c_(std::move(coeffs))
{
    if (c_.empty()) {
        throw std::invalid_argument("UnitSeries needs at least a constant term");
    }
}

UnitSeries UnitSeries::constant(int order, const Rat& c)
{
    UnitSeries f(order);
    f.c_[0] = c;
    return f;
}

UnitSeries UnitSeries::linear(int order, const Rat& c0, const Rat& c1)
{
    UnitSeries f = constant(order, c0);
    if (order >= 1) {
        f.c_[1] = c1;
    }
    return f;
}

const Rat& UnitSeries::coef(int n) const
{
    if (n < 0 || n > order()) {
        throw std::out_of_range("coefficient index " + std::to_string(n) + " outside [0, " +
                                std::to_string(order()) + "]");
    }
    return c_[idx(n)];
}

UnitSeries& UnitSeries::operator+=(const UnitSeries& g)
{
    require_same_order(order(), g.order(), "add");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] += g.c_[k];
    }
    return *this;
}

UnitSeries& UnitSeries::operator-=(const UnitSeries& g)
{
    require_same_order(order(), g.order(), "sub");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] -= g.c_[k];
    }
    return *this;
}

UnitSeries& UnitSeries::operator*=(const Rat& s)
{
    for (auto& a : c_) {
        a *= s;
    }
    return *this;
}

UnitSeries operator+(UnitSeries f, const UnitSeries& g) { return f += g; }
UnitSeries operator-(UnitSeries f, const UnitSeries& g) { return f -= g; }
UnitSeries operator-(UnitSeries f) { return f *= Rat(-1); }
UnitSeries operator*(const Rat& s, UnitSeries f) { return f *= s; }

UnitSeries operator*(const UnitSeries& f, const UnitSeries& g)
{
    require_same_order(f.order(), g.order(), "mul");
    const int n = f.order();
    std::vector<Rat> out(idx(n + 1), Rat(0));
    for (int i = 0; i <= n; ++i) {
        const Rat& a = f.coef(i);
        if (a == 0) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            out[idx(i + j)] += a * g.coef(j);
        }
    }
    return UnitSeries(std::move(out));
}

UnitSeries reciprocal(const UnitSeries& g)
{
    const Rat& g0 = g.constant_term();
    if (g0 == 0) {
        throw std::domain_error("division by a series with zero constant term");
    }
    const int n = g.order();
    std::vector<Rat> h(idx(n + 1), Rat(0));
    h[0] = 1 / g0;
    for (int k = 1; k <= n; ++k) {
        Rat s = 0;
        for (int j = 1; j <= k; ++j) {
            s += g.coef(j) * h[idx(k - j)];
        }
        h[idx(k)] = -s / g0;
    }
    return UnitSeries(std::move(h));
}

UnitSeries operator/(const UnitSeries& f, const UnitSeries& g)
{
    require_same_order(f.order(), g.order(), "div");
    return f * reciprocal(g);
}

UnitSeries pow(const UnitSeries& g, int n)
{
    if (n < 0) {
        return pow(reciprocal(g), -n);
    }
    UnitSeries result = UnitSeries::constant(g.order(), 1);
    UnitSeries b = g;
    while (n != 0) {
        if (n & 1) {
            result = result * b;
        }
        n >>= 1;
        if (n != 0) {
            b = b * b;
        }
    }
    return result;
}

UnitSeries to_unit(const PowerSeries& f)
{
    std::vector<Rat> c;
    c.reserve(idx(f.order() + 1));
    c.emplace_back(0);
    c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
    return UnitSeries(std::move(c));
}

PowerSeries to_power(const UnitSeries& f)
{
    if (f.constant_term() != 0) {
        throw std::domain_error("to_power: nonzero constant term");
    }
    if (f.order() < 1) {
        throw std::invalid_argument("to_power: order 0 series has no z-coefficients");
    }
    return PowerSeries(std::vector<Rat>(f.coeffs().begin() + 1, f.coeffs().end()));
}

// --------------------------------------------------------------- composition

namespace {

// Horner: f(g) = g (f1 + g (f2 + ... )).
std::vector<Rat> compose_into(const std::vector<Rat>& f0n, const PowerSeries& g)
{
    const int n = g.order();
    const UnitSeries gu = to_unit(g);
    UnitSeries acc = UnitSeries::constant(n, f0n.back());
    for (int k = static_cast<int>(f0n.size()) - 2; k >= 0; --k) {
        acc = acc * gu;
        acc += UnitSeries::constant(n, f0n[idx(k)]);
    }
    return acc.coeffs();
}

} // namespace

PowerSeries compose(const PowerSeries& f, const PowerSeries& g)
{
    require_same_order(f.order(), g.order(), "compose");
    std::vector<Rat> f0n;
    f0n.reserve(idx(f.order() + 1));
    f0n.emplace_back(0);
    f0n.insert(f0n.end(), f.coeffs().begin(), f.coeffs().end());
    return to_power(UnitSeries(compose_into(f0n, g)));
}

UnitSeries compose(const UnitSeries& f, const PowerSeries& g)
{
    require_same_order(f.order(), g.order(), "compose");
    return UnitSeries(compose_into(f.coeffs(), g));
}

PowerSeries comp_inverse(const PowerSeries& f)
{
    if (f.coef(1) == 0) {
        throw std::domain_error("comp_inverse: linear coefficient is zero");
    }
    const int n = f.order();
    if (n == 1) {
        return PowerSeries(std::vector<Rat>{1 / f.coef(1)});
    }
    // Lagrange: [w^k] f^{<-1>} = (1/k) [z^(k-1)] (z / f(z))^k.
    const UnitSeries phi = reciprocal(shift_div(f, 1)); // order n-1
    std::vector<Rat> out(idx(n));
    UnitSeries p = UnitSeries::constant(n - 1, 1);
    for (int k = 1; k <= n; ++k) {
        p = p * phi;
        out[idx(k - 1)] = p.coef(k - 1) / k;
    }
    return PowerSeries(std::move(out));
}

PowerSeries dilate(const PowerSeries& f, const Rat& lambda)
{
    std::vector<Rat> c = f.coeffs();
    Rat p = lambda;
    for (auto& a : c) {
        a *= p;
        p *= lambda;
    }
    return PowerSeries(std::move(c));
}

UnitSeries dilate(const UnitSeries& f, const Rat& lambda)
{
    std::vector<Rat> c = f.coeffs();
    Rat p = 1;
    for (auto& a : c) {
        a *= p;
        p *= lambda;
    }
    return UnitSeries(std::move(c));
}

UnitSeries shift_div(const UnitSeries& f, int k)
{
    const int n = f.order();
    if (k > 0) {
        if (k > n) {
            throw std::invalid_argument("shift_div: shift exceeds the truncation order");
        }
        for (int j = 0; j < k; ++j) {
            if (f.coef(j) != 0) {
                throw std::domain_error("shift_div: series not divisible by w^" + std::to_string(k));
            }
        }
        return UnitSeries(std::vector<Rat>(f.coeffs().begin() + k, f.coeffs().end()));
    }
    std::vector<Rat> c(idx(-k), Rat(0));
    c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
    return UnitSeries(std::move(c));
}

UnitSeries shift_div(const PowerSeries& f, int k) { return shift_div(to_unit(f), k); }

PowerSeries substitute_square(const PowerSeries& f, int order)
{
    if (order > 2 * f.order() + 1) {
        throw std::invalid_argument("substitute_square: order " + std::to_string(order) +
                                    " exceeds what f(z^2) determines");
    }
    std::vector<Rat> c(idx(order), Rat(0));
    for (int k = 1; 2 * k <= order; ++k) {
        c[idx(2 * k - 1)] = f.coef(k);
    }
    return PowerSeries(std::move(c));
}

PowerSeries even_coefficients(const PowerSeries& f)
{
    const int half = f.order() / 2;
    if (half < 1) {
        throw std::invalid_argument("even_coefficients: order must be >= 2");
    }
    std::vector<Rat> c(idx(half));
    for (int k = 1; k <= half; ++k) {
        c[idx(k - 1)] = f.coef(2 * k);
    }
    return PowerSeries(std::move(c));
}

PowerSeries truncate(const PowerSeries& f, int order)
{
    if (order < 1 || order > f.order()) {
        throw std::invalid_argument("truncate: order outside [1, " + std::to_string(f.order()) + "]");
    }
    return PowerSeries(std::vector<Rat>(f.coeffs().begin(), f.coeffs().begin() + order));
}

UnitSeries truncate(const UnitSeries& f, int order)
{
    if (order < 0 || order > f.order()) {
        throw std::invalid_argument("truncate: order outside [0, " + std::to_string(f.order()) + "]");
    }
    return UnitSeries(std::vector<Rat>(f.coeffs().begin(), f.coeffs().begin() + order + 1));
}

Rat coef_partition(const PowerSeries& f, const ncpart::Partition& pi)
{
    Rat p = 1;
    for (int s : pi.block_sizes()) {
        p *= f.coef(s);
        if (p == 0) {
            break;
        }
    }
    return p;
}

// ------------------------------------------------------------------ NCSeries2

NCSeries2::NCSeries2(int order)
    : order_(order)
{
    if (order < 1 || order > kMaxNCOrder) {
        throw std::out_of_range("NCSeries2 order " + std::to_string(order) + " outside [1, " +
                                std::to_string(kMaxNCOrder) + "]");
    }
    c_.assign((std::size_t{1} << (order + 1)) - 2, Rat(0));
}

std::size_t NCSeries2::index(int length, unsigned bits)
{
    return (std::size_t{1} << length) - 2 + bits;
}

std::size_t NCSeries2::index(const Word& w)
{
    unsigned bits = 0;
    for (int l : w) {
        bits = (bits << 1) | (l == 2 ? 1U : 0U);
    }
    return index(static_cast<int>(w.size()), bits);
}

Word NCSeries2::word(int length, unsigned bits)
{
    Word w(idx(length));
    for (int k = 0; k < length; ++k) {
        w[idx(k)] = ((bits >> (length - 1 - k)) & 1U) != 0 ? 2 : 1;
    }
    return w;
}

void NCSeries2::check_word(int length, unsigned bits) const
{
    if (length < 1 || length > order_) {
        throw std::out_of_range("word length " + std::to_string(length) + " outside [1, " +
                                std::to_string(order_) + "]");
    }
    if (bits >= (1U << length)) {
        throw std::out_of_range("word bits out of range");
    }
}

const Rat& NCSeries2::coef(int length, unsigned bits) const
{
    check_word(length, bits);
    return c_[index(length, bits)];
}

const Rat& NCSeries2::coef(const Word& w) const
{
    for (int l : w) {
        if (l != 1 && l != 2) {
            throw std::invalid_argument("word letters must be 1 or 2");
        }
    }
    check_word(static_cast<int>(w.size()), 0);
    return c_[index(w)];
}

void NCSeries2::set(int length, unsigned bits, Rat value)
{
    check_word(length, bits);
    c_[index(length, bits)] = std::move(value);
}

void NCSeries2::set(const Word& w, Rat value)
{
    (void)coef(w); // validation
    c_[index(w)] = std::move(value);
}

NCSeries2& NCSeries2::operator+=(const NCSeries2& g)
{
    require_same_order(order_, g.order_, "add");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] += g.c_[k];
    }
    return *this;
}

NCSeries2& NCSeries2::operator-=(const NCSeries2& g)
{
    require_same_order(order_, g.order_, "sub");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] -= g.c_[k];
    }
    return *this;
}

NCSeries2& NCSeries2::operator*=(const Rat& s)
{
    for (auto& a : c_) {
        a *= s;
    }
    return *this;
}

NCSeries2 operator+(NCSeries2 f, const NCSeries2& g) { return f += g; }
NCSeries2 operator-(NCSeries2 f, const NCSeries2& g) { return f -= g; }
NCSeries2 operator*(const Rat& s, NCSeries2 f) { return f *= s; }

Rat coef_word(const NCSeries2& f, const Word& w) { return f.coef(w); }

Rat coef_word(const NCSeries2& f, const Word& w, const ncpart::Partition& pi)
{
    if (pi.size() != static_cast<int>(w.size())) {
        throw std::invalid_argument("coef_word: partition size does not match word length");
    }
    Rat p = 1;
    for (const auto& block : pi.blocks()) {
        Word sub;
        sub.reserve(block.size());
        for (int i : block) {
            sub.push_back(w[idx(i - 1)]);
        }
        p *= f.coef(sub);
        if (p == 0) {
            break;
        }
    }
    return p;
}

PowerSeries diagonal(const NCSeries2& f, const Rat& s1, const Rat& s2)
{
    std::vector<Rat> out(idx(f.order()), Rat(0));
    for (int n = 1; n <= f.order(); ++n) {
        for (unsigned bits = 0; bits < (1U << n); ++bits) {
            const Rat& a = f.coef(n, bits);
            if (a == 0) {
                continue;
            }
            const int twos = std::popcount(bits);
            out[idx(n - 1)] += a * pow(s1, n - twos) * pow(s2, twos);
        }
    }
    return PowerSeries(std::move(out));
}

// --------------------------------------------------------------- text format

std::string to_string(const Word& w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k != 0) {
            s += ',';
        }
        s += static_cast<char>('0' + w[k]);
    }
    return s;
}

Word parse_word(std::string_view text)
{
    Word w;
    for (char c : text) {
        if (c == '1' || c == '2') {
            w.push_back(c - '0');
        } else if (c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("malformed word '" + std::string(text) + "'");
        }
    }
    if (w.empty()) {
        throw std::invalid_argument("empty word");
    }
    return w;
}

std::string to_text(const PowerSeries& f)
{
    std::ostringstream os;
    os << "order=" << f.order() << '\n';
    for (int n = 1; n <= f.order(); ++n) {
        os << n << ": " << to_string(f.coef(n)) << '\n';
    }
    return os.str();
}

std::string to_text(const UnitSeries& f)
{
    std::ostringstream os;
    os << "order=" << f.order() << '\n';
    for (int n = 0; n <= f.order(); ++n) {
        os << n << ": " << to_string(f.coef(n)) << '\n';
    }
    return os.str();
}

std::string to_text(const NCSeries2& f)
{
    std::ostringstream os;
    os << "order=" << f.order() << '\n';
    for (int n = 1; n <= f.order(); ++n) {
        for (unsigned bits = 0; bits < (1U << n); ++bits) {
            os << to_string(NCSeries2::word(n, bits)) << ": " << to_string(f.coef(n, bits)) << '\n';
        }
    }
    return os.str();
}

namespace {

struct ParsedText {
    int order = 0;
    std::vector<std::pair<std::string, std::string>> entries; // key, value
};

ParsedText parse_lines(std::string_view text)
{
    ParsedText out;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
            line.remove_prefix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!have_header) {
            if (line.substr(0, 6) != "order=") {
                throw std::invalid_argument("series text must start with 'order=N'");
            }
            try {
                out.order = std::stoi(std::string(line.substr(6)));
            } catch (const std::exception&) {
                throw std::invalid_argument("malformed order header");
            }
            have_header = true;
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("malformed series line '" + std::string(line) + "'");
        }
        out.entries.emplace_back(std::string(line.substr(0, colon)), std::string(line.substr(colon + 1)));
    }
    if (!have_header) {
        throw std::invalid_argument("series text has no 'order=N' header");
    }
    return out;
}

int parse_index(const std::string& key, int lo, int hi)
{
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(key, &used);
        if (used != key.size()) {
            throw std::invalid_argument("");
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed coefficient index '" + key + "'");
    }
    if (n < lo || n > hi) {
        throw std::invalid_argument("coefficient index " + key + " out of range");
    }
    return n;
}

} // namespace

PowerSeries power_series_from_text(std::string_view text)
{
    ParsedText p = parse_lines(text);
    std::vector<Rat> c(idx(std::max(p.order, 0)), Rat(0));
    PowerSeries check(p.order); // validates order
    for (const auto& [k, v] : p.entries) {
        c[idx(parse_index(k, 1, p.order) - 1)] = parse_rat(v);
    }
    return PowerSeries(std::move(c));
}

UnitSeries unit_series_from_text(std::string_view text)
{
    ParsedText p = parse_lines(text);
    UnitSeries check(p.order);
    std::vector<Rat> c(idx(p.order + 1), Rat(0));
    for (const auto& [k, v] : p.entries) {
        c[idx(parse_index(k, 0, p.order))] = parse_rat(v);
    }
    return UnitSeries(std::move(c));
}

NCSeries2 nc_series_from_text(std::string_view text)
{
    ParsedText p = parse_lines(text);
    NCSeries2 f(p.order);
    for (const auto& [k, v] : p.entries) {
        Word w = parse_word(k);
        if (static_cast<int>(w.size()) > p.order) {
            throw std::invalid_argument("word '" + k + "' longer than the order");
        }
        f.set(w, parse_rat(v));
    }
    return f;
}

} // namespace freecomm
