#pragma once

// Truncated formal power series over the rationals.
//
//   PowerSeries  a_1 z + ... + a_N z^N        (no constant term)
//   UnitSeries   c_0 + c_1 w + ... + c_N w^N  (constant term allowed)
//   NCSeries2    sum over words in {1,2} of length 1..N, noncommuting z1, z2
//
// Orders never change implicitly. Binary operations require equal orders and
// throw std::invalid_argument otherwise; shift_div, substitute_square and
// truncate are the only operations returning a different order.

#include "freecomm/ncpart.hpp"
#include "freecomm/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace freecomm {

inline constexpr int kDefaultOrder = 16;
inline constexpr int kMaxNCOrder = 10;

class UnitSeries;

class PowerSeries {
public:
    PowerSeries() = default;
    /// The zero series of order N >= 1.
    explicit PowerSeries(int order);
    /// coeffs[k] is the coefficient of z^(k+1); order = coeffs.size() >= 1.
    explicit PowerSeries(std::vector<Rat> coeffs);

    static PowerSeries identity(int order);
    /// c z^k truncated to `order` (zero when k > order).
    static PowerSeries monomial(int order, int k, const Rat& c = 1);

    int order() const { return static_cast<int>(c_.size()); }
    /// Coefficient of z^n, 1 <= n <= order; std::out_of_range otherwise.
    const Rat& coef(int n) const;
    /// Same as coef but returns 0 for n > order (n >= 1 still required).
    Rat coef_or_zero(int n) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;

    PowerSeries& operator+=(const PowerSeries& g);
    PowerSeries& operator-=(const PowerSeries& g);
    PowerSeries& operator*=(const Rat& s);

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<Rat> c_;
};

class UnitSeries {
public:
    UnitSeries() = default;
    /// The zero series with coefficients w^0..w^N.
    explicit UnitSeries(int order);
    /// coeffs[k] is the coefficient of w^k; order = coeffs.size() - 1 >= 0.
    explicit UnitSeries(std::vector<Rat> coeffs);

    static UnitSeries constant(int order, const Rat& c);
    /// c_0 + c_1 w, truncated.
    static UnitSeries linear(int order, const Rat& c0, const Rat& c1);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    /// Coefficient of w^n, 0 <= n <= order.
    const Rat& coef(int n) const;
    const Rat& constant_term() const { return c_.front(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    UnitSeries& operator+=(const UnitSeries& g);
    UnitSeries& operator-=(const UnitSeries& g);
    UnitSeries& operator*=(const Rat& s);

    friend bool operator==(const UnitSeries&, const UnitSeries&) = default;

private:
    std::vector<Rat> c_;
};

PowerSeries operator+(PowerSeries f, const PowerSeries& g);
PowerSeries operator-(PowerSeries f, const PowerSeries& g);
PowerSeries operator-(PowerSeries f);
PowerSeries operator*(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator*(const Rat& s, PowerSeries f);
PowerSeries operator*(const PowerSeries& f, const UnitSeries& g);
/// f / g for g with nonzero constant term; std::domain_error otherwise.
PowerSeries operator/(const PowerSeries& f, const UnitSeries& g);

UnitSeries operator+(UnitSeries f, const UnitSeries& g);
UnitSeries operator-(UnitSeries f, const UnitSeries& g);
UnitSeries operator-(UnitSeries f);
UnitSeries operator*(const UnitSeries& f, const UnitSeries& g);
UnitSeries operator*(const Rat& s, UnitSeries f);
UnitSeries operator/(const UnitSeries& f, const UnitSeries& g);

/// 1/g; std::domain_error when the constant term is zero.
UnitSeries reciprocal(const UnitSeries& g);
UnitSeries pow(const UnitSeries& g, int n);

/// Explicit conversions. to_power requires a zero constant term.
UnitSeries to_unit(const PowerSeries& f);
PowerSeries to_power(const UnitSeries& f);

/// f(g(z)), truncated to the common order.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g);
UnitSeries compose(const UnitSeries& f, const PowerSeries& g);

/// Compositional inverse; std::domain_error when coef(f,1) == 0.
PowerSeries comp_inverse(const PowerSeries& f);

/// f(lambda z): coefficient n scaled by lambda^n.
PowerSeries dilate(const PowerSeries& f, const Rat& lambda);
UnitSeries dilate(const UnitSeries& f, const Rat& lambda);

/// Division by w^k (k > 0) or multiplication by w^(-k) (k < 0). The result
/// order is the input order minus k. Division requires the removed
/// coefficients to vanish (std::domain_error otherwise).
UnitSeries shift_div(const UnitSeries& f, int k);
UnitSeries shift_div(const PowerSeries& f, int k);

/// f(z^2) as a series of order `order`, which may not exceed 2 f.order() + 1.
PowerSeries substitute_square(const PowerSeries& f, int order);
/// The series with coefficients of z^(2n), n = 1..floor(order/2).
PowerSeries even_coefficients(const PowerSeries& f);
PowerSeries truncate(const PowerSeries& f, int order);
UnitSeries truncate(const UnitSeries& f, int order);

/// Product of coef(f, |B|) over the blocks B of pi.
Rat coef_partition(const PowerSeries& f, const ncpart::Partition& pi);

/// A word over {1,2}, letters stored as 1 or 2.
using Word = std::vector<int>;

class NCSeries2 {
public:
    NCSeries2() = default;
    /// The zero series with all words of length 1..N, 1 <= N <= kMaxNCOrder.
    explicit NCSeries2(int order);

    int order() const { return order_; }

    /// Dense index of a word: 2^L - 2 + bits, with the first letter as the
    /// most significant bit and letter 2 encoded as a set bit.
    static std::size_t index(int length, unsigned bits);
    static std::size_t index(const Word& w);
    static Word word(int length, unsigned bits);

    const Rat& coef(const Word& w) const;
    const Rat& coef(int length, unsigned bits) const;
    void set(const Word& w, Rat value);
    void set(int length, unsigned bits, Rat value);

    NCSeries2& operator+=(const NCSeries2& g);
    NCSeries2& operator-=(const NCSeries2& g);
    NCSeries2& operator*=(const Rat& s);

    const std::vector<Rat>& raw() const { return c_; }

    friend bool operator==(const NCSeries2&, const NCSeries2&) = default;

private:
    void check_word(int length, unsigned bits) const;

    int order_ = 0;
    std::vector<Rat> c_;
};

NCSeries2 operator+(NCSeries2 f, const NCSeries2& g);
NCSeries2 operator-(NCSeries2 f, const NCSeries2& g);
NCSeries2 operator*(const Rat& s, NCSeries2 f);

/// Coefficient of the word, or the product over blocks B of pi of the
/// coefficients of the word restricted to B.
Rat coef_word(const NCSeries2& f, const Word& w);
Rat coef_word(const NCSeries2& f, const Word& w, const ncpart::Partition& pi);

/// F(s1 z, s2 z): coefficient n is the sum over words of length n of
/// s1^(#1) s2^(#2) times the word coefficient.
PowerSeries diagonal(const NCSeries2& f, const Rat& s1, const Rat& s2);

std::string to_text(const PowerSeries& f);
std::string to_text(const UnitSeries& f);
std::string to_text(const NCSeries2& f);
/// Inverses of to_text; std::invalid_argument on malformed input.
PowerSeries power_series_from_text(std::string_view text);
UnitSeries unit_series_from_text(std::string_view text);
NCSeries2 nc_series_from_text(std::string_view text);

std::string to_string(const Word& w);
Word parse_word(std::string_view text);

} // namespace freecomm
