#include "freecomm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace freecomm {

Rat make_rat(long p, long q)
{
    if (q == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rat r(p, q);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    mpz_class z(std::string(s), 10);
    return neg ? mpz_class(-z) : z;
}

} // namespace

Rat parse_rat(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty rational");
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), text);
        mpz_class den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ipart = text.substr(0, dot);
        std::string_view fpart = text.substr(dot + 1);
        bool neg = !ipart.empty() && ipart.front() == '-';
        if (!ipart.empty() && (ipart.front() == '-' || ipart.front() == '+')) {
            ipart.remove_prefix(1);
        }
        if ((!ipart.empty() && !all_digits(ipart)) || (!fpart.empty() && !all_digits(fpart)) ||
            (ipart.empty() && fpart.empty())) {
            throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
        }
        std::string digits = std::string(ipart) + std::string(fpart);
        mpz_class num(digits.empty() ? std::string("0") : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fpart.size());
        Rat r(neg ? mpz_class(-num) : num, den);
        r.canonicalize();
        return r;
    }

    return Rat(parse_integer(text, text));
}

std::string to_string(const Rat& value)
{
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rat& value, int digits)
{
    if (digits < 0) {
        digits = 0;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rat scaled = abs(value) * scale;
    // round half up on the magnitude
    mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string s = q.get_str();
    if (static_cast<int>(s.size()) <= digits) {
        s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    if (digits > 0) {
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(value) < 0 && q != 0) {
        s.insert(0, "-");
    }
    return s;
}

Rat pow(const Rat& base, long exponent)
{
    if (exponent < 0) {
        if (base == 0) {
            throw std::domain_error("zero to a negative power");
        }
        return pow(Rat(1) / base, -exponent);
    }
    Rat result = 1;
    Rat b = base;
    auto e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1UL) {
            result *= b;
        }
        e >>= 1;
        if (e != 0) {
            b *= b;
        }
    }
    return result;
}

} // namespace freecomm
