#include "dutchbook/rational.hpp"

#include <cctype>
#include <cstddef>
#include <stdexcept>

namespace dutchbook {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rat parse_rational(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos)
        throw std::invalid_argument("empty rational literal");
    std::string s = text.substr(begin, end - begin + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty())
        throw std::invalid_argument("malformed rational literal '" + text + "'");

    Rat magnitude;
    if (std::size_t slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed fraction literal '" + text + "'");
        Int d(den);
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + text + "'");
        magnitude = Rat(Int(num), d);
    } else if (std::size_t dot = s.find('.'); dot != std::string::npos) {
        std::string ipart = s.substr(0, dot);
        std::string fpart = s.substr(dot + 1);
        if (ipart.empty() && fpart.empty())
            throw std::invalid_argument("malformed decimal literal '" + text + "'");
        if (!ipart.empty() && !all_digits(ipart))
            throw std::invalid_argument("malformed decimal literal '" + text + "'");
        if (!fpart.empty() && !all_digits(fpart))
            throw std::invalid_argument("malformed decimal literal '" + text + "'");
        Int num = ipart.empty() ? Int(0) : Int(ipart);
        Int den = 1;
        for (char c : fpart) {
            num *= 10;
            num += (c - '0');
            den *= 10;
        }
        magnitude = Rat(num, den);
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        magnitude = Rat(Int(s));
    }
    return negative ? Rat(-magnitude) : magnitude;
}

std::string to_string(const Rat& value) {
    Int num = numerator(value);
    Int den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rat& value, unsigned digits) {
    Int num = numerator(value);
    Int den = denominator(value);
    bool negative = num < 0;
    if (negative) num = -num;

    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;

    // Round half to even on the scaled magnitude.
    Int scaled_num = num * scale;
    Int quotient = scaled_num / den;
    Int remainder = scaled_num % den;
    Int twice = remainder * 2;
    if (twice > den || (twice == den && quotient % 2 != 0)) quotient += 1;

    std::string body = quotient.str();
    std::string out;
    if (negative && quotient != 0) out += '-';
    if (digits == 0) {
        out += body;
    } else {
        if (body.size() <= digits)
            body.insert(0, digits + 1 - body.size(), '0');
        out += body.substr(0, body.size() - digits);
        out += '.';
        out += body.substr(body.size() - digits);
    }
    return out;
}

Rat pow_rat(const Rat& base, unsigned long long exponent) {
    Rat result = 1;
    Rat factor = base;
    unsigned long long e = exponent;
    while (e > 0) {
        if (e & 1ULL) result *= factor;
        e >>= 1ULL;
        if (e > 0) factor *= factor;
    }
    return result;
}

Int common_denominator(const std::vector<Rat>& values) {
    Int acc = 1;
    for (const Rat& v : values)
        acc = lcm(acc, Int(denominator(v)));
    return acc;
}

} // namespace dutchbook
