#ifndef COVERING_RATIONAL_HPP_
#define COVERING_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace covering {

// Exact rational arithmetic for the periodicity/globality tests.
// Globality of a field on M_k is a number-theoretic property of k,
// so it must never go through floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }

    void reduce() {
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator*(std::int64_t s) const { return Rational(num * s, den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(num * o.den, den * o.num);
    }
    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    // Parses "p/q" or "p". Throws std::invalid_argument with the offending
    // column on malformed input.
    static Rational parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        std::size_t pos = 0;
        std::int64_t n = 0, d = 1;
        try {
            n = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational: bad numerator in '" + s + "'");
        }
        if (pos < s.size()) {
            if (s[pos] != '/')
                throw std::invalid_argument("Rational: unexpected character at column " +
                                            std::to_string(pos + 1) + " in '" + s + "'");
            std::size_t pos2 = 0;
            const std::string rest = s.substr(pos + 1);
            try {
                d = std::stoll(rest, &pos2);
            } catch (const std::exception&) {
                throw std::invalid_argument("Rational: bad denominator in '" + s + "'");
            }
            if (pos2 != rest.size())
                throw std::invalid_argument("Rational: trailing characters at column " +
                                            std::to_string(pos + 2 + pos2) + " in '" + s + "'");
        }
        return Rational(n, d);
    }
};

}  // namespace covering

#endif  // COVERING_RATIONAL_HPP_
