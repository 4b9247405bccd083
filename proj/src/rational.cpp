#include "srr/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace srr {

Rat rat_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
    Rat r;
    mpq_set_d(r.get_mpq_t(), v);
    return r;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// integer part "." fraction part, both possibly empty but not both,
// followed by an optional exponent.
Rat parse_decimal(std::string_view s) {
    int exponent = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        std::string_view exp = s.substr(epos + 1);
        bool neg = false;
        if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
            neg = exp[0] == '-';
            exp.remove_prefix(1);
        }
        if (!all_digits(exp) || exp.size() > 6)
            throw std::invalid_argument("bad exponent");
        for (char c : exp) exponent = exponent * 10 + (c - '0');
        if (neg) exponent = -exponent;
        s = s.substr(0, epos);
    }
    std::string digits;
    int frac_digits = 0;
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        if (!all_digits(s)) throw std::invalid_argument("bad number");
        digits = std::string(s);
    } else {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw std::invalid_argument("bad number");
        if (!ip.empty() && !all_digits(ip)) throw std::invalid_argument("bad number");
        if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("bad number");
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<int>(fp.size());
    }
    if (digits.empty()) throw std::invalid_argument("bad number");
    mpz_class num(digits, 10);
    Rat r(num);
    int shift = exponent - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
    if (shift >= 0)
        r *= Rat(pow10);
    else
        r /= Rat(pow10);
    return r;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty number");

    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) throw std::invalid_argument("empty number");

    Rat value;
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view ns = text.substr(0, slash), ds = text.substr(slash + 1);
        if (!all_digits(ns) || !all_digits(ds))
            throw std::invalid_argument("bad fraction");
        mpz_class n(std::string(ns), 10), d(std::string(ds), 10);
        if (d == 0) throw std::invalid_argument("zero denominator");
        value = Rat(n, d);
        value.canonicalize();
    } else {
        value = parse_decimal(text);
    }
    return negative ? Rat(-value) : value;
}

std::string to_string(const Rat& v) { return v.get_str(); }

std::string to_decimal_string(const Rat& v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v.get_d());
    return buf;
}

}  // namespace srr
