// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace probbounds {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (const char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    const std::string original(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw std::invalid_argument("empty number '" + original + "'");
    }

    mpz_class num;
    mpz_class den = 1;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto n = s.substr(0, slash);
        const auto d = s.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d)) {
            throw std::invalid_argument("malformed rational '" + original + "'");
        }
        num = mpz_class(std::string(n), 10);
        den = mpz_class(std::string(d), 10);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + original + "'");
        }
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto int_part = s.substr(0, dot);
        const auto frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw std::invalid_argument("malformed decimal '" + original + "'");
        }
        const std::string digits = std::string(int_part) + std::string(frac_part);
        num = mpz_class(digits, 10);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    } else {
        if (!all_digits(s)) {
            throw std::invalid_argument("malformed integer '" + original + "'");
        }
        num = mpz_class(std::string(s), 10);
    }
    if (negative) {
        num = -num;
    }
    return {num, den};
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) {
        throw std::invalid_argument("non-finite double has no rational value");
    }
    return Rational(mpq_class(d));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) {
        throw std::domain_error("rational division by zero");
    }
    v_ /= o.v_;
    return *this;
}

Rational Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return {q, 1};
}

Rational Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return {q, 1};
}

std::string Rational::str() const {
    if (is_integer()) {
        return v_.get_num().get_str();
    }
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

ExtRational ExtRational::parse(std::string_view text) {
    const std::string_view s = trim(text);
    if (s == "-inf" || s == "-oo") {
        return neg_inf();
    }
    if (s == "inf" || s == "+inf" || s == "oo" || s == "+oo") {
        return pos_inf();
    }
    return {Rational::parse(s)};
}

const Rational& ExtRational::value() const {
    if (kind_ != Kind::Finite) {
        throw std::logic_error("value() of an infinite ExtRational");
    }
    return v_;
}

double ExtRational::to_double() const {
    switch (kind_) {
    case Kind::NegInf: return -HUGE_VAL;
    case Kind::PosInf: return HUGE_VAL;
    case Kind::Finite: break;
    }
    return v_.to_double();
}

std::string ExtRational::str() const {
    switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Finite: break;
    }
    return v_.str();
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_finite() && b.is_finite()) {
        return {a.v_ + b.v_};
    }
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf())) {
        throw std::domain_error("inf + (-inf) is undefined");
    }
    return a.is_finite() ? b : a;
}

ExtRational operator-(const ExtRational& a) {
    switch (a.kind_) {
    case ExtRational::Kind::NegInf: return ExtRational::pos_inf();
    case ExtRational::Kind::PosInf: return ExtRational::neg_inf();
    case ExtRational::Kind::Finite: break;
    }
    return {-a.v_};
}

ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.is_finite() && b.is_finite()) {
        return {a.v_ * b.v_};
    }
    const int sa = a.is_finite() ? a.v_.sign() : (a.is_pos_inf() ? 1 : -1);
    const int sb = b.is_finite() ? b.v_.sign() : (b.is_pos_inf() ? 1 : -1);
    if (sa == 0 || sb == 0) {
        return {0};
    }
    return sa * sb > 0 ? ExtRational::pos_inf() : ExtRational::neg_inf();
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) {
        return false;
    }
    return !a.is_finite() || a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    auto rank = [](ExtRational::Kind k) {
        return k == ExtRational::Kind::NegInf ? 0 : (k == ExtRational::Kind::Finite ? 1 : 2);
    };
    if (a.kind_ != b.kind_) {
        return rank(a.kind_) <=> rank(b.kind_);
    }
    if (!a.is_finite()) {
        return std::strong_ordering::equal;
    }
    return a.v_ <=> b.v_;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

} // namespace probbounds
