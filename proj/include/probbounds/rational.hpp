// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace probbounds {

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
class Rational {
  public:
    Rational() = default;
    Rational(long value) : v_(value) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Accepts `7`, `-3/10`, `0.25`, `-.5`. Throws std::invalid_argument.
    static Rational parse(std::string_view text);
    /// Exact binary value of a finite double.
    static Rational from_double(double d);

    [[nodiscard]] const mpq_class& get() const { return v_; }
    [[nodiscard]] std::string numerator_str() const { return v_.get_num().get_str(); }
    [[nodiscard]] std::string denominator_str() const { return v_.get_den().get_str(); }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] double to_double() const { return v_.get_d(); }
    [[nodiscard]] Rational floor() const;
    [[nodiscard]] Rational ceil() const;
    /// `n` for integers, `n/d` otherwise.
    [[nodiscard]] std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// A rational extended with -inf and +inf, totally ordered.
class ExtRational {
  public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    ExtRational() = default;
    ExtRational(Rational v) : kind_(Kind::Finite), v_(std::move(v)) {} // NOLINT
    ExtRational(long v) : kind_(Kind::Finite), v_(v) {}                // NOLINT

    static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }
    static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
    /// Accepts everything Rational::parse does plus `-inf`, `inf`, `+inf`.
    static ExtRational parse(std::string_view text);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_finite() const { return kind_ == Kind::Finite; }
    [[nodiscard]] bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    [[nodiscard]] bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    /// Precondition: is_finite().
    [[nodiscard]] const Rational& value() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string str() const;

    /// Throws std::domain_error for (+inf) + (-inf).
    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator-(const ExtRational& a);
    friend ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }
    /// 0 * inf = 0, the convention for interval endpoint products.
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b);

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

  private:
    explicit ExtRational(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Finite;
    Rational v_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& r);

} // namespace probbounds
