#ifndef PWAMIN_SCALAR_HPP
#define PWAMIN_SCALAR_HPP

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pwamin/errors.hpp"

namespace pwamin {

/// Arbitrary-precision rational number, the exact-mode scalar.
///
/// Thin value wrapper over GMP's mpq_class, always kept in canonical
/// (lowest-terms, positive-denominator) form. All arithmetic and
/// comparisons are exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_ = mpq_class(mpz_class(num), mpz_class(den));
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    double to_double() const { return v_.get_d(); }

    /// Canonical decimal rendering: "p" for integers, "p/q" otherwise.
    std::string str() const { return v_.get_str(); }

    /// Parses "p" or "p/q" with optional leading sign. Rejects anything
    /// else, including zero denominators.
    static std::optional<Rational> parse(std::string_view s);

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (sgn(b.v_) == 0) throw Error("rational division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline std::optional<Rational> Rational::parse(std::string_view s) {
    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto signed_digits = [&](std::string_view t) {
        if (!t.empty() && (t[0] == '+' || t[0] == '-')) t.remove_prefix(1);
        return digits(t);
    };
    std::string_view num = s, den;
    if (auto pos = s.find('/'); pos != std::string_view::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
        if (!signed_digits(num) || !digits(den)) return std::nullopt;
        if (num[0] == '+') num.remove_prefix(1); // mpz rejects a leading plus
        mpz_class q(std::string(den), 10);
        if (q == 0) return std::nullopt;
        mpq_class v(mpz_class(std::string(num), 10), q);
        v.canonicalize();
        return Rational(std::move(v));
    }
    if (!signed_digits(num)) return std::nullopt;
    if (num[0] == '+') num.remove_prefix(1);
    return Rational(mpq_class(mpz_class(std::string(num), 10)));
}

/// Per-mode scalar plumbing: construction, conversion and serialization.
/// Algorithms are templated on the scalar type; a run never mixes modes.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static const char* mode_name() { return "exact"; }
    static Rational from_ratio(long num, long den) { return Rational(num, den); }
    static Rational from_rational(const Rational& r) { return r; }
    static double to_double(const Rational& r) { return r.to_double(); }
    static std::string format(const Rational& r) { return r.str(); }
    static bool is_finite(const Rational&) { return true; }
    static Rational default_tol() { return Rational(0); }
    static std::optional<Rational> parse(std::string_view s) { return Rational::parse(s); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static const char* mode_name() { return "float"; }
    static double from_ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double to_double(double v) { return v; }

    /// Shortest decimal that round-trips back to the same double.
    static std::string format(double v) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }
    static bool is_finite(double v) { return std::isfinite(v); }
    static double default_tol() { return 1e-9; }
    static std::optional<double> parse(std::string_view s) {
        if (s.find('/') != std::string_view::npos) {
            auto r = Rational::parse(s);
            if (!r) return std::nullopt;
            return r->to_double();
        }
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
        return v;
    }
};

} // namespace pwamin

#endif
