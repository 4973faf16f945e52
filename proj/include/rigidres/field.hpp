#pragma once

// Field specifications and exact scalars (rationals or residues mod p).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace rigidres {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class FieldSpec {
public:
    enum class Kind { Rationals, Prime };

    FieldSpec() = default;

    static FieldSpec rationals() { return FieldSpec{}; }

    static FieldSpec prime(std::uint64_t p)
    {
        if (!is_prime(p))
            throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
        if (p >= (std::uint64_t{1} << 32))
            throw std::invalid_argument("field characteristic must be below 2^32");
        FieldSpec f;
        f.kind_ = Kind::Prime;
        f.p_ = p;
        return f;
    }

    /// Accepts "Q", "QQ", "F7", "GF7", "GF(7)", "ZZ/7".
    static FieldSpec parse(std::string text)
    {
        if (text == "Q" || text == "QQ" || text == "q")
            return rationals();
        std::string digits;
        for (const std::string prefix : {"GF(", "GF", "F", "ZZ/", "Z/"}) {
            if (text.rfind(prefix, 0) == 0) {
                digits = text.substr(prefix.size());
                if (prefix == "GF(") {
                    if (digits.empty() || digits.back() != ')')
                        throw std::invalid_argument("malformed field '" + text + "'");
                    digits.pop_back();
                }
                break;
            }
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown field '" + text + "' (expected Q or F<p>)");
        return prime(std::stoull(digits));
    }

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    std::uint64_t characteristic() const { return kind_ == Kind::Rationals ? 0 : p_; }

    std::string name() const { return is_rationals() ? "Q" : "F" + std::to_string(p_); }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

    static bool is_prime(std::uint64_t p)
    {
        if (p < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }

private:
    Kind kind_ = Kind::Rationals;
    std::uint64_t p_ = 0;
};

/// An element of a FieldSpec, always kept in canonical form.
class Scalar {
public:
    Scalar() = default;

    Scalar(const FieldSpec& field, long long value) : field_(field)
    {
        if (field_.is_rationals()) {
            q_ = value;
        } else {
            const auto p = static_cast<long long>(field_.characteristic());
            long long r = value % p;
            if (r < 0)
                r += p;
            r_ = static_cast<std::uint64_t>(r);
        }
    }

    /// Reduces a rational into the field; throws if the denominator vanishes mod p.
    Scalar(const FieldSpec& field, const Rational& value) : field_(field)
    {
        if (field_.is_rationals()) {
            q_ = value;
            return;
        }
        const BigInt p = field_.characteristic();
        BigInt num = boost::multiprecision::numerator(value) % p;
        BigInt den = boost::multiprecision::denominator(value) % p;
        if (num < 0)
            num += p;
        if (den == 0)
            throw std::domain_error("denominator not invertible in " + field_.name());
        Scalar n(field_, 0), d(field_, 0);
        n.r_ = static_cast<std::uint64_t>(num);
        d.r_ = static_cast<std::uint64_t>(den);
        *this = n / d;
    }

    static Scalar zero(const FieldSpec& f) { return Scalar(f, 0); }
    static Scalar one(const FieldSpec& f) { return Scalar(f, 1); }

    const FieldSpec& field() const { return field_; }
    bool is_zero() const { return field_.is_rationals() ? q_ == 0 : r_ == 0; }
    bool is_unit() const { return !is_zero(); }

    const Rational& rational() const { return q_; }
    std::uint64_t residue() const { return r_; }

    Scalar operator-() const
    {
        Scalar s = *this;
        if (field_.is_rationals())
            s.q_ = -q_;
        else if (r_ != 0)
            s.r_ = field_.characteristic() - r_;
        return s;
    }

    Scalar& operator+=(const Scalar& o)
    {
        check(o);
        if (field_.is_rationals()) {
            q_ += o.q_;
        } else {
            r_ += o.r_;
            if (r_ >= field_.characteristic())
                r_ -= field_.characteristic();
        }
        return *this;
    }

    Scalar& operator-=(const Scalar& o) { return *this += -o; }

    Scalar& operator*=(const Scalar& o)
    {
        check(o);
        if (field_.is_rationals())
            q_ *= o.q_;
        else
            r_ = static_cast<std::uint64_t>((unsigned __int128)r_ * o.r_ % field_.characteristic());
        return *this;
    }

    Scalar inverse() const
    {
        if (is_zero())
            throw std::domain_error("division by zero in " + field_.name());
        Scalar s = *this;
        if (field_.is_rationals()) {
            s.q_ = 1 / q_;
        } else {
            // Fermat: r^(p-2)
            const std::uint64_t p = field_.characteristic();
            std::uint64_t base = r_, e = p - 2, acc = 1;
            while (e) {
                if (e & 1)
                    acc = static_cast<std::uint64_t>((unsigned __int128)acc * base % p);
                base = static_cast<std::uint64_t>((unsigned __int128)base * base % p);
                e >>= 1;
            }
            s.r_ = acc;
        }
        return s;
    }

    Scalar& operator/=(const Scalar& o)
    {
        check(o);
        return *this *= o.inverse();
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (!(a.field_ == b.field_))
            return false;
        return a.field_.is_rationals() ? a.q_ == b.q_ : a.r_ == b.r_;
    }

    /// "3/2", "-1", or "4 mod 7".
    std::string to_string() const
    {
        if (field_.is_rationals())
            return q_.str();
        return std::to_string(r_) + " mod " + std::to_string(field_.characteristic());
    }

    /// Inverse of to_string for the given field; bare integers are accepted too.
    static Scalar parse(const FieldSpec& field, const std::string& text)
    {
        const auto mod = text.find(" mod ");
        std::string body = mod == std::string::npos ? text : text.substr(0, mod);
        if (mod != std::string::npos) {
            const std::uint64_t p = std::stoull(text.substr(mod + 5));
            if (p != field.characteristic())
                throw FieldMismatch("scalar '" + text + "' does not belong to " + field.name());
        }
        Rational value;
        try {
            value = Rational(body);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed scalar '" + text + "'");
        }
        return Scalar(field, value);
    }

private:
    void check(const Scalar& o) const
    {
        if (!(field_ == o.field_))
            throw FieldMismatch("mixed fields: " + field_.name() + " and " + o.field_.name());
    }

    FieldSpec field_;
    Rational q_ = 0;
    std::uint64_t r_ = 0;
};

} // namespace rigidres
