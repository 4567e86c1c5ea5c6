#pragma once

// Exact scalars: rationals (GMP backed) and residues modulo an odd prime.
//
// Every scalar type F exposes the same small vocabulary, which the rest of
// the library is written against:
//
//   F + F, F - F, F * F, F / F, -F, ==, !=
//   is_zero(), is_one(), inv(), field()
//   typename F::field_type   -- descriptor with zero()/one()/from_int()
//
// The field descriptor is what lets a zero polynomial or an empty matrix
// still know which field it lives over (the modulus of 𝔽_p is runtime data).

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include "qres/errors.hpp"

namespace qres {

class Rational;
class ModP;

struct RationalField {
    using element_type = Rational;
    Rational zero() const;
    Rational one() const;
    Rational from_int(long v) const;
    Rational from_mpz(const mpz_class& v) const;
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }
    bool operator==(const RationalField&) const = default;
};

struct PrimeField {
    using element_type = ModP;
    std::uint64_t p = 3;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t modulus);

    ModP zero() const;
    ModP one() const;
    ModP from_int(long v) const;
    ModP from_mpz(const mpz_class& v) const;
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return "F_" + std::to_string(p); }
    bool operator==(const PrimeField&) const = default;
};

class Rational {
public:
    using field_type = RationalField;

    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT: integer literals are rationals
    explicit Rational(mpz_class v) : q_(std::move(v)) {}
    Rational(mpz_class num, mpz_class den) : q_(std::move(num), std::move(den))
    {
        if (q_.get_den() == 0) throw PreconditionError("rational with zero denominator");
        q_.canonicalize();
    }
    explicit Rational(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }

    static Rational parse(const std::string& text)
    {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
        q.canonicalize();
        return Rational(q);
    }

    const mpq_class& value() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    RationalField field() const { return {}; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inv() const
    {
        if (is_zero()) throw DivisionByZero("inverse of zero rational");
        return Rational(mpq_class(1) / q_);
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }

    std::string to_string() const { return q_.get_str(10); }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

inline Rational RationalField::zero() const { return Rational(0); }
inline Rational RationalField::one() const { return Rational(1); }
inline Rational RationalField::from_int(long v) const { return Rational(v); }
inline Rational RationalField::from_mpz(const mpz_class& v) const { return Rational(v); }

/// Residue class modulo an odd prime p < 2^31. Carries its modulus so that
/// elements are self-contained values.
class ModP {
public:
    using field_type = PrimeField;

    ModP() = default;
    ModP(std::uint64_t residue, std::uint64_t p) : v_(residue % p), p_(p) {}

    static ModP from_signed(long v, std::uint64_t p)
    {
        long r = v % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return ModP(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    PrimeField field() const { return PrimeField(p_); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    ModP pow(std::uint64_t e) const
    {
        std::uint64_t base = v_, acc = 1 % p_;
        while (e) {
            if (e & 1U) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1U;
        }
        return ModP(acc, p_);
    }

    ModP inv() const
    {
        if (is_zero()) throw DivisionByZero("inverse of zero residue mod " + std::to_string(p_));
        return pow(p_ - 2);
    }

    /// Legendre symbol of the residue: 0, 1 or -1.
    int legendre() const
    {
        if (is_zero()) return 0;
        return pow((p_ - 1) / 2).is_one() ? 1 : -1;
    }

    ModP& operator+=(const ModP& o) { check(o); v_ = (v_ + o.v_) % p_; return *this; }
    ModP& operator-=(const ModP& o) { check(o); v_ = (v_ + p_ - o.v_) % p_; return *this; }
    ModP& operator*=(const ModP& o) { check(o); v_ = v_ * o.v_ % p_; return *this; }
    ModP& operator/=(const ModP& o) { check(o); return *this *= o.inv(); }
    friend ModP operator+(ModP a, const ModP& b) { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
    friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
    ModP operator-() const { return ModP((p_ - v_) % p_, p_); }

    friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    std::string to_string() const { return std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.v_; }

private:
    void check(const ModP& o) const
    {
        if (o.p_ != p_) throw PreconditionError("mixing residues of different moduli");
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 3;
};

inline PrimeField::PrimeField(std::uint64_t modulus) : p(modulus)
{
    if (modulus < 3 || modulus % 2 == 0 || modulus >= (1ULL << 31) ||
        mpz_probab_prime_p(mpz_class(static_cast<unsigned long>(modulus)).get_mpz_t(), 30) == 0)
        throw PreconditionError("prime field modulus must be an odd prime below 2^31, got " +
                                std::to_string(modulus));
}
inline ModP PrimeField::zero() const { return ModP(0, p); }
inline ModP PrimeField::one() const { return ModP(1, p); }
inline ModP PrimeField::from_int(long v) const { return ModP::from_signed(v, p); }
inline ModP PrimeField::from_mpz(const mpz_class& v) const
{
    mpz_class r = v % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return ModP(r.get_ui(), p);
}

template <class F>
concept Scalar = requires(F a, F b) {
    typename F::field_type;
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inv() } -> std::convertible_to<F>;
    { a.field() } -> std::convertible_to<typename F::field_type>;
};

template <class F>
using field_of = typename F::field_type;

template <Scalar F>
F power(F base, unsigned long e)
{
    F acc = base.field().one();
    while (e) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1UL;
    }
    return acc;
}

/// Half of a scalar; characteristic 2 is excluded everywhere in the library.
template <Scalar F>
F half(const F& x)
{
    return x / x.field().from_int(2);
}

template <Scalar F>
std::string to_string(const F& x)
{
    return x.to_string();
}

}  // namespace qres
