#pragma once

#include <cstdint>
#include <iosfwd>

namespace steenrod {

/* A small prime, validated by trial division at construction. */
class Prime {
public:
    explicit Prime(int64_t p);
    int value() const { return p_; }
    operator int() const { return p_; }
    bool operator==(const Prime&) const = default;

private:
    int p_;
};

bool is_prime(int64_t n);

/* Reduce an arbitrary integer into [0, p). */
inline uint32_t reduce_mod(int64_t n, int p)
{
    int64_t r = n % p;
    return static_cast<uint32_t>(r < 0 ? r + p : r);
}

uint32_t inv_mod(uint32_t a, int p);
uint32_t pow_mod(uint32_t a, uint64_t e, int p);

/* Element of F_p. */
class Fp {
public:
    Fp(int64_t value, Prime p) : v_(reduce_mod(value, p.value())), p_(p.value()) {}

    uint32_t value() const { return v_; }
    int prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    /* Representative in (-p/2, p/2], used for signed display. */
    int64_t centered() const { return v_ > static_cast<uint32_t>(p_) / 2 ? int64_t(v_) - p_ : int64_t(v_); }

    Fp operator+(Fp o) const { return make(v_ + o.v_ >= uint32_t(p_) ? v_ + o.v_ - p_ : v_ + o.v_); }
    Fp operator-(Fp o) const { return make(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_); }
    Fp operator-() const { return make(v_ == 0 ? 0 : p_ - v_); }
    Fp operator*(Fp o) const { return make(uint32_t(uint64_t(v_) * o.v_ % p_)); }
    Fp operator/(Fp o) const;
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    Fp inverse() const;
    Fp pow(uint64_t e) const { return make(pow_mod(v_, e, p_)); }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }

private:
    Fp make(uint32_t v) const
    {
        Fp r = *this;
        r.v_ = v;
        return r;
    }
    uint32_t v_;
    int p_;
};

std::ostream& operator<<(std::ostream& os, Fp x);

/*
 * Element a + b*w of F_{p^2} = F_p[w]/(w^2 - n), n the least positive nonsquare mod p.
 * Only odd p.
 */
class Fp2 {
public:
    Fp2(Fp a, Fp b);
    static Fp2 from_base(Fp a);

    Fp re() const { return a_; }
    Fp im() const { return b_; }
    Fp nonsquare() const { return n_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Fp2 operator+(const Fp2& o) const { return {a_ + o.a_, b_ + o.b_, n_}; }
    Fp2 operator-(const Fp2& o) const { return {a_ - o.a_, b_ - o.b_, n_}; }
    Fp2 operator-() const { return {-a_, -b_, n_}; }
    Fp2 operator*(const Fp2& o) const { return {a_ * o.a_ + n_ * b_ * o.b_, a_ * o.b_ + b_ * o.a_, n_}; }
    Fp2 conjugate() const { return {a_, -b_, n_}; }
    Fp2 inverse() const;
    Fp2 pow(uint64_t e) const;
    bool operator==(const Fp2& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    Fp2(Fp a, Fp b, Fp n) : a_(a), b_(b), n_(n) {}
    Fp a_, b_, n_;
};

std::ostream& operator<<(std::ostream& os, const Fp2& x);

/* C(n, k) mod p by Lucas' theorem; zero when k > n. */
Fp binom_mod_p(uint64_t n, uint64_t k, Prime p);

/* (-1)^s * C(n, k) mod p. Negative n or k give zero. */
Fp signed_binom(int64_t sign_exponent, int64_t n, int64_t k, Prime p);

/* Least positive quadratic nonresidue mod an odd prime. */
Fp fp2_nonsquare(Prime p);

bool is_square(Fp x);

}  // namespace steenrod
