#include "steenrod/fp.h"

#include "steenrod/errors.h"

#include <ostream>
#include <string>

namespace steenrod {

bool is_prime(int64_t n)
{
    if (n < 2)
        return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Prime::Prime(int64_t p) : p_(static_cast<int>(p))
{
    if (p > 46340 || !is_prime(p))
        throw InvalidInput("not a supported prime: " + std::to_string(p));
}

uint32_t pow_mod(uint32_t a, uint64_t e, int p)
{
    uint64_t result = 1 % p, base = a % p;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(result);
}

uint32_t inv_mod(uint32_t a, int p)
{
    if (a % p == 0)
        throw InvalidInput("division by zero in F_" + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

Fp Fp::inverse() const
{
    return make(inv_mod(v_, p_));
}

Fp Fp::operator/(Fp o) const
{
    return *this * o.inverse();
}

std::ostream& operator<<(std::ostream& os, Fp x)
{
    return os << x.value();
}

bool is_square(Fp x)
{
    if (x.is_zero() || x.prime() == 2)
        return true;
    return x.pow((x.prime() - 1) / 2).value() == 1;
}

Fp fp2_nonsquare(Prime p)
{
    if (p.value() == 2)
        throw InvalidInput("F_4 construction needs an odd prime");
    for (int n = 2; n < p.value(); ++n)
        if (!is_square(Fp(n, p)))
            return Fp(n, p);
    throw VerificationFailure("no nonsquare found");  // unreachable for odd p
}

Fp2::Fp2(Fp a, Fp b) : a_(a), b_(b), n_(fp2_nonsquare(Prime(a.prime()))) {}

Fp2 Fp2::from_base(Fp a)
{
    return Fp2(a, Fp(0, Prime(a.prime())));
}

Fp2 Fp2::inverse() const
{
    /* (a + bw)^{-1} = (a - bw) / (a^2 - n b^2); the norm is nonzero since n is a nonsquare */
    Fp norm = a_ * a_ - n_ * b_ * b_;
    Fp inv = norm.inverse();
    return {a_ * inv, -b_ * inv, n_};
}

Fp2 Fp2::pow(uint64_t e) const
{
    Fp2 result(Fp(1, Prime(a_.prime())), Fp(0, Prime(a_.prime())), n_);
    Fp2 base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Fp2& x)
{
    return os << x.re() << "+" << x.im() << "w";
}

Fp binom_mod_p(uint64_t n, uint64_t k, Prime p)
{
    const uint64_t q = static_cast<uint64_t>(p.value());
    uint64_t result = 1;
    while (n > 0 || k > 0) {
        uint64_t nd = n % q, kd = k % q;
        if (kd > nd)
            return Fp(0, p);
        /* small binomial by multiplicative formula mod p (digits are < p, so no wraparound) */
        uint64_t num = 1, den = 1;
        for (uint64_t j = 0; j < kd; ++j) {
            num = num * ((nd - j) % q) % q;
            den = den * ((j + 1) % q) % q;
        }
        result = result * num % q * inv_mod(static_cast<uint32_t>(den), p.value()) % q;
        n /= q;
        k /= q;
    }
    return Fp(static_cast<int64_t>(result), p);
}

Fp signed_binom(int64_t sign_exponent, int64_t n, int64_t k, Prime p)
{
    if (n < 0 || k < 0)
        return Fp(0, p);
    Fp c = binom_mod_p(static_cast<uint64_t>(n), static_cast<uint64_t>(k), p);
    return (sign_exponent % 2 != 0) ? -c : c;
}

}  // namespace steenrod
