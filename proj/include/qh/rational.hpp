#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qh {

// Exact rational. Values that fit in int64 stay inline; anything larger
// is promoted to an mpq_class and demoted again when it shrinks.
class Rational {
public:
    Rational() = default;
    Rational(int64_t v) : n_(v), d_(1) {
        if (v == INT64_MIN) promote_from(mpq_class(mpz_from_i128(v)));
    }
    Rational(int64_t num, int64_t den) { assign128(num, den); }
    explicit Rational(const mpq_class& q) { set_big(q); }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = new mpq_class(*o.big_);
    }
    Rational(Rational&& o) noexcept : n_(o.n_), d_(o.d_), big_(o.big_) { o.big_ = nullptr; }
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            if (o.big_) {
                if (big_) *big_ = *o.big_;
                else big_ = new mpq_class(*o.big_);
            } else {
                delete big_;
                big_ = nullptr;
            }
        }
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) {
            delete big_;
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_;
            o.big_ = nullptr;
        }
        return *this;
    }
    ~Rational() { delete big_; }

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    bool is_small() const { return big_ == nullptr; }
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
    int64_t small_num() const { return n_; }
    int64_t small_den() const { return d_; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        return mpq_class(mpz_from_i128(n_), mpz_from_i128(d_));
    }
    mpz_class numerator() const { return to_mpq().get_num(); }
    mpz_class denominator() const { return to_mpq().get_den(); }

    Rational operator-() const {
        Rational r;
        if (big_) r.set_big(-*big_);
        else r.assign128(-static_cast<__int128>(n_), d_);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        if (!a.big_ && !b.big_) {
            if (a.d_ == 1 && b.d_ == 1) {
                int64_t s;
                if (!__builtin_add_overflow(a.n_, b.n_, &s) && s != INT64_MIN) {
                    r.n_ = s;
                    return r;
                }
            }
            __int128 num = static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_;
            __int128 den = static_cast<__int128>(a.d_) * b.d_;
            r.assign128(num, den);
            return r;
        }
        r.set_big(a.to_mpq() + b.to_mpq());
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        if (!a.big_ && !b.big_) {
            if (a.d_ == 1 && b.d_ == 1) {
                int64_t s;
                if (!__builtin_sub_overflow(a.n_, b.n_, &s) && s != INT64_MIN) {
                    r.n_ = s;
                    return r;
                }
            }
            __int128 num = static_cast<__int128>(a.n_) * b.d_ - static_cast<__int128>(b.n_) * a.d_;
            __int128 den = static_cast<__int128>(a.d_) * b.d_;
            r.assign128(num, den);
            return r;
        }
        r.set_big(a.to_mpq() - b.to_mpq());
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        if (!a.big_ && !b.big_) {
            if (a.d_ == 1 && b.d_ == 1) {
                int64_t p;
                if (!__builtin_mul_overflow(a.n_, b.n_, &p) && p != INT64_MIN) {
                    r.n_ = p;
                    return r;
                }
            }
            r.assign128(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
            return r;
        }
        r.set_big(a.to_mpq() * b.to_mpq());
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("rational division by zero");
        Rational r;
        if (!a.big_ && !b.big_) {
            __int128 num = static_cast<__int128>(a.n_) * b.d_;
            __int128 den = static_cast<__int128>(a.d_) * b.n_;
            r.assign128(num, den);
            return r;
        }
        r.set_big(a.to_mpq() / b.to_mpq());
        return r;
    }
    Rational& operator+=(const Rational& b) {
        if (!big_ && !b.big_ && d_ == 1 && b.d_ == 1) {
            int64_t s;
            if (!__builtin_add_overflow(n_, b.n_, &s) && s != INT64_MIN) {
                n_ = s;
                return *this;
            }
        }
        return *this = *this + b;
    }
    Rational& operator-=(const Rational& b) {
        if (!big_ && !b.big_ && d_ == 1 && b.d_ == 1) {
            int64_t s;
            if (!__builtin_sub_overflow(n_, b.n_, &s) && s != INT64_MIN) {
                n_ = s;
                return *this;
            }
        }
        return *this = *this - b;
    }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    // this += a*b, the inner loop of every accumulation
    void add_mul(const Rational& a, const Rational& b) {
        if (!big_ && !a.big_ && !b.big_ && d_ == 1 && a.d_ == 1 && b.d_ == 1) {
            int64_t p, s;
            if (!__builtin_mul_overflow(a.n_, b.n_, &p) && !__builtin_add_overflow(n_, p, &s) &&
                s != INT64_MIN) {
                n_ = s;
                return;
            }
        }
        *this += a * b;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: a small value is never stored big
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_)
            return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
        return a.to_mpq() < b.to_mpq();
    }

    std::string str() const {
        if (big_) {
            if (big_->get_den() == 1) return big_->get_num().get_str();
            return big_->get_num().get_str() + "/" + big_->get_den().get_str();
        }
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rational(q);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    int64_t n_ = 0;
    int64_t d_ = 1;
    mpq_class* big_ = nullptr;

    static mpz_class mpz_from_i128(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
        mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    }
    static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
        while (b) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static bool fits(__int128 v) { return v > INT64_MIN && v <= INT64_MAX; }

    void promote_from(const mpq_class& q) {
        if (!big_) big_ = new mpq_class(q);
        else *big_ = q;
    }
    void set_big(const mpq_class& q) {
        const mpz_class& num = q.get_num();
        const mpz_class& den = q.get_den();
        if (num.fits_slong_p() && den.fits_slong_p() && num.get_si() != INT64_MIN) {
            delete big_;
            big_ = nullptr;
            n_ = num.get_si();
            d_ = den.get_si();
            return;
        }
        promote_from(q);
        n_ = 0;
        d_ = 1;
    }
    void assign128(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) {
            delete big_;
            big_ = nullptr;
            n_ = 0;
            d_ = 1;
            return;
        }
        unsigned __int128 un = num < 0 ? -static_cast<unsigned __int128>(num) : static_cast<unsigned __int128>(num);
        unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(den));
        if (g > 1) {
            num /= static_cast<__int128>(g);
            den /= static_cast<__int128>(g);
        }
        if (fits(num) && fits(den)) {
            delete big_;
            big_ = nullptr;
            n_ = static_cast<int64_t>(num);
            d_ = static_cast<int64_t>(den);
            return;
        }
        mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
        promote_from(q);
        n_ = 0;
        d_ = 1;
    }
};

}  // namespace qh
