#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sclforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct RankMismatchError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// Membership obstruction (abelianization or area class nonzero); distinct
// from a budget-exhausted NotFound, which is an ordinary return value.
struct NotInSubgroupError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

// A certified lower bound exceeded a certified upper bound somewhere.
// Never caught and clamped; if this fires the certificate stack is broken.
struct InternalSoundnessError : Error {
    using Error::Error;
};

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rational r{mpz_class(s)};
            return r;
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw ParseError("rational with zero denominator: " + s);
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational: " + s);
    }
}

inline std::string rational_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Fixed-point decimal rendering for display fields only; truncates toward zero.
inline std::string rational_decimal(const Rational& r, int digits = 6) {
    mpz_class num = r.get_num(), den = r.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class ip = num / den, rem = num % den;
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += char('0' + mpz_class(rem / den).get_si());
            rem %= den;
        }
    }
    return out;
}

// Nonnegative rational extended with infinity; arithmetic saturates.
struct ExtRational {
    bool infinite = false;
    Rational value = 0;

    ExtRational() = default;
    ExtRational(const Rational& v) : infinite(false), value(v) {}
    ExtRational(long v) : infinite(false), value(v) {}
    static ExtRational inf() {
        ExtRational e;
        e.infinite = true;
        return e;
    }

    bool is_finite() const { return !infinite; }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (a.infinite || b.infinite) return inf();
        return ExtRational(a.value + b.value);
    }
    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }
};

inline ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
inline ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

inline std::string ext_rational_str(const ExtRational& e) {
    return e.infinite ? "inf" : rational_str(e.value);
}

// splitmix64; tiny, portable, and identical on every platform we build on,
// unlike the std:: distributions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

}  // namespace sclforge
