#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace exseq {

using Int = mpz_class;
using Rat = mpq_class;

// Input or intermediate data violates a mathematical precondition.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A reduction ran out of its mutation budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& p, const Int& q = 1) {
    if (q == 0) throw DomainError("zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int as_integer(const Rat& r, const char* what) {
    if (!is_integer(r)) throw DomainError(std::string(what) + " is not integral: " + r.get_str());
    return r.get_num();
}

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Floor division and nonnegative remainder for a nonzero divisor.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Returns g = gcd(a, b) and sets x, y with a*x + b*y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& a, const Int& b, const char* what) {
    if (b == 0 || !divides(b, a)) throw DomainError(std::string(what) + ": inexact division");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Integer square root when a is a perfect square, -1 otherwise.
inline Int exact_sqrt(const Int& a) {
    if (a < 0 || mpz_perfect_square_p(a.get_mpz_t()) == 0) return Int(-1);
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat& x) { return x.get_str(); }

inline Int parse_int(const std::string& s) {
    Int x;
    if (s.empty() || x.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + s);
    return x;
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

// Fixed-length coordinate vector with componentwise arithmetic.
template <class T>
struct Vec {
    std::vector<T> c;

    Vec() = default;
    explicit Vec(std::size_t n) : c(n, T(0)) {}
    Vec(std::initializer_list<T> xs) : c(xs) {}
    explicit Vec(std::vector<T> xs) : c(std::move(xs)) {}

    std::size_t size() const { return c.size(); }
    T& operator[](std::size_t i) { return c[i]; }
    const T& operator[](std::size_t i) const { return c[i]; }

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

    Vec& operator+=(const Vec& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator-(Vec a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Vec operator*(const T& s, Vec a) {
        for (auto& x : a.c) x *= s;
        return a;
    }

private:
    void check(const Vec& o) const {
        if (o.c.size() != c.size()) throw std::invalid_argument("coordinate length mismatch");
    }
};

using IVec = Vec<Int>;
using QVec = Vec<Rat>;

inline QVec to_q(const IVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = v[i];
    return q;
}

inline QVec scale(const IVec& v, const Rat& s) {
    QVec q = to_q(v);
    for (auto& x : q.c) x *= s;
    return q;
}

inline bool is_integral(const QVec& v) {
    for (const auto& x : v.c)
        if (!is_integer(x)) return false;
    return true;
}

inline IVec to_integral(const QVec& v, const char* what) {
    IVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = as_integer(v[i], what);
    return r;
}

// Integer points of the plane.
struct V2 {
    Int x, y;
    friend bool operator==(const V2& a, const V2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const V2& a, const V2& b) { return !(a == b); }
    friend V2 operator+(const V2& a, const V2& b) { return {a.x + b.x, a.y + b.y}; }
    friend V2 operator-(const V2& a, const V2& b) { return {a.x - b.x, a.y - b.y}; }
    friend V2 operator-(const V2& a) { return {-a.x, -a.y}; }
    friend V2 operator*(const Int& s, const V2& a) { return {s * a.x, s * a.y}; }
};

inline Int det(const V2& a, const V2& b) { return a.x * b.y - a.y * b.x; }

inline Int lattice_length(const V2& a) { return gcd_int(a.x, a.y); }

inline bool is_primitive(const V2& a) { return lattice_length(a) == 1; }

inline V2 div_exact(const V2& a, const Int& d, const char* what) {
    return {exact_div(a.x, d, what), exact_div(a.y, d, what)};
}

// 2x2 integer matrix acting on column vectors.
struct M2 {
    Int a, b, c, d;
    V2 operator()(const V2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Int determinant() const { return a * d - b * c; }
    friend M2 operator*(const M2& p, const M2& q) {
        return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
    }
};

// Unimodular matrix sending the primitive vector u to (1, 0).
inline M2 to_first_axis(const V2& u) {
    Int x, y;
    Int g = ext_gcd(u.x, u.y, x, y);
    if (g != 1) throw DomainError("vector is not primitive");
    return {x, y, -u.y, u.x};
}

// The unique matrix with M(u1) = v1 and M(u2) = v2, provided it is integral.
// Returns false when u1, u2 are dependent or the solution is not integral.
inline bool solve_linear_map(const V2& u1, const V2& u2, const V2& v1, const V2& v2, M2& out) {
    Int d = det(u1, u2);
    if (d == 0) return false;
    // M = [v1 v2] * [u1 u2]^{-1}
    Int a = v1.x * u2.y - v2.x * u1.y;
    Int b = -v1.x * u2.x + v2.x * u1.x;
    Int c = v1.y * u2.y - v2.y * u1.y;
    Int e = -v1.y * u2.x + v2.y * u1.x;
    if (!divides(d, a) || !divides(d, b) || !divides(d, c) || !divides(d, e)) return false;
    out = {exact_div(a, d, "map"), exact_div(b, d, "map"), exact_div(c, d, "map"), exact_div(e, d, "map")};
    return true;
}

}  // namespace exseq
