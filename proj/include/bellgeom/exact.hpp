#pragma once
// Exact scalars: rationals and the quadratic fields Q(sqrt D).

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>
#include <cmath>
#include <ostream>
#include <string>

namespace bellgeom {

using Rational = boost::multiprecision::cpp_rational;

// a + b*sqrt(D), D square-free and positive
template <int D>
struct Quad {
    Rational a = 0, b = 0;

    Quad() = default;
    Quad(int v) : a(v) {}
    Quad(const Rational& v) : a(v) {}
    Quad(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

    static Quad root() { return Quad(Rational(0), Rational(1)); }

    Quad operator-() const { return Quad(-a, -b); }
    Quad& operator+=(const Quad& o) { a += o.a; b += o.b; return *this; }
    Quad& operator-=(const Quad& o) { a -= o.a; b -= o.b; return *this; }
    Quad& operator*=(const Quad& o) {
        Rational na = a * o.a + D * b * o.b;
        b = a * o.b + b * o.a;
        a = std::move(na);
        return *this;
    }
    Quad conjugate() const { return Quad(a, -b); }
    Rational norm() const { return a * a - D * b * b; }
    Quad& operator/=(const Quad& o) {
        Rational n = o.norm();
        *this *= o.conjugate();
        a /= n;
        b /= n;
        return *this;
    }
    friend Quad operator+(Quad x, const Quad& y) { return x += y; }
    friend Quad operator-(Quad x, const Quad& y) { return x -= y; }
    friend Quad operator*(Quad x, const Quad& y) { return x *= y; }
    friend Quad operator/(Quad x, const Quad& y) { return x /= y; }

    int sign() const {
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 with D b^2
        Rational lhs = a * a, rhs = D * b * b;
        int c = lhs.compare(rhs);
        return c == 0 ? 0 : (c > 0 ? sa : sb);
    }
    friend bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
    friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Quad& x, const Quad& y) { return y < x; }
    friend bool operator<=(const Quad& x, const Quad& y) { return !(y < x); }
    friend bool operator>=(const Quad& x, const Quad& y) { return !(x < y); }

    double to_double() const {
        return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(double(D));
    }
    std::string str() const {
        return a.str() + (b.sign() < 0 ? " - " : " + ") + Rational(abs(b)).str() + "*sqrt(" + std::to_string(D) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const Quad& q) { return os << q.str(); }
};

template <int D>
Quad<D> abs(const Quad<D>& q) { return q.sign() < 0 ? -q : q; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return static_cast<double>(x); }
template <int D>
double to_double(const Quad<D>& x) { return x.to_double(); }

// Comparison slack used by solvers: zero for exact fields.
template <class Scalar>
Scalar zero_tol() { return Scalar(0); }
template <>
inline double zero_tol<double>() { return 1e-11; }

inline bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
inline bool is_zero(const Rational& x, const Rational&) { return x.is_zero(); }
template <int D>
bool is_zero(const Quad<D>& x, const Quad<D>&) { return x.sign() == 0; }

inline double s_abs(double x) { return std::abs(x); }
inline Rational s_abs(const Rational& x) { return Rational(boost::multiprecision::abs(x)); }
template <int D>
Quad<D> s_abs(const Quad<D>& x) { return abs(x); }

}  // namespace bellgeom

namespace Eigen {
template <int D>
struct NumTraits<bellgeom::Quad<D>> : GenericNumTraits<bellgeom::Quad<D>> {
    using Real = bellgeom::Quad<D>;
    using NonInteger = bellgeom::Quad<D>;
    using Nested = bellgeom::Quad<D>;
    using Literal = bellgeom::Quad<D>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 40,
        MulCost = 80
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
