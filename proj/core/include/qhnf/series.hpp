#ifndef QHNF_SERIES_HPP
#define QHNF_SERIES_HPP

#include <string>
#include <vector>

#include "qhnf/grading.hpp"

namespace qhnf {

// Dense truncated one-variable power series over the rationals. The length is
// the number of stored coefficients; index i holds the coefficient of z^i.
// Operations truncate to the explicitly requested length.
class Series {
public:
    Series() = default;
    explicit Series(int len) : c_(static_cast<std::size_t>(len), Rational(0)) {}
    explicit Series(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    static Series zero(int len) { return Series(len); }
    static Series one(int len);
    static Series identity(int len); // z

    int length() const { return static_cast<int>(c_.size()); }
    bool is_zero() const;
    int order() const; // kOrderInf for 0

    const Rational& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    Rational at(int i) const { return i < length() ? c_[static_cast<std::size_t>(i)] : Rational(0); }

    Series resized(int len) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    Series operator-() const;
    Series scaled(const Rational& c) const;
    friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "h") const;

private:
    std::vector<Rational> c_;
};

Series mul(const Series& a, const Series& b, int len);
Series derive(const Series& a);
Series integrate(const Series& a, int len); // antiderivative, constant 0
Series compose(const Series& f, const Series& g, int len); // f(g), ord(g) >= 1
Series inverse_unit(const Series& f, int len);             // 1/f, f(0) != 0
Series pow_unit(const Series& f, const Rational& e, int len); // f^e, f(0) == 1
Series log_unit(const Series& f, int len);                 // log f, f(0) == 1
Series exp_series(const Series& g, int len);               // exp g, g(0) == 0
Series compositional_inverse(const Series& f, int len);    // f tangent to identity

// Generator v of a tangent-to-identity map phi: exp(v d/dz)(z) = phi(z),
// ord(v) >= 2. Inverse of flow_map.
Series flow_generator(const Series& phi, int len);
Series flow_map(const Series& v, int len);

// Pullback of the one-variable field u(z) d/dz through phi: (u∘phi)/phi'.
Series gauge_transform(const Series& u, const Series& phi, int len);

Series parse_series(const std::string& text, int len, char var = 'h');

} // namespace qhnf

#endif
