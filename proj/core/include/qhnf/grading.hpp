#ifndef QHNF_GRADING_HPP
#define QHNF_GRADING_HPP

#include <compare>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qhnf/error.hpp"

namespace qhnf {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

std::string rational_to_string(const Rational& r);
Rational parse_rational(const std::string& s);

// Weight vector (p1, p2) of the radial field p1*x*dx + p2*y*dy.
// Both weights are >= 1 and coprime.
struct Weights {
    int p1 = 1;
    int p2 = 1;
};

void validate_weights(const Weights& w);

// Exponent pair of a monomial x^ex * y^ey.
struct Exp {
    int ex = 0;
    int ey = 0;

    friend auto operator<=>(const Exp&, const Exp&) = default;
};

inline int pdeg(const Exp& m, const Weights& w)
{
    return m.ex * w.p1 + m.ey * w.p2;
}

// Canonical order: ascending p-degree, then descending ex. Used for
// serialization, slice enumeration and every pivot/complement choice.
struct CanonicalLess {
    Weights w;
    bool operator()(const Exp& a, const Exp& b) const
    {
        int da = pdeg(a, w), db = pdeg(b, w);
        if (da != db) return da < db;
        return a.ex > b.ex;
    }
};

inline constexpr int kOrderInf = std::numeric_limits<int>::max();

std::string monomial_to_string(const Exp& m);

// Exact-rational bivariate polynomial. Terms are kept sorted by (ex, ey)
// with no zero coefficients; the weight-dependent canonical order is applied
// where output or grading requires it.
class Poly {
public:
    using Term = std::pair<Exp, Rational>;

    Poly() = default;

    static Poly zero() { return Poly(); }
    static Poly constant(const Rational& c);
    static Poly monomial(const Exp& m, const Rational& c);
    static Poly var_x() { return monomial({1, 0}, 1); }
    static Poly var_y() { return monomial({0, 1}, 1); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    Rational coeff(const Exp& m) const;
    Rational constant_term() const { return coeff({0, 0}); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Poly scaled(const Rational& c) const;
    Poly dx() const;
    Poly dy() const;

    // weighted-degree access
    int porder(const Weights& w) const;             // kOrderInf for 0
    int pdeg_max(const Weights& w) const;           // -1 for 0
    std::optional<int> qh_degree(const Weights& w) const;
    std::map<int, Poly> qh_components(const Weights& w) const;
    Poly component(const Weights& w, int degree) const;
    Poly truncated(const Weights& w, int max_degree) const;
    Poly radial(const Weights& w) const;            // term-wise scaling by p-degree

    void add_term(const Exp& m, const Rational& c); // merges, drops zeros

    std::string to_string(const Weights& w) const;

private:
    std::vector<Term> terms_; // sorted by Exp, nonzero coefficients
};

Poly operator*(const Rational& c, const Poly& p);

// All monomials of the given p-degree, in canonical order (descending ex).
std::vector<Exp> slice_monomials(const Weights& w, int degree);

// A graded slice: the monomial list of one p-degree plus a coefficient vector.
struct GradedSlice {
    int degree = 0;
    std::vector<Exp> monomials;
    std::vector<Rational> coeffs;
};

GradedSlice slice_of(const Poly& f, const Weights& w, int degree);
Poly poly_from_slice(const GradedSlice& s);
std::vector<Rational> coeff_vector(const Poly& f, const std::vector<Exp>& monomials);

// Exact division f = q*g. K >= 0 restricts the computation to p-degree <= K
// (for truncated data); K < 0 demands full exactness. On failure, fail_degree
// names the first slice where g does not divide.
struct DivideResult {
    bool ok = false;
    Poly quotient;
    int fail_degree = -1;
};
DivideResult divide_exact(const Poly& f, const Poly& g, const Weights& w, int K = -1);

// Power of f truncated at p-degree K.
Poly pow_truncated(const Poly& f, int n, const Weights& w, int K);

// Text form: terms `c*x^a*y^b` joined by +/- with rational c.
// `vars` lists the accepted variable names, one letter each, mapped to the
// exponent slots in order; the default is {x, y}.
Poly parse_poly(const std::string& text, const std::string& vars = "xy");

} // namespace qhnf

#endif
