#include "qhnf/series.hpp"

#include <algorithm>

namespace qhnf {

Series Series::one(int len)
{
    Series s(len);
    if (len > 0) s[0] = 1;
    return s;
}

Series Series::identity(int len)
{
    Series s(len);
    if (len > 1) s[1] = 1;
    return s;
}

bool Series::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

int Series::order() const
{
    for (int i = 0; i < length(); ++i)
        if (c_[static_cast<std::size_t>(i)] != 0) return i;
    return kOrderInf;
}

Series Series::resized(int len) const
{
    Series s(len);
    for (int i = 0; i < std::min(len, length()); ++i) s[i] = (*this)[i];
    return s;
}

Series operator+(const Series& a, const Series& b)
{
    int len = std::max(a.length(), b.length());
    Series s(len);
    for (int i = 0; i < len; ++i) s[i] = a.at(i) + b.at(i);
    return s;
}

Series operator-(const Series& a, const Series& b)
{
    int len = std::max(a.length(), b.length());
    Series s(len);
    for (int i = 0; i < len; ++i) s[i] = a.at(i) - b.at(i);
    return s;
}

Series Series::operator-() const
{
    Series s(*this);
    for (auto& c : s.c_) c = -c;
    return s;
}

Series Series::scaled(const Rational& r) const
{
    Series s(*this);
    for (auto& c : s.c_) c *= r;
    return s;
}

std::string Series::to_string(const std::string& var) const
{
    std::string s;
    bool first = true;
    for (int i = 0; i < length(); ++i) {
        Rational a = (*this)[i];
        if (a == 0) continue;
        if (first) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
            first = false;
        } else {
            s += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        bool unit = (a == 1);
        if (!unit || i == 0) s += rational_to_string(a);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return first ? "0" : s;
}

Series mul(const Series& a, const Series& b, int len)
{
    Series s(len);
    for (int i = 0; i < std::min(len, a.length()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < std::min(len - i, b.length()); ++j) {
            if (b[j] == 0) continue;
            s[i + j] += a[i] * b[j];
        }
    }
    return s;
}

Series derive(const Series& a)
{
    if (a.length() <= 1) return Series(std::max(a.length() - 1, 0));
    Series s(a.length() - 1);
    for (int i = 1; i < a.length(); ++i) s[i - 1] = a[i] * i;
    return s;
}

Series integrate(const Series& a, int len)
{
    Series s(len);
    for (int i = 0; i + 1 < len && i < a.length(); ++i) s[i + 1] = a[i] / (i + 1);
    return s;
}

Series compose(const Series& f, const Series& g, int len)
{
    if (g.at(0) != 0) throw internal_error("series composition needs ord(g) >= 1");
    Series out(len);
    Series gpow = Series::one(len);
    for (int k = 0; k < std::min(len, f.length()); ++k) {
        if (f[k] != 0) out = out + gpow.scaled(f[k]);
        gpow = mul(gpow, g, len);
        if (gpow.is_zero()) break;
    }
    return out;
}

Series inverse_unit(const Series& f, int len)
{
    if (f.at(0) == 0) throw internal_error("series inverse needs a unit");
    Series s(len);
    Rational inv0 = Rational(1) / f[0];
    s[0] = inv0;
    for (int n = 1; n < len; ++n) {
        Rational acc(0);
        for (int k = 1; k <= n && k < f.length(); ++k) acc += f[k] * s[n - k];
        s[n] = -inv0 * acc;
    }
    return s;
}

Series log_unit(const Series& f, int len)
{
    if (f.at(0) != 1) throw internal_error("series log needs f(0) = 1");
    // log f = integral of f'/f
    Series d = derive(f.resized(len));
    Series q = mul(d, inverse_unit(f, len), len);
    return integrate(q, len);
}

Series exp_series(const Series& g, int len)
{
    if (g.at(0) != 0) throw internal_error("series exp needs g(0) = 0");
    // e' = g' e
    Series e(len);
    if (len == 0) return e;
    e[0] = 1;
    for (int n = 1; n < len; ++n) {
        Rational acc(0);
        for (int k = 1; k <= n && k < g.length(); ++k) acc += Rational(k) * g[k] * e[n - k];
        e[n] = acc / n;
    }
    return e;
}

Series pow_unit(const Series& f, const Rational& e, int len)
{
    return exp_series(log_unit(f, len).scaled(e), len);
}

Series compositional_inverse(const Series& f, int len)
{
    if (f.at(0) != 0 || f.at(1) != 1)
        throw internal_error("compositional inverse needs a tangent-to-identity map");
    Series g = Series::identity(len);
    for (int n = 2; n < len; ++n) {
        Series fg = compose(f, g, n + 1);
        g[n] = -fg.at(n);
    }
    return g;
}

Series flow_map(const Series& v, int len)
{
    if (v.order() < 2) throw internal_error("flow generator must have order >= 2");
    // exp(v d/dz) applied to z
    Series out = Series::identity(len);
    Series term = v.resized(len);
    int k = 1;
    while (!term.is_zero()) {
        out = out + term;
        term = mul(v.resized(len), derive(term).resized(len), len).scaled(Rational(1, k + 1));
        ++k;
        if (k > len + 2) break;
    }
    return out;
}

Series flow_generator(const Series& phi, int len)
{
    if (phi.at(0) != 0 || phi.at(1) != 1)
        throw internal_error("flow generator needs a tangent-to-identity map");
    Series v(len);
    for (int n = 2; n < len; ++n) {
        Series e = flow_map(v, n + 1);
        v[n] = phi.at(n) - e.at(n);
    }
    return v;
}

Series gauge_transform(const Series& u, const Series& phi, int len)
{
    Series num = compose(u, phi, len);
    Series den = derive(phi).resized(len);
    return mul(num, inverse_unit(den, len), len);
}

Series parse_series(const std::string& text, int len, char var)
{
    Poly p = parse_poly(text, std::string(1, var));
    Series s(len);
    for (const auto& [m, c] : p.terms()) {
        if (m.ey != 0) throw parse_error("series must be univariate");
        if (m.ex < len) s[m.ex] = c;
    }
    return s;
}

} // namespace qhnf
