#include "qhnf/grading.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qhnf {

std::string rational_to_string(const Rational& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

Rational parse_rational(const std::string& s)
{
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw parse_error("invalid rational literal '" + s + "'");
    }
}

void validate_weights(const Weights& w)
{
    if (w.p1 < 1 || w.p2 < 1)
        throw precondition_error("weights must be positive integers");
    if (std::gcd(w.p1, w.p2) != 1)
        throw precondition_error("weights must be coprime");
}

std::string monomial_to_string(const Exp& m)
{
    if (m.ex == 0 && m.ey == 0) return "1";
    std::string s;
    if (m.ex > 0) {
        s += "x";
        if (m.ex > 1) s += "^" + std::to_string(m.ex);
    }
    if (m.ey > 0) {
        if (!s.empty()) s += "*";
        s += "y";
        if (m.ey > 1) s += "^" + std::to_string(m.ey);
    }
    return s;
}

Poly Poly::constant(const Rational& c)
{
    Poly p;
    p.add_term({0, 0}, c);
    return p;
}

Poly Poly::monomial(const Exp& m, const Rational& c)
{
    Poly p;
    p.add_term(m, c);
    return p;
}

Rational Poly::coeff(const Exp& m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Exp& e) { return t.first < e; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
}

void Poly::add_term(const Exp& m, const Rational& c)
{
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Exp& e) { return t.first < e; });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {m, c});
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (a->first < b->first) {
            out.push_back(*a++);
        } else if (b->first < a->first) {
            out.push_back(*b++);
        } else {
            Rational c = a->second + b->second;
            if (c != 0) out.push_back({a->first, c});
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, terms_.cend());
    out.insert(out.end(), b, o.terms_.cend());
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    return *this += -o;
}

Poly Poly::operator-() const
{
    Poly p(*this);
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
}

Poly operator*(const Poly& a, const Poly& b)
{
    std::map<Exp, Rational> acc;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            acc[{ma.ex + mb.ex, ma.ey + mb.ey}] += ca * cb;
    Poly p;
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.push_back({m, std::move(c)});
    return p;
}

Poly Poly::scaled(const Rational& c) const
{
    if (c == 0) return Poly();
    Poly p(*this);
    for (auto& t : p.terms_) t.second *= c;
    return p;
}

Poly operator*(const Rational& c, const Poly& p)
{
    return p.scaled(c);
}

Poly Poly::dx() const
{
    Poly p;
    for (const auto& [m, c] : terms_)
        if (m.ex > 0) p.terms_.push_back({{m.ex - 1, m.ey}, c * m.ex});
    return p;
}

Poly Poly::dy() const
{
    Poly p;
    for (const auto& [m, c] : terms_)
        if (m.ey > 0) p.terms_.push_back({{m.ex, m.ey - 1}, c * m.ey});
    return p;
}

int Poly::porder(const Weights& w) const
{
    int o = kOrderInf;
    for (const auto& [m, c] : terms_) o = std::min(o, pdeg(m, w));
    return o;
}

int Poly::pdeg_max(const Weights& w) const
{
    int o = -1;
    for (const auto& [m, c] : terms_) o = std::max(o, pdeg(m, w));
    return o;
}

std::optional<int> Poly::qh_degree(const Weights& w) const
{
    if (terms_.empty()) return std::nullopt;
    int d = pdeg(terms_.front().first, w);
    for (const auto& [m, c] : terms_)
        if (pdeg(m, w) != d) return std::nullopt;
    return d;
}

std::map<int, Poly> Poly::qh_components(const Weights& w) const
{
    std::map<int, Poly> out;
    for (const auto& [m, c] : terms_) out[pdeg(m, w)].terms_.push_back({m, c});
    return out;
}

Poly Poly::component(const Weights& w, int degree) const
{
    Poly p;
    for (const auto& [m, c] : terms_)
        if (pdeg(m, w) == degree) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::truncated(const Weights& w, int max_degree) const
{
    Poly p;
    for (const auto& [m, c] : terms_)
        if (pdeg(m, w) <= max_degree) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::radial(const Weights& w) const
{
    Poly p;
    for (const auto& [m, c] : terms_) {
        int d = pdeg(m, w);
        if (d != 0) p.terms_.push_back({m, c * d});
    }
    return p;
}

std::string Poly::to_string(const Weights& w) const
{
    if (terms_.empty()) return "0";
    std::vector<Term> ordered(terms_.begin(), terms_.end());
    CanonicalLess less{w};
    std::sort(ordered.begin(), ordered.end(),
              [&](const Term& a, const Term& b) { return less(a.first, b.first); });
    std::string s;
    bool first = true;
    for (const auto& [m, c] : ordered) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
            first = false;
        } else {
            if (a < 0) {
                s += " - ";
                a = -a;
            } else {
                s += " + ";
            }
        }
        bool unit_coeff = (a == 1);
        bool const_mono = (m.ex == 0 && m.ey == 0);
        if (!unit_coeff || const_mono) s += rational_to_string(a);
        if (!const_mono) {
            if (!unit_coeff) s += "*";
            s += monomial_to_string(m);
        }
    }
    return s;
}

std::vector<Exp> slice_monomials(const Weights& w, int degree)
{
    std::vector<Exp> out;
    if (degree < 0) return out;
    for (int ex = degree / w.p1; ex >= 0; --ex) {
        int rest = degree - ex * w.p1;
        if (rest % w.p2 == 0) out.push_back({ex, rest / w.p2});
    }
    return out;
}

GradedSlice slice_of(const Poly& f, const Weights& w, int degree)
{
    GradedSlice s;
    s.degree = degree;
    s.monomials = slice_monomials(w, degree);
    s.coeffs = coeff_vector(f.component(w, degree), s.monomials);
    return s;
}

Poly poly_from_slice(const GradedSlice& s)
{
    Poly p;
    for (std::size_t i = 0; i < s.monomials.size(); ++i)
        p.add_term(s.monomials[i], s.coeffs[i]);
    return p;
}

std::vector<Rational> coeff_vector(const Poly& f, const std::vector<Exp>& monomials)
{
    std::vector<Rational> v(monomials.size(), Rational(0));
    for (std::size_t i = 0; i < monomials.size(); ++i) v[i] = f.coeff(monomials[i]);
    return v;
}

namespace {

// Lead term under the multiplicative order (pdeg, then ascending ex is the
// *smaller* side; the lead is the canonical-last term).
Poly::Term lead_term(const Poly& f, const Weights& w)
{
    CanonicalLess less{w};
    const auto& ts = f.terms();
    auto best = ts.begin();
    for (auto it = std::next(ts.begin()); it != ts.end(); ++it)
        if (less(best->first, it->first)) best = it;
    return *best;
}

} // namespace

DivideResult divide_exact(const Poly& f, const Poly& g, const Weights& w, int K)
{
    DivideResult res;
    if (g.is_zero()) throw internal_error("division by zero polynomial");
    if (f.is_zero()) {
        res.ok = true;
        return res;
    }
    auto dg = g.qh_degree(w);
    if (!dg) throw internal_error("divisor must be quasi-homogeneous");
    Poly q;
    for (auto& [n, fn] : f.qh_components(w)) {
        if (K >= 0 && n > K) continue;
        if (n < *dg) {
            res.fail_degree = n;
            return res;
        }
        // cancel lead terms inside one graded slice
        Poly rem = fn;
        auto [gm, gc] = lead_term(g, w);
        while (!rem.is_zero()) {
            auto [rm, rc] = lead_term(rem, w);
            Exp qm{rm.ex - gm.ex, rm.ey - gm.ey};
            if (qm.ex < 0 || qm.ey < 0) {
                res.fail_degree = n;
                return res;
            }
            Poly t = Poly::monomial(qm, rc / gc);
            q += t;
            rem -= t * g;
        }
    }
    res.ok = true;
    res.quotient = q;
    return res;
}

Poly pow_truncated(const Poly& f, int n, const Weights& w, int K)
{
    Poly acc = Poly::constant(1);
    for (int i = 0; i < n; ++i) {
        acc = (acc * f).truncated(w, K);
        if (acc.is_zero()) break;
    }
    return acc;
}

namespace {

struct PolyParser {
    const std::string& s;
    const std::string& vars;
    std::size_t pos = 0;

    explicit PolyParser(const std::string& text, const std::string& v) : s(text), vars(v) {}

    [[noreturn]] void fail(const std::string& what) const
    {
        throw parse_error("polynomial syntax error at column " + std::to_string(pos + 1) +
                          ": " + what + " in '" + s + "'");
    }

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string read_digits()
    {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return s.substr(start, pos - start);
    }

    int read_exponent()
    {
        std::string d = read_digits();
        if (d.size() > 6) fail("exponent too large");
        return std::stoi(d);
    }

    // factor := rational | var [^ exp]
    // returns (monomial, coefficient)
    std::pair<Exp, Rational> read_factor()
    {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            if (eat('/')) {
                std::string den = read_digits();
                if (Rational(parse_rational(den)) == 0) fail("zero denominator");
                return {{0, 0}, parse_rational(num) / parse_rational(den)};
            }
            return {{0, 0}, parse_rational(num)};
        }
        auto slot = vars.find(c);
        if (slot == std::string::npos) fail(std::string("unexpected character '") + c + "'");
        ++pos;
        int e = 1;
        if (eat('^')) e = read_exponent();
        Exp m{0, 0};
        if (slot == 0)
            m.ex = e;
        else
            m.ey = e;
        return {m, Rational(1)};
    }

    Poly parse()
    {
        Poly out;
        skip_ws();
        if (pos >= s.size()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            Rational sign(1);
            if (eat('+')) {
                sign = 1;
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            skip_ws();
            if (pos >= s.size()) fail("dangling sign");
            // term := factor (* factor)*
            Exp m{0, 0};
            Rational c = sign;
            bool more = true;
            while (more) {
                auto [fm, fc] = read_factor();
                m.ex += fm.ex;
                m.ey += fm.ey;
                c *= fc;
                more = eat('*');
                if (more) skip_ws();
            }
            out.add_term(m, c);
            first = false;
        }
        return out;
    }
};

} // namespace

Poly parse_poly(const std::string& text, const std::string& vars)
{
    if (vars.empty() || vars.size() > 2) throw internal_error("parse_poly: bad variable set");
    return PolyParser(text, vars).parse();
}

} // namespace qhnf
