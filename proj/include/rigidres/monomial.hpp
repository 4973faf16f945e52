#pragma once

// Monomials over a named polynomial ring and monomial ideals.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidres {

using Exponent = std::uint64_t;

class AmbientMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ExponentOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Error raised while reading an input file; carries the 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Variable names of a polynomial ring k[x_1..x_d].
struct Ring {
    std::vector<std::string> names;

    explicit Ring(std::vector<std::string> vars) : names(std::move(vars))
    {
        std::set<std::string> seen;
        for (const auto& v : names) {
            if (v.empty())
                throw std::invalid_argument("empty variable name");
            if (!seen.insert(v).second)
                throw std::invalid_argument("duplicate variable '" + v + "'");
        }
    }

    std::size_t size() const { return names.size(); }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names)
{
    return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b)
{
    return a == b || (a && b && a->names == b->names);
}

class Monomial {
public:
    Monomial() = default;

    /// The monomial 1.
    explicit Monomial(RingPtr ring) : ring_(std::move(ring)), exps_(ring_->size(), 0) {}

    Monomial(RingPtr ring, std::vector<Exponent> exps) : ring_(std::move(ring)), exps_(std::move(exps))
    {
        if (exps_.size() != ring_->size())
            throw AmbientMismatch("exponent vector length " + std::to_string(exps_.size()) +
                                  " does not match ring of " + std::to_string(ring_->size()) + " variables");
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Exponent>& exponents() const { return exps_; }
    Exponent operator[](std::size_t i) const { return exps_[i]; }

    bool is_one() const
    {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    Exponent total_degree() const
    {
        Exponent t = 0;
        for (Exponent e : exps_) {
            if (e > std::numeric_limits<Exponent>::max() - t)
                throw ExponentOverflow("total degree overflows");
            t += e;
        }
        return t;
    }

    /// `a^2*b`, or `1` for the unit monomial.
    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] == 0)
                continue;
            if (!out.empty())
                out += '*';
            out += ring_->names[i];
            if (exps_[i] > 1)
                out += '^' + std::to_string(exps_[i]);
        }
        return out.empty() ? "1" : out;
    }

    /// Equal rings are required for equality; exponents alone decide order.
    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.exps_ == b.exps_ && same_ring(a.ring_, b.ring_);
    }

    /// Canonical multidegree order: total degree, then exponent vector.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (a.exps_.size() != b.exps_.size())
            return a.exps_.size() <=> b.exps_.size();
        Exponent da = 0, db = 0;
        for (Exponent e : a.exps_)
            da += e;
        for (Exponent e : b.exps_)
            db += e;
        if (da != db)
            return da <=> db;
        return a.exps_ <=> b.exps_;
    }

private:
    RingPtr ring_;
    std::vector<Exponent> exps_;
};

namespace detail {
inline void require_same_ring(const Monomial& a, const Monomial& b)
{
    if (!same_ring(a.ring(), b.ring()))
        throw AmbientMismatch("monomials " + a.to_string() + " and " + b.to_string() + " live in different rings");
}
} // namespace detail

inline Monomial lcm(const Monomial& a, const Monomial& b)
{
    detail::require_same_ring(a, b);
    std::vector<Exponent> e(a.exponents().size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = std::max(a[i], b[i]);
    return Monomial(a.ring(), std::move(e));
}

inline bool divides(const Monomial& a, const Monomial& b)
{
    detail::require_same_ring(a, b);
    for (std::size_t i = 0; i < a.exponents().size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

/// b / a; requires a | b.
inline Monomial quotient_monomial(const Monomial& b, const Monomial& a)
{
    if (!divides(a, b))
        throw std::domain_error(a.to_string() + " does not divide " + b.to_string());
    std::vector<Exponent> e(b.exponents().size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = b[i] - a[i];
    return Monomial(b.ring(), std::move(e));
}

inline Monomial multiply(const Monomial& a, const Monomial& b)
{
    detail::require_same_ring(a, b);
    std::vector<Exponent> e(a.exponents().size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (b[i] > std::numeric_limits<Exponent>::max() - a[i])
            throw ExponentOverflow("exponent overflow multiplying " + a.to_string() + " by " + b.to_string());
        e[i] = a[i] + b[i];
    }
    return Monomial(a.ring(), std::move(e));
}

/// Ordered generating set; generator order fixes atom numbering.
class MonomialIdeal {
public:
    MonomialIdeal(RingPtr ring, std::vector<Monomial> generators)
        : ring_(std::move(ring)), gens_(std::move(generators))
    {
        if (gens_.empty())
            throw std::invalid_argument("a monomial ideal needs at least one generator");
        for (const auto& g : gens_)
            if (!same_ring(g.ring(), ring_))
                throw AmbientMismatch("generator " + g.to_string() + " is not in the ideal's ring");
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Monomial>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    const Monomial& operator[](std::size_t i) const { return gens_[i]; }

    bool is_minimally_generated() const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < gens_.size(); ++j)
                if (i != j && divides(gens_[j], gens_[i]))
                    return false;
        return true;
    }

    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < gens_.size(); ++i)
            out += (i ? ", " : "") + gens_[i].to_string();
        return out + ")";
    }

private:
    RingPtr ring_;
    std::vector<Monomial> gens_;
};

/// Drops generators divisible by another generator, keeping relative order.
/// Among equal generators only the first survives.
inline MonomialIdeal minimalize_generators(const MonomialIdeal& ideal)
{
    const auto& g = ideal.generators();
    std::vector<Monomial> kept;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j || !divides(g[j], g[i]))
                continue;
            // strict divisor, or an earlier duplicate
            redundant = !(g[j] == g[i]) || j < i;
        }
        if (!redundant)
            kept.push_back(g[i]);
    }
    return MonomialIdeal(ideal.ring(), std::move(kept));
}

/// Parses one `*`-separated product of `var^k` factors, or `1`.
inline Monomial parse_monomial(const RingPtr& ring, const std::string& text, std::size_t line = 0)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw ParseError(line, "empty monomial");
    std::vector<Exponent> exps(ring->size(), 0);
    if (s == "1")
        return Monomial(ring, exps);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t star = s.find('*', pos);
        const std::string factor = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        if (factor.empty())
            throw ParseError(line, "empty factor in '" + text + "'");
        const std::size_t caret = factor.find('^');
        const std::string var = factor.substr(0, caret);
        Exponent k = 1;
        if (caret != std::string::npos) {
            const std::string digits = factor.substr(caret + 1);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError(line, "bad exponent in factor '" + factor + "'");
            try {
                k = std::stoull(digits);
            } catch (const std::out_of_range&) {
                throw ParseError(line, "exponent out of range in factor '" + factor + "'");
            }
        }
        const auto it = std::find(ring->names.begin(), ring->names.end(), var);
        if (it == ring->names.end())
            throw ParseError(line, "unknown variable '" + var + "'");
        Exponent& slot = exps[static_cast<std::size_t>(it - ring->names.begin())];
        if (k > std::numeric_limits<Exponent>::max() - slot)
            throw ParseError(line, "exponent overflow in '" + text + "'");
        slot += k;
        if (star == std::string::npos)
            break;
        pos = star + 1;
    }
    return Monomial(ring, std::move(exps));
}

/// Ideal file: `vars: a b c` on the first content line, then one generator
/// per nonempty, non-`#` line. Generators are returned as written (not minimalized).
inline MonomialIdeal parse_ideal(std::istream& in)
{
    std::string raw;
    std::size_t line_no = 0;
    RingPtr ring;
    std::vector<Monomial> gens;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#')
            continue;
        const std::string line = raw.substr(first);
        if (!ring) {
            if (line.rfind("vars:", 0) != 0)
                throw ParseError(line_no, "expected 'vars:' header");
            std::istringstream names(line.substr(5));
            std::vector<std::string> vars;
            for (std::string v; names >> v;)
                vars.push_back(v);
            if (vars.empty())
                throw ParseError(line_no, "no variables declared");
            for (const auto& v : vars)
                if (v.find_first_of("*^#") != std::string::npos || v == "1")
                    throw ParseError(line_no, "invalid variable name '" + v + "'");
            try {
                ring = make_ring(std::move(vars));
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
            continue;
        }
        gens.push_back(parse_monomial(ring, line, line_no));
    }
    if (!ring)
        throw ParseError(line_no + 1, "missing 'vars:' header (empty input)");
    if (gens.empty())
        throw ParseError(line_no + 1, "no generators");
    return MonomialIdeal(ring, std::move(gens));
}

inline MonomialIdeal parse_ideal(const std::string& text)
{
    std::istringstream in(text);
    return parse_ideal(in);
}

inline std::string format_ideal(const MonomialIdeal& ideal)
{
    std::string out = "vars:";
    for (const auto& v : ideal.ring()->names)
        out += " " + v;
    out += "\n";
    for (const auto& g : ideal.generators())
        out += g.to_string() + "\n";
    return out;
}

} // namespace rigidres
