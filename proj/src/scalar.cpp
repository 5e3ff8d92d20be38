#include "sqf/scalar.hpp"
#include "sqf/error.hpp"

#include <charconv>

namespace sqf {

const char* kind_name(Kind k) { return k == Kind::dense ? "dense" : "discrete"; }

Kind parse_kind(std::string_view s) {
    if (s == "dense") return Kind::dense;
    if (s == "discrete") return Kind::discrete;
    throw ParseError("unknown semifield kind '" + std::string(s) + "'");
}

namespace {

void check_discrete(const Mag& m, Kind k) {
    if (k == Kind::discrete && m.denominator() != 1)
        throw ConfigError("discrete semifield needs integer magnitude, got " + mag_to_string(m));
}

void check_same(const Scalar& a, const Scalar& b) {
    if (a.kind() != b.kind()) throw ConfigError("operands from different semifields");
}

} // namespace

Scalar Scalar::tangible(Mag m, Kind k) {
    check_discrete(m, k);
    return Scalar(Tag::tangible, m, k);
}

Scalar Scalar::ghost(Mag m, Kind k) {
    check_discrete(m, k);
    return Scalar(Tag::ghost, m, k);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.mag_ > b.mag_) return a;
    if (b.mag_ > a.mag_) return b;
    return Scalar(Tag::ghost, a.mag_, a.kind_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Scalar::zero(a.kind_);
    Tag t = (a.is_tangible() && b.is_tangible()) ? Tag::tangible : Tag::ghost;
    return Scalar(t, a.mag_ + b.mag_, a.kind_);
}

Scalar nu(const Scalar& a) {
    if (a.is_zero()) return a;
    return Scalar::ghost(a.mag(), a.kind());
}

Scalar square(const Scalar& a) { return a * a; }

Scalar unit(Kind k) { return Scalar::tangible(0, k); }
Scalar ghost_unit(Kind k) { return Scalar::ghost(0, k); }
Scalar c0() { return Scalar::ghost(1, Kind::discrete); }

bool le_nu(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    return a.mag() <= b.mag();
}

bool lt_nu(const Scalar& a, const Scalar& b) { return !le_nu(b, a); }

bool eq_nu(const Scalar& a, const Scalar& b) { return le_nu(a, b) && le_nu(b, a); }

std::string mag_to_string(const Mag& m) {
    std::string s = std::to_string(m.numerator());
    if (m.denominator() != 1) s += "/" + std::to_string(m.denominator());
    return s;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw ParseError("bad magnitude '" + std::string(whole) + "'");
    return v;
}

} // namespace

Mag parse_mag(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Mag(parse_int(s, s));
    auto num = parse_int(s.substr(0, slash), s);
    auto den = parse_int(s.substr(slash + 1), s);
    if (den <= 0) throw ParseError("bad denominator in '" + std::string(s) + "'");
    return Mag(num, den);
}

std::string to_string(const Scalar& a) {
    switch (a.tag()) {
    case Tag::zero: return "0";
    case Tag::tangible: return "t:" + mag_to_string(a.mag());
    case Tag::ghost: return "g:" + mag_to_string(a.mag());
    }
    return "?";
}

Scalar parse_scalar(std::string_view s, Kind k) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "0") return Scalar::zero(k);
    if (s.size() < 3 || s[1] != ':' || (s[0] != 't' && s[0] != 'g'))
        throw ParseError("bad scalar '" + std::string(s) + "' at position 0");
    Mag m;
    try {
        m = parse_mag(s.substr(2));
    } catch (const ParseError&) {
        throw ParseError("bad scalar '" + std::string(s) + "' at position 2");
    }
    if (k == Kind::discrete && m.denominator() != 1)
        throw ParseError("discrete scalar needs integer magnitude: '" + std::string(s) + "'");
    return s[0] == 't' ? Scalar::tangible(m, k) : Scalar::ghost(m, k);
}

} // namespace sqf
