#pragma once

/**
 * @file scalar.hpp
 * @brief Supertropical scalars over a standard supersemifield.
 *
 * A scalar is zero, tangible(v) or ghost(v).  Magnitudes are written
 * additively: the product of two scalars adds magnitudes, and e = ghost(0)
 * is the ghost unit.  Addition keeps the larger magnitude; equal magnitudes
 * collapse to a ghost.
 */

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sqf {

using Mag = boost::rational<std::int64_t>;

enum class Kind { dense, discrete };
enum class Tag { zero, tangible, ghost };

const char* kind_name(Kind k);
Kind parse_kind(std::string_view s);

class Scalar {
public:
    Scalar() = default;

    static Scalar zero(Kind k = Kind::dense) { return Scalar(Tag::zero, Mag(0), k); }
    static Scalar tangible(Mag m, Kind k = Kind::dense);
    static Scalar ghost(Mag m, Kind k = Kind::dense);

    Tag tag() const { return tag_; }
    Mag mag() const { return mag_; }
    Kind kind() const { return kind_; }

    bool is_zero() const { return tag_ == Tag::zero; }
    bool is_tangible() const { return tag_ == Tag::tangible; }
    bool is_ghost() const { return tag_ == Tag::ghost; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.kind_ != b.kind_ || a.tag_ != b.tag_) return false;
        return a.tag_ == Tag::zero || a.mag_ == b.mag_;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);

private:
    Scalar(Tag t, Mag m, Kind k) : tag_(t), mag_(m), kind_(k) {}

    Tag tag_ = Tag::zero;
    Mag mag_ = 0;
    Kind kind_ = Kind::dense;
};

inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }

Scalar nu(const Scalar& a);
Scalar square(const Scalar& a);

// e and c0 = ghost(1); c0 only exists for the discrete kind.
Scalar unit(Kind k);
Scalar ghost_unit(Kind k);
Scalar c0();

bool le_nu(const Scalar& a, const Scalar& b);
bool lt_nu(const Scalar& a, const Scalar& b);
bool eq_nu(const Scalar& a, const Scalar& b);

std::string mag_to_string(const Mag& m);
Mag parse_mag(std::string_view s);

std::string to_string(const Scalar& a);
Scalar parse_scalar(std::string_view s, Kind k);

} // namespace sqf
