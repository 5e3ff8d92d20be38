#pragma once

/**
 * @file form.hpp
 * @brief Gram-presented quadratic pairs (q, b) on a free module.
 *
 * q(x) = sum_i q_i x_i^2 + sum_{i<j} b_ij x_i x_j
 * b(x, y) = sum_i b_ii x_i y_i + sum_{i != j} b_ij x_i y_j
 */

#include "sqf/scalar.hpp"

#include "json.hpp"

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

namespace sqf {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n, Kind k);
Vector basis_vector(std::size_t n, std::size_t i, Kind k);
Vector operator+(const Vector& x, const Vector& y);
Vector operator*(const Scalar& a, const Vector& x);
bool is_zero_vector(const Vector& x);

std::string to_string(const Vector& x);
Vector parse_vector(std::string_view s, Kind k);

class GramForm {
public:
    GramForm() = default;
    // Balanced form: self entries default to e * q_i.
    GramForm(Kind k, std::vector<Scalar> diag);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return diag_.size(); }

    const Scalar& q(std::size_t i) const { return diag_[i]; }
    // b(e_i, e_j); symmetric, i == j gives the self entry.
    const Scalar& b(std::size_t i, std::size_t j) const { return gram_[i * dim() + j]; }

    void set_cross(std::size_t i, std::size_t j, Scalar v);
    void set_self(std::size_t i, Scalar v);
    void set_diag(std::size_t i, Scalar v);

    bool balanced() const;

    friend bool operator==(const GramForm&, const GramForm&) = default;

private:
    Kind kind_ = Kind::dense;
    std::vector<Scalar> diag_;
    std::vector<Scalar> gram_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const GramForm& f);
// Throws PreconditionError listing the violations.
void require_valid(const GramForm& f);

Scalar eval_q(const GramForm& f, const Vector& x);
Scalar eval_b(const GramForm& f, const Vector& x, const Vector& y);

struct Decomposition {
    GramForm quasilinear_part;
    GramForm rigid_complement;
};

Decomposition decompose(const GramForm& f);

// CS-ratio, stored as a magnitude or the zero value.
struct CsValue {
    bool zero = false;
    Mag mag = 0;

    bool le_e() const { return zero || mag <= Mag(0); }
    bool le_c0() const { return zero || mag <= Mag(1); }
    bool is_c0() const { return !zero && mag == Mag(1); }

    friend bool operator==(const CsValue& a, const CsValue& b) {
        return a.zero == b.zero && (a.zero || a.mag == b.mag);
    }
    // zero at the bottom.
    friend bool operator<(const CsValue& a, const CsValue& b) {
        if (a.zero) return !b.zero;
        if (b.zero) return false;
        return a.mag < b.mag;
    }
    friend bool operator<=(const CsValue& a, const CsValue& b) { return !(b < a); }
};

std::string to_string(const CsValue& c);

CsValue cs_vectors(const GramForm& f, const Vector& x, const Vector& y);
bool is_ql_vectors(const GramForm& f, const Vector& x, const Vector& y);

GramForm fixture(char name);
GramForm fixture(std::string_view name);

nlohmann::json form_to_json(const GramForm& f);
GramForm form_from_json(const nlohmann::json& j);

} // namespace sqf
