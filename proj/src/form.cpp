#include "sqf/form.hpp"
#include "sqf/error.hpp"

#include "json.hpp"

namespace sqf {

Vector zero_vector(std::size_t n, Kind k) { return Vector(n, Scalar::zero(k)); }

Vector basis_vector(std::size_t n, std::size_t i, Kind k) {
    Vector v = zero_vector(n, k);
    v.at(i) = unit(k);
    return v;
}

Vector operator+(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw PreconditionError("dimension mismatch");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Vector operator*(const Scalar& a, const Vector& x) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
    return r;
}

bool is_zero_vector(const Vector& x) {
    for (auto& s : x)
        if (!s.is_zero()) return false;
    return true;
}

std::string to_string(const Vector& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += to_string(x[i]);
    }
    return s + "]";
}

Vector parse_vector(std::string_view s, Kind k) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("vector must look like [t:0, g:1, 0]: '" + std::string(s) + "'");
    s = s.substr(1, s.size() - 2);
    Vector v;
    while (true) {
        auto comma = s.find(',');
        v.push_back(parse_scalar(s.substr(0, comma), k));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return v;
}

GramForm::GramForm(Kind k, std::vector<Scalar> diag) : kind_(k), diag_(std::move(diag)) {
    std::size_t n = diag_.size();
    gram_.assign(n * n, Scalar::zero(k));
    for (std::size_t i = 0; i < n; ++i) {
        if (diag_[i].kind() != k) throw ConfigError("diagonal entry from a different semifield");
        gram_[i * n + i] = nu(diag_[i]);
    }
}

void GramForm::set_cross(std::size_t i, std::size_t j, Scalar v) {
    if (i == j || i >= dim() || j >= dim()) throw PreconditionError("bad cross index");
    if (v.kind() != kind_) throw ConfigError("cross entry from a different semifield");
    gram_[i * dim() + j] = v;
    gram_[j * dim() + i] = v;
}

void GramForm::set_self(std::size_t i, Scalar v) {
    if (v.kind() != kind_) throw ConfigError("self entry from a different semifield");
    gram_.at(i * dim() + i) = v;
}

void GramForm::set_diag(std::size_t i, Scalar v) {
    if (v.kind() != kind_) throw ConfigError("diagonal entry from a different semifield");
    diag_.at(i) = v;
}

bool GramForm::balanced() const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (!(b(i, i) == nu(q(i)))) return false;
    return true;
}

ValidationReport validate(const GramForm& f) {
    ValidationReport r;
    if (f.dim() == 0) {
        r.ok = false;
        r.violations.push_back("dimension 0");
    }
    for (std::size_t i = 0; i < f.dim(); ++i) {
        if (f.q(i).is_zero()) {
            r.ok = false;
            r.violations.push_back("isotropic basis vector: q(e" + std::to_string(i + 1) + ") = 0");
        } else if (!le_nu(f.b(i, i), f.q(i))) {
            r.ok = false;
            r.violations.push_back("companion invalid at " + std::to_string(i + 1) + ": e*b" +
                                   std::to_string(i + 1) + std::to_string(i + 1) + " >_nu e*q" +
                                   std::to_string(i + 1));
        }
    }
    return r;
}

void require_valid(const GramForm& f) {
    auto r = validate(f);
    if (r.ok) return;
    std::string msg = "invalid form:";
    for (auto& v : r.violations) msg += " " + v + ";";
    throw PreconditionError(msg);
}

Scalar eval_q(const GramForm& f, const Vector& x) {
    if (x.size() != f.dim()) throw PreconditionError("dimension mismatch");
    Scalar s = Scalar::zero(f.kind());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        s = s + f.q(i) * square(x[i]);
        for (std::size_t j = i + 1; j < f.dim(); ++j) s = s + f.b(i, j) * x[i] * x[j];
    }
    return s;
}

Scalar eval_b(const GramForm& f, const Vector& x, const Vector& y) {
    if (x.size() != f.dim() || y.size() != f.dim()) throw PreconditionError("dimension mismatch");
    Scalar s = Scalar::zero(f.kind());
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < f.dim(); ++j) s = s + f.b(i, j) * x[i] * y[j];
    return s;
}

Decomposition decompose(const GramForm& f) {
    std::size_t n = f.dim();
    GramForm ql(f.kind(), std::vector<Scalar>(n, Scalar::zero(f.kind())));
    GramForm rho(f.kind(), std::vector<Scalar>(n, Scalar::zero(f.kind())));
    for (std::size_t i = 0; i < n; ++i) {
        ql.set_diag(i, f.q(i));
        ql.set_self(i, Scalar::zero(f.kind()));
        for (std::size_t j = i + 1; j < n; ++j) rho.set_cross(i, j, f.b(i, j));
    }
    return {ql, rho};
}

std::string to_string(const CsValue& c) { return c.zero ? "0" : "g:" + mag_to_string(c.mag); }

CsValue cs_vectors(const GramForm& f, const Vector& x, const Vector& y) {
    Scalar qx = eval_q(f, x), qy = eval_q(f, y);
    if (qx.is_zero() || qy.is_zero()) throw PreconditionError("CS of an isotropic vector");
    Scalar bxy = eval_b(f, x, y);
    if (bxy.is_zero()) return {true, 0};
    return {false, 2 * bxy.mag() - qx.mag() - qy.mag()};
}

bool is_ql_vectors(const GramForm& f, const Vector& x, const Vector& y) {
    return eval_q(f, x + y) == eval_q(f, x) + eval_q(f, y);
}

namespace {

GramForm uniform(Kind k, std::size_t n, Scalar q) { return GramForm(k, std::vector<Scalar>(n, q)); }

} // namespace

GramForm fixture(char name) {
    switch (name) {
    case 'A': {
        auto k = Kind::dense;
        GramForm f = uniform(k, 4, Scalar::tangible(0, k));
        f.set_cross(0, 1, Scalar::tangible(1, k));
        f.set_cross(0, 2, Scalar::tangible(1, k));
        f.set_cross(1, 2, Scalar::tangible(1, k));
        return f;
    }
    case 'B': {
        auto k = Kind::discrete;
        GramForm f = uniform(k, 3, Scalar::ghost(0, k));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) f.set_cross(i, j, Scalar::tangible(1, k));
        return f;
    }
    case 'C': {
        auto k = Kind::discrete;
        GramForm f(k, {Scalar::ghost(0, k), Scalar::tangible(0, k), Scalar::tangible(1, k)});
        f.set_cross(0, 2, Scalar::tangible(1, k));
        f.set_cross(1, 2, Scalar::tangible(0, k));
        return f;
    }
    case 'D': {
        auto k = Kind::dense;
        GramForm f = uniform(k, 5, Scalar::tangible(0, k));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j)
                f.set_cross(i, j, Scalar::tangible(j == i + 1 ? 0 : 5, k));
        return f;
    }
    }
    throw ParseError(std::string("unknown fixture '") + name + "'");
}

GramForm fixture(std::string_view name) {
    if (name.starts_with("fixture:")) name.remove_prefix(8);
    if (name.size() != 1) throw ParseError("unknown fixture '" + std::string(name) + "'");
    return fixture(name[0]);
}

nlohmann::json form_to_json(const GramForm& f) {
    nlohmann::json j;
    j["semifield"] = kind_name(f.kind());
    j["dim"] = f.dim();
    auto diag = nlohmann::json::array();
    for (std::size_t i = 0; i < f.dim(); ++i) diag.push_back(to_string(f.q(i)));
    j["diag"] = diag;
    auto cross = nlohmann::json::array();
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t k = i + 1; k < f.dim(); ++k)
            if (!f.b(i, k).is_zero()) cross.push_back({i + 1, k + 1, to_string(f.b(i, k))});
    j["cross"] = cross;
    if (f.balanced()) {
        j["self"] = "balanced";
    } else {
        auto self = nlohmann::json::array();
        for (std::size_t i = 0; i < f.dim(); ++i) self.push_back(to_string(f.b(i, i)));
        j["self"] = self;
    }
    return j;
}

GramForm form_from_json(const nlohmann::json& j) {
    try {
        Kind k = parse_kind(j.at("semifield").get<std::string>());
        std::size_t n = j.at("dim").get<std::size_t>();
        const auto& d = j.at("diag");
        if (d.size() != n) throw ParseError("diag length differs from dim");
        std::vector<Scalar> diag;
        for (auto& s : d) diag.push_back(parse_scalar(s.get<std::string>(), k));
        GramForm f(k, diag);
        if (j.contains("cross")) {
            for (auto& e : j.at("cross")) {
                auto a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>();
                if (a < 1 || b < 1 || a > n || b > n || a == b)
                    throw ParseError("cross index out of range");
                f.set_cross(a - 1, b - 1, parse_scalar(e.at(2).get<std::string>(), k));
            }
        }
        if (j.contains("self") && j.at("self").is_array()) {
            const auto& s = j.at("self");
            if (s.size() != n) throw ParseError("self length differs from dim");
            for (std::size_t i = 0; i < n; ++i) f.set_self(i, parse_scalar(s[i].get<std::string>(), k));
        } else if (j.contains("self") && j.at("self") != "balanced") {
            throw ParseError("self must be \"balanced\" or an array");
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("form json: ") + e.what());
    }
}

} // namespace sqf
