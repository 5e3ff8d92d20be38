#pragma once

// Random instances and timing shared by the property suites.

#include "sqf/checks.hpp"

#include <array>
#include <chrono>
#include <random>

namespace sqf::detail {

inline Scalar random_scalar(Kind k, std::mt19937_64& rng, int range = 20, bool allow_zero = true) {
    std::uniform_int_distribution<int> tag(allow_zero ? 0 : 1, 8), num(-range, range), den(1, 6);
    int t = tag(rng);
    if (t == 0) return Scalar::zero(k);
    Mag m = k == Kind::dense ? Mag(num(rng), den(rng)) : Mag(num(rng));
    return t % 2 ? Scalar::tangible(m, k) : Scalar::ghost(m, k);
}

inline const std::array<Scalar (*)(Mag, Kind), 2> kMakers = {&Scalar::tangible, &Scalar::ghost};

inline Scalar gram_entry(int code, Kind k) {
    // 0 is zero, then (tag, magnitude) over {t, g} x {0, 1, 5}.
    static const int mags[3] = {0, 1, 5};
    if (code == 0) return Scalar::zero(k);
    --code;
    return kMakers[code / 3](mags[code % 3], k);
}

inline Vector random_vector(std::size_t n, Kind k, std::mt19937_64& rng) {
    Vector x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(random_scalar(k, rng, 3));
    return x;
}

inline GramForm random_gram(std::size_t n, Kind k, std::mt19937_64& rng, int codes = 7) {
    std::uniform_int_distribution<int> pick(0, codes - 1), diag(1, codes - 1);
    std::vector<Scalar> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(gram_entry(diag(rng), k));
    GramForm f(k, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) f.set_cross(i, j, gram_entry(pick(rng), k));
    return f;
}

inline Ray random_ray(std::size_t n, std::mt19937_64& rng, int spread = 3) {
    std::uniform_int_distribution<int> m(-spread, 0), z(0, 3);
    for (;;) {
        std::vector<Coord> c(n);
        bool any = false;
        for (auto& e : c)
            if (z(rng)) {
                e = Mag(m(rng));
                any = true;
            }
        if (any) return Ray(c);
    }
}

template <class F>
Report timed(int k, std::string title, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.criterion = k;
    r.title = std::move(title);
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// Hull, saturation and maximal-set identities on one universe.
void universe_convexity(Report& r, const Universe& U, std::size_t samples, std::mt19937_64& rng);

} // namespace sqf::detail
