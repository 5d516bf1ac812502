#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace biorth {

// One named residual. Residuals are relative (scaled by the largest term of
// the identity) and stored as double: the smallest values we care about are
// around 1e-75, well inside double range.
struct Residual {
    std::string label;  // identity name, e.g. "rrCf:a"
    int n = -1;         // level, -1 when not applicable
    std::string where;  // sample point or index, free text
    double value = 0;
    bool informational = false;  // reported but excluded from pass/fail
};

struct Report {
    std::vector<Residual> items;

    void add(std::string label, int n, std::string where, double v, bool info = false) {
        items.push_back({std::move(label), n, std::move(where), v, info});
    }
    void append(const Report& o) { items.insert(items.end(), o.items.begin(), o.items.end()); }

    // Largest residual over items whose label starts with prefix (non-informational).
    double max_of(const std::string& prefix) const {
        double m = 0;
        for (const auto& r : items)
            if (!r.informational && r.label.rfind(prefix, 0) == 0) m = std::max(m, nan_as_inf(r.value));
        return m;
    }
    double max_all() const { return max_of(""); }
    bool has(const std::string& prefix) const {
        for (const auto& r : items)
            if (r.label.rfind(prefix, 0) == 0) return true;
        return false;
    }
    bool passes(double tol) const {
        for (const auto& r : items)
            if (!r.informational && !(nan_as_inf(r.value) < tol)) return false;
        return true;
    }

    static double nan_as_inf(double v) { return std::isnan(v) ? INFINITY : v; }
};

// Relative residual of a sum of terms that should vanish.
template <class C>
double sum_residual(std::initializer_list<C> terms) {
    using std::abs;
    C s(0);
    decltype(abs(C(0))) scale(0);
    for (const auto& t : terms) {
        s += t;
        auto a = abs(t);
        if (a > scale) scale = a;
    }
    if (scale == 0) return 0;
    return to_double(decltype(scale)(abs(s) / scale));
}

template <class C>
double sum_residual(const std::vector<C>& terms) {
    using std::abs;
    C s(0);
    decltype(abs(C(0))) scale(0);
    for (const auto& t : terms) {
        s += t;
        auto a = abs(t);
        if (a > scale) scale = a;
    }
    if (scale == 0) return 0;
    return to_double(decltype(scale)(abs(s) / scale));
}

// |a-b| / max(|a|,|b|); 0 when both vanish.
template <class C>
double rel_err(const C& a, const C& b) {
    using std::abs;
    auto s = std::max(abs(a), abs(b));
    if (s == 0) return 0;
    return to_double(decltype(s)(abs(a - b) / s));
}

// |a-b| / max(|a|,|b|,scale), for identities whose sides can vanish together.
template <class C, class S>
double scaled_err(const C& a, const C& b, const S& scale) {
    using std::abs;
    S m = std::max({S(abs(a)), S(abs(b)), scale});
    if (m == 0) return 0;
    return to_double(S(abs(a - b) / m));
}

}  // namespace biorth
