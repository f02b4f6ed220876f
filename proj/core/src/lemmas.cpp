#include <cmath>
#include <mutex>
#include <vector>

#include "minla/errors.hpp"
#include "minla/oracle.hpp"

namespace minla {

namespace {

/// Exact H_0..H_S, extended on demand and shared across threads.
const BigRational& exact_harmonic(std::uint64_t s) {
    static std::mutex guard;
    static std::vector<BigRational> table{BigRational(0)};
    std::lock_guard lock(guard);
    while (table.size() <= s) {
        const auto next = static_cast<std::int64_t>(table.size());
        table.push_back(table.back() + BigRational(1, next));
    }
    return table[s];
}

BigRational ratio(std::uint64_t num, std::uint64_t den) {
    return BigRational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

}  // namespace

HarmonicNumber harmonic_number(std::uint64_t s) {
    HarmonicNumber h;
    if (s <= kExactHarmonicLimit) {
        h.exact = exact_harmonic(s);
        h.value = h.exact->convert_to<double>();
        return h;
    }
    // sum the small terms last to keep the rounding error down
    double value = 0.0;
    for (std::uint64_t i = s; i >= 1; --i) value += 1.0 / static_cast<double>(i);
    h.value = value;
    return h;
}

HarmonicBoundCheck check_harmonic_bounds(std::span<const std::uint64_t> series) {
    HarmonicBoundCheck check;
    std::uint64_t total = 0;
    for (const auto s : series) {
        if (s == 0) throw InvalidInput("check_harmonic_bounds: series entries must be positive");
        total += s;
    }
    if (series.empty()) throw InvalidInput("check_harmonic_bounds: empty series");
    if (total > kExactHarmonicLimit) {
        throw InvalidInput("check_harmonic_bounds: series sum exceeds " + std::to_string(kExactHarmonicLimit));
    }
    const BigRational& h = exact_harmonic(total);

    BigRational prefix_ratio = 0, squared = 0, product = 0;
    std::uint64_t prefix = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        prefix += series[i];
        prefix_ratio += ratio(series[i], prefix);
        if (i == 0) continue;
        const std::uint64_t pairs = choose2(prefix);
        squared += ratio(series[i] * series[i], pairs);
        product += ratio(series[i - 1] * series[i], pairs);
    }
    check.prefix_ratio = prefix_ratio <= h;
    check.squared_merge = squared <= 2 * h;
    check.adjacent_product = product <= 2 * h;
    return check;
}

IdentityCheck check_identity_lemmas(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidInput("check_identity_lemmas: a and b differ in length");
    if (a.size() > kIdentityMaxTerms) {
        throw InvalidInput("check_identity_lemmas: at most " + std::to_string(kIdentityMaxTerms) + " terms");
    }
    for (const double p : b) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("check_identity_lemmas: b must lie in [0, 1]");
    }
    const std::size_t n = a.size();
    double total_a = 0.0;
    for (const double v : a) total_a += v;

    IdentityCheck out;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t) {
        double weight = 1.0;
        double picked = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const bool on = (t >> j) & 1U;
            weight *= on ? b[j] : 1.0 - b[j];
            if (on) picked += a[j];
        }
        out.expectation_lhs += picked * weight;
        out.product_lhs += (total_a - picked) * picked * weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.expectation_rhs += a[i] * b[i];
        out.product_rhs += b[i] * a[i] * (total_a - a[i]);
    }
    const auto scale = [](double v) { return std::max(1.0, std::abs(v)); };
    out.expectation_identity =
        std::abs(out.expectation_lhs - out.expectation_rhs) <= kIdentityTolerance * scale(out.expectation_rhs);
    out.product_bound = out.product_lhs <= out.product_rhs + kIdentityTolerance * scale(out.product_rhs);
    return out;
}

}  // namespace minla
