#include "memfuzzy/fuzzy.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "memfuzzy/errors.hpp"

namespace memfuzzy {

Universe::Universe(double lo, double hi, std::size_t count) : lo_(lo), hi_(hi), count_(count) {
    if (count < 2) throw ParameterError("universe needs at least 2 grid points");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ParameterError("universe bounds must satisfy lo < hi");
    }
}

std::vector<double> Universe::values() const {
    std::vector<double> v(count_);
    for (std::size_t j = 0; j < count_; ++j) v[j] = value(j);
    return v;
}

std::size_t Universe::nearest(double x) const noexcept {
    const double pos = std::floor((x - lo_) / resolution());
    if (!(pos > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(pos), count_ - 1);
}

FuzzyNumber::FuzzyNumber(Universe universe, std::vector<double> grades)
    : universe_(universe), grades_(std::move(grades)) {
    if (grades_.size() != universe_.count()) {
        throw DimensionError("fuzzy number has " + std::to_string(grades_.size()) +
                             " grades for a universe of " + std::to_string(universe_.count()));
    }
    for (double g : grades_) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw ParameterError("membership grades must be finite and non-negative");
        }
    }
}

FuzzyNumber FuzzyNumber::zero(const Universe& universe) {
    return {universe, std::vector<double>(universe.count(), 0.0)};
}

double FuzzyNumber::height() const noexcept {
    return *std::max_element(grades_.begin(), grades_.end());
}

double FuzzyNumber::mass() const noexcept {
    return std::accumulate(grades_.begin(), grades_.end(), 0.0);
}

FuzzyNumber FuzzyNumber::scaled(double k) const {
    std::vector<double> g(grades_);
    for (double& v : g) v *= k;
    return {universe_, std::move(g)};
}

FuzzyNumber fuzzify_gaussian(double x0, double sigma, const Universe& universe) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be positive");
    if (!std::isfinite(x0)) throw ParameterError("crisp value must be finite");
    if (!universe.contains(x0)) {
        spdlog::warn("fuzzify: value {} outside universe [{}, {}]", x0, universe.lo(), universe.hi());
    }
    std::vector<double> grades(universe.count(), 0.0);
    if (sigma < universe.resolution() / 10.0) {
        grades[universe.nearest(x0)] = 1.0;
        return {universe, std::move(grades)};
    }
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t j = 0; j < grades.size(); ++j) {
        const double d = universe.value(j) - x0;
        grades[j] = std::exp(-d * d * inv);
    }
    return {universe, std::move(grades)};
}

double defuzzify_centroid(const FuzzyNumber& f) {
    double num = 0.0;
    double den = 0.0;
    const auto& u = f.universe();
    for (std::size_t j = 0; j < u.count(); ++j) {
        const double g = f.grades()[j];
        num += u.value(j) * g;
        den += g;
    }
    if (!(den > 0.0)) throw EmptyOutputError("cannot defuzzify an all-zero fuzzy number");
    return num / den;
}

FuzzyNumber normalize_peak(const FuzzyNumber& f) {
    const double peak = f.height();
    if (!(peak > 0.0)) throw EmptyOutputError("cannot normalise an all-zero fuzzy number");
    return f.scaled(1.0 / peak);
}

FuzzyNumber regrid(const FuzzyNumber& f, const Universe& target) {
    const Universe& src = f.universe();
    if (target.hi() <= src.lo() || target.lo() >= src.hi()) {
        throw DimensionError("regrid: source and target domains do not overlap");
    }
    if (src == target) return f;

    const auto g = f.grades();
    const double first = src.value(0);
    const double last = src.value(src.count() - 1);
    std::vector<double> out(target.count(), 0.0);
    for (std::size_t k = 0; k < target.count(); ++k) {
        const double x = target.value(k);
        if (!src.contains(x)) continue;
        if (x <= first) {
            out[k] = g.front();
        } else if (x >= last) {
            out[k] = g.back();
        } else {
            const double pos = (x - first) / src.resolution();
            const auto j = std::min(static_cast<std::size_t>(pos), src.count() - 2);
            const double t = pos - static_cast<double>(j);
            out[k] = (1.0 - t) * g[j] + t * g[j + 1];
        }
    }
    return {target, std::move(out)};
}

}  // namespace memfuzzy
