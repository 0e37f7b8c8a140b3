#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace memfuzzy {

/// Uniform discrete universe of discourse: `count` wires covering [lo, hi]
/// with resolution (hi - lo)/count. Grid points sit at cell centres,
/// lo + (j + 1/2) * resolution.
class Universe {
public:
    Universe(double lo, double hi, std::size_t count);

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] double resolution() const noexcept { return (hi_ - lo_) / static_cast<double>(count_); }
    [[nodiscard]] double value(std::size_t j) const noexcept {
        return lo_ + (static_cast<double>(j) + 0.5) * resolution();
    }
    [[nodiscard]] std::vector<double> values() const;

    /// Index of the grid point closest to x (clamped to the grid).
    [[nodiscard]] std::size_t nearest(double x) const noexcept;
    [[nodiscard]] bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

    bool operator==(const Universe&) const = default;

private:
    double lo_;
    double hi_;
    std::size_t count_;
};

/// Membership grades over a universe. Grades are non-negative but may
/// exceed 1 after inference; only their shape matters downstream.
class FuzzyNumber {
public:
    FuzzyNumber(Universe universe, std::vector<double> grades);

    /// All-zero number on the universe.
    static FuzzyNumber zero(const Universe& universe);

    [[nodiscard]] const Universe& universe() const noexcept { return universe_; }
    [[nodiscard]] std::span<const double> grades() const noexcept { return grades_; }
    [[nodiscard]] double grade(std::size_t j) const { return grades_.at(j); }
    [[nodiscard]] double height() const noexcept;
    [[nodiscard]] double mass() const noexcept;

    /// Multiplies every grade by k >= 0.
    [[nodiscard]] FuzzyNumber scaled(double k) const;

    bool operator==(const FuzzyNumber&) const = default;

private:
    Universe universe_;
    std::vector<double> grades_;
};

/// Samples exp(-(v - x0)^2 / (2 sigma^2)) on the grid. When sigma is below
/// a tenth of the resolution the result is one-hot at the nearest point.
[[nodiscard]] FuzzyNumber fuzzify_gaussian(double x0, double sigma, const Universe& universe);

/// sum(v_j g_j) / sum(g_j). Throws EmptyOutputError when the number has
/// no mass.
[[nodiscard]] double defuzzify_centroid(const FuzzyNumber& f);

/// Scales grades so the peak is 1.
[[nodiscard]] FuzzyNumber normalize_peak(const FuzzyNumber& f);

/// Linear interpolation of the membership curve onto another grid. Points
/// inside the source domain but beyond its first/last grid point take the
/// edge grade; points outside the domain get 0.
[[nodiscard]] FuzzyNumber regrid(const FuzzyNumber& f, const Universe& target);

}  // namespace memfuzzy
