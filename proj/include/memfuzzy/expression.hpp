#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace memfuzzy {

/// A compiled arithmetic expression over named variables, used for custom
/// dataset targets such as "x^2 + sin(y)".
///
/// Supports + - * / ^, unary minus, parentheses, the constants pi and e,
/// and sin cos tan exp log sqrt abs sinc (one argument), pow min max (two).
class Expression {
public:
    Expression(const std::string& source, std::vector<std::string> variables);

    /// Values are bound positionally to the variable list.
    [[nodiscard]] double operator()(std::span<const double> values) const;

    [[nodiscard]] const std::string& source() const noexcept { return source_; }
    [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return variables_; }

private:
    std::string source_;
    std::vector<std::string> variables_;
    std::function<double(std::span<const double>)> eval_;
};

}  // namespace memfuzzy
