#include "memfuzzy/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "memfuzzy/errors.hpp"

namespace memfuzzy {
namespace {

using Fn = std::function<double(std::span<const double>)>;

double sinc(double v) { return v == 0.0 ? 1.0 : std::sin(v) / v; }

class Parser {
public:
    Parser(const std::string& src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

    Fn parse() {
        Fn e = expr();
        skip();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression '" + src_ + "' at " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Fn expr() {
        Fn lhs = term();
        for (;;) {
            if (eat('+')) {
                lhs = [a = lhs, b = term()](auto v) { return a(v) + b(v); };
            } else if (eat('-')) {
                lhs = [a = lhs, b = term()](auto v) { return a(v) - b(v); };
            } else {
                return lhs;
            }
        }
    }

    Fn term() {
        Fn lhs = unary();
        for (;;) {
            if (eat('*')) {
                lhs = [a = lhs, b = unary()](auto v) { return a(v) * b(v); };
            } else if (eat('/')) {
                lhs = [a = lhs, b = unary()](auto v) { return a(v) / b(v); };
            } else {
                return lhs;
            }
        }
    }

    Fn unary() {
        if (eat('-')) return [a = unary()](auto v) { return -a(v); };
        if (eat('+')) return unary();
        return power();
    }

    // right-associative; binds tighter than unary minus on its left
    Fn power() {
        Fn base = primary();
        if (eat('^')) return [a = base, b = unary()](auto v) { return std::pow(a(v), b(v)); };
        return base;
    }

    Fn primary() {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        if (eat('(')) {
            Fn e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Fn number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<std::size_t>(end - begin);
        return [value](auto) { return value; };
    }

    Fn identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = src_.substr(start, pos_ - start);
        if (eat('(')) return call(name);
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (vars_[k] == name) return [k](std::span<const double> v) { return v[k]; };
        }
        if (name == "pi") return [](auto) { return std::numbers::pi; };
        if (name == "e") return [](auto) { return std::numbers::e; };
        fail("unknown variable '" + name + "'");
    }

    Fn call(const std::string& name) {
        std::vector<Fn> args;
        if (!eat(')')) {
            do {
                args.push_back(expr());
            } while (eat(','));
            if (!eat(')')) fail("expected ')' after arguments");
        }
        auto unary_fn = [&](double (*f)(double)) -> Fn {
            if (args.size() != 1) fail(name + "() takes one argument");
            return [f, a = args[0]](auto v) { return f(a(v)); };
        };
        auto binary_fn = [&](double (*f)(double, double)) -> Fn {
            if (args.size() != 2) fail(name + "() takes two arguments");
            return [f, a = args[0], b = args[1]](auto v) { return f(a(v), b(v)); };
        };
        if (name == "sin") return unary_fn([](double x) { return std::sin(x); });
        if (name == "cos") return unary_fn([](double x) { return std::cos(x); });
        if (name == "tan") return unary_fn([](double x) { return std::tan(x); });
        if (name == "exp") return unary_fn([](double x) { return std::exp(x); });
        if (name == "log") return unary_fn([](double x) { return std::log(x); });
        if (name == "sqrt") return unary_fn([](double x) { return std::sqrt(x); });
        if (name == "abs") return unary_fn([](double x) { return std::fabs(x); });
        if (name == "sinc") return unary_fn(sinc);
        if (name == "pow") return binary_fn([](double x, double y) { return std::pow(x, y); });
        if (name == "min") return binary_fn([](double x, double y) { return std::fmin(x, y); });
        if (name == "max") return binary_fn([](double x, double y) { return std::fmax(x, y); });
        fail("unknown function '" + name + "'");
    }

    const std::string& src_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& source, std::vector<std::string> variables)
    : source_(source), variables_(std::move(variables)) {
    eval_ = Parser(source_, variables_).parse();
}

double Expression::operator()(std::span<const double> values) const {
    if (values.size() != variables_.size()) {
        throw DimensionError("expression expects " + std::to_string(variables_.size()) + " values");
    }
    return eval_(values);
}

}  // namespace memfuzzy
