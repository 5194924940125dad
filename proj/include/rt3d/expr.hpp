#pragma once

#include <functional>
#include <memory>
#include <string>

namespace rt3d {

/// Single-variable expression over `t`: numbers, + - * / ^, parentheses, the
/// functions sin cos tan sqrt exp log abs, and the constants pi, e, golden.
/// Parse errors throw config_error with the offending position in the text.
class Expr {
public:
    struct Node;

    static Expr parse(const std::string& text);
    double operator()(double t) const;
    const std::string& text() const { return text_; }

    std::function<double(double)> fn() const;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace rt3d
