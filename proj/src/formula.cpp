/*
 * Copyright 2026 The nestedgr1 Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nestedgr1/formula.hpp"

#include <cctype>

namespace nestedgr1 {

Formula Formula::constant(bool value)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = value;
    return Formula(std::move(n));
}

Formula Formula::variable(std::string name, bool primed)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->name = std::move(name);
    n->primed = primed;
    return Formula(std::move(n));
}

Formula Formula::negation(Formula f)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::negation;
    n->operands.push_back(std::move(f));
    return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> operands)
{
    if (operands.empty()) return constant(true);
    if (operands.size() == 1) return operands.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::conjunction;
    n->operands = std::move(operands);
    return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> operands)
{
    if (operands.empty()) return constant(false);
    if (operands.size() == 1) return operands.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::disjunction;
    n->operands = std::move(operands);
    return Formula(std::move(n));
}

Formula Formula::implication(Formula lhs, Formula rhs)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::implication;
    n->operands = {std::move(lhs), std::move(rhs)};
    return Formula(std::move(n));
}

Formula Formula::equivalence(Formula lhs, Formula rhs)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::equivalence;
    n->operands = {std::move(lhs), std::move(rhs)};
    return Formula(std::move(n));
}

Formula Formula::at(std::size_t column) const
{
    auto n = std::make_shared<Node>(*node_);
    n->column = column;
    return Formula(std::move(n));
}

bool Formula::operator==(const Formula& o) const
{
    if (node_ == o.node_) return true;
    if (kind() != o.kind() || value() != o.value() || name() != o.name() || primed() != o.primed()) return false;
    return operands() == o.operands();
}

namespace {

// Binding strength; larger binds tighter.
int precedence(Formula::Kind k)
{
    switch (k) {
    case Formula::Kind::equivalence: return 1;
    case Formula::Kind::implication: return 2;
    case Formula::Kind::disjunction: return 3;
    case Formula::Kind::conjunction: return 4;
    case Formula::Kind::negation: return 5;
    default: return 6;
    }
}

void print(const Formula& f, std::string& out)
{
    auto child = [&](const Formula& c, int min_prec) {
        bool paren = precedence(c.kind()) < min_prec;
        if (paren) out += '(';
        print(c, out);
        if (paren) out += ')';
    };
    switch (f.kind()) {
    case Formula::Kind::constant: out += f.value() ? "true" : "false"; break;
    case Formula::Kind::variable:
        out += f.name();
        if (f.primed()) out += '\'';
        break;
    case Formula::Kind::negation:
        out += '!';
        child(f.operands()[0], 5);
        break;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        const char* sep = f.kind() == Formula::Kind::conjunction ? " & " : " | ";
        int p = precedence(f.kind());
        for (std::size_t k = 0; k < f.operands().size(); ++k) {
            if (k) out += sep;
            // Nested operators of the same kind are parenthesized so that the
            // parse tree shape is reproduced exactly.
            child(f.operands()[k], p + 1);
        }
        break;
    }
    case Formula::Kind::implication:
        child(f.operands()[0], 3);
        out += " -> ";
        child(f.operands()[1], 2);
        break;
    case Formula::Kind::equivalence:
        child(f.operands()[0], 2);
        out += " <-> ";
        child(f.operands()[1], 2);
        break;
    }
}

class Parser {
public:
    Parser(std::string_view text, std::size_t line, std::size_t offset) : text_(text), line_(line), offset_(offset) {}

    Formula parse()
    {
        auto f = parse_iff();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, offset_ + pos_ + 1); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view token)
    {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    // Binary '<->' is right-nested to keep the printer unambiguous.
    Formula parse_iff()
    {
        auto lhs = parse_implies();
        skip_space();
        if (accept("<->")) return Formula::equivalence(lhs, parse_iff());
        return lhs;
    }

    Formula parse_implies()
    {
        auto lhs = parse_or();
        skip_space();
        if (text_.substr(pos_, 2) == "->") {
            pos_ += 2;
            return Formula::implication(lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_or()
    {
        std::vector<Formula> ops{parse_and()};
        while (accept("|")) ops.push_back(parse_and());
        return Formula::disjunction(std::move(ops));
    }

    Formula parse_and()
    {
        std::vector<Formula> ops{parse_unary()};
        while (accept("&")) ops.push_back(parse_unary());
        return Formula::conjunction(std::move(ops));
    }

    Formula parse_unary()
    {
        skip_space();
        auto start = pos_;
        if (accept("!")) return Formula::negation(parse_unary()).at(offset_ + start + 1);
        return parse_atom();
    }

    Formula parse_atom()
    {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of formula");
        auto start = pos_;
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto f = parse_iff();
            if (!accept(")")) fail("expected ')'");
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.') {
                    ++pos_;
                } else {
                    break;
                }
            }
            std::string ident(text_.substr(start, pos_ - start));
            auto column = offset_ + start + 1;
            if (ident == "true") return Formula::constant(true).at(column);
            if (ident == "false") return Formula::constant(false).at(column);
            bool primed = false;
            if (pos_ < text_.size() && text_[pos_] == '\'') {
                primed = true;
                ++pos_;
            }
            return Formula::variable(std::move(ident), primed).at(column);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string Formula::to_string() const
{
    std::string out;
    print(*this, out);
    return out;
}

Formula parse_formula_text(std::string_view text, std::size_t line, std::size_t column_offset)
{
    return Parser(text, line, column_offset).parse();
}

int turn_atom_index(std::string_view name)
{
    if (name.size() <= 4 || name.substr(0, 4) != "turn") return -1;
    int k = 0;
    for (auto c : name.substr(4)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
        k = k * 10 + (c - '0');
        if (k > 1'000'000) return -1;
    }
    return k;
}

}  // namespace nestedgr1
