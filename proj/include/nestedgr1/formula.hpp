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

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nestedgr1 {

/// Syntax or semantic error in an input text, with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(format(message, line, column)), message_(message), line_(line), column_(column)
    {
    }

    /// Message without the position prefix.
    const std::string& message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column)
    {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/**
 * Propositional formula over primed and unprimed identifiers.
 *
 * Grammar, loosest binding first:
 *
 *     iff     := implies ( "<->" implies )*
 *     implies := or ( "->" implies )?          right associative
 *     or      := and ( "|" and )*
 *     and     := unary ( "&" unary )*
 *     unary   := "!" unary | atom
 *     atom    := "true" | "false" | ident "'"? | "(" iff ")"
 *
 * Identifiers of the form turn<k> denote the scheduling condition i = k.
 */
class Formula {
public:
    enum class Kind { constant, variable, negation, conjunction, disjunction, implication, equivalence };

    static Formula constant(bool value);
    static Formula variable(std::string name, bool primed = false);
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> operands);
    static Formula disjunction(std::vector<Formula> operands);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula equivalence(Formula lhs, Formula rhs);

    Kind kind() const { return node_->kind; }
    bool value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    bool primed() const { return node_->primed; }
    const std::vector<Formula>& operands() const { return node_->operands; }

    /// Column (1-based) where this subformula started in its source text, or 0.
    std::size_t column() const { return node_->column; }
    Formula at(std::size_t column) const;

    /// Canonical text; parsing it yields a structurally equal formula.
    std::string to_string() const;

    bool operator==(const Formula& o) const;

private:
    struct Node {
        Kind kind = Kind::constant;
        bool value = false;
        std::string name;
        bool primed = false;
        std::vector<Formula> operands;
        std::size_t column = 0;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Parses formula text. `line` is used only for error positions.
Formula parse_formula_text(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0);

/// If `name` has the form turn<k>, returns k; otherwise -1.
int turn_atom_index(std::string_view name);

}  // namespace nestedgr1
