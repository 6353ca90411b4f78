#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tmn/dates.hpp"
#include "tmn/decimal.hpp"
#include "tmn/errors.hpp"

namespace tmn::calc {

struct Number {
  Decimal value;
  bool percent = false;  // "12.6%"; the sign is stripped, the flag recorded

  bool operator==(const Number&) const = default;
};

struct TextValue {
  std::string text;

  bool operator==(const TextValue&) const = default;
};

using CalcValue = std::variant<Number, CivilDate, TextValue>;

enum class Unit { Days, Months, Years };
enum class CmpOp { Less, Greater, NotEqual };

std::string_view to_string(Unit unit);
std::optional<Unit> unit_from_string(std::string_view token);
std::string_view to_string(CmpOp op);

struct Diff {
  CalcValue x;
  CalcValue y;
  std::optional<Unit> unit;
};

struct Not {
  Number x;
};

struct IfThen {
  CalcValue x;
  CmpOp op;
  CalcValue y;
  std::string then_branch;
  std::string else_branch;
};

using CalcExpression = std::variant<Diff, Not, IfThen>;

/// Parses one calculator question: diff(X, Y[, unit]) | not(X) |
/// if_then(X <op> Y, Z, W) with <op> one of "<", ">", "≠" (or "!=").
/// Operands are tried as dates first, then numbers; if_then branches are
/// free text. Throws ParseError with position and reason.
CalcExpression parse_calc_question(std::string_view text);

/// Evaluates to the canonical answer string. Number differences are exact
/// decimals; date differences count whole completed units (absolute value);
/// not(X) = 100 - X; if_then returns the matching branch verbatim.
/// Throws UnitMismatch / IncomparableOperands.
std::string eval_calc(const CalcExpression& expr);

/// Value rendering used when composing questions (dates keep their original
/// precision, numbers print canonically).
std::string render_value(const CalcValue& value);

/// Operand parser shared with value extraction: date grammar first, then
/// number (commas and a trailing "%" stripped). Nullopt when neither fits.
std::optional<CalcValue> parse_operand(std::string_view text);

/// The exhaustive question generator: emits every diff question over value
/// pairs (all units for date pairs, or unit_hint when given), not(X) for
/// numbers in [0, 100], and both if_then directions plus "≠" when branch
/// strings are supplied; keeps only questions whose evaluation matches
/// target_answer after answer normalization.
std::vector<std::string> enumerate_calc_questions(
    const std::vector<CalcValue>& values,
    const std::optional<std::pair<std::string, std::string>>& entity_pair,
    const std::string& target_answer,
    std::optional<Unit> unit_hint = std::nullopt);

/// Calculator question surface tokens treated as never-new by the chain
/// metrics: function names and unit names.
const std::vector<std::string>& calculator_keywords();

}  // namespace tmn::calc
