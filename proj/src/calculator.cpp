#include "tmn/calculator.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "tmn/textscore.hpp"

namespace tmn::calc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_bare_year(const Number& n) {
  return !n.percent && n.value.is_integer() && n.value.units() >= 1000 &&
         n.value.units() <= 9999;
}

CivilDate year_as_date(const Number& n) {
  return CivilDate{static_cast<int>(n.value.units()), 1, 1, true, true};
}

// Resolves a pair of operands to a common comparable representation.
struct ResolvedPair {
  bool dates = false;
  Decimal nx, ny;
  CivilDate dx, dy;
};

ResolvedPair resolve_pair(const CalcValue& x, const CalcValue& y, bool want_dates) {
  if (std::holds_alternative<TextValue>(x) || std::holds_alternative<TextValue>(y)) {
    throw IncomparableOperands("text operand in a numeric position");
  }
  const Number* numx = std::get_if<Number>(&x);
  const Number* numy = std::get_if<Number>(&y);
  const CivilDate* datex = std::get_if<CivilDate>(&x);
  const CivilDate* datey = std::get_if<CivilDate>(&y);

  ResolvedPair out;
  if (numx && numy && !want_dates) {
    out.nx = numx->value;
    out.ny = numy->value;
    return out;
  }
  // Date semantics: promote bare years where needed.
  auto as_date = [](const Number* num, const CivilDate* date) -> CivilDate {
    if (date) return *date;
    if (num && is_bare_year(*num)) return year_as_date(*num);
    throw IncomparableOperands("operand is not a date or bare year");
  };
  out.dates = true;
  out.dx = as_date(numx, datex);
  out.dy = as_date(numy, datey);
  return out;
}

std::string surface(std::string_view func, const std::vector<std::string>& args) {
  std::string out(func);
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i];
  }
  out += ')';
  return out;
}

std::string render_if_then(const std::string& x, CmpOp op, const std::string& y,
                           const std::string& then_branch, const std::string& else_branch) {
  return surface("if_then", {x + " " + std::string(to_string(op)) + " " + y,
                             then_branch, else_branch});
}

}  // namespace

std::string_view to_string(Unit unit) {
  switch (unit) {
    case Unit::Days: return "days";
    case Unit::Months: return "months";
    case Unit::Years: return "years";
  }
  return "days";
}

std::optional<Unit> unit_from_string(std::string_view token) {
  std::string low;
  for (char c : token) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "days") return Unit::Days;
  if (low == "months") return Unit::Months;
  if (low == "years") return Unit::Years;
  return std::nullopt;
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Less: return "<";
    case CmpOp::Greater: return ">";
    case CmpOp::NotEqual: return "≠";
  }
  return "<";
}

std::optional<CalcValue> parse_operand(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  // Month-bearing mentions are dates; a bare "2003" stays a number and is
  // promoted to a calendar year only where a date is required.
  if (auto date = parse_date(text); date && !date->month_imputed) return CalcValue(*date);
  Number num;
  if (text.size() > 1 && text.back() == '%') {
    num.percent = true;
    text = trim(text.substr(0, text.size() - 1));
  }
  if (auto dec = Decimal::parse(text)) {
    num.value = *dec;
    return CalcValue(num);
  }
  return std::nullopt;
}

CalcExpression parse_calc_question(std::string_view text) {
  std::string_view s = trim(text);
  std::size_t open = s.find('(');
  if (open == std::string_view::npos) throw ParseError(0, "expected '(' after function name");
  std::string func(trim(s.substr(0, open)));
  if (s.back() != ')') throw ParseError(s.size(), "expected ')' at end of question");
  std::string_view body = s.substr(open + 1, s.size() - open - 2);

  std::vector<std::string_view> args;
  std::vector<std::size_t> arg_offsets;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      args.push_back(trim(body.substr(start, i - start)));
      arg_offsets.push_back(open + 1 + start);
      start = i + 1;
    }
  }

  auto operand_at = [&](std::size_t idx) -> CalcValue {
    auto value = parse_operand(args[idx]);
    if (!value) {
      throw ParseError(arg_offsets[idx],
                       "unsupported operand format: \"" + std::string(args[idx]) + "\"");
    }
    return *value;
  };

  if (func == "diff") {
    if (args.size() < 2 || args.size() > 3) {
      throw ParseError(open, "diff takes 2 or 3 arguments");
    }
    Diff diff;
    diff.x = operand_at(0);
    diff.y = operand_at(1);
    if (args.size() == 3) {
      auto unit = unit_from_string(args[2]);
      if (!unit) {
        throw ParseError(arg_offsets[2], "unknown unit: \"" + std::string(args[2]) + "\"");
      }
      diff.unit = *unit;
    }
    return diff;
  }

  if (func == "not") {
    if (args.size() != 1) throw ParseError(open, "not takes 1 argument");
    auto value = operand_at(0);
    const Number* num = std::get_if<Number>(&value);
    if (!num) throw ParseError(arg_offsets[0], "not() expects a number");
    return Not{*num};
  }

  if (func == "if_then") {
    if (args.size() != 3) throw ParseError(open, "if_then takes 3 arguments");
    std::string_view cond = args[0];
    // Operator search: multi-char forms first.
    struct OpToken {
      std::string_view token;
      CmpOp op;
    };
    static constexpr OpToken kOps[] = {
        {"≠", CmpOp::NotEqual}, {"!=", CmpOp::NotEqual},
        {"<", CmpOp::Less},          {">", CmpOp::Greater}};
    std::size_t op_pos = std::string_view::npos;
    const OpToken* found = nullptr;
    for (const OpToken& candidate : kOps) {
      std::size_t pos = cond.find(candidate.token);
      if (pos != std::string_view::npos && pos < op_pos) {
        op_pos = pos;
        found = &candidate;
      }
    }
    if (!found) throw ParseError(arg_offsets[0], "if_then condition needs <, > or ≠");

    IfThen expr;
    expr.op = found->op;
    std::string_view lhs = trim(cond.substr(0, op_pos));
    std::string_view rhs = trim(cond.substr(op_pos + found->token.size()));
    auto parse_side = [&](std::string_view side) -> CalcValue {
      auto value = parse_operand(side);
      if (!value) {
        throw ParseError(arg_offsets[0],
                         "unsupported operand format: \"" + std::string(side) + "\"");
      }
      if (std::holds_alternative<TextValue>(*value)) {
        throw ParseError(arg_offsets[0], "comparison operand must be a date or number");
      }
      return *value;
    };
    expr.x = parse_side(lhs);
    expr.y = parse_side(rhs);
    expr.then_branch = std::string(args[1]);
    expr.else_branch = std::string(args[2]);
    if (expr.then_branch.empty() || expr.else_branch.empty()) {
      throw ParseError(arg_offsets[1], "if_then branches must be non-empty");
    }
    return expr;
  }

  throw ParseError(0, "unknown function: \"" + func + "\"");
}

std::string eval_calc(const CalcExpression& expr) {
  if (const Diff* diff = std::get_if<Diff>(&expr)) {
    const Number* numx = std::get_if<Number>(&diff->x);
    const Number* numy = std::get_if<Number>(&diff->y);
    if (diff->unit && numx && numy && !(is_bare_year(*numx) && is_bare_year(*numy))) {
      throw UnitMismatch("unit given for plain numbers");
    }
    bool want_dates =
        diff->unit.has_value() || !numx || !numy;  // any date operand forces calendar math
    ResolvedPair pair = resolve_pair(diff->x, diff->y, want_dates);
    if (!pair.dates) return abs_diff(pair.nx, pair.ny).to_string();
    Unit unit = diff->unit.value_or(Unit::Days);
    std::int64_t result = 0;
    switch (unit) {
      case Unit::Days: result = diff_days(pair.dx, pair.dy); break;
      case Unit::Months: result = completed_months_between(pair.dx, pair.dy); break;
      case Unit::Years: result = completed_years_between(pair.dx, pair.dy); break;
    }
    return std::to_string(result);
  }

  if (const Not* negation = std::get_if<Not>(&expr)) {
    return (Decimal::from_int(100) - negation->x.value).to_string();
  }

  const IfThen& cond = std::get<IfThen>(expr);
  const Number* numx = std::get_if<Number>(&cond.x);
  const Number* numy = std::get_if<Number>(&cond.y);
  ResolvedPair pair = resolve_pair(cond.x, cond.y, !numx || !numy);
  bool holds = false;
  if (pair.dates) {
    int cmp = compare_dates(pair.dx, pair.dy);
    holds = cond.op == CmpOp::Less      ? cmp < 0
            : cond.op == CmpOp::Greater ? cmp > 0
                                        : cmp != 0;
  } else {
    holds = cond.op == CmpOp::Less      ? pair.nx < pair.ny
            : cond.op == CmpOp::Greater ? pair.nx > pair.ny
                                        : !(pair.nx == pair.ny);
  }
  return holds ? cond.then_branch : cond.else_branch;
}

std::string render_value(const CalcValue& value) {
  if (const Number* num = std::get_if<Number>(&value)) return num->value.to_string();
  if (const CivilDate* date = std::get_if<CivilDate>(&value)) return render_date(*date);
  return std::get<TextValue>(value).text;
}

std::vector<std::string> enumerate_calc_questions(
    const std::vector<CalcValue>& values,
    const std::optional<std::pair<std::string, std::string>>& entity_pair,
    const std::string& target_answer,
    std::optional<Unit> unit_hint) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  const std::string want = text::normalize_answer(target_answer);

  auto try_question = [&](const std::string& question) {
    if (!seen.insert(question).second) return;
    try {
      if (text::normalize_answer(eval_calc(parse_calc_question(question))) == want) {
        out.push_back(question);
      }
    } catch (const Error&) {
      // ill-typed candidate (unit on plain numbers, mixed operands): skip
    }
  };

  // larger-first canonical order for diff operands
  auto ordered = [](const CalcValue& a, const CalcValue& b) {
    const Number* na = std::get_if<Number>(&a);
    const Number* nb = std::get_if<Number>(&b);
    if (na && nb) return na->value >= nb->value;
    try {
      ResolvedPair pair = resolve_pair(a, b, true);
      return compare_dates(pair.dx, pair.dy) >= 0;
    } catch (const Error&) {
      return true;
    }
  };

  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const CalcValue& a = values[i];
      const CalcValue& b = values[j];
      if (std::holds_alternative<TextValue>(a) || std::holds_alternative<TextValue>(b)) continue;
      const CalcValue& first = ordered(a, b) ? a : b;
      const CalcValue& second = ordered(a, b) ? b : a;
      std::string rx = render_value(first);
      std::string ry = render_value(second);

      bool both_numbers =
          std::holds_alternative<Number>(a) && std::holds_alternative<Number>(b);
      if (both_numbers) {
        try_question(surface("diff", {rx, ry}));
        if (unit_hint) {
          try_question(surface("diff", {rx, ry, std::string(to_string(*unit_hint))}));
        }
      } else if (unit_hint) {
        try_question(surface("diff", {rx, ry, std::string(to_string(*unit_hint))}));
      } else {
        for (Unit unit : {Unit::Days, Unit::Months, Unit::Years}) {
          try_question(surface("diff", {rx, ry, std::string(to_string(unit))}));
        }
      }

      if (entity_pair) {
        const auto& [e1, e2] = *entity_pair;
        std::string ra = render_value(a);
        std::string rb = render_value(b);
        for (CmpOp op : {CmpOp::Less, CmpOp::Greater}) {
          try_question(render_if_then(ra, op, rb, e1, e2));
          try_question(render_if_then(rb, op, ra, e1, e2));
        }
        try_question(render_if_then(ra, CmpOp::NotEqual, rb, e1, e2));
      }
    }
  }

  for (const CalcValue& value : values) {
    const Number* num = std::get_if<Number>(&value);
    if (!num) continue;
    if (num->value < Decimal::from_int(0) || Decimal::from_int(100) < num->value) continue;
    try_question(surface("not", {num->value.to_string()}));
  }

  return out;
}

const std::vector<std::string>& calculator_keywords() {
  static const std::vector<std::string> keywords = {"diff",   "not",  "if_then",
                                                    "days",   "months", "years",
                                                    "if",     "then"};
  return keywords;
}

}  // namespace tmn::calc
