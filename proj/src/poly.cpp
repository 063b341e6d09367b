#include "amplikit/poly.hpp"

#include <algorithm>

#include "amplikit/combi.hpp"

namespace amplikit {

std::pair<int, int> BracketTable::intern(const std::vector<int>& indices) {
  std::vector<int> sorted = indices;
  int sign = sort_sign(sorted);
  if (sign == 0) return {-1, 0};
  std::sort(sorted.begin(), sorted.end());
  return {intern_sorted(sorted), sign};
}

int BracketTable::intern_sorted(const std::vector<int>& sorted) {
  auto it = ids_.find(sorted);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  ids_.emplace(sorted, id);
  names_.push_back(sorted);
  return id;
}

const std::vector<int>& BracketTable::indices_of(int id) const {
  return names_.at(static_cast<std::size_t>(id));
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int exp = a[i].second + b[j].second;
      if (exp != 0) out.emplace_back(a[i].first, exp);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial monomial_inverse(const Monomial& m) {
  Monomial out = m;
  for (auto& [var, exp] : out) exp = -exp;
  return out;
}

Poly Poly::constant(const Rat& value) {
  Poly p;
  if (value != 0) p.terms_.emplace(Monomial{}, value);
  return p;
}

Poly Poly::variable(int id, int exponent) {
  Poly p;
  if (exponent == 0) return constant(1);
  p.terms_.emplace(Monomial{{id, exponent}}, Rat(1));
  return p;
}

Poly Poly::monomial_term(const Monomial& m, const Rat& coeff) {
  Poly p;
  if (coeff != 0) p.terms_.emplace(m, coeff);
  return p;
}

void Poly::add_term(const Monomial& m, const Rat& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& other) const {
  Poly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& other) const {
  Poly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly Poly::scaled(const Rat& factor) const {
  Poly out;
  if (factor == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
  return out;
}

Poly Poly::operator*(const Poly& other) const {
  Poly out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      out.add_term(monomial_mul(ma, mb), ca * cb);
    }
  }
  return out;
}

Poly Poly::times_monomial(const Monomial& m, const Rat& coeff) const {
  Poly out;
  if (coeff == 0) return out;
  for (const auto& [mt, c] : terms_) {
    out.terms_.emplace(monomial_mul(mt, m), c * coeff);
  }
  return out;
}

std::optional<int> Poly::min_exponent(int var) const {
  if (terms_.empty()) return std::nullopt;
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int exp = 0;
    for (const auto& [v, e] : m) {
      if (v == var) {
        exp = e;
        break;
      }
    }
    best = first ? exp : std::min(best, exp);
    first = false;
  }
  return best;
}

namespace {

// Per-variable minimum exponent across all terms; shifting by its inverse
// turns a Laurent polynomial into a true polynomial (all exponents >= 0).
Monomial min_exponent_shift(const std::map<Monomial, Rat>& terms) {
  std::map<int, int> mins;   // var -> min exponent seen
  std::map<int, bool> everywhere;  // var present in every term so far?
  bool first = true;
  for (const auto& [m, c] : terms) {
    std::map<int, int> here;
    for (const auto& [v, e] : m) here[v] = e;
    if (first) {
      for (const auto& [v, e] : here) {
        mins[v] = e;
        everywhere[v] = true;
      }
      first = false;
      continue;
    }
    for (auto& [v, e] : mins) {
      auto it = here.find(v);
      if (it == here.end()) {
        everywhere[v] = false;
        e = std::min(e, 0);
      } else {
        e = std::min(e, it->second);
      }
    }
    for (const auto& [v, e] : here) {
      if (!mins.count(v)) {
        mins[v] = std::min(e, 0);
        everywhere[v] = false;
      }
    }
  }
  Monomial shift;
  for (const auto& [v, e] : mins) {
    if (e != 0) shift.emplace_back(v, e);
  }
  return shift;
}

// Graded lexicographic order on monomials with nonnegative exponents:
// compatible with multiplication and a well-order, so single-divisor long
// division by leading terms terminates and is exact iff divisible.
bool graded_lex_less(const Monomial& a, const Monomial& b) {
  int deg_a = 0, deg_b = 0;
  for (const auto& [v, e] : a) deg_a += e;
  for (const auto& [v, e] : b) deg_b += e;
  if (deg_a != deg_b) return deg_a < deg_b;
  // Same degree: earlier variables dominate; higher exponent there = larger.
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first) {
      // The one holding the smaller variable has positive exponent there.
      return a[i].first > b[j].first;
    }
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i;
    ++j;
  }
  // Equal degree forces both to end together (entries are positive).
  return false;
}

const std::pair<const Monomial, Rat>* leading_term(
    const std::map<Monomial, Rat>& terms) {
  const std::pair<const Monomial, Rat>* best = nullptr;
  for (const auto& term : terms) {
    if (!best || graded_lex_less(best->first, term.first)) best = &term;
  }
  return best;
}

// qm = a / b if b divides a variable-wise, else nullopt.
std::optional<Monomial> monomial_ratio(const Monomial& a, const Monomial& b) {
  std::map<int, int> exps;
  for (const auto& [v, e] : a) exps[v] = e;
  for (const auto& [v, e] : b) {
    exps[v] -= e;
    if (exps[v] < 0) return std::nullopt;
  }
  Monomial out;
  for (const auto& [v, e] : exps) {
    if (e != 0) out.emplace_back(v, e);
  }
  return out;
}

}  // namespace

std::optional<Poly> Poly::divided_exactly_by(const Poly& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return Poly();
  if (divisor.is_monomial()) {
    const auto& [m, c] = *divisor.terms_.begin();
    return times_monomial(monomial_inverse(m), Rat(1) / c);
  }
  // Normalize both operands to true polynomials, divide, reattach the shift.
  Monomial num_shift = min_exponent_shift(terms_);
  Monomial den_shift = min_exponent_shift(divisor.terms_);
  Poly remainder = times_monomial(monomial_inverse(num_shift));
  Poly shifted_divisor = divisor.times_monomial(monomial_inverse(den_shift));
  const auto* lead = leading_term(shifted_divisor.terms_);
  Poly quotient;
  while (!remainder.is_zero()) {
    const auto* rlead = leading_term(remainder.terms_);
    auto qm = monomial_ratio(rlead->first, lead->first);
    if (!qm) return std::nullopt;  // leading term not divisible: not exact
    Rat qc = rlead->second / lead->second;
    quotient.add_term(*qm, qc);
    remainder = remainder - shifted_divisor.times_monomial(*qm, qc);
  }
  return quotient.times_monomial(
      monomial_mul(num_shift, monomial_inverse(den_shift)));
}

namespace {

Poly expr_to_poly_rec(const ExprPtr& e, BracketTable& table) {
  switch (e->kind) {
    case ExprKind::scalar:
      return Poly::constant(e->scalar_value);
    case ExprKind::bracket: {
      auto [id, sign] = table.intern(e->bracket);
      if (sign == 0) return Poly();
      return Poly::variable(id).scaled(sign);
    }
    case ExprKind::chain:
      return expr_to_poly_rec(expand_chain(e->clauses), table);
    case ExprKind::sum: {
      Poly out;
      for (const auto& c : e->children) out = out + expr_to_poly_rec(c, table);
      return out;
    }
    case ExprKind::product: {
      Poly out = Poly::constant(1);
      for (const auto& c : e->children) {
        out = out * expr_to_poly_rec(c, table);
        if (out.is_zero()) break;
      }
      return out;
    }
    case ExprKind::quotient: {
      Poly den = expr_to_poly_rec(e->children[1], table);
      if (den.is_zero()) {
        throw DivisionByZero("quotient by the zero polynomial");
      }
      Poly num = expr_to_poly_rec(e->children[0], table);
      if (!den.is_monomial()) {
        // A non-monomial denominator may still divide exactly.
        auto q = num.divided_exactly_by(den);
        if (q) return *q;
        throw NonMonomialDenominator(
            "quotient denominator is not a monomial and does not divide");
      }
      const auto& [m, c] = *den.terms().begin();
      return num.times_monomial(monomial_inverse(m), Rat(1) / c);
    }
  }
  throw std::logic_error("expr_to_poly: unreachable");
}

}  // namespace

Poly expr_to_poly(const ExprPtr& e, BracketTable& table) {
  return expr_to_poly_rec(e, table);
}

ExprPtr poly_to_expr(const Poly& p, const BracketTable& table) {
  if (p.is_zero()) return ex_scalar(0);
  std::vector<ExprPtr> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<ExprPtr> numerator;
    std::vector<ExprPtr> denominator;
    if (c != 1 || m.empty()) numerator.push_back(ex_scalar(c));
    for (const auto& [var, exp] : m) {
      auto& target = exp > 0 ? numerator : denominator;
      for (int i = 0; i < (exp > 0 ? exp : -exp); ++i) {
        target.push_back(ex_bracket(table.indices_of(var)));
      }
    }
    ExprPtr num = ex_product(std::move(numerator));
    if (denominator.empty()) {
      terms.push_back(num);
    } else {
      terms.push_back(ex_quotient(num, ex_product(std::move(denominator))));
    }
  }
  return ex_sum(std::move(terms));
}

bool equal_in_free_ring(const ExprPtr& a, const ExprPtr& b) {
  BracketTable table;
  return expr_to_poly(a, table) == expr_to_poly(b, table);
}

}  // namespace amplikit
