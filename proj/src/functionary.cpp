#include "amplikit/functionary.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "amplikit/combi.hpp"

namespace amplikit {

namespace {

ExprPtr make_node(Expr&& node) {
  return std::make_shared<const Expr>(std::move(node));
}

}  // namespace

ExprPtr ex_scalar(const Rat& value) {
  Expr node;
  node.kind = ExprKind::scalar;
  node.scalar_value = value;
  return make_node(std::move(node));
}

ExprPtr ex_bracket(std::vector<int> indices) {
  Expr node;
  node.kind = ExprKind::bracket;
  node.bracket = std::move(indices);
  return make_node(std::move(node));
}

ExprPtr ex_chain(std::vector<std::vector<int>> clauses) {
  if (clauses.empty()) throw std::invalid_argument("chain: no clauses");
  if (clauses.size() % 2 == 0) {
    throw std::invalid_argument("chain: clause count must be odd");
  }
  if (clauses.size() == 1) return ex_bracket(clauses[0]);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    std::size_t want = (i == 0 || i + 1 == clauses.size()) ? 3 : 2;
    if (clauses[i].size() != want) {
      throw std::invalid_argument("chain: clause has wrong arity");
    }
  }
  Expr node;
  node.kind = ExprKind::chain;
  node.clauses = std::move(clauses);
  return make_node(std::move(node));
}

ExprPtr ex_sum(std::vector<ExprPtr> children) {
  std::vector<ExprPtr> flat;
  for (auto& c : children) {
    if (!c) throw std::invalid_argument("sum: null child");
    if (c->kind == ExprKind::sum) {
      flat.insert(flat.end(), c->children.begin(), c->children.end());
    } else if (c->kind == ExprKind::scalar && c->scalar_value == 0) {
      continue;
    } else {
      flat.push_back(c);
    }
  }
  if (flat.empty()) return ex_scalar(0);
  if (flat.size() == 1) return flat[0];
  Expr node;
  node.kind = ExprKind::sum;
  node.children = std::move(flat);
  return make_node(std::move(node));
}

ExprPtr ex_product(std::vector<ExprPtr> children) {
  std::vector<ExprPtr> flat;
  Rat coeff = 1;
  for (auto& c : children) {
    if (!c) throw std::invalid_argument("product: null child");
    if (c->kind == ExprKind::product) {
      for (const auto& g : c->children) {
        if (g->kind == ExprKind::scalar) {
          coeff *= g->scalar_value;
        } else {
          flat.push_back(g);
        }
      }
    } else if (c->kind == ExprKind::scalar) {
      coeff *= c->scalar_value;
    } else {
      flat.push_back(c);
    }
  }
  if (coeff == 0) return ex_scalar(0);
  if (flat.empty()) return ex_scalar(coeff);
  if (coeff != 1) flat.insert(flat.begin(), ex_scalar(coeff));
  if (flat.size() == 1) return flat[0];
  Expr node;
  node.kind = ExprKind::product;
  node.children = std::move(flat);
  return make_node(std::move(node));
}

ExprPtr ex_quotient(ExprPtr numerator, ExprPtr denominator) {
  if (!numerator || !denominator) {
    throw std::invalid_argument("quotient: null child");
  }
  if (denominator->kind == ExprKind::scalar) {
    if (denominator->scalar_value == 0) {
      throw std::invalid_argument("quotient: zero scalar denominator");
    }
    return ex_product({ex_scalar(Rat(1) / denominator->scalar_value),
                       std::move(numerator)});
  }
  Expr node;
  node.kind = ExprKind::quotient;
  node.children = {std::move(numerator), std::move(denominator)};
  return make_node(std::move(node));
}

ExprPtr ex_neg(const ExprPtr& e) { return ex_product({ex_scalar(-1), e}); }

ExprPtr expand_chain(const std::vector<std::vector<int>>& clauses) {
  if (clauses.size() == 1) return ex_bracket(clauses[0]);
  if (clauses.empty() || clauses.size() % 2 == 0) {
    throw std::invalid_argument("chain: clause count must be odd");
  }
  const std::size_t s = (clauses.size() - 1) / 2;
  const auto& first = clauses.front();
  const auto& last = clauses.back();
  std::vector<std::vector<int>> pairs(s);
  std::vector<std::vector<int>> fixed(s > 0 ? s - 1 : 0);
  for (std::size_t r = 0; r < s; ++r) {
    pairs[r] = clauses[2 * r + 1];
    if (r + 1 < s) fixed[r] = clauses[2 * r + 2];
  }
  std::vector<ExprPtr> terms;
  for (std::uint32_t t = 0; t < (1u << s); ++t) {
    int ones = 0;
    std::vector<ExprPtr> factors;
    auto bit = [&](std::size_t r) { return (t >> r) & 1u; };
    for (std::size_t r = 0; r < s; ++r) ones += static_cast<int>(bit(r));
    {
      std::vector<int> b = first;
      b.push_back(pairs[0][bit(0)]);
      factors.push_back(ex_bracket(std::move(b)));
    }
    for (std::size_t r = 0; r + 1 < s; ++r) {
      std::vector<int> b;
      b.push_back(pairs[r][1 - bit(r)]);
      b.insert(b.end(), fixed[r].begin(), fixed[r].end());
      b.push_back(pairs[r + 1][bit(r + 1)]);
      factors.push_back(ex_bracket(std::move(b)));
    }
    {
      std::vector<int> b;
      b.push_back(pairs[s - 1][1 - bit(s - 1)]);
      b.insert(b.end(), last.begin(), last.end());
      factors.push_back(ex_bracket(std::move(b)));
    }
    if (ones % 2 == 1) factors.insert(factors.begin(), ex_scalar(-1));
    terms.push_back(ex_product(std::move(factors)));
  }
  return ex_sum(std::move(terms));
}

// --- evaluation -------------------------------------------------------------

namespace {

Rat eval_rec(const ExprPtr& e, const BracketFn& bracket_fn,
             std::unordered_map<const Expr*, Rat>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  Rat value;
  switch (e->kind) {
    case ExprKind::scalar:
      value = e->scalar_value;
      break;
    case ExprKind::bracket:
      value = bracket_fn(e->bracket);
      break;
    case ExprKind::chain:
      value = eval_rec(expand_chain(e->clauses), bracket_fn, memo);
      break;
    case ExprKind::sum: {
      value = 0;
      for (const auto& c : e->children) value += eval_rec(c, bracket_fn, memo);
      break;
    }
    case ExprKind::product: {
      value = 1;
      for (const auto& c : e->children) {
        value *= eval_rec(c, bracket_fn, memo);
        if (value == 0) break;
      }
      break;
    }
    case ExprKind::quotient: {
      Rat den = eval_rec(e->children[1], bracket_fn, memo);
      if (den == 0) {
        throw DivisionByZero("quotient denominator evaluates to zero");
      }
      value = eval_rec(e->children[0], bracket_fn, memo) / den;
      break;
    }
  }
  memo.emplace(e.get(), value);
  return value;
}

}  // namespace

Rat eval_expr(const ExprPtr& e, const BracketFn& bracket_fn) {
  std::unordered_map<const Expr*, Rat> memo;
  return eval_rec(e, bracket_fn, memo);
}

BracketFn plucker_bracket_fn(const Mat& m) {
  auto cache = std::make_shared<std::map<std::vector<int>, Rat>>();
  Mat mat = m;
  return [cache, mat](const std::vector<int>& indices) -> Rat {
    if (indices.size() != mat.rows()) {
      throw std::invalid_argument("bracket arity != matrix row count");
    }
    std::vector<int> sorted = indices;
    int sign = sort_sign(sorted);
    if (sign == 0) return 0;
    std::sort(sorted.begin(), sorted.end());
    auto it = cache->find(sorted);
    Rat minor;
    if (it != cache->end()) {
      minor = it->second;
    } else {
      std::vector<std::size_t> cols;
      cols.reserve(sorted.size());
      for (int marker : sorted) {
        if (marker < 1 || static_cast<std::size_t>(marker) > mat.cols()) {
          throw std::invalid_argument("bracket marker out of range");
        }
        cols.push_back(static_cast<std::size_t>(marker - 1));
      }
      minor = mat.maximal_minor(cols);
      cache->emplace(sorted, minor);
    }
    return sign > 0 ? minor : -minor;
  };
}

Rat eval_twistor(const Mat& y, const Mat& z, const std::vector<int>& rows) {
  if (rows.size() != 4) throw std::invalid_argument("twistor needs 4 rows");
  const std::size_t w = z.cols();
  if (y.cols() != w || y.rows() + 4 != w) {
    throw std::invalid_argument("twistor: shape mismatch (need k+4 columns)");
  }
  Mat stacked(w, w);
  for (std::size_t r = 0; r < y.rows(); ++r) {
    for (std::size_t c = 0; c < w; ++c) stacked.at(r, c) = y.at(r, c);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    int marker = rows[i];
    if (marker < 1 || static_cast<std::size_t>(marker) > z.rows()) {
      throw std::invalid_argument("twistor row marker out of range");
    }
    for (std::size_t c = 0; c < w; ++c) {
      stacked.at(y.rows() + i, c) = z.at(static_cast<std::size_t>(marker - 1), c);
    }
  }
  return stacked.det();
}

BracketFn twistor_bracket_fn(const Mat& y, const Mat& z) {
  auto cache = std::make_shared<std::map<std::vector<int>, Rat>>();
  Mat ym = y, zm = z;
  return [cache, ym, zm](const std::vector<int>& indices) -> Rat {
    if (indices.size() != 4) {
      throw std::invalid_argument("twistor bracket needs 4 indices");
    }
    std::vector<int> sorted = indices;
    int sign = sort_sign(sorted);
    if (sign == 0) return 0;
    std::sort(sorted.begin(), sorted.end());
    auto it = cache->find(sorted);
    Rat value;
    if (it != cache->end()) {
      value = it->second;
    } else {
      value = eval_twistor(ym, zm, sorted);
      cache->emplace(sorted, value);
    }
    return sign > 0 ? value : -value;
  };
}

Rat eval_twistor_cauchy_binet(const Mat& c, const Mat& z,
                              const std::vector<int>& rows) {
  if (rows.size() != 4) throw std::invalid_argument("twistor needs 4 rows");
  const std::size_t k = c.rows();
  const std::size_t n = c.cols();
  if (z.rows() != n || z.cols() != k + 4) {
    throw std::invalid_argument("cauchy-binet: shape mismatch");
  }
  Rat total = 0;
  std::vector<bool> excluded(n + 1, false);
  for (int marker : rows) {
    if (marker < 1 || static_cast<std::size_t>(marker) > n) {
      throw std::invalid_argument("twistor row marker out of range");
    }
    excluded[static_cast<std::size_t>(marker)] = true;
  }
  for (const auto& j : subsets(static_cast<int>(n), static_cast<int>(k))) {
    bool skip = false;
    for (int marker : j) {
      if (excluded[static_cast<std::size_t>(marker)]) {
        skip = true;
        break;
      }
    }
    if (skip) continue;
    std::vector<std::size_t> ccols;
    ccols.reserve(k);
    for (int marker : j) ccols.push_back(static_cast<std::size_t>(marker - 1));
    Rat cminor = c.maximal_minor(ccols);
    if (cminor == 0) continue;
    Mat stacked(k + 4, k + 4);
    for (std::size_t r = 0; r < k; ++r) {
      auto zr = static_cast<std::size_t>(j[r] - 1);
      for (std::size_t col = 0; col < k + 4; ++col) {
        stacked.at(r, col) = z.at(zr, col);
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      auto zr = static_cast<std::size_t>(rows[i] - 1);
      for (std::size_t col = 0; col < k + 4; ++col) {
        stacked.at(k + i, col) = z.at(zr, col);
      }
    }
    total += cminor * stacked.det();
  }
  return total;
}

// --- degrees ----------------------------------------------------------------

namespace {

using Degree = std::map<int, int>;

void degree_add(Degree& into, const Degree& other, int factor) {
  for (const auto& [marker, deg] : other) {
    int next = into[marker] + factor * deg;
    if (next == 0) {
      into.erase(marker);
    } else {
      into[marker] = next;
    }
  }
}

Degree degree_rec(const ExprPtr& e,
                  std::unordered_map<const Expr*, Degree>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  Degree deg;
  switch (e->kind) {
    case ExprKind::scalar:
      break;
    case ExprKind::bracket:
      for (int marker : e->bracket) ++deg[marker];
      break;
    case ExprKind::chain: {
      // Every expanded term uses each clause index exactly once.
      for (const auto& clause : e->clauses) {
        for (int marker : clause) ++deg[marker];
      }
      break;
    }
    case ExprKind::sum: {
      bool first = true;
      for (const auto& c : e->children) {
        Degree d = degree_rec(c, memo);
        if (first) {
          deg = d;
          first = false;
        } else if (d != deg) {
          throw ImpureExpression("sum children have unequal multidegrees");
        }
      }
      break;
    }
    case ExprKind::product:
      for (const auto& c : e->children) degree_add(deg, degree_rec(c, memo), 1);
      break;
    case ExprKind::quotient:
      deg = degree_rec(e->children[0], memo);
      degree_add(deg, degree_rec(e->children[1], memo), -1);
      break;
  }
  memo.emplace(e.get(), deg);
  return deg;
}

}  // namespace

std::map<int, int> multidegree(const ExprPtr& e) {
  std::unordered_map<const Expr*, Degree> memo;
  return degree_rec(e, memo);
}

int degree_in(const ExprPtr& e, int marker) {
  auto deg = multidegree(e);
  auto it = deg.find(marker);
  return it == deg.end() ? 0 : it->second;
}

// --- index relabeling ---------------------------------------------------------

ExprPtr map_indices(const ExprPtr& e, const std::function<int(int)>& fn) {
  switch (e->kind) {
    case ExprKind::scalar:
      return e;
    case ExprKind::bracket: {
      std::vector<int> mapped;
      mapped.reserve(e->bracket.size());
      for (int marker : e->bracket) mapped.push_back(fn(marker));
      return ex_bracket(std::move(mapped));
    }
    case ExprKind::chain: {
      std::vector<std::vector<int>> mapped;
      mapped.reserve(e->clauses.size());
      for (const auto& clause : e->clauses) {
        std::vector<int> mc;
        mc.reserve(clause.size());
        for (int marker : clause) mc.push_back(fn(marker));
        mapped.push_back(std::move(mc));
      }
      Expr node;
      node.kind = ExprKind::chain;
      node.clauses = std::move(mapped);
      return make_node(std::move(node));
    }
    case ExprKind::sum:
    case ExprKind::product: {
      std::vector<ExprPtr> mapped;
      mapped.reserve(e->children.size());
      for (const auto& c : e->children) mapped.push_back(map_indices(c, fn));
      Expr node;
      node.kind = e->kind;
      node.children = std::move(mapped);
      return make_node(std::move(node));
    }
    case ExprKind::quotient:
      return ex_quotient(map_indices(e->children[0], fn),
                         map_indices(e->children[1], fn));
  }
  throw std::logic_error("map_indices: unreachable");
}

ExprPtr cyc_star(const ExprPtr& e, int n) {
  return map_indices(e, [n](int i) { return i == 1 ? n : i - 1; });
}

ExprPtr cyc_star_inv(const ExprPtr& e, int n) {
  return map_indices(e, [n](int i) { return i == n ? 1 : i + 1; });
}

ExprPtr refl_star(const ExprPtr& e, int n) {
  return map_indices(e, [n](int i) { return n + 1 - i; });
}

ExprPtr pullback_expr(const ExprPtr& e, const std::string& op, int n) {
  if (op == "cyc_star") return cyc_star(e, n);
  if (op == "cyc_star_inv") return cyc_star_inv(e, n);
  if (op == "refl_star") return refl_star(e, n);
  throw std::invalid_argument("pullback_expr: unknown op " + op);
}

// --- text forms ---------------------------------------------------------------

namespace {

void sexpr_rec(const ExprPtr& e, std::ostream& out) {
  switch (e->kind) {
    case ExprKind::scalar:
      out << rat_to_string(e->scalar_value);
      break;
    case ExprKind::bracket: {
      out << "(tw";
      for (int marker : e->bracket) out << ' ' << marker;
      out << ')';
      break;
    }
    case ExprKind::chain: {
      out << "(chain";
      for (const auto& clause : e->clauses) {
        out << " (";
        for (std::size_t i = 0; i < clause.size(); ++i) {
          if (i) out << ' ';
          out << clause[i];
        }
        out << ')';
      }
      out << ')';
      break;
    }
    case ExprKind::sum: {
      out << "(add";
      for (const auto& c : e->children) {
        out << ' ';
        sexpr_rec(c, out);
      }
      out << ')';
      break;
    }
    case ExprKind::product: {
      out << "(mul";
      for (const auto& c : e->children) {
        out << ' ';
        sexpr_rec(c, out);
      }
      out << ')';
      break;
    }
    case ExprKind::quotient: {
      out << "(div ";
      sexpr_rec(e->children[0], out);
      out << ' ';
      sexpr_rec(e->children[1], out);
      out << ')';
      break;
    }
  }
}

struct SexprParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit SexprParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("s-expression parse error at offset " +
                                std::to_string(pos) + ": " + what);
  }

  std::string next_atom() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (start == pos) fail("expected atom");
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  int parse_int() {
    std::string atom = next_atom();
    std::size_t used = 0;
    int value = std::stoi(atom, &used);
    if (used != atom.size()) fail("bad integer " + atom);
    return value;
  }

  ExprPtr parse_expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] != '(') {
      return ex_scalar(rat_from_string(next_atom()));
    }
    expect('(');
    std::string head = next_atom();
    ExprPtr result;
    if (head == "tw") {
      std::vector<int> indices;
      while (!peek_is(')')) indices.push_back(parse_int());
      if (indices.empty()) fail("(tw) needs indices");
      result = ex_bracket(std::move(indices));
    } else if (head == "chain") {
      std::vector<std::vector<int>> clauses;
      while (!peek_is(')')) {
        expect('(');
        std::vector<int> clause;
        while (!peek_is(')')) clause.push_back(parse_int());
        expect(')');
        clauses.push_back(std::move(clause));
      }
      result = ex_chain(std::move(clauses));
    } else if (head == "add" || head == "mul") {
      std::vector<ExprPtr> children;
      while (!peek_is(')')) children.push_back(parse_expr());
      if (children.empty()) fail("(" + head + ") needs children");
      result = head == "add" ? ex_sum(std::move(children))
                             : ex_product(std::move(children));
    } else if (head == "sub") {
      ExprPtr lhs = parse_expr();
      ExprPtr rhs = parse_expr();
      result = ex_sum({lhs, ex_neg(rhs)});
    } else if (head == "div") {
      ExprPtr num = parse_expr();
      ExprPtr den = parse_expr();
      result = ex_quotient(num, den);
    } else if (head == "neg") {
      result = ex_neg(parse_expr());
    } else {
      fail("unknown operator " + head);
    }
    expect(')');
    return result;
  }
};

void bracket_indices_string(const std::vector<int>& indices,
                            std::ostream& out) {
  for (int marker : indices) out << marker_char(marker);
}

// Precedence: 0 sum, 1 product/quotient, 2 atom.
void bracket_rec(const ExprPtr& e, std::ostream& out, int parent_prec) {
  switch (e->kind) {
    case ExprKind::scalar:
      if (e->scalar_value < 0 && parent_prec > 0) {
        out << '(' << rat_to_string(e->scalar_value) << ')';
      } else {
        out << rat_to_string(e->scalar_value);
      }
      break;
    case ExprKind::bracket:
      out << '<';
      bracket_indices_string(e->bracket, out);
      out << '>';
      break;
    case ExprKind::chain: {
      out << '<';
      for (std::size_t i = 0; i < e->clauses.size(); ++i) {
        if (i) out << '|';
        bracket_indices_string(e->clauses[i], out);
      }
      out << '>';
      break;
    }
    case ExprKind::sum: {
      if (parent_prec > 0) out << '(';
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        const auto& c = e->children[i];
        // Fold a leading scalar -1 of a product into a minus sign.
        bool negated = c->kind == ExprKind::product &&
                       c->children[0]->kind == ExprKind::scalar &&
                       c->children[0]->scalar_value == -1;
        if (i == 0) {
          if (negated) out << '-';
        } else {
          out << (negated ? " - " : " + ");
        }
        if (negated) {
          std::vector<ExprPtr> rest(c->children.begin() + 1,
                                    c->children.end());
          bracket_rec(ex_product(std::move(rest)), out, 1);
        } else {
          bracket_rec(c, out, 1);
        }
      }
      if (parent_prec > 0) out << ')';
      break;
    }
    case ExprKind::product: {
      std::size_t start = 0;
      if (e->children.size() > 1 &&
          e->children[0]->kind == ExprKind::scalar &&
          e->children[0]->scalar_value == -1) {
        out << '-';
        start = 1;
      }
      for (std::size_t i = start; i < e->children.size(); ++i) {
        if (i > start) out << ' ';
        bracket_rec(e->children[i], out, 1);
      }
      break;
    }
    case ExprKind::quotient:
      bracket_rec(e->children[0], out, 1);
      out << " / ";
      bracket_rec(e->children[1], out, 2);
      break;
  }
}

}  // namespace

std::string to_sexpr(const ExprPtr& e) {
  std::ostringstream out;
  sexpr_rec(e, out);
  return out.str();
}

ExprPtr parse_sexpr(const std::string& text) {
  SexprParser parser(text);
  ExprPtr result = parser.parse_expr();
  parser.skip_ws();
  if (parser.pos != text.size()) {
    throw std::invalid_argument("s-expression parse error: trailing input");
  }
  return result;
}

char marker_char(int marker) {
  if (marker >= 1 && marker <= 9) return static_cast<char>('0' + marker);
  if (marker >= 10 && marker <= 35) return static_cast<char>('A' + marker - 10);
  throw std::invalid_argument("marker out of printable range");
}

std::string to_bracket_string(const ExprPtr& e) {
  std::ostringstream out;
  bracket_rec(e, out, 0);
  return out.str();
}

}  // namespace amplikit
