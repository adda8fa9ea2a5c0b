#include "polya_pila/parse.hpp"

#include <cctype>

#include "polya_pila/errors.hpp"

namespace polya_pila {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PreconditionError("polynomial parse error at " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly constant(const BigRational& c) const {
    SparsePoly p;
    if (c != 0) p[std::vector<int>(vars_.size(), 0)] = c;
    return p;
  }

  static void add_into(SparsePoly& a, const SparsePoly& b, int sign) {
    for (const auto& [m, c] : b) {
      BigRational& slot = a[m];
      slot += sign > 0 ? c : BigRational(-c);
      if (slot == 0) a.erase(m);
    }
  }

  static SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        std::vector<int> m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        BigRational& slot = out[m];
        slot += ca * cb;
        if (slot == 0) out.erase(m);
      }
    return out;
  }

  SparsePoly expr() {
    SparsePoly acc;
    int sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    add_into(acc, term(), sign);
    while (true) {
      if (accept('+')) add_into(acc, term(), 1);
      else if (accept('-')) add_into(acc, term(), -1);
      else break;
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  SparsePoly term() {
    SparsePoly acc = power();
    while (true) {
      if (accept('*')) {
        acc = mul(acc, power());
      } else if (accept('/')) {
        SparsePoly d = power();
        std::vector<int> zero(vars_.size(), 0);
        if (d.size() != 1 || d.begin()->first != zero) fail("division only by nonzero constants");
        BigRational inv = 1 / d.begin()->second;
        for (auto& [m, c] : acc) c *= inv;
      } else if (starts_factor()) {
        acc = mul(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  SparsePoly power() {
    SparsePoly base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected nonnegative integer exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      SparsePoly r = constant(1);
      for (int i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }

  SparsePoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(BigRational(BigInt(std::string(s_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (vars_[v] == name) {
          SparsePoly p;
          std::vector<int> m(vars_.size(), 0);
          m[v] = 1;
          p[m] = 1;
          return p;
        }
      }
      // allow "xy" as x*y for single-letter variables
      std::size_t save = pos_;
      pos_ = start;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (vars_[v].size() == 1 && vars_[v][0] == c) {
          ++pos_;
          SparsePoly p;
          std::vector<int> m(vars_.size(), 0);
          m[v] = 1;
          p[m] = 1;
          return p;
        }
      }
      pos_ = save;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_sparse(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

BiPoly parse_bipoly(std::string_view text) {
  static const std::vector<std::string> vars = {"x", "y"};
  BiPoly::Terms t;
  for (const auto& [m, c] : parse_sparse(text, vars)) t.emplace(Monomial{m[0], m[1]}, c);
  return BiPoly(std::move(t));
}

BiPoly bipoly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw PreconditionError("polynomial JSON must be an object with a \"terms\" array");
  BiPoly::Terms t;
  for (const auto& term : j["terms"]) {
    int i = term.at("i").get<int>();
    int e = term.at("j").get<int>();
    if (i < 0 || e < 0) throw PreconditionError("negative exponent in polynomial JSON");
    const auto& c = term.at("c");
    BigRational v = c.is_string() ? parse_rational(c.get<std::string>()) : BigRational(c.get<long>());
    t[Monomial{i, e}] += v;
  }
  return BiPoly(std::move(t));
}

nlohmann::json bipoly_to_json(const BiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"i", m.i}, {"j", m.j}, {"c", to_string(c)}});
  return {{"terms", terms}};
}

BiPoly parse_bipoly_any(std::string_view text) {
  std::size_t k = 0;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  if (k < text.size() && text[k] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad polynomial JSON: ") + e.what());
    }
    return bipoly_from_json(j);
  }
  return parse_bipoly(text);
}

}  // namespace polya_pila
