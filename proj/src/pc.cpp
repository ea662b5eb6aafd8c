#include "thinville/pc.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace thinville {

namespace {

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& tok, int line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + tok + "'");
  return v;
}

Word parse_word(const std::vector<std::string>& toks, std::size_t from, int line) {
  Word w;
  if (from >= toks.size())
    throw ParseError("line " + std::to_string(line) + ": missing word after '='");
  if (toks.size() == from + 1 && toks[from] == "1") return w;
  for (std::size_t t = from; t < toks.size(); ++t) {
    const std::string& f = toks[t];
    if (f.size() < 2 || f[0] != 'g')
      throw ParseError("line " + std::to_string(line) + ": bad factor '" + f + "'");
    auto caret = f.find('^');
    Term term;
    term.generator = static_cast<int>(parse_int(f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), line));
    term.exponent = caret == std::string::npos ? 1 : parse_int(f.substr(caret + 1), line);
    w.push_back(term);
  }
  return w;
}

}  // namespace

bool GroupElement::is_identity() const {
  return std::all_of(exponents.begin(), exponents.end(), [](auto e) { return e == 0; });
}

std::size_t GroupElement::depth() const {
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] != 0) return i;
  return exponents.size();
}

Word GroupElement::to_word() const {
  Word w;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] != 0) w.push_back({static_cast<int>(i + 1), exponents[i]});
  return w;
}

std::string to_string(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(g[i]);
  }
  return s + ")";
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PcPresentation

PcPresentation::PcPresentation(int prime, int rank) : prime_(prime), rank_(rank) {
  if (!is_prime(prime)) throw ParseError("non-prime modulus " + std::to_string(prime));
  if (prime == 2) throw ParseError("even prime not supported");
  if (prime > 251) throw ParseError("prime too large");
  if (rank < 1 || rank > kMaxRank) throw ParseError("rank out of range: " + std::to_string(rank));
  powers_.assign(rank, {});
  commutators_.assign(static_cast<std::size_t>(rank) * rank, {});
}

const Word& PcPresentation::power(int i) const {
  if (i < 1 || i > rank_) throw Error("power index out of range");
  return powers_[i - 1];
}

const Word& PcPresentation::commutator(int j, int i) const {
  if (i < 1 || j <= i || j > rank_) throw Error("commutator index out of range");
  return commutators_[static_cast<std::size_t>(j - 1) * rank_ + (i - 1)];
}

Word PcPresentation::normalize(Word w, int above, const char* what) const {
  Word out;
  int last = 0;
  for (const Term& t : w) {
    if (t.generator < 1 || t.generator > rank_)
      throw ParseError(std::string(what) + ": generator index out of range: g" +
                       std::to_string(t.generator));
    if (t.generator <= above)
      throw ParseError(std::string(what) + ": word index not above base (g" +
                       std::to_string(t.generator) + " in relation for " + std::to_string(above) + ")");
    if (t.generator <= last)
      throw ParseError(std::string(what) + ": word indices must strictly increase");
    last = t.generator;
    long long e = mod(t.exponent, prime_);
    if (e != 0) out.push_back({t.generator, e});
  }
  return out;
}

void PcPresentation::set_power(int i, Word w) {
  if (i < 1 || i > rank_) throw ParseError("pow index out of range: " + std::to_string(i));
  powers_[i - 1] = normalize(std::move(w), i, "pow");
}

void PcPresentation::set_commutator(int j, int i, Word w) {
  if (i < 1 || j > rank_ || j <= i)
    throw ParseError("comm indices out of range: " + std::to_string(j) + " " + std::to_string(i));
  commutators_[static_cast<std::size_t>(j - 1) * rank_ + (i - 1)] = normalize(std::move(w), j, "comm");
}

PcPresentation parse_presentation(std::string_view text) {
  int prime = 0, rank = 0, line_no = 0;
  struct Pending {
    bool is_power;
    int j, i;
    Word w;
    int line;
  };
  std::vector<Pending> pending;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_ws(line);
    const std::string& key = toks[0];
    auto here = [&](const std::string& msg) {
      return ParseError("line " + std::to_string(line_no) + ": " + msg);
    };
    if (key == "p") {
      if (prime || toks.size() != 2) throw here("malformed 'p' line");
      long long v = parse_int(toks[1], line_no);
      if (!is_prime(v)) throw here("non-prime modulus " + toks[1]);
      if (v == 2) throw here("even prime not supported");
      prime = static_cast<int>(v);
    } else if (key == "n") {
      if (!prime) throw here("'n' before 'p'");
      if (rank || toks.size() != 2) throw here("malformed 'n' line");
      long long v = parse_int(toks[1], line_no);
      if (v < 1 || v > kMaxRank) throw here("rank out of range");
      rank = static_cast<int>(v);
    } else if (key == "pow") {
      if (toks.size() < 4 || toks[2] != "=") throw here("malformed 'pow' line");
      pending.push_back({true, static_cast<int>(parse_int(toks[1], line_no)), 0,
                         parse_word(toks, 3, line_no), line_no});
    } else if (key == "comm") {
      if (toks.size() < 5 || toks[3] != "=") throw here("malformed 'comm' line");
      pending.push_back({false, static_cast<int>(parse_int(toks[1], line_no)),
                         static_cast<int>(parse_int(toks[2], line_no)), parse_word(toks, 4, line_no),
                         line_no});
    } else {
      throw here("unknown directive '" + key + "'");
    }
  }
  if (!prime) throw ParseError("missing 'p' line");
  if (!rank) throw ParseError("missing 'n' line");
  PcPresentation pres(prime, rank);
  for (auto& rel : pending) {
    try {
      if (rel.is_power)
        pres.set_power(rel.j, std::move(rel.w));
      else
        pres.set_commutator(rel.j, rel.i, std::move(rel.w));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(rel.line) + ": " + e.what());
    }
  }
  return pres;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Term& t : w) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(t.generator) + "^" + std::to_string(t.exponent);
  }
  return s;
}

std::string format_presentation(const PcPresentation& p) {
  std::ostringstream out;
  out << "p " << p.prime() << "\nn " << p.rank() << "\n";
  for (int i = 1; i <= p.rank(); ++i)
    if (!p.power(i).empty()) out << "pow " << i << " = " << format_word(p.power(i)) << "\n";
  for (int j = 2; j <= p.rank(); ++j)
    for (int i = 1; i < j; ++i)
      if (!p.commutator(j, i).empty())
        out << "comm " << j << " " << i << " = " << format_word(p.commutator(j, i)) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// PcGroup

PcGroup::PcGroup(PcPresentation presentation, Unchecked)
    : pres_(std::move(presentation)), p_(pres_.prime()), n_(pres_.rank()) {
  power_digits_.resize(n_);
  conjugate_digits_.resize(static_cast<std::size_t>(n_) * n_);
  noncommuting_.assign(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (const Term& t : pres_.power(i + 1))
      power_digits_[i].push_back({t.generator - 1, static_cast<int>(t.exponent)});
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      // g_j^{g_i} = g_j [g_j, g_i], already a normal-form word.
      Digits d{{j, 1}};
      const Word& c = pres_.commutator(j + 1, i + 1);
      for (const Term& t : c) d.push_back({t.generator - 1, static_cast<int>(t.exponent)});
      if (!c.empty()) noncommuting_[i] |= (1u << j);
      conjugate_digits_[static_cast<std::size_t>(j) * n_ + i] = std::move(d);
    }
  generator_order_.assign(n_, 0);
}

PcGroup::PcGroup(PcPresentation presentation) : PcGroup(std::move(presentation), Unchecked{}) {
  ConsistencyReport report = check_consistency(pres_);
  if (!report.consistent) {
    const auto& f = report.failures.front();
    throw PreconditionError("inconsistent presentation: " + f.kind + " test fails at (" +
                            std::to_string(f.k) + "," + std::to_string(f.j) + "," +
                            std::to_string(f.i) + ")");
  }
  for (int i = 0; i < n_; ++i) generator_order_[i] = element_order(generator(i + 1));
}

std::uint64_t PcGroup::order() const {
  std::uint64_t r = 1;
  for (int i = 0; i < n_; ++i) {
    if (r > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p_))
      throw BudgetExceeded("group order does not fit in 64 bits");
    r *= static_cast<std::uint64_t>(p_);
  }
  return r;
}

GroupElement PcGroup::identity() const {
  return GroupElement(std::vector<std::uint8_t>(n_, 0));
}

GroupElement PcGroup::generator(int i) const {
  if (i < 1 || i > n_) throw Error("generator index out of range");
  GroupElement g = identity();
  g[i - 1] = 1;
  return g;
}

GroupElement PcGroup::element(std::vector<std::uint8_t> exponents) const {
  if (static_cast<int>(exponents.size()) != n_) throw Error("exponent vector has wrong length");
  for (auto e : exponents)
    if (e >= p_) throw Error("exponent out of range");
  return GroupElement(std::move(exponents));
}

GroupElement PcGroup::to_element(const Vec& v) const {
  GroupElement g;
  g.exponents.resize(n_);
  for (int i = 0; i < n_; ++i) g.exponents[i] = static_cast<std::uint8_t>(v[i]);
  return g;
}

PcGroup::Vec PcGroup::to_vec(const GroupElement& g) const {
  Vec v{};
  for (int i = 0; i < n_; ++i) v[i] = g.exponents[i];
  return v;
}

void PcGroup::run_collector(Vec& v, Digits& stack) const {
  while (!stack.empty()) {
    const Digit d = stack.back();
    stack.pop_back();
    const int g = d.gen;
    // Nonzero generators after g that do not commute with it.
    bool blocked = false;
    const std::uint32_t nc = noncommuting_[g];
    if (nc != 0)
      for (int j = g + 1; j < n_; ++j)
        if (v[j] != 0 && ((nc >> j) & 1u)) {
          blocked = true;
          break;
        }
    if (!blocked) {
      const int s = v[g] + d.exp;
      if (s < p_) {
        v[g] = s;
        continue;
      }
      v[g] = s - p_;
      // v = prefix * g^p * suffix, g^p a word in later generators.
      for (int j = n_ - 1; j > g; --j)
        if (v[j] != 0) {
          stack.push_back({j, v[j]});
          v[j] = 0;
        }
      const Digits& w = power_digits_[g];
      for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back(*it);
      continue;
    }
    // v * g = prefix * g * suffix^g; remaining copies of g follow.
    if (d.exp > 1) stack.push_back({g, d.exp - 1});
    for (int j = n_ - 1; j > g; --j) {
      if (v[j] == 0) continue;
      if (!((nc >> j) & 1u)) {
        stack.push_back({j, v[j]});
      } else {
        const Digits& c = conjugate_digits_[static_cast<std::size_t>(j) * n_ + g];
        for (int rep = 0; rep < v[j]; ++rep)
          for (auto it = c.rbegin(); it != c.rend(); ++it) stack.push_back(*it);
      }
      v[j] = 0;
    }
    if (++v[g] == p_) {
      v[g] = 0;
      const Digits& w = power_digits_[g];
      for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back(*it);
    }
  }
}

void PcGroup::multiply_digit(Vec& v, int gen, int exp) const {
  thread_local Digits stack;
  stack.clear();
  stack.push_back({gen, exp});
  run_collector(v, stack);
}

void PcGroup::multiply_element_into(Vec& v, const GroupElement& g) const {
  thread_local Digits stack;
  stack.clear();
  for (int i = n_ - 1; i >= 0; --i)
    if (g.exponents[i] != 0) stack.push_back({i, g.exponents[i]});
  run_collector(v, stack);
}

void PcGroup::multiply_term_into(Vec& v, int gen, long long exp) const {
  if (gen < 0 || gen >= n_) throw Error("generator index out of range in word");
  if (exp == 0) return;
  if (exp > 0 && exp < p_) {
    multiply_digit(v, gen, static_cast<int>(exp));
    return;
  }
  GroupElement g = identity();
  g[gen] = 1;
  multiply_element_into(v, power(g, exp));
}

GroupElement PcGroup::collect(std::span<const Term> word) const {
  Vec v{};
  for (const Term& t : word) {
    if (t.generator < 1 || t.generator > n_)
      throw Error("generator index out of range in word: g" + std::to_string(t.generator));
    multiply_term_into(v, t.generator - 1, t.exponent);
  }
  return to_element(v);
}

GroupElement PcGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  Vec v = to_vec(a);
  multiply_element_into(v, b);
  return to_element(v);
}

GroupElement PcGroup::inverse(const GroupElement& a) const {
  Vec cur = to_vec(a);
  GroupElement inv = identity();
  for (int i = 0; i < n_; ++i) {
    if (cur[i] == 0) continue;
    const int e = p_ - cur[i];
    multiply_digit(cur, i, e);
    inv[i] = static_cast<std::uint8_t>(e);
  }
  return inv;
}

GroupElement PcGroup::power(const GroupElement& a, long long k) const {
  if (k < 0) return power(inverse(a), -k);
  Vec result{};
  GroupElement base = a;
  while (k > 0) {
    if (k & 1) multiply_element_into(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return to_element(result);
}

GroupElement PcGroup::conjugate(const GroupElement& a, const GroupElement& g) const {
  Vec v = to_vec(inverse(g));
  multiply_element_into(v, a);
  multiply_element_into(v, g);
  return to_element(v);
}

GroupElement PcGroup::commutator(const GroupElement& a, const GroupElement& b) const {
  // [a,b] = (ba)^-1 (ab)
  Vec ab = to_vec(a);
  multiply_element_into(ab, b);
  Vec ba = to_vec(b);
  multiply_element_into(ba, a);
  Vec v = to_vec(inverse(to_element(ba)));
  multiply_element_into(v, to_element(ab));
  return to_element(v);
}

GroupElement PcGroup::left_normed_commutator(const GroupElement& base,
                                             std::span<const GroupElement> tail) const {
  GroupElement c = base;
  for (const auto& t : tail) c = commutator(c, t);
  return c;
}

std::uint64_t PcGroup::element_order(const GroupElement& a) const {
  std::uint64_t o = 1;
  GroupElement x = a;
  while (!x.is_identity()) {
    x = power(x, p_);
    o *= static_cast<std::uint64_t>(p_);
  }
  return o;
}

std::uint64_t PcGroup::index_of(const GroupElement& a) const {
  std::uint64_t idx = 0;
  for (int i = 0; i < n_; ++i) idx = idx * static_cast<std::uint64_t>(p_) + a.exponents[i];
  return idx;
}

GroupElement PcGroup::from_index(std::uint64_t index) const {
  GroupElement g = identity();
  for (int i = n_ - 1; i >= 0; --i) {
    g[i] = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(p_));
    index /= static_cast<std::uint64_t>(p_);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Consistency

ConsistencyReport check_consistency(const PcPresentation& pres) {
  const PcGroup g(pres, PcGroup::Unchecked{});
  const int n = pres.rank();
  const int p = pres.prime();
  ConsistencyReport report;
  using Vec = PcGroup::Vec;
  auto gen = [&](int i) {
    Vec v{};
    v[i] = 1;
    return v;
  };
  auto power_elem = [&](int i) {
    Vec v{};
    for (const Term& t : pres.power(i + 1)) v[t.generator - 1] = static_cast<int>(t.exponent);
    return g.to_element(v);
  };
  auto record = [&](const char* kind, int k, int j, int i, const Vec& l, const Vec& r) {
    for (int t = 0; t < n; ++t)
      if (l[t] != r[t]) {
        report.failures.push_back({kind, k, j, i, g.to_element(l), g.to_element(r)});
        return;
      }
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec left = gen(k);  // (g_k g_j) g_i
        g.multiply_digit(left, j, 1);
        g.multiply_digit(left, i, 1);
        Vec ji = gen(j);  // g_k (g_j g_i)
        g.multiply_digit(ji, i, 1);
        Vec right = gen(k);
        g.multiply_element_into(right, g.to_element(ji));
        record("kji", k + 1, j + 1, i + 1, left, right);
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      {  // (g_j^p) g_i = g_j^(p-1) (g_j g_i)
        Vec left = g.to_vec(power_elem(j));
        g.multiply_digit(left, i, 1);
        Vec ji = gen(j);
        g.multiply_digit(ji, i, 1);
        Vec right{};
        right[j] = p - 1;
        g.multiply_element_into(right, g.to_element(ji));
        record("jjp-i", j + 1, j + 1, i + 1, left, right);
      }
      {  // g_j (g_i^p) = (g_j g_i) g_i^(p-1)
        Vec left = gen(j);
        g.multiply_element_into(left, power_elem(i));
        Vec right = gen(j);
        g.multiply_digit(right, i, 1);
        g.multiply_digit(right, i, p - 1);
        record("j-iip", j + 1, i + 1, i + 1, left, right);
      }
    }
  for (int i = 0; i < n; ++i) {  // g_i (g_i^p) = (g_i^p) g_i
    Vec left = gen(i);
    g.multiply_element_into(left, power_elem(i));
    Vec right = g.to_vec(power_elem(i));
    g.multiply_digit(right, i, 1);
    record("iip", i + 1, i + 1, i + 1, left, right);
  }
  report.consistent = report.failures.empty();
  return report;
}

}  // namespace thinville
