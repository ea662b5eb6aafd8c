// Power-commutator presentations of finite p-groups and collection.
//
// Conventions used throughout the library:
//   * generators are numbered 1..n in the external format, 0..n-1 internally;
//   * every relative order equals the prime p, so |G| = p^n;
//   * [a, b] = a^-1 b^-1 a b, and [a, b, c] = [[a, b], c] (left-normed).
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thinville {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMaxRank = 32;

/// One factor g_generator^exponent of a word. Generators are 1-based.
struct Term {
  int generator = 0;
  long long exponent = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

using Word = std::vector<Term>;

/// Normal-form exponent vector g_1^e_1 ... g_n^e_n with 0 <= e_i < p.
struct GroupElement {
  std::vector<std::uint8_t> exponents;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::uint8_t> e) : exponents(std::move(e)) {}

  std::size_t size() const { return exponents.size(); }
  std::uint8_t operator[](std::size_t i) const { return exponents[i]; }
  std::uint8_t& operator[](std::size_t i) { return exponents[i]; }

  bool is_identity() const;
  /// 0-based index of the first nonzero exponent, or size() for the identity.
  std::size_t depth() const;
  /// Exponents as a normal-form word.
  Word to_word() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

std::string to_string(const GroupElement& g);

bool is_prime(long long n);

/// Relations g_i^p = w and [g_j, g_i] = w (j > i). Not necessarily consistent.
class PcPresentation {
 public:
  PcPresentation(int prime, int rank);

  int prime() const { return prime_; }
  int rank() const { return rank_; }

  /// Right-hand side of g_i^p, 1-based i.
  const Word& power(int i) const;
  /// Right-hand side of [g_j, g_i], 1-based, j > i.
  const Word& commutator(int j, int i) const;

  /// Validates index constraints and reduces exponents into [0, p).
  void set_power(int i, Word w);
  void set_commutator(int j, int i, Word w);

  friend bool operator==(const PcPresentation&, const PcPresentation&) = default;

 private:
  Word normalize(Word w, int above, const char* what) const;

  int prime_;
  int rank_;
  std::vector<Word> powers_;
  std::vector<Word> commutators_;  // row-major, index (j-1)*rank + (i-1)
};

/// Parses the text presentation format:
///   p <prime>
///   n <rank>
///   pow <i> = <word>
///   comm <j> <i> = <word>
/// with words written as "g<k>^<e> ..." (strictly increasing k) or "1".
/// Lines starting with '#' are comments.
PcPresentation parse_presentation(std::string_view text);

/// Inverse of parse_presentation; trivial relators are omitted.
std::string format_presentation(const PcPresentation& p);

std::string format_word(const Word& w);

struct ConsistencyFailure {
  std::string kind;  // "kji", "jjp-i", "j-iip", "iip"
  int k = 0, j = 0, i = 0;
  GroupElement left;
  GroupElement right;
};

struct ConsistencyReport {
  bool consistent = true;
  std::vector<ConsistencyFailure> failures;
};

/// Runs the standard overlap tests; never throws on inconsistency.
ConsistencyReport check_consistency(const PcPresentation& p);

/// A finite p-group given by a consistent pc presentation. Immutable after
/// construction; every member function is safe to call concurrently.
class PcGroup {
 public:
  /// Throws PreconditionError when the presentation is inconsistent.
  explicit PcGroup(PcPresentation presentation);

  const PcPresentation& presentation() const { return pres_; }
  int prime() const { return p_; }
  int rank() const { return n_; }
  /// |G| as a double-free integer; throws BudgetExceeded on overflow.
  std::uint64_t order() const;

  GroupElement identity() const;
  /// 1-based generator.
  GroupElement generator(int i) const;
  GroupElement element(std::vector<std::uint8_t> exponents) const;

  /// Collects an arbitrary word (any order, any integer exponents).
  GroupElement collect(std::span<const Term> word) const;

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, long long k) const;
  /// g^-1 a g.
  GroupElement conjugate(const GroupElement& a, const GroupElement& g) const;
  /// a^-1 b^-1 a b.
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const;
  /// [[...[base, t1], t2], ...].
  GroupElement left_normed_commutator(const GroupElement& base,
                                      std::span<const GroupElement> tail) const;
  /// Smallest p^k with a^(p^k) = 1.
  std::uint64_t element_order(const GroupElement& a) const;

  /// Mixed-radix index of an element (first exponent most significant).
  std::uint64_t index_of(const GroupElement& a) const;
  GroupElement from_index(std::uint64_t index) const;

 private:
  struct Digit {
    int gen;  // 0-based
    int exp;  // in [1, p)
  };
  using Digits = std::vector<Digit>;
  using Vec = std::array<int, kMaxRank>;

  struct Unchecked {};
  PcGroup(PcPresentation presentation, Unchecked);
  friend ConsistencyReport check_consistency(const PcPresentation& p);

  // Collection from the left: v <- v * (stack read from the back).
  void run_collector(Vec& v, Digits& stack) const;
  void multiply_digit(Vec& v, int gen, int exp) const;
  void multiply_element_into(Vec& v, const GroupElement& g) const;
  void multiply_term_into(Vec& v, int gen, long long exp) const;
  GroupElement to_element(const Vec& v) const;
  Vec to_vec(const GroupElement& g) const;

  PcPresentation pres_;
  int p_;
  int n_;
  std::vector<Digits> power_digits_;      // g_i^p
  std::vector<Digits> conjugate_digits_;  // g_j^{g_i}, index j * n + i, j > i
  std::vector<std::uint32_t> noncommuting_;  // bit j set: [g_j, g_i] != 1
  std::vector<std::uint64_t> generator_order_;
};

}  // namespace thinville
