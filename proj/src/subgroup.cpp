#include <algorithm>
#include <deque>
#include <map>

#include "thinville/structure.hpp"

namespace thinville {

namespace {

int inverse_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw Error("no inverse");
}

// Sifting table indexed by leading position; entries have leading exponent 1.
class Echelon {
 public:
  explicit Echelon(const PcGroup& g) : g_(g), table_(g.rank()) {}

  GroupElement sift(GroupElement x) const {
    const int n = g_.rank();
    while (true) {
      const auto d = x.depth();
      if (static_cast<int>(d) == n || !table_[d]) return x;
      x = g_.multiply(x, g_.power(*table_[d], g_.prime() - x[d]));
    }
  }

  // Sifts x; if a remainder survives it is inserted and returned.
  std::optional<GroupElement> insert(GroupElement x) {
    x = sift(std::move(x));
    const auto d = x.depth();
    if (static_cast<int>(d) == g_.rank()) return std::nullopt;
    if (x[d] != 1) x = g_.power(x, inverse_mod(x[d], g_.prime()));
    table_[d] = x;
    return x;
  }

  std::vector<GroupElement> entries() const {
    std::vector<GroupElement> out;
    for (const auto& e : table_)
      if (e) out.push_back(*e);
    return out;
  }

 private:
  const PcGroup& g_;
  std::vector<std::optional<GroupElement>> table_;
};

}  // namespace

Subgroup make_canonical(const PcGroup& g, std::vector<GroupElement> table) {
  std::sort(table.begin(), table.end(),
            [](const GroupElement& a, const GroupElement& b) { return a.depth() < b.depth(); });
  const int p = g.prime();
  for (std::size_t s = 0; s < table.size(); ++s)
    for (std::size_t t = s + 1; t < table.size(); ++t) {
      const auto d = table[t].depth();
      if (table[s][d] != 0) table[s] = g.multiply(table[s], g.power(table[t], p - table[s][d]));
    }
  Subgroup h;
  h.basis_ = std::move(table);
  return h;
}

Subgroup Subgroup::trivial(const PcGroup&) { return Subgroup{}; }

Subgroup Subgroup::whole(const PcGroup& g) {
  std::vector<GroupElement> b;
  for (int i = 1; i <= g.rank(); ++i) b.push_back(g.generator(i));
  return make_canonical(g, std::move(b));
}

std::uint64_t Subgroup::order(const PcGroup& g) const {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) r *= static_cast<std::uint64_t>(g.prime());
  return r;
}

std::vector<int> Subgroup::leading_positions() const {
  std::vector<int> out;
  for (const auto& b : basis_) out.push_back(static_cast<int>(b.depth()));
  return out;
}

bool Subgroup::contains(const PcGroup& g, const GroupElement& x) const {
  GroupElement y = x;
  std::size_t k = 0;
  const auto n = static_cast<std::size_t>(g.rank());
  while (true) {
    const auto d = y.depth();
    if (d == n) return true;
    while (k < basis_.size() && basis_[k].depth() < d) ++k;
    if (k == basis_.size() || basis_[k].depth() != d) return false;
    y = g.multiply(y, g.power(basis_[k], g.prime() - y[d]));
  }
}

bool Subgroup::is_subgroup_of(const PcGroup& g, const Subgroup& other) const {
  if (log_order() > other.log_order()) return false;
  return std::all_of(basis_.begin(), basis_.end(),
                     [&](const GroupElement& b) { return other.contains(g, b); });
}

GroupElement Subgroup::coset_representative(const PcGroup& g, GroupElement x) const {
  for (const auto& b : basis_) {
    const auto d = b.depth();
    if (x[d] != 0) x = g.multiply(x, g.power(b, g.prime() - x[d]));
  }
  return x;
}

std::string to_string(const Subgroup& h) {
  std::string s = "<";
  for (std::size_t i = 0; i < h.basis().size(); ++i) {
    if (i) s += ", ";
    s += to_string(h.basis()[i]);
  }
  return s + ">";
}

Subgroup closure_under(const PcGroup& g, std::span<const GroupElement> gens,
                       std::span<const GroupElement> by) {
  Echelon ech(g);
  std::vector<GroupElement> inserted;
  std::deque<GroupElement> queue(gens.begin(), gens.end());
  while (!queue.empty()) {
    GroupElement x = std::move(queue.front());
    queue.pop_front();
    auto added = ech.insert(std::move(x));
    if (!added) continue;
    const GroupElement& b = *added;
    queue.push_back(g.power(b, g.prime()));
    for (const auto& c : inserted) queue.push_back(g.commutator(b, c));
    for (const auto& c : by) queue.push_back(g.commutator(b, c));
    inserted.push_back(b);
  }
  return make_canonical(g, ech.entries());
}

Subgroup generated_subgroup(const PcGroup& g, std::span<const GroupElement> gens) {
  return closure_under(g, gens, {});
}

Subgroup normal_closure(const PcGroup& g, std::span<const GroupElement> gens) {
  std::vector<GroupElement> pc;
  for (int i = 1; i <= g.rank(); ++i) pc.push_back(g.generator(i));
  return closure_under(g, gens, pc);
}

Subgroup join(const PcGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<GroupElement> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return generated_subgroup(g, gens);
}

bool is_normal(const PcGroup& g, const Subgroup& h) {
  for (const auto& b : h.basis())
    for (int i = 1; i <= g.rank(); ++i)
      if (!h.contains(g, g.commutator(b, g.generator(i)))) return false;
  return true;
}

Subgroup commutator_subgroup(const PcGroup& g, const Subgroup& h, const Subgroup& k) {
  std::vector<GroupElement> gens;
  for (const auto& a : h.basis())
    for (const auto& b : k.basis()) gens.push_back(g.commutator(a, b));
  return normal_closure(g, gens);
}

// ---------------------------------------------------------------------------
// Quotient

namespace {

PcPresentation quotient_presentation(const PcGroup& g, const Subgroup& n, std::vector<int>& free) {
  const auto lead = n.leading_positions();
  free.clear();
  std::vector<int> new_index(g.rank(), -1);
  for (int i = 0; i < g.rank(); ++i)
    if (std::find(lead.begin(), lead.end(), i) == lead.end()) {
      new_index[i] = static_cast<int>(free.size());
      free.push_back(i);
    }
  const int m = std::max<int>(1, static_cast<int>(free.size()));
  PcPresentation q(g.prime(), m);
  auto as_word = [&](const GroupElement& x) {
    GroupElement r = n.coset_representative(g, x);
    Word w;
    for (int i : free)
      if (r[i] != 0) w.push_back({new_index[i] + 1, r[i]});
    return w;
  };
  for (std::size_t a = 0; a < free.size(); ++a) {
    const GroupElement ga = g.generator(free[a] + 1);
    q.set_power(static_cast<int>(a) + 1, as_word(g.power(ga, g.prime())));
    for (std::size_t b = a + 1; b < free.size(); ++b) {
      const GroupElement gb = g.generator(free[b] + 1);
      q.set_commutator(static_cast<int>(b) + 1, static_cast<int>(a) + 1,
                       as_word(g.commutator(gb, ga)));
    }
  }
  return q;
}

}  // namespace

Quotient::Quotient(const PcGroup& g, Subgroup kernel)
    : parent_(&g),
      kernel_(std::move(kernel)),
      quotient_([&] {
        if (!is_normal(g, kernel_)) throw PreconditionError("quotient by a non-normal subgroup");
        if (kernel_.log_order() == g.rank())
          throw PreconditionError("quotient by the whole group is not representable");
        return PcGroup(quotient_presentation(g, kernel_, free_));
      }()) {}

GroupElement Quotient::project(const GroupElement& x) const {
  GroupElement r = kernel_.coset_representative(*parent_, x);
  GroupElement y = quotient_.identity();
  for (std::size_t a = 0; a < free_.size(); ++a) y[a] = r[free_[a]];
  return y;
}

GroupElement Quotient::lift(const GroupElement& y) const {
  GroupElement x = parent_->identity();
  for (std::size_t a = 0; a < free_.size(); ++a) x[free_[a]] = y[a];
  return x;
}

Subgroup Quotient::image(const Subgroup& h) const {
  std::vector<GroupElement> gens;
  for (const auto& b : h.basis()) gens.push_back(project(b));
  return generated_subgroup(quotient_, gens);
}

Subgroup Quotient::preimage(const Subgroup& h) const {
  std::vector<GroupElement> gens = kernel_.basis();
  for (const auto& b : h.basis()) gens.push_back(lift(b));
  return generated_subgroup(*parent_, gens);
}

}  // namespace thinville
