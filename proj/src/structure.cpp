#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "thinville/structure.hpp"

namespace thinville {

namespace {

int inverse_mod(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw Error("no inverse mod p");
}

std::vector<GroupElement> pc_generators(const PcGroup& g) {
  std::vector<GroupElement> out;
  for (int i = 1; i <= g.rank(); ++i) out.push_back(g.generator(i));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Series

CentralSeries lower_central_series(const PcGroup& g) {
  CentralSeries s;
  s.terms.push_back(Subgroup::whole(g));
  const auto gens = pc_generators(g);
  while (s.terms.back().log_order() > 0) {
    std::vector<GroupElement> comms;
    for (const auto& u : s.terms.back().basis())
      for (const auto& x : gens) comms.push_back(g.commutator(u, x));
    Subgroup next = normal_closure(g, comms);
    if (next == s.terms.back()) break;  // unreachable for p-groups
    s.terms.push_back(std::move(next));
  }
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
    s.widths.push_back(s.terms[i].log_order() - s.terms[i + 1].log_order());
  return s;
}

Subgroup centralizer(const PcGroup& g, std::span<const GroupElement> with) {
  // The pc series G_j = <g_j, ..., g_n> is central, so for C_j = {x : [x,s] in G_j}
  // the j-th exponent of [x, s] is additive on C_j; C_{j+1} is its kernel.
  const int n = g.rank();
  const int p = g.prime();
  const int m = static_cast<int>(with.size());
  Subgroup c = Subgroup::whole(g);
  for (int j = 0; j < n; ++j) {
    const auto& basis = c.basis();
    auto image = [&](const GroupElement& x) {
      std::vector<int> v(m);
      for (int s = 0; s < m; ++s) v[s] = g.commutator(x, with[s])[j];
      return v;
    };
    bool any = false;
    std::vector<std::vector<int>> images;
    for (const auto& b : basis) {
      images.push_back(image(b));
      for (int t : images.back()) any = any || t != 0;
    }
    if (!any) continue;
    struct Row {
      std::vector<int> vec;
      GroupElement elem;
      int pivot;
    };
    std::vector<Row> rows;
    std::vector<GroupElement> kernel;
    for (int t = static_cast<int>(basis.size()) - 1; t >= 0; --t) {
      std::vector<int> v = images[t];
      GroupElement h = g.identity();
      for (const auto& row : rows) {
        const int coef = v[row.pivot];
        if (coef == 0) continue;
        for (int s = 0; s < m; ++s) v[s] = ((v[s] - coef * row.vec[s]) % p + p) % p;
        h = g.multiply(h, g.power(row.elem, coef));
      }
      GroupElement reduced = g.multiply(basis[t], g.inverse(h));
      auto nz = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
      if (nz == v.end()) {
        kernel.push_back(std::move(reduced));
        continue;
      }
      const int pivot = static_cast<int>(nz - v.begin());
      const int inv = inverse_mod(v[pivot], p);
      for (int& x : v) x = (x * inv) % p;
      rows.push_back({std::move(v), g.power(reduced, inv), pivot});
    }
    c = generated_subgroup(g, kernel);
  }
  return c;
}

Subgroup center(const PcGroup& g) {
  const auto gens = pc_generators(g);
  return centralizer(g, gens);
}

CentralSeries upper_central_series(const PcGroup& g) {
  CentralSeries s;
  s.terms.push_back(Subgroup::trivial(g));
  while (s.terms.back().log_order() < g.rank()) {
    const Subgroup& z = s.terms.back();
    Subgroup next;
    if (z.log_order() == 0) {
      next = center(g);
    } else {
      Quotient q(g, z);
      next = q.preimage(center(q.group()));
    }
    if (next == z) break;  // unreachable for p-groups
    s.terms.push_back(std::move(next));
  }
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
    s.widths.push_back(s.terms[i + 1].log_order() - s.terms[i].log_order());
  return s;
}

Subgroup derived_subgroup(const PcGroup& g) {
  const auto gens = pc_generators(g);
  std::vector<GroupElement> comms;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) comms.push_back(g.commutator(gens[b], gens[a]));
  return normal_closure(g, comms);
}

int nilpotency_class(const PcGroup& g) {
  return static_cast<int>(lower_central_series(g).terms.size()) - 1;
}

// ---------------------------------------------------------------------------
// Powers

Subgroup agemo(const PcGroup& g, std::uint64_t budget) {
  const int p = g.prime();
  std::vector<GroupElement> gens;
  for (int i = 1; i <= g.rank(); ++i) gens.push_back(g.power(g.generator(i), p));
  Subgroup h = normal_closure(g, gens);
  // G^p = H once every coset representative of H has its p-th power in H.
  const std::uint64_t size = g.order();
  std::vector<int> lead = h.leading_positions();
  std::uint64_t visited = 0;
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    GroupElement x = g.from_index(idx);
    if (std::any_of(lead.begin(), lead.end(), [&](int d) { return x[d] != 0; })) continue;
    if (++visited > budget) throw BudgetExceeded("agemo enumeration exceeds budget");
    GroupElement y = g.power(x, p);
    if (h.contains(g, y)) continue;
    std::vector<GroupElement> more = h.basis();
    more.push_back(y);
    h = normal_closure(g, more);
    lead = h.leading_positions();
  }
  return h;
}

Subgroup relative_agemo(const PcGroup& g, const Subgroup& m, const Subgroup& n,
                        std::uint64_t budget) {
  const int p = g.prime();
  std::vector<GroupElement> gens = n.basis();
  for (const auto& b : m.basis()) gens.push_back(g.power(b, p));
  Subgroup h = normal_closure(g, gens);
  std::vector<int> lead = h.leading_positions();
  for_each_element(g, m, budget, [&](const GroupElement& x) {
    if (std::any_of(lead.begin(), lead.end(), [&](int d) { return x[d] != 0; })) return true;
    GroupElement y = g.power(x, p);
    if (h.contains(g, y)) return true;
    std::vector<GroupElement> more = h.basis();
    more.push_back(std::move(y));
    h = normal_closure(g, more);
    lead = h.leading_positions();
    return true;
  });
  return h;
}

Subgroup omega1(const PcGroup& g, std::uint64_t budget) {
  std::vector<GroupElement> gens;
  Subgroup h;
  const int p = g.prime();
  for_each_element(g, Subgroup::whole(g), budget, [&](const GroupElement& x) {
    if (x.is_identity() || h.contains(g, x)) return true;
    if (g.power(x, p).is_identity()) {
      gens.push_back(x);
      h = generated_subgroup(g, gens);
      gens = h.basis();
    }
    return true;
  });
  return h;
}

std::uint64_t exponent(const PcGroup& g, const Subgroup& h, std::uint64_t budget) {
  std::uint64_t best = 1;
  for_each_element(g, h, budget, [&](const GroupElement& x) {
    best = std::max(best, g.element_order(x));
    return true;
  });
  return best;
}

bool has_exponent_p(const PcGroup& g, const Subgroup& h, std::uint64_t budget) {
  bool ok = true;
  for_each_element(g, h, budget, [&](const GroupElement& x) {
    ok = g.power(x, g.prime()).is_identity();
    return ok;
  });
  return ok;
}

bool is_abelian(const PcGroup& g, const Subgroup& h) {
  const auto& b = h.basis();
  for (std::size_t s = 0; s < b.size(); ++s)
    for (std::size_t t = s + 1; t < b.size(); ++t)
      if (!g.commutator(b[s], b[t]).is_identity()) return false;
  return true;
}

Subgroup abelian_agemo(const PcGroup& g, const Subgroup& h) {
  std::vector<GroupElement> gens;
  for (const auto& b : h.basis()) gens.push_back(g.power(b, g.prime()));
  return generated_subgroup(g, gens);
}

bool is_cyclic(const PcGroup& g, const Subgroup& h) {
  if (h.log_order() <= 1) return true;
  // Phi(H) = H^p H'; H is cyclic iff |H : Phi(H)| = p.
  std::vector<GroupElement> gens;
  const auto& b = h.basis();
  for (std::size_t s = 0; s < b.size(); ++s) {
    gens.push_back(g.power(b[s], g.prime()));
    for (std::size_t t = s + 1; t < b.size(); ++t) gens.push_back(g.commutator(b[s], b[t]));
  }
  Subgroup phi = closure_under(g, gens, b);
  return h.log_order() - phi.log_order() == 1;
}

Subgroup frattini(const PcGroup& g) {
  std::vector<GroupElement> gens = derived_subgroup(g).basis();
  for (int i = 1; i <= g.rank(); ++i) gens.push_back(g.power(g.generator(i), g.prime()));
  return generated_subgroup(g, gens);
}

std::vector<int> normalize_direction(std::vector<int> v, int p) {
  auto nz = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
  if (nz == v.end()) return v;
  const int inv = inverse_mod(*nz, p);
  for (int& x : v) x = (x * inv) % p;
  return v;
}

std::vector<int> frattini_coordinates(const PcGroup& g, const Subgroup& phi, const GroupElement& x) {
  GroupElement r = phi.coset_representative(g, x);
  const auto lead = phi.leading_positions();
  std::vector<int> out;
  for (int i = 0; i < g.rank(); ++i)
    if (std::find(lead.begin(), lead.end(), i) == lead.end()) out.push_back(r[i]);
  return out;
}

std::vector<MaximalSubgroup> maximal_subgroups(const PcGroup& g) {
  const Subgroup phi = frattini(g);
  const int p = g.prime();
  const auto lead = phi.leading_positions();
  std::vector<int> free;
  for (int i = 0; i < g.rank(); ++i)
    if (std::find(lead.begin(), lead.end(), i) == lead.end()) free.push_back(i);
  const int d = static_cast<int>(free.size());
  auto lift = [&](const std::vector<int>& v) {
    GroupElement x = g.identity();
    for (int a = 0; a < d; ++a) x[free[a]] = static_cast<std::uint8_t>(v[a]);
    return x;
  };
  std::vector<MaximalSubgroup> out;
  // Enumerate normalized functionals f; M_f = Phi + lifts of a basis of ker f.
  std::vector<int> f(d, 0);
  std::uint64_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (int a = d - 1; a >= 0; --a) {
      f[a] = static_cast<int>(c % p);
      c /= p;
    }
    if (normalize_direction(f, p) != f) continue;
    const int pivot = static_cast<int>(std::find_if(f.begin(), f.end(), [](int x) { return x; }) - f.begin());
    std::vector<GroupElement> gens = phi.basis();
    for (int a = 0; a < d; ++a) {
      if (a == pivot) continue;
      std::vector<int> v(d, 0);  // e_a - f_a e_pivot lies in ker f
      v[a] = 1;
      v[pivot] = (p - f[a]) % p;
      gens.push_back(lift(v));
    }
    MaximalSubgroup m{generated_subgroup(g, gens), f};
    if (d == 2) m.direction = normalize_direction({(p - f[1]) % p, f[0]}, p);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const MaximalSubgroup& a, const MaximalSubgroup& b) { return a.direction < b.direction; });
  return out;
}

bool is_metabelian(const PcGroup& g) { return is_abelian(g, derived_subgroup(g)); }

bool is_maximal_class(const PcGroup& g) {
  if (g.rank() <= 2) return false;
  return nilpotency_class(g) == g.rank() - 1;
}

// ---------------------------------------------------------------------------
// Thinness

ThinResult is_thin(const PcGroup& g) {
  ThinResult r;
  const Subgroup phi = frattini(g);
  if (g.rank() - phi.log_order() <= 1) {
    r.reason = "cyclic group (not thin by definition)";
    return r;
  }
  const CentralSeries lcs = lower_central_series(g);
  for (std::size_t i = 0; i < lcs.widths.size(); ++i)
    if (lcs.widths[i] > 2) {
      r.reason = "lower central factor " + std::to_string(i + 1) + " has width " +
                 std::to_string(lcs.widths[i]);
      r.layer = static_cast<int>(i) + 1;
      return r;
    }
  // Every normal subgroup is sandwiched iff for each layer i and each
  // g in gamma_i \ gamma_{i+1}, <g>^G gamma_{i+2} contains gamma_{i+1}; that
  // condition depends only on g modulo gamma_{i+2}.
  const int p = g.prime();
  const auto& t = lcs.terms;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const Subgroup& top = t[i];
    const Subgroup& next = t[i + 1];
    const Subgroup& below = i + 2 < t.size() ? t[i + 2] : t.back();
    const auto below_lead = below.leading_positions();
    std::vector<GroupElement> reps;
    for (const auto& b : top.basis())
      if (std::find(below_lead.begin(), below_lead.end(), static_cast<int>(b.depth())) ==
          below_lead.end())
        reps.push_back(b);
    const int k = static_cast<int>(reps.size());
    std::uint64_t count = 1;
    for (int a = 0; a < k; ++a) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 1; code < count; ++code) {
      GroupElement x = g.identity();
      std::uint64_t c = code;
      for (int a = k - 1; a >= 0; --a) {
        const int e = static_cast<int>(c % p);
        c /= p;
        if (e) x = g.multiply(g.power(reps[a], e), x);
      }
      if (next.contains(g, x)) continue;
      std::vector<GroupElement> gens = below.basis();
      gens.push_back(x);
      Subgroup n = normal_closure(g, gens);
      if (!next.is_subgroup_of(g, n)) {
        r.reason = "normal closure of " + to_string(x) + " misses gamma_" + std::to_string(i + 2);
        r.layer = static_cast<int>(i) + 1;
        r.witness = std::move(n);
        return r;
      }
    }
  }
  r.thin = true;
  return r;
}

// ---------------------------------------------------------------------------
// Normal subgroup lattice

std::vector<Subgroup> normal_subgroups(const PcGroup& g, std::uint64_t budget) {
  std::set<Subgroup> seen;
  std::vector<Subgroup> stack{Subgroup::trivial(g)};
  const int p = g.prime();
  std::uint64_t work = 0;
  while (!stack.empty()) {
    Subgroup k = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(k).second) continue;
    if (k.log_order() == g.rank()) continue;
    // Minimal normal subgroups of G/K: order-p subgroups of its centre.
    auto adjoin = [&](const PcGroup& q, auto&& lift_to_g) {
      const Subgroup z = center(q);
      std::set<GroupElement> lines;
      for_each_element(q, z, budget, [&](const GroupElement& x) {
        if (++work > budget) throw BudgetExceeded("normal subgroup enumeration exceeds budget");
        if (x.is_identity() || !q.power(x, p).is_identity()) return true;
        const auto d = x.depth();
        lines.insert(x[d] == 1 ? x : q.power(x, inverse_mod(x[d], p)));
        return true;
      });
      for (const auto& x : lines) {
        std::vector<GroupElement> gens = k.basis();
        gens.push_back(lift_to_g(x));
        stack.push_back(generated_subgroup(g, gens));
      }
    };
    if (k.log_order() == 0) {
      adjoin(g, [](const GroupElement& x) { return x; });
    } else {
      Quotient q(g, k);
      adjoin(q.group(), [&](const GroupElement& x) { return q.lift(x); });
    }
  }
  return {seen.begin(), seen.end()};
}

std::string to_string(LayerShape s) {
  switch (s) {
    case LayerShape::chain:
      return "chain";
    case LayerShape::diamond:
      return "diamond";
    default:
      return "other";
  }
}

LatticeProfile lattice_profile(const PcGroup& g, std::uint64_t budget) {
  const CentralSeries lcs = lower_central_series(g);
  const auto normals = normal_subgroups(g, budget);
  const int p = g.prime();
  LatticeProfile prof;
  prof.normal_subgroup_count = static_cast<int>(normals.size());
  for (std::size_t i = 0; i + 1 < lcs.terms.size(); ++i) {
    LatticeLayer layer;
    layer.level = static_cast<int>(i) + 1;
    layer.width = lcs.widths[i];
    for (const auto& n : normals)
      if (lcs.terms[i + 1].is_subgroup_of(g, n) && n.is_subgroup_of(g, lcs.terms[i])) ++layer.count;
    if (layer.width == 1 && layer.count == 2)
      layer.shape = LayerShape::chain;
    else if (layer.width == 2 && layer.count == p + 3)
      layer.shape = LayerShape::diamond;
    prof.layers.push_back(layer);
  }
  if (!prof.layers.empty()) prof.ends_with_chain = prof.layers.back().shape == LayerShape::chain;
  // diamond (chain diamond* chain?)?
  const auto& L = prof.layers;
  bool ok = !L.empty() && L[0].shape == LayerShape::diamond;
  if (ok && L.size() > 1) {
    ok = L[1].shape == LayerShape::chain;
    std::size_t i = 2;
    int diamonds = 0;
    for (; ok && i < L.size() && L[i].shape == LayerShape::diamond; ++i) ++diamonds;
    if (ok && i + 1 == L.size() && L[i].shape == LayerShape::chain) ++i;
    ok = ok && i == L.size() && diamonds <= p - 2;
  }
  prof.matches_thin_shape = ok;
  return prof;
}

std::string lattice_dot(const PcGroup& g, std::uint64_t budget) {
  const CentralSeries lcs = lower_central_series(g);
  const auto normals = normal_subgroups(g, budget);
  std::vector<const Subgroup*> order;
  for (const auto& n : normals) order.push_back(&n);
  std::stable_sort(order.begin(), order.end(), [](const Subgroup* a, const Subgroup* b) {
    return a->log_order() > b->log_order();
  });
  auto layer_of = [&](const Subgroup& n) {
    int layer = 1;
    for (std::size_t i = 0; i < lcs.terms.size(); ++i)
      if (n.is_subgroup_of(g, lcs.terms[i])) layer = static_cast<int>(i) + 1;
    return layer;
  };
  std::ostringstream out;
  out << "digraph normal_subgroups {\n";
  for (std::size_t a = 0; a < order.size(); ++a)
    out << "  n" << a << " [label=\"N" << order[a]->order(g) << "@layer" << layer_of(*order[a])
        << "\"];\n";
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = 0; b < order.size(); ++b)
      if (order[b]->log_order() + 1 == order[a]->log_order() && order[b]->is_subgroup_of(g, *order[a]))
        out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

PlaceOfAgemoReport verify_place_of_agemo(const PcGroup& g, std::uint64_t budget) {
  if (!is_metabelian(g)) throw PreconditionError("place-of-agemo check needs a metabelian group");
  if (!is_thin(g).thin) throw PreconditionError("place-of-agemo check needs a thin group");
  if (is_maximal_class(g)) throw PreconditionError("place-of-agemo check excludes maximal class");
  if (nilpotency_class(g) < 2) throw PreconditionError("place-of-agemo check needs a nonabelian group");
  const CentralSeries lcs = lower_central_series(g);
  const Subgroup gp = agemo(g, budget);
  const int p = g.prime();
  PlaceOfAgemoReport r;
  r.agemo_log_order = gp.log_order();
  // terms[i] = gamma_{i+1}
  for (std::size_t i = 0; i < lcs.terms.size(); ++i)
    if (gp.is_subgroup_of(g, lcs.terms[i])) r.l = static_cast<int>(i) + 1;
  auto gamma = [&](int k) -> Subgroup {
    if (k - 1 < static_cast<int>(lcs.terms.size())) return lcs.terms[k - 1];
    return Subgroup::trivial(g);
  };
  r.l_in_range = r.l >= 3 && r.l <= p;
  r.next_term_cyclic = is_cyclic(g, gamma(r.l + 1));
  r.second_term_trivial = gamma(r.l + 2).log_order() == 0;
  r.derived_powers_inside = abelian_agemo(g, gamma(2)).is_subgroup_of(g, gamma(r.l + 1));
  r.agemo_at_most_p3 = gp.log_order() <= 3;
  return r;
}

// ---------------------------------------------------------------------------
// Conjugacy

ConjugacyCanonizer::ConjugacyCanonizer(const PcGroup& g)
    : g_(&g), series_(lower_central_series(g)) {
  quotients_.resize(series_.terms.size());
  for (std::size_t i = 1; i < series_.terms.size(); ++i)
    quotients_[i] = std::make_unique<Quotient>(g, series_.terms[i]);
}

int ConjugacyCanonizer::layer_of(const GroupElement& x) const {
  int i = 0;
  while (i + 1 < static_cast<int>(series_.terms.size()) && series_.terms[i + 1].contains(*g_, x)) ++i;
  return i + 1;
}

std::vector<int> quotient_coordinates(const PcGroup& g, const Subgroup& top, const Subgroup& below,
                                      const GroupElement& x) {
  const auto below_lead = below.leading_positions();
  std::vector<int> coords;
  std::vector<int> slot(g.rank(), -1);
  for (const auto& b : top.basis()) {
    const int d = static_cast<int>(b.depth());
    if (std::find(below_lead.begin(), below_lead.end(), d) == below_lead.end()) {
      slot[d] = static_cast<int>(coords.size());
      coords.push_back(0);
    }
  }
  GroupElement r = x;
  std::size_t k = 0;
  const auto& basis = top.basis();
  while (!r.is_identity()) {
    const auto d = r.depth();
    while (k < basis.size() && basis[k].depth() < d) ++k;
    if (k == basis.size() || basis[k].depth() != d)
      throw PreconditionError("element outside the requested subgroup");
    const int e = r[d];
    if (slot[d] >= 0) coords[slot[d]] = e;
    r = g.multiply(r, g.power(basis[k], g.prime() - e));
  }
  return coords;
}

std::vector<int> ConjugacyCanonizer::layer_coordinates(int i, const GroupElement& x) const {
  return quotient_coordinates(*g_, series_.terms[i - 1], series_.terms[i], x);
}

GroupElement ConjugacyCanonizer::canonical(const GroupElement& x) const {
  const PcGroup& g = *g_;
  const int p = g.prime();
  GroupElement t = x;
  for (std::size_t i = 1; i + 1 < series_.terms.size(); ++i) {
    // Layer gamma_{i+1} / gamma_{i+2}, i.e. 1-based layer i + 1.
    const int layer = static_cast<int>(i) + 1;
    const Quotient& q = *quotients_[i];
    const GroupElement tq = q.project(t);
    const Subgroup c = q.preimage(centralizer(q.group(), std::span<const GroupElement>(&tq, 1)));
    const GroupElement r = series_.terms[i].coset_representative(g, t);
    std::vector<int> w = layer_coordinates(layer, g.multiply(g.inverse(r), t));
    const int width = static_cast<int>(w.size());

    struct Row {
      std::vector<int> vec;
      std::vector<int> combo;
      int pivot;
    };
    std::vector<Row> rows;
    const auto& basis = c.basis();
    const int m = static_cast<int>(basis.size());
    for (int k = 0; k < m; ++k) {
      std::vector<int> v = layer_coordinates(layer, g.commutator(t, basis[k]));
      std::vector<int> combo(m, 0);
      combo[k] = 1;
      for (const auto& row : rows) {
        const int coef = v[row.pivot];
        if (coef == 0) continue;
        for (int s = 0; s < width; ++s) v[s] = ((v[s] - coef * row.vec[s]) % p + p) % p;
        for (int s = 0; s < m; ++s) combo[s] = ((combo[s] - coef * row.combo[s]) % p + p) % p;
      }
      auto nz = std::find_if(v.begin(), v.end(), [](int a) { return a != 0; });
      if (nz == v.end()) continue;
      const int pivot = static_cast<int>(nz - v.begin());
      const int inv = inverse_mod(v[pivot], p);
      for (int& a : v) a = (a * inv) % p;
      for (int& a : combo) a = (a * inv) % p;
      // keep rows fully reduced on their pivots
      for (auto& row : rows) {
        const int coef = row.vec[pivot];
        if (coef == 0) continue;
        for (int s = 0; s < width; ++s) row.vec[s] = ((row.vec[s] - coef * v[s]) % p + p) % p;
        for (int s = 0; s < m; ++s) row.combo[s] = ((row.combo[s] - coef * combo[s]) % p + p) % p;
      }
      rows.push_back({std::move(v), std::move(combo), pivot});
    }
    if (rows.empty()) continue;
    std::vector<int> total(m, 0);
    for (const auto& row : rows) {
      const int coef = w[row.pivot];
      if (coef == 0) continue;
      for (int s = 0; s < width; ++s) w[s] = ((w[s] - coef * row.vec[s]) % p + p) % p;
      for (int s = 0; s < m; ++s) total[s] = ((total[s] - coef * row.combo[s]) % p + p) % p;
    }
    GroupElement h = g.identity();
    for (int k = 0; k < m; ++k)
      if (total[k]) h = g.multiply(h, g.power(basis[k], total[k]));
    t = g.conjugate(t, h);
  }
  return t;
}

GroupElement ConjugacyCanonizer::canonical_cyclic(const GroupElement& s) const {
  const int layer = layer_of(s);
  if (layer >= static_cast<int>(series_.terms.size()))
    throw PreconditionError("the identity generates no cyclic subgroup of order p");
  const auto v = layer_coordinates(layer, s);
  const int lead = *std::find_if(v.begin(), v.end(), [](int a) { return a != 0; });
  return canonical(g_->power(s, inverse_mod(lead, g_->prime())));
}

}  // namespace thinville
