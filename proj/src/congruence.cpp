#include <algorithm>

#include "thinville/congruence.hpp"

namespace thinville {

namespace {

int mod(long long a, int p) {
  a %= p;
  return static_cast<int>(a < 0 ? a + p : a);
}

Subgroup gamma(const CentralSeries& lcs, int k) {
  if (k - 1 < static_cast<int>(lcs.terms.size())) return lcs.terms[k - 1];
  return Subgroup{};
}

GroupElement repeat_commutator(const PcGroup& g, const GroupElement& base,
                               std::initializer_list<std::pair<const GroupElement*, int>> runs) {
  std::vector<GroupElement> tail;
  for (const auto& [e, count] : runs)
    for (int k = 0; k < count; ++k) tail.push_back(*e);
  return g.left_normed_commutator(base, tail);
}

struct Frame {
  Subgroup phi;
  std::vector<int> free;
};

Frame frame_of(const PcGroup& g) {
  Frame f{frattini(g), {}};
  const auto lead = f.phi.leading_positions();
  for (int i = 0; i < g.rank(); ++i)
    if (std::find(lead.begin(), lead.end(), i) == lead.end()) f.free.push_back(i);
  return f;
}

// Solves a = u^s v^t modulo the layer, given layer coordinates.
bool solve2(const std::vector<int>& u, const std::vector<int>& v, const std::vector<int>& a, int p,
            int& s, int& t) {
  const int det = mod(static_cast<long long>(u[0]) * v[1] - static_cast<long long>(u[1]) * v[0], p);
  if (det == 0) return false;
  const int inv = inverse_mod_p(det, p);
  s = mod(static_cast<long long>(a[0] * v[1] - a[1] * v[0]) * inv, p);
  t = mod(static_cast<long long>(u[0] * a[1] - u[1] * a[0]) * inv, p);
  return true;
}

void fill_coordinates(const PcGroup& g, const CentralSeries& lcs, QuadraticPairCertificate& c) {
  const int p = g.prime();
  const int cls = static_cast<int>(lcs.terms.size()) - 1;
  if (cls < p) return;
  const Subgroup top = gamma(lcs, p);
  const Subgroup below = gamma(lcs, p + 1);
  if (top.log_order() - below.log_order() != 2) return;
  const GroupElement xp = g.power(c.x, p);
  const GroupElement yp = g.power(c.y, p);
  if (!top.contains(g, xp) || !top.contains(g, yp)) return;
  const auto lv = quotient_coordinates(g, top, below, c.l);
  const auto mv = quotient_coordinates(g, top, below, c.m);
  if (!solve2(lv, mv, quotient_coordinates(g, top, below, xp), p, c.alpha, c.beta)) return;
  solve2(lv, mv, quotient_coordinates(g, top, below, yp), p, c.gamma, c.delta);
  c.has_coordinates = true;
}

template <class Visit>
void search_pairs(const PcGroup& g, const GroupElement& x, std::uint64_t budget, Visit&& visit) {
  if (!is_metabelian(g)) throw PreconditionError("quadratic pair search needs a metabelian group");
  if (!is_thin(g).thin) throw PreconditionError("quadratic pair search needs a thin group");
  const CentralSeries lcs = lower_central_series(g);
  if (static_cast<int>(lcs.terms.size()) - 1 < 3)
    throw PreconditionError("quadratic pair search needs class at least 3");
  if (derived_subgroup(g).contains(g, x)) throw PreconditionError("x lies in the derived subgroup");
  const int p = g.prime();
  const Frame f = frame_of(g);
  const Subgroup g5 = gamma(lcs, 5);
  const auto residues = quadratic_nonresidues(p);
  const GroupElement xr = f.phi.coset_representative(g, x);
  const std::vector<int> xv{xr[f.free[0]], xr[f.free[1]]};
  std::vector<std::vector<int>> dirs{{0, 1}};
  for (int t = 0; t < p; ++t) dirs.push_back({1, t});
  // Modulo gamma_5 both sides only depend on y modulo G'.
  const bool phi_is_derived = f.phi == derived_subgroup(g);
  auto holds = [&](const GroupElement& y, int h) {
    const GroupElement a = repeat_commutator(g, y, {{&x, 3}});
    const GroupElement b = repeat_commutator(g, g.commutator(y, x), {{&y, 2}});
    return g5.contains(g, g.multiply(g.inverse(a), g.power(b, h)));
  };
  bool stop = false;
  for (const auto& v : dirs) {
    if (stop) break;
    if (mod(xv[0] * v[1] - xv[1] * v[0], p) == 0) continue;
    GroupElement base = g.identity();
    base[f.free[0]] = static_cast<std::uint8_t>(v[0]);
    base[f.free[1]] = static_cast<std::uint8_t>(v[1]);
    if (phi_is_derived &&
        std::none_of(residues.begin(), residues.end(), [&](int h) { return holds(base, h); }))
      continue;
    for_each_element(g, f.phi, budget, [&](const GroupElement& phi) {
      const GroupElement y = g.multiply(base, phi);
      for (int h : residues) {
        if (!holds(y, h)) continue;
        QuadraticPairCertificate c;
        c.x = x;
        c.y = y;
        c.h = h;
        c.l = repeat_commutator(g, g.commutator(y, x), {{&y, p - 2}});
        c.m = repeat_commutator(g, g.commutator(y, x), {{&y, p - 3}, {&x, 1}});
        fill_coordinates(g, lcs, c);
        if (!visit(std::move(c))) {
          stop = true;
          return false;
        }
      }
      return true;
    });
  }
}

}  // namespace

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > 62) throw PreconditionError("binomial argument too large");
  std::vector<std::int64_t> row(n + 1, 0);
  row[0] = 1;
  for (int r = 1; r <= n; ++r)
    for (int c = r; c > 0; --c) row[c] += row[c - 1];
  return row[k];
}

std::int64_t cij_integer(int i, int j, int p) {
  std::int64_t sum = 0;
  for (int k = 1; k <= p - 1; ++k) sum += binomial(k, i) * binomial(k, j);
  return sum;
}

int cij(int i, int j, int p) { return mod(cij_integer(i, j, p), p); }

int inverse_mod_p(int a, int p) {
  a = mod(a, p);
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw PreconditionError("residue has no inverse");
}

IdentityReport cij_closed_form_check(int p) {
  IdentityReport r{"cij-closed-form", p, 0, {}};
  for (int i = 1; i <= p - 2; ++i)
    for (int j = 1; i + j <= p - 1; ++j) {
      const int expected = i + j < p - 1 ? 0 : (i % 2 ? p - 1 : 1);
      const int actual = cij(i, j, p);
      ++r.checked;
      if (actual != expected) r.mismatches.push_back({{i, j}, expected, actual});
    }
  return r;
}

std::vector<int> quadratic_nonresidues(int p) {
  std::vector<bool> square(p, false);
  for (int x = 1; x < p; ++x) square[(x * x) % p] = true;
  std::vector<int> out;
  for (int x = 1; x < p; ++x)
    if (!square[x]) out.push_back(x);
  return out;
}

IdentityReport geometric_sum_check(int p) {
  IdentityReport r{"geometric-sum", p, 0, {}};
  for (int h : quadratic_nonresidues(p))
    for (int t = 1; t < p; ++t) {
      const int q = mod(static_cast<long long>(h) * t * t, p);
      int sum = 0, term = 1;
      for (int s = 1; s <= (p - 1) / 2; ++s) {
        sum = (sum + term) % p;
        term = (term * q) % p;
      }
      const int denom = mod(1 - q, p);
      ++r.checked;
      if (denom == 0) {
        r.mismatches.push_back({{h, t}, -1, sum});
        continue;
      }
      const int expected = (2 * inverse_mod_p(denom, p)) % p;
      if (sum != expected) r.mismatches.push_back({{h, t}, expected, sum});
    }
  return r;
}

bool miech_expansion_check(const PcGroup& g, const GroupElement& x, const GroupElement& y) {
  if (!is_metabelian(g)) throw PreconditionError("expansion needs a metabelian group");
  const int p = g.prime();
  std::vector<GroupElement> sigma(p + 1);
  sigma[1] = y;
  for (int i = 2; i <= p; ++i) sigma[i] = g.commutator(sigma[i - 1], x);
  GroupElement rhs = g.multiply(g.power(x, p), g.power(y, p));
  for (int i = 2; i <= p; ++i) rhs = g.multiply(rhs, g.power(sigma[i], binomial(p, i)));
  for (int i = 1; i <= p - 1; ++i) {
    GroupElement c = sigma[i + 1];
    for (int j = 1; j <= p - 1; ++j) {
      c = g.commutator(c, sigma[1]);
      rhs = g.multiply(rhs, g.power(c, cij_integer(i, j, p)));
    }
  }
  return g.power(g.multiply(x, y), p) == rhs;
}

QuadraticPairCertificate find_quadratic_pair(const PcGroup& g, const GroupElement& x,
                                             std::uint64_t budget) {
  std::optional<QuadraticPairCertificate> out;
  search_pairs(g, x, budget, [&](QuadraticPairCertificate c) {
    out = std::move(c);
    return false;
  });
  if (!out) throw Error("no quadratic pair: input is not thin metabelian or out of scope");
  return *out;
}

std::vector<QuadraticPairCertificate> all_quadratic_pairs(const PcGroup& g, const GroupElement& x,
                                                          std::size_t limit, std::uint64_t budget) {
  std::vector<QuadraticPairCertificate> out;
  search_pairs(g, x, budget, [&](QuadraticPairCertificate c) {
    out.push_back(std::move(c));
    return out.size() < limit;
  });
  return out;
}

bool derived_powers_below_p_plus_one(const PcGroup& g) {
  const CentralSeries lcs = lower_central_series(g);
  return abelian_agemo(g, gamma(lcs, 2)).is_subgroup_of(g, gamma(lcs, g.prime() + 1));
}

bool power_congruence_check(const PcGroup& g, const QuadraticPairCertificate& cert, int t) {
  const int p = g.prime();
  if (t < 0 || t >= p) throw PreconditionError("t out of range");
  if (!derived_powers_below_p_plus_one(g))
    throw PreconditionError("power congruence needs gamma_2^p <= gamma_{p+1}");
  const CentralSeries lcs = lower_central_series(g);
  const int denom = mod(1 - static_cast<long long>(cert.h) * t * t, p);
  const int inv = inverse_mod_p(denom, p);
  const int e_l = mod(-2LL * t * inv, p);
  const int e_m = mod(2LL * t * t * inv, p);
  const GroupElement lhs = g.power(g.multiply(g.power(cert.x, t), cert.y), p);
  GroupElement rhs = g.multiply(g.power(g.power(cert.x, p), t), g.power(cert.y, p));
  rhs = g.multiply(rhs, g.power(cert.l, e_l));
  rhs = g.multiply(rhs, g.power(cert.m, e_m));
  return gamma(lcs, p + 1).contains(g, g.multiply(g.inverse(lhs), rhs));
}

bool same_cyclic_modulo(const PcGroup& g, const GroupElement& a, const GroupElement& b,
                        const Subgroup& n) {
  std::vector<GroupElement> ga = n.basis(), gb = n.basis();
  ga.push_back(a);
  gb.push_back(b);
  return generated_subgroup(g, ga) == generated_subgroup(g, gb);
}

CollisionReport collision_scan(const PcGroup& g, const QuadraticPairCertificate& cert, int t0) {
  const int p = g.prime();
  const CentralSeries lcs = lower_central_series(g);
  if (gamma(lcs, p).log_order() < 2) throw PreconditionError("collision scan needs |gamma_p| >= p^2");
  const Subgroup n = gamma(lcs, p + 1);
  auto pth = [&](int t) { return g.power(g.multiply(g.power(cert.x, t), cert.y), p); };
  CollisionReport r;
  r.t0 = t0;
  const GroupElement base = pth(t0);
  for (int t = 0; t < p; ++t)
    if (same_cyclic_modulo(g, base, pth(t), n)) r.matches.push_back(t);
  r.bound_satisfied = r.matches.size() <= 3;
  return r;
}

bool companion_check(const PcGroup& g, const Subgroup& m, const GroupElement& a,
                     const GroupElement& b) {
  if (!derived_powers_below_p_plus_one(g))
    throw PreconditionError("companion check needs gamma_2^p <= gamma_{p+1}");
  const Subgroup d = derived_subgroup(g);
  for (const GroupElement* e : {&a, &b})
    if (!m.contains(g, *e) || d.contains(g, *e))
      throw PreconditionError("companion check needs elements of M outside G'");
  const CentralSeries lcs = lower_central_series(g);
  const int p = g.prime();
  return same_cyclic_modulo(g, g.power(a, p), g.power(b, p), gamma(lcs, p + 1));
}

std::vector<int> coincidence_counts(const PcGroup& g, std::uint64_t budget) {
  const CentralSeries lcs = lower_central_series(g);
  const Subgroup n = gamma(lcs, g.prime() + 1);
  std::vector<Subgroup> powers;
  for (const auto& m : maximal_subgroups(g)) powers.push_back(relative_agemo(g, m.subgroup, n, budget));
  std::vector<int> out;
  for (std::size_t i = 0; i < powers.size(); ++i)
    out.push_back(static_cast<int>(std::count(powers.begin(), powers.end(), powers[i])) - 1);
  return out;
}

}  // namespace thinville
