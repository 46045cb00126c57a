#include "fsing/cartier.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "fsing/error.hpp"
#include "fsing/modp.hpp"

namespace fsing {

namespace {

// Per (embedding, level): for every class c of G/qG, the componentwise
// minimum μ_c of Σ ∩ c. A shift w ∈ G is valid iff w ≥ -μ_{class(-w)}.
struct ClassTable {
  std::uint64_t q = 0;
  std::shared_ptr<const Lattice> group;
  std::unordered_map<std::uint64_t, IntVec> mu;
  std::unordered_map<std::uint64_t, IntVec> rep;  // some element of Σ in the class
  std::int64_t floor = 0;                         // max entry of any μ_c

  std::uint64_t encode(const IntVec& z) const {
    std::uint64_t k = 0;
    for (std::size_t j = z.size(); j-- > 0;) {
      std::int64_t r = z[j] % static_cast<std::int64_t>(q);
      if (r < 0) r += static_cast<std::int64_t>(q);
      k = k * q + static_cast<std::uint64_t>(r);
    }
    return k;
  }

  IntVec decode(std::uint64_t k) const {
    IntVec z(group->rank());
    for (auto& x : z) {
      x = static_cast<std::int64_t>(k % q);
      k /= q;
    }
    return z;
  }

  std::optional<std::uint64_t> class_of(std::span<const std::int64_t> v) const {
    auto z = group->coordinates(v);
    if (!z) return std::nullopt;
    return encode(*z);
  }

  bool valid(const IntVec& w) const {
    IntVec neg(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
    auto c = class_of(neg);
    if (!c) return false;
    const IntVec& m = mu.at(*c);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] < -m[i]) return false;
    return true;
  }
};

std::mutex cache_mu;
std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const ClassTable>> table_cache;
std::map<std::tuple<std::uint64_t, unsigned, std::int64_t>, std::shared_ptr<const CartierMaps>> maps_cache;

constexpr std::uint64_t kMaxRepresentatives = std::uint64_t{1} << 22;

std::shared_ptr<const ClassTable> class_table(const SplitEmbedding& emb, unsigned e) {
  auto key = std::make_pair(emb.id(), e);
  {
    std::lock_guard lock(cache_mu);
    auto it = table_cache.find(key);
    if (it != table_cache.end()) return it->second;
  }
  auto t = std::make_shared<ClassTable>();
  t->q = prime_power(emb.ring()->p(), e);
  t->group = std::make_shared<Lattice>(emb.semigroup().group());
  const auto& gens = emb.semigroup().generators();
  const std::size_t r = gens.size(), n = emb.ring()->n();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total *= t->q;
    if (total > kMaxRepresentatives) throw ResourceBound("too many residue representatives for Cartier maps");
  }
  // Odometer over a ∈ [0,q)^r, m = Σ a_i v_i.
  std::vector<std::uint64_t> a(r, 0);
  IntVec m(n, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    std::uint64_t c = *t->class_of(m);
    auto [it, fresh] = t->mu.try_emplace(c, m);
    if (fresh) {
      t->rep.emplace(c, m);
    } else {
      for (std::size_t j = 0; j < n; ++j) it->second[j] = std::min(it->second[j], m[j]);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (++a[i] < t->q) {
        for (std::size_t j = 0; j < n; ++j) m[j] += gens[i][j];
        break;
      }
      a[i] = 0;
      for (std::size_t j = 0; j < n; ++j) m[j] -= static_cast<std::int64_t>(t->q - 1) * gens[i][j];
    }
  }
  for (const auto& [c, v] : t->mu)
    for (auto x : v) t->floor = std::max(t->floor, x);
  std::lock_guard lock(cache_mu);
  return table_cache.try_emplace(key, t).first->second;
}

ToricCartierMap make_map(const ClassTable& t, unsigned e, IntVec w) {
  ToricCartierMap map;
  map.e = e;
  map.q = t.q;
  map.group = t.group;
  IntVec neg(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
  std::uint64_t live = *t.class_of(neg);
  map.live_class = t.decode(live);
  const auto q = static_cast<std::int64_t>(t.q);
  std::vector<std::uint64_t> dead;
  for (const auto& [c, a] : t.rep) {
    if (c == live) continue;
    bool integral = true;
    for (std::size_t i = 0; i < w.size() && integral; ++i) integral = (a[i] + w[i]) % q == 0;
    if (integral) dead.push_back(c);
  }
  std::sort(dead.begin(), dead.end());
  for (auto c : dead) map.zero_mask.push_back(t.decode(c));
  map.w = std::move(w);
  return map;
}

std::vector<IntVec> minimal_shifts(const SplitEmbedding& emb, const ClassTable& t, std::int64_t window) {
  const std::size_t n = emb.ring()->n();
  const auto q = static_cast<std::int64_t>(t.q);
  const auto& gens = emb.semigroup().generators();
  std::vector<IntVec> out;
  t.group->for_each_in_box(IntVec(n, -t.floor), IntVec(n, window), [&](const IntVec& w) {
    if (!t.valid(w)) return;
    IntVec down(n);
    for (const auto& v : gens) {
      for (std::size_t j = 0; j < n; ++j) down[j] = w[j] - q * v[j];
      if (t.valid(down)) return;
    }
    out.push_back(w);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<Monomial> ToricCartierMap::act(const Monomial& m) const {
  const auto qq = static_cast<std::int64_t>(q);
  IntVec t(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(m[i]) + w[i];
    if (s % qq != 0) return std::nullopt;
    t[i] = s / qq;
  }
  auto z = group->coordinates(to_ints(m));
  if (!z) return std::nullopt;
  for (std::size_t j = 0; j < z->size(); ++j) {
    std::int64_t r = (*z)[j] % qq;
    if (r < 0) r += qq;
    if (r != live_class[j]) return std::nullopt;
  }
  Monomial out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (t[i] < 0) throw Error("Cartier map target leaves the semigroup");
    out[i] = static_cast<std::uint32_t>(t[i]);
  }
  return out;
}

Polynomial ToricCartierMap::apply(const Polynomial& f) const {
  std::vector<Polynomial::Term> terms;
  for (const auto& term : f.terms())
    if (auto m = act(term.mono)) terms.push_back({std::move(*m), term.coeff});
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

std::shared_ptr<const CartierMaps> enumerate_maps(const SplitEmbedding& emb, unsigned e, std::int64_t window) {
  if (e == 0) throw DomainError("level e must be at least 1");
  auto key = std::make_tuple(emb.id(), e, window);
  {
    std::lock_guard lock(cache_mu);
    auto it = maps_cache.find(key);
    if (it != maps_cache.end()) return it->second;
  }
  auto t = class_table(emb, e);
  auto result = std::make_shared<CartierMaps>();
  std::vector<IntVec> shifts;
  if (window > 0) {
    shifts = minimal_shifts(emb, *t, window);
    result->window = window;
    result->stable = shifts == minimal_shifts(emb, *t, 2 * window);
  } else {
    std::int64_t w = static_cast<std::int64_t>(t->q) * std::max<std::int64_t>(1, emb.semigroup().max_coordinate());
    shifts = minimal_shifts(emb, *t, w);
    for (int round = 0; round < 4 && !result->stable; ++round) {
      auto wider = minimal_shifts(emb, *t, 2 * w);
      result->stable = wider == shifts;
      if (!result->stable) {
        shifts = std::move(wider);
        w *= 2;
      }
    }
    if (!result->stable) throw ResourceBound("Cartier map window did not stabilize");
    result->window = w;
  }
  for (auto& w : shifts) result->maps.push_back(make_map(*t, e, std::move(w)));
  std::lock_guard lock(cache_mu);
  return maps_cache.try_emplace(key, result).first->second;
}

std::optional<ToricCartierMap> graded_map(const SplitEmbedding& emb, unsigned e, const IntVec& w) {
  if (w.size() != emb.ring()->n()) throw DomainError("shift length does not match the ring");
  auto t = class_table(emb, e);
  if (!t->valid(w)) return std::nullopt;
  return make_map(*t, e, w);
}

bool r_divides(const Monomial& a, const Monomial& b, const SplitEmbedding& emb) {
  IntVec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    d[i] = static_cast<std::int64_t>(b[i]) - a[i];
  }
  return emb.contains_exponent(d);
}

std::vector<Polynomial> minimalize_in_r(std::vector<Polynomial> gens, const SplitEmbedding& emb) {
  std::vector<Polynomial> mono, other;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    std::uint32_t lc = g.terms()[0].coeff;
    if (lc != 1) g = g.scaled(modp::inv(lc, g.ring()->p()));
    if (g.is_constant()) return {Polynomial::constant(g.ring(), 1)};
    (g.is_monomial() ? mono : other).push_back(std::move(g));
  }
  std::sort(mono.begin(), mono.end(), [](const Polynomial& a, const Polynomial& b) {
    return MonomialOrder::grevlex().compare(a.terms()[0].mono, b.terms()[0].mono) < 0;
  });
  std::vector<Polynomial> out;
  for (auto& g : mono) {
    const Monomial& m = g.terms()[0].mono;
    if (std::none_of(out.begin(), out.end(), [&](const Polynomial& k) { return r_divides(k.terms()[0].mono, m, emb); }))
      out.push_back(std::move(g));
  }
  std::sort(other.begin(), other.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.to_string() < b.to_string();
  });
  other.erase(std::unique(other.begin(), other.end()), other.end());
  out.insert(out.end(), other.begin(), other.end());
  return out;
}

CartierImage cartier_image(const std::vector<Polynomial>& J, const SplitEmbedding& emb, unsigned e) {
  for (const auto& g : J) {
    if (!same_ring(g.ring(), emb.ring())) throw RingMismatch();
    if (!emb.contains(g)) throw DomainError("generator " + g.to_string() + " is not in the subring");
  }
  auto maps = enumerate_maps(emb, e);
  auto table = class_table(emb, e);
  CartierImage out{J, e, {}, maps->window, maps->stable, maps->maps.size()};

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_class;
  for (std::size_t k = 0; k < maps->maps.size(); ++k)
    by_class[table->encode(maps->maps[k].live_class)].push_back(k);

  const auto q = static_cast<std::int64_t>(table->q);
  const std::size_t n = emb.ring()->n();
  std::vector<Polynomial> images;
  for (const auto& g : J) {
    std::map<std::size_t, std::vector<Polynomial::Term>> parts;
    for (const auto& term : g.terms()) {
      auto c = table->class_of(to_ints(term.mono));
      auto it = by_class.find(*c);
      if (it == by_class.end()) continue;
      for (std::size_t k : it->second) {
        const IntVec& w = maps->maps[k].w;
        Monomial t(n);
        for (std::size_t i = 0; i < n; ++i) {
          std::int64_t s = static_cast<std::int64_t>(term.mono[i]) + w[i];
          if (s < 0 || s % q != 0) throw Error("Cartier map target leaves the semigroup");
          t[i] = static_cast<std::uint32_t>(s / q);
        }
        parts[k].push_back({std::move(t), term.coeff});
      }
    }
    for (auto& [k, terms] : parts) images.push_back(Polynomial::from_terms(g.ring(), std::move(terms)));
  }
  out.image = minimalize_in_r(std::move(images), emb);
  return out;
}

bool d_image_equal_R(const std::vector<Polynomial>& J1, const std::vector<Polynomial>& J2,
                     const SplitEmbedding& emb, unsigned e) {
  return r_ideal_equal(cartier_image(J1, emb, e).image, cartier_image(J2, emb, e).image, emb);
}

}  // namespace fsing
