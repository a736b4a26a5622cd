#include "canonical.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "alink/error.hpp"

namespace alink::detail {

namespace {

using Letters = std::vector<int>;

int lkey(int l) { return 2 * ((l > 0 ? l : -l) - 1) + (l < 0 ? 1 : 0); }

int compare_letters(const Letters& a, const Letters& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return lkey(a[i]) < lkey(b[i]) ? -1 : 1;
  return 0;
}

Letters inverse(const Letters& a) {
  Letters out(a.rbegin(), a.rend());
  for (int& l : out) l = -l;
  return out;
}

template <class A, class B>
std::size_t cancel_len(const A& a, const B& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t k = 0;
  while (k < n && a[a.size() - 1 - k] == -b[k]) ++k;
  return k;
}

Letters mul(const Letters& a, const Letters& b) {
  const std::size_t k = cancel_len(a, b);
  Letters out;
  out.reserve(a.size() + b.size() - 2 * k);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  return out;
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// w = u c u^-1 with c cyclically reduced, c = root^count.
struct Split {
  Letters u, u_inv, c, c_inv, root;
  std::int64_t count = 1;

  explicit Split(const Letters& w) {
    std::size_t i = 0, j = w.size();
    while (j - i >= 2 && w[i] == -w[j - 1]) {
      ++i;
      --j;
    }
    u.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    c.assign(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
    u_inv = inverse(u);
    c_inv = inverse(c);
    std::size_t p = c.size();
    for (std::size_t d = 1; d <= c.size(); ++d) {
      if (c.size() % d != 0) continue;
      bool ok = true;
      for (std::size_t k = d; k < c.size() && ok; ++k) ok = c[k] == c[k - d];
      if (ok) {
        p = d;
        break;
      }
    }
    root.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p));
    count = p == 0 ? 1 : static_cast<std::int64_t>(c.size() / p);
  }

  // u c^n u^-1, already reduced.
  Letters power(std::int64_t n) const {
    if (n == 0) return {};
    Letters out(u);
    const Letters& base = n > 0 ? c : c_inv;
    for (std::int64_t k = 0; k < iabs(n); ++k) out.insert(out.end(), base.begin(), base.end());
    out.insert(out.end(), u_inv.begin(), u_inv.end());
    return out;
  }
};

std::int64_t reduce_mod(std::int64_t a, std::int64_t m) {
  m = iabs(m);
  if (m == 0) return a;
  std::int64_t r = ((a % m) + m) % m;
  if (r == 0) return 0;
  const std::int64_t alt = r - m;
  return r <= -alt ? r : alt;
}

// Candidate = free letters followed by central^k (central letter cl, 0 when absent).
struct Best {
  int central_letter = 0;
  bool have = false;
  Letters free;
  std::int64_t central = 0;
  std::int64_t total = 0;

  // Shortlex comparison of (f, c) against the current best, same total length.
  template <class W>
  int compare(const W& f, std::int64_t c) const {
    const auto at = [this](const auto& w, std::int64_t cc, std::size_t i) {
      return i < w.size() ? w[i] : (cc > 0 ? central_letter : -central_letter);
    };
    for (std::size_t i = 0; i < static_cast<std::size_t>(total); ++i) {
      const int a = at(f, c, i), b = at(free, central, i);
      if (a != b) return lkey(a) < lkey(b) ? -1 : 1;
    }
    return 0;
  }

  template <class W>
  void offer(const W& f, std::int64_t c) {
    const std::int64_t t = static_cast<std::int64_t>(f.size()) + iabs(c);
    if (have) {
      if (t > total) return;
      if (t == total && compare(f, c) >= 0) return;
    }
    have = true;
    free.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) free[i] = f[i];
    central = c;
    total = t;
  }
};

struct FzWord {
  Letters free;
  std::int64_t central = 0;
};

// u c^n u^-1 of a split word, indexed without materializing it.
struct PowerView {
  const Split* s;
  std::int64_t n;

  std::size_t size() const {
    return n == 0 ? 0 : 2 * s->u.size() + static_cast<std::size_t>(iabs(n)) * s->c.size();
  }

  int operator[](std::size_t i) const {
    const std::size_t ul = s->u.size(), body = size() - ul;
    if (i < ul) return s->u[i];
    if (i >= body) return s->u_inv[i - body];
    const Letters& base = n > 0 ? s->c : s->c_inv;
    return base[(i - ul) % base.size()];
  }
};

// The reduced product of two letter sequences, indexed in place.
template <class A, class B>
struct Product {
  const A& a;
  const B& b;
  std::size_t k;  // letters cancelled on each side

  Product(const A& x, const B& y) : a(x), b(y), k(cancel_len(x, y)) {}

  std::size_t size() const { return a.size() + b.size() - 2 * k; }
  int operator[](std::size_t i) const {
    const std::size_t head = a.size() - k;
    return i < head ? a[i] : b[i - head + k];
  }
};

// {Gamma^j g}, central of the j-th element reduced mod `modulus`.
void left_search(Best& best, const FzWord& g, const Letters& gamma, std::int64_t slope,
                 std::int64_t modulus) {
  const Split s(gamma);
  const auto glen = static_cast<std::int64_t>(g.free.size());
  const auto ulen = static_cast<std::int64_t>(2 * s.u.size());
  const auto clen = static_cast<std::int64_t>(s.c.size());
  for (std::int64_t j = 0;; ++j) {
    // |gamma^j g| >= |gamma^j| - |g|
    if (best.have && j > 0 && ulen + j * clen - glen > best.total) break;
    for (std::int64_t sj : {j, -j}) {
      const PowerView p{&s, sj};
      best.offer(Product(p, g.free), reduce_mod(g.central + sj * slope, modulus));
      if (j == 0) break;
    }
  }
}

void right_search(Best& best, const FzWord& g, const Letters& delta, std::int64_t slope,
                  std::int64_t modulus) {
  const Split s(delta);
  const auto glen = static_cast<std::int64_t>(g.free.size());
  const auto ulen = static_cast<std::int64_t>(2 * s.u.size());
  const auto dlen = static_cast<std::int64_t>(s.c.size());
  for (std::int64_t j = 0;; ++j) {
    if (best.have && j > 0 && ulen + j * dlen - glen > best.total) break;
    for (std::int64_t sj : {j, -j}) {
      const PowerView p{&s, sj};
      best.offer(Product(g.free, p), reduce_mod(g.central + sj * slope, modulus));
      if (j == 0) break;
    }
  }
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1 = 0, y1 = 0;
  const std::int64_t d = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return d;
}

FzWord min_double_coset_fz(const FzWord& g, const FzWord& gamma, const FzWord& delta, int central_letter) {
  Best best;
  best.central_letter = central_letter;
  const bool lf = !gamma.free.empty(), rf = !delta.free.empty();
  if (!lf && !rf) {
    const std::int64_t m = std::gcd(iabs(gamma.central), iabs(delta.central));
    return {g.free, reduce_mod(g.central, m)};
  }
  if (lf && !rf) {
    left_search(best, g, gamma.free, gamma.central, delta.central);
    return {best.free, best.central};
  }
  if (!lf && rf) {
    right_search(best, g, delta.free, delta.central, gamma.central);
    return {best.free, best.central};
  }

  const Split sg(gamma.free), sd(delta.free);
  const Letters h = mul(mul(sg.u_inv, g.free), sd.u);
  const Letters hr = mul(mul(h, sd.root), inverse(h));
  int sigma = 0;
  if (hr == sg.root)
    sigma = 1;
  else if (hr == inverse(sg.root))
    sigma = -1;

  if (sigma != 0) {
    // gamma^n g delta^m = rho^(p n + sigma q m) g with rho the root of gamma.
    const std::int64_t p = sg.count, q = sd.count;
    std::int64_t x0 = 0, y0 = 0;
    const std::int64_t e = ext_gcd(p, q, x0, y0);
    Letters step(sg.u);
    for (std::int64_t k = 0; k < e; ++k) step.insert(step.end(), sg.root.begin(), sg.root.end());
    step.insert(step.end(), sg.u_inv.begin(), sg.u_inv.end());
    const std::int64_t slope = x0 * gamma.central + sigma * y0 * delta.central;
    const std::int64_t drift = (gamma.central * sigma * q - delta.central * p) / e;
    left_search(best, g, step, slope, drift);
    return {best.free, best.central};
  }

  const auto clen = static_cast<std::int64_t>(sg.c.size());
  const auto dlen = static_cast<std::int64_t>(sd.c.size());
  const auto slack =
      static_cast<std::int64_t>(h.size() + 2 * (sg.c.size() + sd.c.size()) + sg.u.size() + sd.u.size() + 2);
  for (std::int64_t n = 0;; ++n) {
    if (best.have && n * clen - slack > best.total) break;
    for (std::int64_t sn : {n, -n}) {
      const PowerView gn{&sg, sn};
      const Product a(gn, g.free);
      const auto alen = static_cast<std::int64_t>(a.size());
      for (std::int64_t m = 0;; ++m) {
        if (best.have && n * clen + m * dlen - slack > best.total) break;
        // |a b| >= ||a| - |b||, and |b| = |delta^m| grows with m
        const std::int64_t blen = m == 0 ? 0 : static_cast<std::int64_t>(2 * sd.u.size()) + m * dlen;
        if (best.have && blen - alen > best.total) break;
        if (best.have && alen - blen > best.total) continue;
        for (std::int64_t sm : {m, -m}) {
          const PowerView b{&sd, sm};
          const std::int64_t central = g.central + sn * gamma.central + sm * delta.central;
          best.offer(Product(a, b), central);
          if (m == 0) break;
        }
      }
      if (n == 0) break;
    }
  }
  return {best.free, best.central};
}

FzWord to_fz(const Group& group, const Word& w) {
  if (group.kind() == GroupKind::FreeTimesZ) return {to_letters(group.free_part(w)), group.central_exponent(w)};
  return {to_letters(w), 0};
}

Word from_fz(const Group& group, const FzWord& w) {
  Word f = from_letters(w.free);
  if (group.kind() == GroupKind::FreeTimesZ) return group.with_central(f, w.central);
  return f;
}

// ---------------------------------------------------------------------------
// Free abelian groups: exponent vectors.

using Vec = std::vector<std::int64_t>;

Vec to_vec(const Group& group, const Word& w) {
  Vec v(group.rank(), 0);
  for (const auto& s : w.syl) v[static_cast<std::size_t>(s.gen)] += s.exp;
  return v;
}

Word from_vec(const Vec& v) {
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) w.syl.push_back({static_cast<int>(i), v[i]});
  return w;
}

std::int64_t l1(const Vec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += iabs(x);
  return s;
}

Vec axpy(const Vec& g, std::int64_t a, const Vec& c) {
  Vec out(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * c[i];
  return out;
}

void offer_vec(std::optional<Word>& best, const Vec& v) {
  Word w = from_vec(v);
  if (!best || shortlex_less(w, *best)) best = std::move(w);
}

Word min_abelian_coset(const Group& group, const Word& gw, const Word& cw, const Word& dw) {
  const Vec g = to_vec(group, gw), c = to_vec(group, cw), d = to_vec(group, dw);
  const std::size_t r = g.size();
  auto is_zero = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }); };
  std::vector<Vec> gens;
  if (!is_zero(c)) gens.push_back(c);
  if (!is_zero(d)) gens.push_back(d);
  if (gens.empty()) return gw;

  bool parallel = gens.size() == 1;
  if (!parallel) {
    parallel = true;
    for (std::size_t i = 0; i < r && parallel; ++i)
      for (std::size_t j = i + 1; j < r && parallel; ++j)
        if (c[i] * d[j] - c[j] * d[i] != 0) parallel = false;
  }

  std::optional<Word> best;
  if (parallel) {
    const Vec& v = gens[0];
    std::int64_t gv = 0;
    for (auto x : v) gv = std::gcd(gv, iabs(x));
    Vec w0(v);
    for (auto& x : w0) x /= gv;
    std::size_t lead = 0;
    while (w0[lead] == 0) ++lead;
    std::int64_t scale = 0;
    for (const Vec& x : gens) scale = std::gcd(scale, iabs(x[lead] / w0[lead]));
    Vec w(w0);
    for (auto& x : w) x *= scale;
    auto f = [&](std::int64_t k) { return l1(axpy(g, k, w)); };
    std::vector<std::int64_t> cand{0};
    for (std::size_t i = 0; i < r; ++i) {
      if (w[i] == 0) continue;
      const std::int64_t q = -g[i] / w[i];
      for (std::int64_t k = q - 1; k <= q + 1; ++k) cand.push_back(k);
    }
    std::int64_t kbest = 0, fbest = f(0);
    for (auto k : cand)
      if (f(k) < fbest) {
        fbest = f(k);
        kbest = k;
      }
    std::int64_t lo = kbest, hi = kbest;
    while (f(lo - 1) == fbest) --lo;
    while (f(hi + 1) == fbest) ++hi;
    for (std::int64_t k = lo; k <= hi; ++k) offer_vec(best, axpy(g, k, w));
    return *best;
  }

  std::int64_t det = 0;
  std::size_t bi = 0, bj = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const std::int64_t dd = c[i] * d[j] - c[j] * d[i];
      if (iabs(dd) > iabs(det)) {
        det = dd;
        bi = i;
        bj = j;
      }
    }
  const std::int64_t g1 = l1(g);
  const std::int64_t amax = (2 * g1 * std::max(iabs(d[bi]), iabs(d[bj]))) / iabs(det) + 1;
  const std::int64_t bmax = (2 * g1 * std::max(iabs(c[bi]), iabs(c[bj]))) / iabs(det) + 1;
  std::int64_t bound = g1;
  Vec v(r);
  for (std::int64_t a = -amax; a <= amax; ++a)
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
      std::int64_t len = 0;
      for (std::size_t i = 0; i < r && len <= bound; ++i) len += iabs(g[i] + a * c[i] + b * d[i]);
      if (len > bound) continue;
      for (std::size_t i = 0; i < r; ++i) v[i] = g[i] + a * c[i] + b * d[i];
      offer_vec(best, v);
      bound = len;
    }
  return *best;
}

// ---------------------------------------------------------------------------
// Free products: search ordered by translation length with the same kind of
// slack as the free case.

std::int64_t translation_length(const Group& group, const Word& w) {
  if (w.is_identity()) return 0;
  auto [u, c] = group.cyclic_split(w);
  auto bl = group.blocks(c);
  if (bl.size() == 1) {
    const Group& f = group.factor(bl[0].first);
    return f.cyclic_split(bl[0].second).second.length();
  }
  return c.length();
}

Word min_product_coset(const Group& group, const Word& g, const Word& gamma, const Word& delta) {
  const std::int64_t tg = translation_length(group, gamma), td = translation_length(group, delta);
  const std::int64_t slack = 2 * g.length() + 4 * (gamma.length() + delta.length()) + 2;
  Word best = g;
  std::vector<Word> rights{Word{}};
  auto right = [&](std::int64_t m) -> const Word& {
    const auto idx = static_cast<std::size_t>(m >= 0 ? 2 * m : -2 * m - 1);
    while (rights.size() <= idx) {
      const auto k = static_cast<std::int64_t>(rights.size());
      rights.push_back(group.power(delta, k % 2 == 0 ? k / 2 : -(k + 1) / 2));
    }
    return rights[idx];
  };
  for (std::int64_t n = 0;; ++n) {
    if (n > 0 && (tg == 0 || n * tg > best.length() + slack)) break;
    for (std::int64_t sn : {n, -n}) {
      const Word left = group.multiply(group.power(gamma, sn), g);
      const std::int64_t llen = left.length();
      for (std::int64_t m = 0;; ++m) {
        if (m > 0 && (td == 0 || n * tg + m * td > best.length() + slack)) break;
        // |left delta^m| >= |delta^m| - |left| >= m td - |left|
        if (m > 0 && m * td - llen > best.length()) break;
        for (std::int64_t sm : {m, -m}) {
          const Word& r = right(sm);
          if (llen - r.length() > best.length()) {
            if (m == 0) break;
            continue;
          }
          Word w = group.multiply(left, r);
          if (shortlex_less(w, best)) best = std::move(w);
          if (m == 0) break;
        }
      }
      if (n == 0) break;
    }
  }
  return best;
}

Word min_conjugate_closure(const Group& group, const Word& start) {
  std::set<Word, ShortlexLess> seen{start};
  std::vector<Word> queue{start};
  const std::int64_t len = start.length();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t gen = 0; gen < group.rank(); ++gen) {
      for (std::int64_t e : {1, -1}) {
        Word w = group.conjugate(queue[i], group.generator(static_cast<int>(gen), e));
        if (w.length() > len) continue;
        if (w.length() < len) return min_conjugate_closure(group, w);
        if (seen.insert(w).second) queue.push_back(std::move(w));
      }
    }
  }
  return *seen.begin();
}

}  // namespace

Word min_double_coset(const Group& group, const Word& g, const Word& gamma, const Word& delta) {
  switch (group.kind()) {
    case GroupKind::Free:
    case GroupKind::FreeTimesZ: {
      const int cl = group.kind() == GroupKind::FreeTimesZ ? group.central_generator() + 1 : 0;
      return from_fz(group, min_double_coset_fz(to_fz(group, g), to_fz(group, gamma), to_fz(group, delta), cl));
    }
    case GroupKind::FreeAbelian: return min_abelian_coset(group, g, gamma, delta);
    case GroupKind::FreeProduct: return min_product_coset(group, g, gamma, delta);
  }
  return g;
}

Word min_conjugate(const Group& group, const Word& g) {
  switch (group.kind()) {
    case GroupKind::FreeAbelian: return g;
    case GroupKind::Free:
    case GroupKind::FreeTimesZ: {
      const FzWord w = to_fz(group, g);
      const Split s(w.free);
      Letters best = s.c;
      Letters rot(s.c.size());
      for (std::size_t k = 1; k < s.c.size(); ++k) {
        std::rotate_copy(s.c.begin(), s.c.begin() + static_cast<std::ptrdiff_t>(k), s.c.end(), rot.begin());
        if (compare_letters(rot, best) < 0) best = rot;
      }
      return from_fz(group, {best, w.central});
    }
    case GroupKind::FreeProduct: {
      auto [u, c] = group.cyclic_split(g);
      auto bl = group.blocks(c);
      if (bl.size() == 1) {
        bl[0].second = min_conjugate(group.factor(bl[0].first), bl[0].second);
        c = group.from_blocks(bl);
      }
      return min_conjugate_closure(group, c);
    }
  }
  return g;
}

}  // namespace alink::detail
