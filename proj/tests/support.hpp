#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "alink/group.hpp"

namespace alink::testing {

inline Word random_word(const Group& g, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(g.rank()) - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Syllable> raw;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back({gen(rng), sign(rng) ? 1 : -1});
  return g.normalize(raw);
}

inline Word random_nontrivial(const Group& g, std::mt19937_64& rng, int max_len) {
  for (;;) {
    Word w = random_word(g, rng, max_len);
    if (!w.is_identity()) return w;
  }
}

// Every reduced word over the free group on `rank` letters with at most
// `max_len` letters, in shortlex order.
inline std::vector<Word> all_free_words(int rank, int max_len) {
  std::vector<std::vector<int>> layer{{}};
  std::vector<Word> out{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      for (int g = 1; g <= rank; ++g) {
        for (int l : {g, -g}) {
          if (!w.empty() && w.back() == -l) continue;
          auto v = w;
          v.push_back(l);
          next.push_back(std::move(v));
        }
      }
    }
    for (const auto& w : next) out.push_back(from_letters(w));
    layer = std::move(next);
  }
  return out;
}

// Orbit oracle on the ball of radius `radius` in Free{x,y}: connects w to
// gamma^{+-1} w, w delta^{+-1} and (optionally) w^-1 whenever both ends fit
// in the ball. The component minimum is the expected canonical key.
class BallOracle {
 public:
  using Letters = std::vector<int>;

  BallOracle(const Letters& gamma, const Letters& delta, bool inversion, int radius)
      : radius_(radius), words_(all_letters(radius)), parent_(words_.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
    const Letters gi = inv(gamma), di = inv(delta);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const Letters& w = words_[i];
      link(i, mul(gamma, w));
      link(i, mul(gi, w));
      link(i, mul(w, delta));
      link(i, mul(w, di));
      if (inversion) link(i, inv(w));
    }
  }

  bool ranks_consistent() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (rank(words_[i]) != static_cast<std::int64_t>(i)) return false;
    return true;
  }

  Word min_of(const Letters& w) { return from_letters(words_[find(rank(w))]); }

  static Letters mul(const Letters& a, const Letters& b) {
    Letters out(a);
    for (int l : b) {
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    return out;
  }

  static Letters inv(const Letters& a) {
    Letters out(a.rbegin(), a.rend());
    for (int& l : out) l = -l;
    return out;
  }

 private:
  static int letter_key(int l) { return 2 * ((l > 0 ? l : -l) - 1) + (l < 0 ? 1 : 0); }

  // Reduced words over two letters, in shortlex order.
  static std::vector<Letters> all_letters(int max_len) {
    std::vector<Letters> out{Letters{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
      const std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (int l : {1, -1, 2, -2}) {
          if (!out[i].empty() && out[i].back() == -l) continue;
          Letters v = out[i];
          v.push_back(l);
          out.push_back(std::move(v));
        }
      }
      begin = end;
    }
    return out;
  }

  // Position in the shortlex enumeration.
  static std::int64_t rank(const Letters& w) {
    if (w.empty()) return 0;
    std::int64_t before = 1, layer = 4;
    for (std::size_t len = 1; len < w.size(); ++len) {
      before += layer;
      layer *= 3;
    }
    std::int64_t idx = letter_key(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
      int k = letter_key(w[i]);
      if (k > letter_key(-w[i - 1])) --k;
      idx = idx * 3 + k;
    }
    return before + idx;
  }

  std::size_t find(std::int64_t a) {
    auto i = static_cast<std::size_t>(a);
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  // The smaller index is the shortlex-smaller word and becomes the root.
  void link(std::size_t i, const Letters& other) {
    if (static_cast<int>(other.size()) > radius_) return;
    std::size_t a = find(static_cast<std::int64_t>(i)), b = find(rank(other));
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

  int radius_;
  std::vector<Letters> words_;
  std::vector<std::size_t> parent_;
};

inline GroupPtr free2() { return make_group(GroupSpec::free({"x", "y"})); }
inline GroupPtr free3() { return make_group(GroupSpec::free({"x", "y", "z"})); }
inline GroupPtr fxs1() { return make_group(GroupSpec::free_times_z({"x", "y", "z"}, "t")); }

}  // namespace alink::testing
