#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alink {

enum class GroupKind { Free, FreeAbelian, FreeTimesZ, FreeProduct };

struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// A word stored as run-length syllables. Only a Group knows whether a given
// Word is in normal form; everything handed out by a Group is.
struct Word {
  std::vector<Syllable> syl;

  Word() = default;
  explicit Word(std::vector<Syllable> s) : syl(std::move(s)) {}

  bool is_identity() const noexcept { return syl.empty(); }
  std::int64_t length() const noexcept;

  friend bool operator==(const Word&, const Word&) = default;
};

// Letter order: generators in declaration order, each inverse immediately
// after its generator. Shortlex compares total letter count first.
bool shortlex_less(const Word& a, const Word& b) noexcept;
std::strong_ordering shortlex_compare(const Word& a, const Word& b) noexcept;

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const noexcept {
    return shortlex_less(a, b);
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

class GroupSpec {
 public:
  static GroupSpec free(std::vector<std::string> labels);
  static GroupSpec free_abelian(std::vector<std::string> labels);
  /// Free group on `free_labels` times the infinite cyclic group on
  /// `central`, e.g. the fundamental group of F x S^1.
  static GroupSpec free_times_z(std::vector<std::string> free_labels,
                                std::string central);
  /// Nested products are flattened.
  static GroupSpec free_product(std::vector<GroupSpec> factors);

  GroupKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t rank() const noexcept { return labels_.size(); }
  const std::vector<GroupSpec>& factors() const noexcept { return factors_; }
  std::optional<int> find(std::string_view label) const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupKind kind_ = GroupKind::Free;
  std::vector<std::string> labels_;
  std::vector<GroupSpec> factors_;
};

bool is_valid_label(std::string_view label);

// Word arithmetic for one GroupSpec. Immutable after construction.
class Group {
 public:
  explicit Group(GroupSpec spec);

  const GroupSpec& spec() const noexcept { return spec_; }
  GroupKind kind() const noexcept { return spec_.kind(); }
  std::size_t rank() const noexcept { return spec_.rank(); }
  bool is_abelian() const noexcept;
  /// Index of the central generator of a FreeTimesZ group, else -1.
  int central_generator() const noexcept;

  Word normalize(const std::vector<Syllable>& raw) const;
  Word multiply(const Word& a, const Word& b) const;
  Word multiply(std::initializer_list<const Word*> factors) const;
  Word invert(const Word& a) const;
  Word power(const Word& a, std::int64_t n) const;
  /// by * a * by^-1
  Word conjugate(const Word& a, const Word& by) const;
  bool commutes(const Word& a, const Word& b) const;
  Word generator(int gen, std::int64_t exp = 1) const;

  /// (root, power) with root^power == g and power maximal.
  std::pair<Word, std::int64_t> maximal_root(const Word& g) const;
  std::vector<Word> centralizer_generators(const Word& g) const;
  /// True when g is a power of h (h may be the identity).
  bool in_cyclic_subgroup(const Word& g, const Word& h) const;

  /// g = u c u^-1 with c cyclically reduced (free and free-product kinds;
  /// for the others c = g and u = 1).
  std::pair<Word, Word> cyclic_split(const Word& g) const;

  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  // Free-product helpers: factor index of a generator and the factor groups.
  int factor_of(int gen) const { return factor_of_.at(gen); }
  int factor_offset(int factor) const { return offset_.at(factor); }
  const Group& factor(int i) const { return *factors_.at(i); }
  std::size_t factor_count() const noexcept { return factors_.size(); }
  /// Blocks of a normal-form product word: (factor, local word).
  std::vector<std::pair<int, Word>> blocks(const Word& w) const;
  Word from_blocks(const std::vector<std::pair<int, Word>>& blocks) const;

  // FreeTimesZ helpers.
  Word free_part(const Word& w) const;
  std::int64_t central_exponent(const Word& w) const;
  Word with_central(const Word& free_part, std::int64_t central) const;

 private:
  Word normalize_free(const std::vector<Syllable>& raw) const;
  Word normalize_abelian(const std::vector<Syllable>& raw) const;
  Word normalize_free_times_z(const std::vector<Syllable>& raw) const;
  Word normalize_product(const std::vector<Syllable>& raw) const;

  GroupSpec spec_;
  std::vector<std::shared_ptr<const Group>> factors_;
  std::vector<int> factor_of_;
  std::vector<int> offset_;
};

using GroupPtr = std::shared_ptr<const Group>;

GroupPtr make_group(GroupSpec spec);

// Letter-level helpers shared by the free-group algorithms. A letter is
// +(gen+1) or -(gen+1).
std::vector<int> to_letters(const Word& w);
Word from_letters(const std::vector<int>& letters);
void free_reduce_letters(std::vector<int>& letters);

/// A group element bound to its group. All operations check that both
/// operands come from the same group (SpecMismatch otherwise).
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(GroupPtr group, Word word)
      : group_(std::move(group)), word_(std::move(word)) {}

  static GroupElement identity(GroupPtr group) { return {std::move(group), Word{}}; }

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const Word& word() const noexcept { return word_; }
  bool is_identity() const noexcept { return word_.is_identity(); }
  std::string str() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return shortlex_less(a.word_, b.word_);
  }

 private:
  GroupPtr group_;
  Word word_;
};

bool same_group(const Group& a, const Group& b) noexcept;

/// Parses whitespace-separated signed symbols such as "x y^-1 x^2" ("1" is
/// the identity). Throws UnknownGenerator.
GroupElement normalize(const GroupPtr& group, std::string_view symbols);
GroupElement normalize(const GroupPtr& group,
                       const std::vector<std::pair<std::string, std::int64_t>>& symbols);
GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupElement& a);
GroupElement conjugate(const GroupElement& a, const GroupElement& by);
std::vector<GroupElement> centralizer_generators(const GroupElement& gamma);
std::pair<GroupElement, std::int64_t> maximal_root(const GroupElement& g);

}  // namespace alink
