#pragma once

// Discrete semigroups: finite Cayley tables and a handful of enumerable
// built-in families, each with a product and a canonical enumeration.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ambit/error.hpp"

namespace ambit {

/// A word over a generator alphabet, stored as generator indices.
using Word = std::vector<std::uint32_t>;

/// Canonical element encoding: a natural number (table index, natural, or
/// zero-semigroup index) or a non-empty word. Ordering is numeric for numbers
/// and shortlex for words, so it agrees with every handle's enumeration.
class Element {
 public:
  Element() = default;

  static Element index(std::uint64_t value) { return Element(value); }
  static Element word(Word letters) { return Element(std::move(letters)); }

  bool is_word() const noexcept { return std::holds_alternative<Word>(rep_); }
  std::uint64_t as_index() const {
    if (is_word())
      throw Error(ErrorKind::InvalidElement, "word used where an index is expected");
    return std::get<std::uint64_t>(rep_);
  }
  const Word& as_word() const {
    if (!is_word())
      throw Error(ErrorKind::InvalidElement, "index used where a word is expected");
    return std::get<Word>(rep_);
  }

  friend bool operator==(const Element&, const Element&) = default;

  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (a.rep_.index() != b.rep_.index()) return a.rep_.index() <=> b.rep_.index();
    if (!a.is_word()) return std::get<std::uint64_t>(a.rep_) <=> std::get<std::uint64_t>(b.rep_);
    const Word& u = std::get<Word>(a.rep_);
    const Word& v = std::get<Word>(b.rep_);
    if (u.size() != v.size()) return u.size() <=> v.size();
    return std::lexicographical_compare_three_way(u.begin(), u.end(), v.begin(), v.end());
  }

 private:
  explicit Element(std::uint64_t v) : rep_(v) {}
  explicit Element(Word w) : rep_(std::move(w)) {}

  std::variant<std::uint64_t, Word> rep_{std::uint64_t{0}};
};

enum class SemigroupKind { CayleyTable, FreeWords, NatPlus, NatTimes, LeftZero, RightZero };

struct Counterexample {
  std::size_t x;
  std::size_t y;
  std::size_t z;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

using CayleyData = std::vector<std::vector<std::size_t>>;

/// Lexicographically first (x, y, z) with (xy)z != x(yz), or nullopt when the
/// table is associative. Throws MalformedTable for non-square tables or
/// out-of-range entries.
inline std::optional<Counterexample> check_associativity(const CayleyData& table) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::MalformedTable, "empty table");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw Error(ErrorKind::MalformedTable,
                  "row " + std::to_string(i) + " has " + std::to_string(table[i].size()) +
                      " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] >= n)
        throw Error(ErrorKind::MalformedTable,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                        std::to_string(table[i][j]) + " out of range");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (table[table[x][y]][z] != table[x][table[y][z]]) return Counterexample{x, y, z};
  return std::nullopt;
}

class Window;
class Enumerator;

/// Immutable semigroup handle. Copies are cheap to compare structurally;
/// measures share handles through SemigroupRef.
class Semigroup {
 public:
  static Semigroup cayley(std::vector<std::string> labels, CayleyData table) {
    if (auto bad = check_associativity(table))
      throw Error(ErrorKind::InvariantError,
                  "table is not associative at (" + std::to_string(bad->x) + "," +
                      std::to_string(bad->y) + "," + std::to_string(bad->z) + ")");
    if (labels.empty()) {
      for (std::size_t i = 0; i < table.size(); ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != table.size())
      throw Error(ErrorKind::MalformedTable, "label count does not match table size");
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i].empty() || std::find(labels.begin(), labels.begin() + i, labels[i]) !=
                                   labels.begin() + i)
        throw Error(ErrorKind::MalformedTable, "element labels must be distinct and non-empty");
    Semigroup s(SemigroupKind::CayleyTable);
    s.labels_ = std::move(labels);
    s.table_ = std::move(table);
    return s;
  }

  /// Z_n under addition mod n.
  static Semigroup cyclic_group(std::size_t n) {
    CayleyData t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return cayley({}, std::move(t));
  }

  /// Free semigroup (no empty word). Generators are distinct single characters.
  static Semigroup free_words(std::vector<std::string> generators) {
    if (generators.empty()) throw Error(ErrorKind::InvariantError, "free semigroup needs generators");
    std::set<std::string> seen;
    for (const auto& g : generators) {
      if (g.size() != 1)
        throw Error(ErrorKind::InvariantError, "generator '" + g + "' is not a single character");
      if (!seen.insert(g).second)
        throw Error(ErrorKind::InvariantError, "duplicate generator '" + g + "'");
    }
    Semigroup s(SemigroupKind::FreeWords);
    s.labels_ = std::move(generators);
    return s;
  }

  static Semigroup nat_plus() { return Semigroup(SemigroupKind::NatPlus); }
  static Semigroup nat_times() { return Semigroup(SemigroupKind::NatTimes); }

  /// size == nullopt means countably infinite.
  static Semigroup left_zero(std::optional<std::size_t> size) {
    return zero_law(SemigroupKind::LeftZero, size);
  }
  static Semigroup right_zero(std::optional<std::size_t> size) {
    return zero_law(SemigroupKind::RightZero, size);
  }

  SemigroupKind kind() const noexcept { return kind_; }

  /// Carrier size, nullopt for countably infinite carriers.
  std::optional<std::size_t> size() const noexcept {
    if (kind_ == SemigroupKind::CayleyTable) return table_.size();
    return size_;
  }
  bool is_finite() const noexcept { return size().has_value(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& generators() const noexcept { return labels_; }
  const CayleyData& table() const noexcept { return table_; }

  bool contains(const Element& x) const noexcept {
    switch (kind_) {
      case SemigroupKind::FreeWords: {
        if (!x.is_word()) return false;
        const Word& w = x.as_word();
        return !w.empty() &&
               std::all_of(w.begin(), w.end(), [&](auto g) { return g < labels_.size(); });
      }
      case SemigroupKind::CayleyTable:
        return !x.is_word() && x.as_index() < table_.size();
      case SemigroupKind::NatPlus:
      case SemigroupKind::NatTimes:
        return !x.is_word();
      case SemigroupKind::LeftZero:
      case SemigroupKind::RightZero:
        return !x.is_word() && (!size_ || x.as_index() < *size_);
    }
    return false;
  }

  void require(const Element& x) const {
    if (!contains(x))
      throw Error(ErrorKind::InvalidElement,
                  "element does not belong to " + describe());
  }

  Element product(const Element& x, const Element& y) const {
    require(x);
    require(y);
    switch (kind_) {
      case SemigroupKind::CayleyTable:
        return Element::index(table_[x.as_index()][y.as_index()]);
      case SemigroupKind::FreeWords: {
        Word w = x.as_word();
        const Word& v = y.as_word();
        w.insert(w.end(), v.begin(), v.end());
        return Element::word(std::move(w));
      }
      case SemigroupKind::NatPlus: {
        std::uint64_t r;
        if (__builtin_add_overflow(x.as_index(), y.as_index(), &r))
          throw Error(ErrorKind::InvalidElement, "natural sum overflows 64 bits");
        return Element::index(r);
      }
      case SemigroupKind::NatTimes: {
        std::uint64_t r;
        if (__builtin_mul_overflow(x.as_index(), y.as_index(), &r))
          throw Error(ErrorKind::InvalidElement, "natural product overflows 64 bits");
        return Element::index(r);
      }
      case SemigroupKind::LeftZero:
        return x;
      case SemigroupKind::RightZero:
        return y;
    }
    return x;
  }

  /// Serialised form: index/decimal for numeric carriers, generator string
  /// for words.
  std::string format(const Element& x) const {
    require(x);
    if (kind_ == SemigroupKind::CayleyTable) return labels_[x.as_index()];
    if (kind_ != SemigroupKind::FreeWords) return std::to_string(x.as_index());
    std::string out;
    for (auto g : x.as_word()) out += labels_[g];
    return out;
  }

  Element parse(std::string_view text) const {
    if (kind_ == SemigroupKind::FreeWords) {
      Word w;
      for (char c : text) {
        auto it = std::find(labels_.begin(), labels_.end(), std::string(1, c));
        if (it == labels_.end())
          throw Error(ErrorKind::InvalidElement,
                      "'" + std::string(text) + "' is not a word over the generators");
        w.push_back(static_cast<std::uint32_t>(it - labels_.begin()));
      }
      Element e = Element::word(std::move(w));
      require(e);
      return e;
    }
    if (kind_ == SemigroupKind::CayleyTable) {
      auto it = std::find(labels_.begin(), labels_.end(), text);
      if (it == labels_.end())
        throw Error(ErrorKind::InvalidElement, "'" + std::string(text) + "' is not an element label");
      return Element::index(static_cast<std::uint64_t>(it - labels_.begin()));
    }
    if (text.empty() || text.size() > 20 ||
        !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error(ErrorKind::InvalidElement, "'" + std::string(text) + "' is not a valid index");
    const std::uint64_t v = std::stoull(std::string(text));
    Element e = Element::index(v);
    require(e);
    return e;
  }

  std::string describe() const {
    switch (kind_) {
      case SemigroupKind::CayleyTable: return "cayley(" + std::to_string(table_.size()) + ")";
      case SemigroupKind::FreeWords: {
        std::string g;
        for (const auto& s : labels_) g += s;
        return "free(" + g + ")";
      }
      case SemigroupKind::NatPlus: return "nat-plus";
      case SemigroupKind::NatTimes: return "nat-times";
      case SemigroupKind::LeftZero:
        return "left-zero(" + (size_ ? std::to_string(*size_) : std::string("countable")) + ")";
      case SemigroupKind::RightZero:
        return "right-zero(" + (size_ ? std::to_string(*size_) : std::string("countable")) + ")";
    }
    return "?";
  }

  Enumerator enumeration() const;
  Window enumerate(std::size_t k) const;

  friend bool operator==(const Semigroup&, const Semigroup&) = default;

 private:
  explicit Semigroup(SemigroupKind kind) : kind_(kind) {}

  static Semigroup zero_law(SemigroupKind kind, std::optional<std::size_t> size) {
    if (size && *size == 0) throw Error(ErrorKind::InvariantError, "empty carrier");
    Semigroup s(kind);
    s.size_ = size;
    return s;
  }

  SemigroupKind kind_;
  std::vector<std::string> labels_;
  CayleyData table_;
  std::optional<std::size_t> size_;
};

using SemigroupRef = std::shared_ptr<const Semigroup>;

inline SemigroupRef share(Semigroup s) { return std::make_shared<const Semigroup>(std::move(s)); }

inline bool same_semigroup(const SemigroupRef& a, const SemigroupRef& b) {
  return a == b || (a && b && *a == *b);
}

/// Walks the canonical enumeration one element at a time.
class Enumerator {
 public:
  explicit Enumerator(const Semigroup& s) : s_(&s) {}

  /// Next element, or nullopt once a finite carrier is exhausted.
  std::optional<Element> next() {
    if (s_->kind() == SemigroupKind::FreeWords) {
      advance_word();
      ++count_;
      return Element::word(word_);
    }
    if (auto n = s_->size(); n && count_ >= *n) return std::nullopt;
    return Element::index(count_++);
  }

  std::uint64_t produced() const noexcept { return count_; }

 private:
  // Shortlex successor as a base-|A| counter; overflow moves to the next length.
  void advance_word() {
    const auto base = static_cast<std::uint32_t>(s_->generators().size());
    if (word_.empty()) {
      word_.assign(1, 0);
      return;
    }
    for (std::size_t i = word_.size(); i-- > 0;) {
      if (++word_[i] < base) return;
      word_[i] = 0;
    }
    word_.assign(word_.size() + 1, 0);
  }

  const Semigroup* s_;
  std::uint64_t count_ = 0;
  Word word_;
};

inline Enumerator Semigroup::enumeration() const { return Enumerator(*this); }

/// Finite ordered list of distinct elements.
class Window {
 public:
  Window() = default;

  explicit Window(std::vector<Element> elements, bool enumeration_prefix = false)
      : elements_(std::move(elements)), prefix_(enumeration_prefix) {
    for (const auto& e : elements_)
      if (!members_.insert(e).second)
        throw Error(ErrorKind::InvariantError, "window contains a duplicate element");
  }

  /// Window whose elements are checked against a handle.
  static Window of(const Semigroup& s, std::vector<Element> elements) {
    for (const auto& e : elements) s.require(e);
    return Window(std::move(elements));
  }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool is_enumeration_prefix() const noexcept { return prefix_; }
  bool contains(const Element& x) const { return members_.count(x) > 0; }

  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  void require_in(const Semigroup& s) const {
    for (const auto& e : elements_) s.require(e);
  }

  friend bool operator==(const Window& a, const Window& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Element> elements_;
  std::set<Element> members_;
  bool prefix_ = false;
};

/// First k elements of the canonical enumeration.
inline Window Semigroup::enumerate(std::size_t k) const {
  if (auto n = size(); n && k > *n)
    throw Error(ErrorKind::WindowTooLarge,
                "requested " + std::to_string(k) + " elements of a carrier of size " +
                    std::to_string(*n));
  Enumerator it(*this);
  std::vector<Element> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(*it.next());
  return Window(std::move(out), true);
}

}  // namespace ambit
