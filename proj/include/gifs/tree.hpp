#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gifs {

using Symbol = std::int64_t;
using Word = std::vector<Symbol>;

std::string format_word(const Word& w, char sep = ',');

/// Exact positive rational; parsed from decimal text such as "2.5" or from "p/q".
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  static Rational parse(const std::string& text);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

enum class TreeKind { Full, Product, SumBounded, Table };

std::string to_string(TreeKind kind);

/// Children rule for a symbolic tree over the alphabet of integers.
class TreeOracle {
 public:
  virtual ~TreeOracle() = default;
  virtual TreeKind kind() const = 0;
  /// Sorted, non-empty children of an absolute prefix that belongs to the tree.
  virtual std::vector<Symbol> children(const Word& prefix) const = 0;
  /// Whether `symbol` may follow `prefix`; prefix is assumed valid.
  virtual bool admits(const Word& prefix, Symbol symbol) const;
};

/// Shared tree oracle plus the root prefix of the (sub)tree it denotes.
class TreeHandle {
 public:
  static TreeHandle full(std::vector<Symbol> alphabet);
  /// Levels I_1, I_2, ...; after the listed levels the last `period` of them repeat.
  static TreeHandle product(std::vector<std::vector<Symbol>> levels, std::size_t period = 1);
  /// I_n = {n}: a single path that picks the n-th map at level n.
  static TreeHandle indexed_path();
  /// Words with every partial sum of the first k symbols below k * alpha.
  static TreeHandle sum_bounded(Rational alpha);
  /// Explicit children for prefixes shorter than depth, `fallback` beyond.
  static TreeHandle table(std::map<Word, std::vector<Symbol>> rows, std::size_t depth,
                          std::vector<Symbol> fallback);

  TreeKind kind() const { return oracle_->kind(); }
  const Word& root() const { return root_; }
  const TreeOracle& oracle() const { return *oracle_; }

  /// Children of a prefix given relative to the root.
  std::vector<Symbol> children(const Word& relative) const;
  /// 0 when the relative word stays in the tree, else the 1-based position of the first bad symbol.
  std::size_t first_invalid(const Word& relative) const;
  /// Tree rooted at root + relative; throws PrefixError if it leaves the tree.
  TreeHandle subtree(const Word& relative) const;
  /// Symbols appearing at relative level n >= 1.
  std::vector<Symbol> level_set(std::size_t n, std::size_t cap = 0) const;

  /// Parameters kept for serialization.
  struct Description {
    std::vector<Symbol> alphabet;
    std::vector<std::vector<Symbol>> levels;
    std::size_t period = 1;
    bool indexed = false;
    Rational alpha;
    std::map<Word, std::vector<Symbol>> rows;
    std::size_t depth = 0;
    std::vector<Symbol> fallback;
  };
  const Description& description() const { return *description_; }

 private:
  TreeHandle(std::shared_ptr<const TreeOracle> o, std::shared_ptr<const Description> d, Word root)
      : oracle_(std::move(o)), description_(std::move(d)), root_(std::move(root)) {}
  Word absolute(const Word& relative) const;

  std::shared_ptr<const TreeOracle> oracle_;
  std::shared_ptr<const Description> description_;
  Word root_;
};

/// Prefix-count cap for enumerations, honouring GIFS_PREFIX_CAP.
std::size_t default_prefix_cap();

/// Calls visit(prefix) for every relative prefix of length n, in lexicographic order.
void for_each_prefix(const TreeHandle& t, std::size_t n,
                     const std::function<void(const Word&)>& visit, std::size_t cap = 0);

/// All relative prefixes of length n in lexicographic order; n = 0 gives the empty word.
std::vector<Word> prefixes(const TreeHandle& t, std::size_t n, std::size_t cap = 0);

std::size_t prefix_count(const TreeHandle& t, std::size_t n, std::size_t cap = 0);

/// I_1, ..., I_n.
std::vector<std::vector<Symbol>> level_sets(const TreeHandle& t, std::size_t n, std::size_t cap = 0);

struct VariabilityReport {
  std::size_t count = 0;
  bool exact = false;  // false means count is a lower bound
};

/// Distinct subtrees among the prefixes of length n, compared through depth-d signatures.
VariabilityReport variability(const TreeHandle& t, std::size_t n, std::size_t d,
                              std::size_t cap = 0);

/// True when, for each k = 1..n, all prefixes of length k have the same children.
bool one_variable_check(const TreeHandle& t, std::size_t n, std::size_t cap = 0);

/// Children of the sum-bounded tree: b = 1..max with partial_sum + b < (length+1) alpha.
std::int64_t sum_bounded_max_child(const Rational& alpha, std::size_t length,
                                   std::int64_t partial_sum);

}  // namespace gifs
