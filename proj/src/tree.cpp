#include "gifs/tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>

#include "gifs/error.hpp"

namespace gifs {

std::string format_word(const Word& w, char sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(w[i]);
  }
  return out;
}

Rational Rational::parse(const std::string& text) {
  auto fail = [&]() -> Rational { throw ArgumentError("not a positive rational: '" + text + "'"); };
  if (text.empty()) return fail();
  std::int64_t num = 0;
  std::int64_t den = 1;
  const auto slash = text.find('/');
  auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (slash != std::string::npos) {
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    if (!digits_only(a) || !digits_only(b) || a.size() > 15 || b.size() > 15) return fail();
    num = std::stoll(a);
    den = std::stoll(b);
  } else {
    const auto dot = text.find('.');
    std::string whole = text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits_only(whole) || (!frac.empty() && !digits_only(frac)) ||
        (dot != std::string::npos && frac.empty()) || whole.size() + frac.size() > 15) {
      return fail();
    }
    num = std::stoll(whole + frac);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (num <= 0 || den <= 0) return fail();
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::Full: return "full";
    case TreeKind::Product: return "product";
    case TreeKind::SumBounded: return "sum-bounded";
    case TreeKind::Table: return "table";
  }
  return "unknown";
}

bool TreeOracle::admits(const Word& prefix, Symbol symbol) const {
  const auto kids = children(prefix);
  return std::binary_search(kids.begin(), kids.end(), symbol);
}

__extension__ using Wide = __int128;

std::int64_t sum_bounded_max_child(const Rational& alpha, std::size_t length,
                                   std::int64_t partial_sum) {
  // largest b with (partial_sum + b) * den < (length + 1) * num
  const Wide room = static_cast<Wide>(length + 1) * alpha.num -
                        static_cast<Wide>(partial_sum) * alpha.den - 1;
  if (room < 0) return 0;
  const Wide b = room / alpha.den;
  return b > std::numeric_limits<std::int64_t>::max() ? std::numeric_limits<std::int64_t>::max()
                                                       : static_cast<std::int64_t>(b);
}

namespace {

std::vector<Symbol> normalized(std::vector<Symbol> s, const char* what) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw ArgumentError(std::string(what) + " must not be empty");
  return s;
}

class FullOracle final : public TreeOracle {
 public:
  explicit FullOracle(std::vector<Symbol> a) : alphabet_(std::move(a)) {}
  TreeKind kind() const override { return TreeKind::Full; }
  std::vector<Symbol> children(const Word&) const override { return alphabet_; }

 private:
  std::vector<Symbol> alphabet_;
};

class ProductOracle final : public TreeOracle {
 public:
  explicit ProductOracle(std::function<std::vector<Symbol>(std::size_t)> level)
      : level_(std::move(level)) {}
  TreeKind kind() const override { return TreeKind::Product; }
  std::vector<Symbol> children(const Word& prefix) const override { return level_(prefix.size() + 1); }
  bool admits(const Word& prefix, Symbol s) const override {
    const auto lv = level_(prefix.size() + 1);
    return std::binary_search(lv.begin(), lv.end(), s);
  }

 private:
  std::function<std::vector<Symbol>(std::size_t)> level_;
};

class SumBoundedOracle final : public TreeOracle {
 public:
  explicit SumBoundedOracle(Rational alpha) : alpha_(alpha) {}
  TreeKind kind() const override { return TreeKind::SumBounded; }
  std::vector<Symbol> children(const Word& prefix) const override {
    const std::int64_t top = max_child(prefix);
    std::vector<Symbol> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(top, 0)));
    for (std::int64_t b = 1; b <= top; ++b) out.push_back(b);
    return out;
  }
  bool admits(const Word& prefix, Symbol s) const override { return s >= 1 && s <= max_child(prefix); }
  std::int64_t max_child(const Word& prefix) const {
    const std::int64_t sum = std::accumulate(prefix.begin(), prefix.end(), std::int64_t{0});
    return sum_bounded_max_child(alpha_, prefix.size(), sum);
  }

 private:
  Rational alpha_;
};

class TableOracle final : public TreeOracle {
 public:
  TableOracle(std::map<Word, std::vector<Symbol>> rows, std::size_t depth,
              std::vector<Symbol> fallback)
      : rows_(std::move(rows)), depth_(depth), fallback_(std::move(fallback)) {}
  TreeKind kind() const override { return TreeKind::Table; }
  std::vector<Symbol> children(const Word& prefix) const override {
    if (prefix.size() >= depth_) return fallback_;
    const auto it = rows_.find(prefix);
    if (it == rows_.end()) throw PrefixError("prefix has no table row", prefix.size());
    return it->second;
  }

 private:
  std::map<Word, std::vector<Symbol>> rows_;
  std::size_t depth_;
  std::vector<Symbol> fallback_;
};

}  // namespace

TreeHandle TreeHandle::full(std::vector<Symbol> alphabet) {
  auto d = std::make_shared<Description>();
  d->alphabet = normalized(std::move(alphabet), "alphabet");
  return TreeHandle(std::make_shared<FullOracle>(d->alphabet), d, {});
}

TreeHandle TreeHandle::product(std::vector<std::vector<Symbol>> levels, std::size_t period) {
  if (levels.empty()) throw ArgumentError("product tree needs at least one level");
  if (period == 0 || period > levels.size()) throw ArgumentError("product period must be in [1, #levels]");
  for (auto& lv : levels) lv = normalized(std::move(lv), "product level");
  auto d = std::make_shared<Description>();
  d->levels = levels;
  d->period = period;
  const std::size_t count = levels.size();
  const std::size_t start = count - period;
  auto level = [levels = std::move(levels), count, start, period](std::size_t n) {
    const std::size_t i = n - 1;
    return i < count ? levels[i] : levels[start + (i - start) % period];
  };
  return TreeHandle(std::make_shared<ProductOracle>(std::move(level)), d, {});
}

TreeHandle TreeHandle::indexed_path() {
  auto d = std::make_shared<Description>();
  d->indexed = true;
  auto level = [](std::size_t n) { return std::vector<Symbol>{static_cast<Symbol>(n)}; };
  return TreeHandle(std::make_shared<ProductOracle>(std::move(level)), d, {});
}

TreeHandle TreeHandle::sum_bounded(Rational alpha) {
  if (alpha.num <= alpha.den) throw ArgumentError("sum-bounded tree needs alpha > 1");
  auto d = std::make_shared<Description>();
  d->alpha = alpha;
  return TreeHandle(std::make_shared<SumBoundedOracle>(alpha), d, {});
}

TreeHandle TreeHandle::table(std::map<Word, std::vector<Symbol>> rows, std::size_t depth,
                             std::vector<Symbol> fallback) {
  fallback = normalized(std::move(fallback), "table default children");
  for (auto& [prefix, kids] : rows) {
    if (prefix.size() >= depth) throw ArgumentError("table row deeper than the table depth");
    kids = normalized(std::move(kids), "table row");
  }
  auto d = std::make_shared<Description>();
  d->rows = rows;
  d->depth = depth;
  d->fallback = fallback;
  // every reachable prefix above the table depth needs a row
  std::vector<Word> frontier{Word{}};
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      const auto it = rows.find(w);
      if (it == rows.end()) {
        throw ArgumentError("table has no row for reachable prefix [" + format_word(w) + "]");
      }
      for (Symbol s : it->second) {
        Word child = w;
        child.push_back(s);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return TreeHandle(std::make_shared<TableOracle>(std::move(rows), depth, std::move(fallback)), d, {});
}

Word TreeHandle::absolute(const Word& relative) const {
  Word w = root_;
  w.insert(w.end(), relative.begin(), relative.end());
  return w;
}

std::vector<Symbol> TreeHandle::children(const Word& relative) const {
  if (const std::size_t bad = first_invalid(relative)) {
    throw PrefixError("word leaves the tree at position " + std::to_string(bad), bad);
  }
  return oracle_->children(absolute(relative));
}

std::size_t TreeHandle::first_invalid(const Word& relative) const {
  Word w = root_;
  for (std::size_t i = 0; i < relative.size(); ++i) {
    if (!oracle_->admits(w, relative[i])) return i + 1;
    w.push_back(relative[i]);
  }
  return 0;
}

TreeHandle TreeHandle::subtree(const Word& relative) const {
  if (const std::size_t bad = first_invalid(relative)) {
    throw PrefixError("word leaves the tree at position " + std::to_string(bad), bad);
  }
  return TreeHandle(oracle_, description_, absolute(relative));
}

std::size_t default_prefix_cap() {
  if (const char* env = std::getenv("GIFS_PREFIX_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

namespace {

void walk(const TreeHandle& t, Word& abs, std::size_t root_len, std::size_t n,
          const std::function<void(const Word&)>& visit, std::size_t& count, std::size_t cap,
          Word& rel) {
  if (rel.size() == n) {
    if (++count > cap) throw CapExceededError("prefix enumeration exceeded its cap", count, 0.0);
    visit(rel);
    return;
  }
  for (Symbol s : t.oracle().children(abs)) {
    abs.push_back(s);
    rel.push_back(s);
    walk(t, abs, root_len, n, visit, count, cap, rel);
    rel.pop_back();
    abs.pop_back();
  }
}

}  // namespace

void for_each_prefix(const TreeHandle& t, std::size_t n,
                     const std::function<void(const Word&)>& visit, std::size_t cap) {
  if (cap == 0) cap = default_prefix_cap();
  Word abs = t.root();
  Word rel;
  std::size_t count = 0;
  walk(t, abs, t.root().size(), n, visit, count, cap, rel);
}

std::vector<Word> prefixes(const TreeHandle& t, std::size_t n, std::size_t cap) {
  std::vector<Word> out;
  for_each_prefix(t, n, [&](const Word& w) { out.push_back(w); }, cap);
  return out;
}

std::size_t prefix_count(const TreeHandle& t, std::size_t n, std::size_t cap) {
  std::size_t count = 0;
  for_each_prefix(t, n, [&](const Word&) { ++count; }, cap);
  return count;
}

std::vector<Symbol> TreeHandle::level_set(std::size_t n, std::size_t cap) const {
  if (n == 0) throw ArgumentError("levels are numbered from 1");
  const std::size_t depth = root_.size() + n - 1;  // absolute length of the parents
  switch (kind()) {
    case TreeKind::Full:
      return description_->alphabet;
    case TreeKind::Product:
      return oracle_->children(Word(depth, 0));
    case TreeKind::SumBounded: {
      // the all-ones continuation has the smallest partial sum, hence the largest child set
      Word w = root_;
      w.resize(depth, 1);
      return oracle_->children(w);
    }
    case TreeKind::Table:
      break;
  }
  std::set<Symbol> seen;
  for_each_prefix(
      *this, n - 1,
      [&](const Word& w) {
        for (Symbol s : children(w)) seen.insert(s);
      },
      cap);
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<Symbol>> level_sets(const TreeHandle& t, std::size_t n, std::size_t cap) {
  std::vector<std::vector<Symbol>> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(t.level_set(k, cap));
  return out;
}

VariabilityReport variability(const TreeHandle& t, std::size_t n, std::size_t d, std::size_t cap) {
  std::set<std::vector<Word>> signatures;
  for_each_prefix(
      t, n, [&](const Word& w) { signatures.insert(prefixes(t.subtree(w), d, cap)); }, cap);
  VariabilityReport r;
  r.count = signatures.size();
  switch (t.kind()) {
    case TreeKind::Full:
    case TreeKind::Product:
      r.exact = true;
      break;
    case TreeKind::SumBounded:
      // equal partial sums give identical subtrees, different sums differ at the first level
      r.exact = d >= 1;
      break;
    case TreeKind::Table:
      r.exact = t.root().size() + n + d >= t.description().depth;
      break;
  }
  return r;
}

bool one_variable_check(const TreeHandle& t, std::size_t n, std::size_t cap) {
  for (std::size_t k = 1; k <= n; ++k) {
    bool first = true;
    bool same = true;
    std::vector<Symbol> reference;
    for_each_prefix(
        t, k,
        [&](const Word& w) {
          if (!same) return;
          auto kids = t.children(w);
          if (first) {
            reference = std::move(kids);
            first = false;
          } else if (kids != reference) {
            same = false;
          }
        },
        cap);
    if (!same) return false;
  }
  return true;
}

}  // namespace gifs
