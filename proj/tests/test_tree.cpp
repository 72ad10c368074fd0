#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "gifs/error.hpp"
#include "gifs/tree.hpp"

using namespace gifs;

namespace {

// Independent check: every partial sum of the first k symbols is strictly below k * alpha.
bool sum_ok(const Word& w, std::int64_t num, std::int64_t den) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] < 1) return false;
    s += w[k];
    if (s * den >= static_cast<std::int64_t>(k + 1) * num) return false;
  }
  return true;
}

std::vector<Word> brute_sum_bounded(std::size_t n, std::int64_t num, std::int64_t den) {
  const std::int64_t top = ((static_cast<std::int64_t>(n) + 1) * num + den - 1) / den;
  std::vector<Word> out;
  Word w(n, 1);
  while (true) {
    if (sum_ok(w, num, den)) out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] == top) w[--i] = 1;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

// Depth-d signature: all relative words of length <= d below the prefix.
std::vector<Word> signature(const TreeHandle& t, const Word& w, std::size_t d) {
  const TreeHandle sub = t.subtree(w);
  std::vector<Word> sig;
  for (std::size_t k = 1; k <= d; ++k) {
    auto p = prefixes(sub, k);
    sig.insert(sig.end(), p.begin(), p.end());
  }
  return sig;
}

}  // namespace

TEST_CASE("children of basic trees") {
  const auto full = TreeHandle::full({0, 1});
  CHECK(full.children({}) == std::vector<Symbol>{0, 1});
  CHECK(full.children({1, 0, 1}) == std::vector<Symbol>{0, 1});

  const auto t25 = TreeHandle::sum_bounded(Rational::parse("2.5"));
  CHECK(t25.children({}) == std::vector<Symbol>{1, 2});

  const auto t15 = TreeHandle::sum_bounded(Rational::parse("1.5"));
  CHECK(t15.children({1}) == std::vector<Symbol>{1});
}

TEST_CASE("invalid prefixes raise with the first bad position") {
  const auto t15 = TreeHandle::sum_bounded(Rational::parse("1.5"));
  try {
    (void)t15.children({1, 2, 1});
    FAIL("expected a prefix error");
  } catch (const PrefixError& e) {
    CHECK(e.position() == 2);
  }
  CHECK(t15.first_invalid({1, 1, 2}) == 0);
  CHECK(t15.first_invalid({2}) == 1);
  CHECK_THROWS_AS(TreeHandle::full({0, 1}).subtree({0, 2}), PrefixError);
}

TEST_CASE("prefix enumeration") {
  CHECK(prefixes(TreeHandle::full({0, 1}), 3).size() == 8);
  CHECK(prefixes(TreeHandle::sum_bounded(Rational::parse("1.5")), 3) ==
        std::vector<Word>{{1, 1, 1}, {1, 1, 2}});
  CHECK(prefixes(TreeHandle::product({{7}, {3, 5}}), 2) == std::vector<Word>{{7, 3}, {7, 5}});
}

TEST_CASE("enumeration cap is enforced") {
  CHECK_THROWS_AS(prefixes(TreeHandle::full({0, 1}), 12, 1000), CapExceededError);
}

TEST_CASE("sum-bounded prefixes match exhaustive filtering") {
  for (const auto& [num, den] : std::vector<std::pair<int, int>>{{3, 2}, {2, 1}, {5, 2}, {7, 3}}) {
    const auto t = TreeHandle::sum_bounded(Rational{num, den});
    for (std::size_t n = 1; n <= 5; ++n) CHECK(prefixes(t, n) == brute_sum_bounded(n, num, den));
  }
}

TEST_CASE("sub-trees") {
  const auto t = TreeHandle::sum_bounded(Rational::parse("2.5"));
  CHECK(t.subtree({}).children({}) == t.children({}));
  CHECK(t.subtree({2}).children({}) == std::vector<Symbol>{1, 2});
  CHECK(t.subtree({1}).subtree({2}).children({}) == t.subtree({1, 2}).children({}));
  CHECK(t.subtree({1}).subtree({2}).root() == Word{1, 2});
}

TEST_CASE("sub-tree coherence on random words") {
  std::mt19937_64 rng(3);
  const auto t = TreeHandle::sum_bounded(Rational::parse("2.5"));
  const auto words = prefixes(t, 5);
  for (int i = 0; i < 200; ++i) {
    const Word& w = words[rng() % words.size()];
    const std::size_t split = rng() % 6;
    const Word head(w.begin(), w.begin() + static_cast<long>(split));
    const Word tail(w.begin() + static_cast<long>(split), w.end());
    CHECK(t.children(w) == t.subtree(head).children(tail));
  }
}

TEST_CASE("product trees repeat their period") {
  const auto t = TreeHandle::product({{0}, {1, 2}, {3}}, 2);
  CHECK(t.level_set(1) == std::vector<Symbol>{0});
  CHECK(t.level_set(4) == std::vector<Symbol>{1, 2});
  CHECK(t.level_set(5) == std::vector<Symbol>{3});
  const auto path = TreeHandle::indexed_path();
  CHECK(prefixes(path, 3) == std::vector<Word>{{1, 2, 3}});
}

TEST_CASE("table trees use the fallback beyond their depth") {
  std::map<Word, std::vector<Symbol>> rows{{{}, {0, 1}}, {{0}, {0}}, {{1}, {0, 1}}};
  const auto t = TreeHandle::table(rows, 2, {0, 1});
  CHECK(prefixes(t, 2) == std::vector<Word>{{0, 0}, {1, 0}, {1, 1}});
  CHECK(prefix_count(t, 3) == 6);
}

TEST_CASE("variability") {
  CHECK(variability(TreeHandle::full({0, 1, 2}), 3, 2).count == 1);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto v = variability(TreeHandle::product({{0}, {1, 2}, {3, 4, 5}}), n, 2);
    CHECK(v.count == 1);
    CHECK(v.exact);
  }
  const auto t = TreeHandle::sum_bounded(Rational::parse("1.5"));
  for (std::size_t n = 1; n <= 4; ++n) {
    std::set<std::vector<Word>> sigs;
    for (const auto& w : prefixes(t, n)) sigs.insert(signature(t, w, 3));
    CHECK(variability(t, n, 3).count == sigs.size());
  }
  const auto t25 = TreeHandle::sum_bounded(Rational::parse("2.5"));
  std::set<std::vector<Word>> sigs;
  for (const auto& w : prefixes(t25, 3)) sigs.insert(signature(t25, w, 3));
  CHECK(variability(t25, 3, 3).count == sigs.size());
}

TEST_CASE("one-variable check") {
  CHECK(one_variable_check(TreeHandle::full({0, 1}), 4));
  CHECK(one_variable_check(TreeHandle::product({{0}, {1, 2}}), 4));
  CHECK_FALSE(one_variable_check(TreeHandle::sum_bounded(Rational::parse("2.5")), 2));
}

TEST_CASE("level sets match the union of children") {
  const std::vector<TreeHandle> trees{
      TreeHandle::full({0, 1}), TreeHandle::product({{0}, {1, 2}, {3}}, 2),
      TreeHandle::sum_bounded(Rational::parse("2.5")), TreeHandle::sum_bounded(Rational::parse("1.5")),
      TreeHandle::sum_bounded(Rational::parse("2.5")).subtree({1, 2}),
      TreeHandle::table({{{}, {0, 1}}, {{0}, {2}}, {{1}, {0}}}, 2, {5, 6})};
  for (const auto& t : trees) {
    for (std::size_t n = 1; n <= 5; ++n) {
      std::set<Symbol> expect;
      for (const auto& w : prefixes(t, n - 1)) {
        for (Symbol s : t.children(w)) expect.insert(s);
      }
      const auto got = t.level_set(n);
      CHECK(std::vector<Symbol>(expect.begin(), expect.end()) == got);
      for (const auto& w : prefixes(t, n)) CHECK(std::binary_search(got.begin(), got.end(), w[n - 1]));
    }
  }
}

TEST_CASE("prefix counts never shrink and levels decompose") {
  const auto t = TreeHandle::sum_bounded(Rational::parse("2.5"));
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(prefix_count(t, n + 1) >= prefix_count(t, n));
    std::vector<Word> built;
    for (const auto& w : prefixes(t, n)) {
      for (Symbol s : t.children(w)) {
        Word x = w;
        x.push_back(s);
        built.push_back(x);
      }
    }
    CHECK(built == prefixes(t, n + 1));
  }
}

TEST_CASE("rationals parse exactly") {
  CHECK(Rational::parse("2.5") == Rational{5, 2});
  CHECK(Rational::parse("1.2") == Rational{6, 5});
  CHECK(Rational::parse("7/3") == Rational{7, 3});
  CHECK(Rational::parse("20") == Rational{20, 1});
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("-1"));
}
