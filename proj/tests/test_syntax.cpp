#include <map>
#include <random>

#include "doctest.h"
#include "simscore/dataflow.hpp"
#include "simscore/error.hpp"
#include "simscore/lexer.hpp"
#include "simscore/parser.hpp"
#include "simscore/subtree.hpp"
#include "simscore/syntax_tree.hpp"
#include "simscore/tree_edit_distance.hpp"

#include "oracles.hpp"

using namespace simscore;

namespace {

// Consistent identifier renaming at the token level.
std::string rename_identifiers(const std::string& src, std::mt19937_64& rng) {
  std::map<std::string, std::string> names;
  std::string out;
  for (const auto& t : tokenize_text(src, {"java", false})) {
    if (t.kind == TokenKind::kIdentifier) {
      auto it = names.find(t.text);
      if (it == names.end()) it = names.emplace(t.text, "id" + std::to_string(rng() % 100000) + "_" + std::to_string(names.size())).first;
      out += it->second;
    } else {
      out += t.text;
    }
    out += ' ';
  }
  return out;
}

}  // namespace

TEST_CASE("parse produces concrete trees") {
  const auto t = parse_source("class A{}");
  CHECK(t.root().kind == "program");
  CHECK(t.size() >= 3);
  CHECK_FALSE(t.has_errors());
  CHECK(t.to_sexp() == "(program (class_declaration class identifier (class_body { })))");

  const auto empty = parse_source("");
  CHECK(empty.size() == 1);
  CHECK(empty.degenerate());

  const auto broken = parse_source("int x = ;");
  CHECK(broken.has_errors());
  CHECK(broken.to_sexp().find("ERROR") != std::string::npos);

  CHECK_THROWS_AS(parse_source("))) ((( ]]] ;;; ))) ((( ]]] ;;;", "junk"), ParseFailure);
  try {
    parse_source("))) ((( ]]] ;;; ))) ((( ]]] ;;;", "junk");
  } catch (const ParseFailure& e) {
    CHECK(e.fragment_id() == "junk");
  }
}

TEST_CASE("parser covers common Java constructs without errors") {
  const char* sources[] = {
      "package p; import java.util.*; public final class A<T extends Comparable<T>> implements Runnable {"
      " private static final int[] XS = {1, 2, 3}; @Override public void run() { } }",
      "interface I { default int f(int... xs) { return xs.length; } }",
      "enum Color { RED, GREEN(2) { }, BLUE; Color() {} Color(int x) {} }",
      "record P(int x, int y) { P { if (x < 0) throw new IllegalArgumentException(); } }",
      "class A { void f(Object o) { switch (o.hashCode()) { case 1 -> g(); case 2, 3 -> { h(); } default -> { } } } }",
      "class A { int f(int k) { return switch (k) { case 1: yield 10; default: yield 0; }; } }",
      "class A { void f() { outer: for (int i = 0, j = 9; i < j; i++, j--) { if (i % 2 == 0) continue outer; else break; } } }",
      "class A { void f(java.util.List<String> xs) { xs.stream().map(String::trim).filter(s -> !s.isEmpty())"
      ".forEach(System.out::println); } }",
      "class A { void f() { int[][] g = new int[3][]; Object o = (Runnable) () -> {}; if (o instanceof Runnable r) r.run(); } }",
      "class A { void f() { do { x <<= 1; } while (x < 100 && y >= 2 ? true : false); synchronized (this) { assert x > 0 : \"m\"; } } }",
      "class A { void f() { try { g(); } catch (IOException | RuntimeException e) { } finally { h(); } } }",
      "@interface Ann { String value() default \"x\"; } class B { @Ann(\"y\") void f() { new Object() { int z; }; } }",
      "class G { <T> List<? super T> f(Map<String, List<Integer>> m) { return new ArrayList<>(); } }",
  };
  for (const char* src : sources) {
    INFO(src);
    const auto t = parse_source(src);
    CHECK_FALSE(t.has_errors());
  }
}

TEST_CASE("generated programs parse cleanly") {
  oracle::JavaGenerator gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto src = gen.program();
    INFO(src);
    CHECK_FALSE(parse_source(src).has_errors());
  }
}

TEST_CASE("bracket notation round trip") {
  const auto t = SyntaxTree::from_bracket("{root{a}{b{c}}}");
  CHECK(t.size() == 4);
  CHECK(t.to_bracket() == "{root{a}{b{c}}}");
  CHECK(t.subtree_size(0) == 4);
  CHECK(t.subtree_size(2) == 2);
  CHECK_THROWS_AS(SyntaxTree::from_bracket("{a{b}"), ArgumentError);
  CHECK(t.truncated(2).to_bracket() == "{root{a}}");
  CHECK(t.truncated(3).to_bracket() == "{root{a}{b}}");
}

TEST_CASE("subtree multisets") {
  const auto single = SyntaxTree::from_bracket("{x}");
  for (int d = 1; d <= 4; ++d) CHECK(multiset_size(subtree_multiset(single, d)) == 1);

  const auto t = SyntaxTree::from_bracket("{root{a}{b}}");
  CHECK(subtree_multiset(t, 1) == StringMultiset{{"root", 1}, {"a", 1}, {"b", 1}});
  CHECK(subtree_multiset(t, 2) == StringMultiset{{"(root a b)", 1}, {"a", 1}, {"b", 1}});
  const auto deep = SyntaxTree::from_bracket("{r{x{y{z}}}}");
  CHECK(subtree_encoding(deep, 0, 3) == "(r (x y))");
  CHECK_THROWS_AS(subtree_multiset(t, 0), ArgumentError);

  oracle::JavaGenerator gen(9);
  for (int i = 0; i < 50; ++i) {
    const auto src = gen.program();
    const auto tree = parse_source(src);
    CHECK(subtree_multiset(tree, 3) == subtree_multiset(parse_source(src), 3));
    CHECK(multiset_size(subtree_multiset(tree, 3)) == tree.size());
  }
}

TEST_CASE("dataflow graphs") {
  const auto g = dataflow_graph(parse_source("int a=1; int b=a;"));
  CHECK(g.edges().count("comesFrom(var_0;var_0)") == 1);
  CHECK(g.edges().count("computedFrom(var_1;var_0)") == 1);
  CHECK(g.size() >= 1);

  CHECK(dataflow_graph(parse_source("class A { }")).empty());
  CHECK(dataflow_graph(parse_source("")).empty());

  const auto h = dataflow_graph(parse_source("class A { int f(int a) { int b = a + 1; b += a; return b; } }"));
  CHECK(h.edges() == StringMultiset{{"comesFrom(var_0;var_0)", 2},
                                     {"comesFrom(var_1;var_1)", 2},
                                     {"computedFrom(var_1;var_0)", 1},
                                     {"computedFrom(var_1;var_0,var_1)", 1}});

  // Scoping: the inner declaration shadows nothing outside its block.
  const auto s = dataflow_graph(parse_source("void f() { { int x = 1; } int y = x; }"));
  CHECK(s.edges().count("comesFrom(var_0;var_0)") == 0);
}

TEST_CASE("dataflow graph is invariant under consistent renaming") {
  oracle::JavaGenerator gen(21);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 150; ++i) {
    const auto src = gen.program();
    const auto renamed = rename_identifiers(src, rng);
    INFO(src);
    CHECK(dataflow_graph(parse_source(src)).edges() == dataflow_graph(parse_source(renamed)).edges());
  }
}

TEST_CASE("tree edit distance examples") {
  const auto a = SyntaxTree::from_bracket("{a}");
  const auto b = SyntaxTree::from_bracket("{b}");
  const auto ab = SyntaxTree::from_bracket("{a{b}}");
  CHECK(tree_edit_distance(a, a) == 0);
  CHECK(tree_edit_distance(a, b) == 1);
  CHECK(tree_edit_distance(ab, a) == 1);
  const auto t1 = SyntaxTree::from_bracket("{f{d{a}{c{b}}}{e}}");
  const auto t2 = SyntaxTree::from_bracket("{f{c{d{a}{b}}}{e}}");
  CHECK(tree_edit_distance(t1, t2) == 2);  // the textbook Zhang-Shasha pair
  CHECK(tree_edit_distance(t1, t2, {1, 1, 1}) == oracle::tree_edit_distance(t1, t2));
  CHECK_THROWS_AS(tree_edit_distance(a, b, {-1, 1, 1}), ArgumentError);
}

TEST_CASE("tree edit distance matches the mapping oracle") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> labels{"a", "b", "c"};
  for (int trial = 0; trial < 300; ++trial) {
    const auto s1 = oracle::random_bracket_tree(rng, 1 + rng() % 7, labels);
    const auto s2 = oracle::random_bracket_tree(rng, 1 + rng() % 7, labels);
    const auto t1 = SyntaxTree::from_bracket(s1), t2 = SyntaxTree::from_bracket(s2);
    INFO(s1 << " vs " << s2);
    CHECK(tree_edit_distance(t1, t2) == oracle::tree_edit_distance(t1, t2));
    const EditCostTable costs{0.5, 2.0, 1.25};
    CHECK(tree_edit_distance(t1, t2, costs) == doctest::Approx(oracle::tree_edit_distance(t1, t2, 0.5, 2.0, 1.25)));
  }
}

TEST_CASE("tree edit distance properties") {
  std::mt19937_64 rng(29);
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  for (int trial = 0; trial < 200; ++trial) {
    const auto t1 = SyntaxTree::from_bracket(oracle::random_bracket_tree(rng, 1 + rng() % 8, labels));
    const auto t2 = SyntaxTree::from_bracket(oracle::random_bracket_tree(rng, 1 + rng() % 8, labels));
    const auto t3 = SyntaxTree::from_bracket(oracle::random_bracket_tree(rng, 1 + rng() % 8, labels));
    const double d12 = tree_edit_distance(t1, t2), d21 = tree_edit_distance(t2, t1);
    CHECK(d12 == d21);
    CHECK(tree_edit_distance(t1, t3) <= d12 + tree_edit_distance(t2, t3));
    CHECK(d12 <= double(t1.size() + t2.size()));
    CHECK(tree_edit_distance(t1, t1) == 0);
  }
}

TEST_CASE("tree edit distance enforces the node cap") {
  const auto big = SyntaxTree::from_bracket("{a{b}{c}{d}{e}}");
  const auto small = SyntaxTree::from_bracket("{a}");
  CHECK_THROWS_AS(tree_edit_distance(big, small, {}, 4), CapacityError);
  CHECK(tree_edit_distance(big, small, {}, 5) == 4);
  CHECK(tree_edit_distance(big, small, {}, 0) == 4);
}
