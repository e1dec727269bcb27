#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "cpgscan/cpg/builder.hpp"
#include "cpgscan/query/engine.hpp"
#include "fixtures.hpp"
#include "path_oracle.hpp"

using namespace cpgscan;
using namespace cpgscan::query;

namespace {

const char* kInjectionQuery = R"(from Call a, Call b, TaintFlow flow
where
  a.getFunction().equals("input") and
  b.getFunction().equals("exec") and
  flow.source(a).sink(b).exists()
select a, b, flow)";

CodeGraph graph_of(const std::string& src) { return extract_sources({{"t.c", src}}, {}).graph; }

Uid at_code(const CodeGraph& g, const std::string& code) {
  for (const auto& n : g.nodes())
    if (n.code == code) return n.uid;
  ADD_FAILURE() << "no statement " << code;
  return 0;
}

}  // namespace

TEST(Engine, InjectionQueryFindsThreeNodeWitness) {
  auto g = graph_of(fixtures::kInjection);
  auto rows = run_query(kInjectionQuery, Engine(g));
  ASSERT_EQ(rows.size(), 1u);
  const auto& w = std::get<FlowWitness>(*rows[0].get("flow"));
  EXPECT_EQ(w.path, (std::vector<Uid>{at_code(g, "char *x = input();"), at_code(g, "char *y = x;"), at_code(g, "exec(y);")}));
  EXPECT_EQ(w.kinds, (std::vector<EdgeKind>{EdgeKind::DFG, EdgeKind::DFG}));
  EXPECT_TRUE(w.must);
  EXPECT_EQ(std::get<Uid>(*rows[0].get("a")), w.path.front());
  EXPECT_EQ(std::get<Uid>(*rows[0].get("b")), w.path.back());
}

TEST(Engine, SanitizerBarrierRemovesOnlyPath) {
  auto g = graph_of("int main(void) {\n  char *x = input();\n  x = sanitize(x);\n  exec(x);\n  return 0;\n}\n");
  const char* q = R"(from Call a, Call b, Call c, TaintFlow flow
where a.getFunction().equals("input") and b.getFunction().equals("exec") and
  c.getFunction().equals("sanitize") and flow.source(a).sink(b).barrier(c).exists()
select a, b, flow)";
  EXPECT_TRUE(run_query(q, Engine(g)).empty());
  // Without the barrier the flow passes through the sanitizer.
  EXPECT_EQ(run_query(kInjectionQuery, Engine(g)).size(), 1u);
}

TEST(Engine, FilterMatchingNothingYieldsNoRows) {
  auto g = graph_of(fixtures::kInjection);
  EXPECT_TRUE(run_query(R"(from Call a where a.getFunction().equals("nothing") select a)", Engine(g)).empty());
  // An empty unselected binding empties the whole term.
  EXPECT_TRUE(run_query(R"(from Call a, Call b where b.getFunction().equals("nothing") select a)", Engine(g)).empty());
}

TEST(Engine, SelectOnlyEnumeratesContext) {
  auto g = graph_of(fixtures::kInjection);
  auto rows = run_query(R"(from Call a select a, "call")", Engine(g));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LT(std::get<Uid>(rows[0].values[0].second), std::get<Uid>(rows[1].values[0].second));
  EXPECT_EQ(std::get<std::string>(rows[0].values[1].second), "call");
}

TEST(Engine, DisjunctionIsUnion) {
  auto g = graph_of(fixtures::kInjection);
  auto rows =
      run_query(R"(from Call a where a.getFunction().equals("input") or a.getFunction().equals("exec") select a)", Engine(g));
  EXPECT_EQ(rows.size(), 2u);
}

TEST(Engine, CacheIsTransparent) {
  auto g = graph_of(fixtures::kInjection);
  GraphStore cached(g);
  StoreOptions off;
  off.cache_enabled = false;
  GraphStore uncached(g, off);
  auto plan = translate(parse_query(kInjectionQuery));
  auto a = Engine(cached).execute(plan);
  auto b = Engine(cached).execute(plan);
  auto c = Engine(uncached).execute(plan);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(Engine(g).execute(plan), a);
  EXPECT_GT(cached.cache().counters().hits, 0u);
}

TEST(Taint, DegenerateSourceEqualsSink) {
  auto g = graph_of(fixtures::kInjection);
  Uid n = at_code(g, "exec(y);");
  auto ws = taint_reachability({n}, {n}, {}, g);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].path, std::vector<Uid>{n});
  EXPECT_TRUE(ws[0].kinds.empty());
}

TEST(Taint, BarrierOnOnlyPath) {
  auto g = graph_of(fixtures::kInjection);
  Uid s = at_code(g, "char *x = input();"), b = at_code(g, "char *y = x;"), k = at_code(g, "exec(y);");
  EXPECT_EQ(taint_reachability({s}, {k}, {}, g).size(), 1u);
  EXPECT_TRUE(taint_reachability({s}, {k}, {b}, g).empty());
  EXPECT_TRUE(taint_reachability({}, {k}, {}, g).empty());
  // Depth cap of one hop is too short for the two-hop chain.
  EXPECT_TRUE(taint_reachability({s}, {k}, {}, g, 1).empty());
}

TEST(Taint, SinkBeforeSourceIsNotAFlow) {
  auto g = graph_of("int main(void) {\n  char *x = input();\n  exec(x);\n  x = input();\n  return 0;\n}\n");
  auto ws = taint_reachability({at_code(g, "x = input();")}, {at_code(g, "exec(x);")}, {}, g);
  EXPECT_TRUE(ws.empty());
}

TEST(Taint, AcrossFunctionsThroughParameter) {
  auto g = graph_of(
      "void run(char *cmd) {\n  exec(cmd);\n}\nint main(void) {\n  char *x = input();\n  run(x);\n  return 0;\n}\n");
  auto ws = taint_reachability({at_code(g, "char *x = input();")}, {at_code(g, "exec(cmd);")}, {}, g);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_FALSE(ws[0].must);
}

TEST(Taint, ConditionalSinkIsNotMust) {
  auto g = graph_of("int main(int c) {\n  char *x = input();\n  if (c) {\n    exec(x);\n  }\n  return 0;\n}\n");
  auto ws = taint_reachability({at_code(g, "char *x = input();")}, {at_code(g, "exec(x);")}, {}, g);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_FALSE(ws[0].must);
}

TEST(Resolve, AliasMergesToFirstDeclaration) {
  auto g = graph_of("int main(void) {\n  char *p = malloc(4);\n  char *q;\n  q = p;\n  free(p);\n  free(q);\n  return 0;\n}\n");
  Uid decl_p = at_code(g, "char *p = malloc(4);");
  EXPECT_EQ(resolve_declaration(at_code(g, "free(q);"), "q", g), decl_p);
  EXPECT_EQ(resolve_declaration(at_code(g, "free(p);"), "p", g), decl_p);
}

TEST(Resolve, DeclaringStatementItself) {
  auto g = graph_of(fixtures::kSquareProgram);
  Uid a = at_code(g, "int a = 2;");
  EXPECT_EQ(resolve_declaration(a, "a", g), a);
}

TEST(Resolve, SquareProgramPrintfUsesDeclarationOfB) {
  auto g = graph_of(fixtures::kSquareProgram);
  EXPECT_EQ(resolve_declaration(at_code(g, "printf(\"a + b = %d\", a + b);"), "b", g), at_code(g, "int b = a * a;"));
}

TEST(Resolve, ExternIsNoDeclaration) {
  auto g = graph_of("int main(void) {\n  x = 1;\n  return x;\n}\n");
  try {
    resolve_declaration(at_code(g, "x = 1;"), "x", g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoDeclaration);
  }
}

TEST(Resolve, ParameterDoesNotLeakIntoCaller) {
  auto g = graph_of("void f(char *p) {\n  free(p);\n}\nint main(void) {\n  char *p = malloc(1);\n  f(p);\n  return 0;\n}\n");
  Uid param = at_code(g, "char *p");
  EXPECT_EQ(resolve_declaration(at_code(g, "free(p);"), "p", g), param);
}

TEST(Predicates, Vocabulary) {
  auto g = graph_of("int main(void) {\n  char *p = malloc(10);\n  int a = 2;\n  free(p);\n  return 0;\n}\n");
  Uid m = at_code(g, "char *p = malloc(10);"), a = at_code(g, "int a = 2;"), f = at_code(g, "free(p);");
  EXPECT_TRUE(eval_node_predicate(contains_function_call("malloc"), m, g));
  EXPECT_FALSE(eval_node_predicate(contains_function_call("exec"), a, g));
  EXPECT_TRUE(eval_node_predicate({Subject::Code, Match::Regex, {"free\\("}, {}}, f, g));
  EXPECT_TRUE(eval_node_predicate({Subject::Function, Match::Contains, {"all"}, {}}, m, g));
  EXPECT_TRUE(eval_node_predicate({Subject::Line, Match::Between, {}, {2, 3}}, a, g));
  EXPECT_FALSE(eval_node_predicate({Subject::Line, Match::Between, {}, {5, 9}}, a, g));
  EXPECT_TRUE(eval_node_predicate({Subject::File, Match::Equals, {"t.c"}, {}}, a, g));
  EXPECT_THROW(eval_node_predicate({Subject::Code, Match::Regex, {"("}, {}}, a, g), Error);
}

TEST(ObjectFlow, DoubleFreeThroughAlias) {
  auto g = graph_of("int main(void) {\n  char *p = malloc(4);\n  char *q = p;\n  free(p);\n  free(q);\n  return 0;\n}\n");
  const char* q = R"(from Call f, Call g, TaintFlow df
where f.getFunction().equals("free") and g.getFunction().equals("free") and
  df.source(f).sink(g).sameObject().exists()
select f, g, df)";
  auto rows = run_query(q, Engine(g));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(std::get<Uid>(*rows[0].get("f")), at_code(g, "free(p);"));
  EXPECT_TRUE(std::get<FlowWitness>(*rows[0].get("df")).must);
}

TEST(ObjectFlow, LeakOnOnePathIsMaybe) {
  const char* q = R"(from Call m, Call f, TaintFlow leak
where m.getFunction().equals("malloc") and f.getFunction().equals("free") and
  leak.source(m).sink(f).sameObject().avoids()
select m, leak)";
  auto must = run_query(q, Engine(graph_of("int main(void) {\n  char *p = malloc(4);\n  return 0;\n}\n")));
  ASSERT_EQ(must.size(), 1u);
  EXPECT_TRUE(std::get<FlowWitness>(*must[0].get("leak")).must);
  auto maybe = run_query(
      q, Engine(graph_of("int main(int c) {\n  char *p = malloc(4);\n  if (c) {\n    free(p);\n  }\n  return 0;\n}\n")));
  ASSERT_EQ(maybe.size(), 1u);
  EXPECT_FALSE(std::get<FlowWitness>(*maybe[0].get("leak")).must);
  EXPECT_TRUE(run_query(q, Engine(graph_of("int main(void) {\n  char *p = malloc(4);\n  free(p);\n  return 0;\n}\n"))).empty());
}

using namespace cpgscan::test_support;

TEST(TaintOracle, MatchesPathEnumerationOnRandomGraphs) {
  std::mt19937_64 rng(4242);
  std::size_t compared = 0, skipped = 0, witnesses = 0;
  while (compared < 1200) {
    auto g = oracle_graph(rng);
    auto sources = sample(rng, g, 20), sinks = sample(rng, g, 20), barrier = sample(rng, g, 10);
    std::size_t cap = rng() % 3 == 0 ? 1 + rng() % 4 : 512;
    auto oracle = enumerate_paths(g, sources, sinks, barrier, cap);
    if (oracle.exhausted) {
      ++skipped;
      continue;
    }
    ++compared;
    auto ws = taint_reachability({sources.begin(), sources.end()}, {sinks.begin(), sinks.end()}, barrier, g, cap);
    std::map<std::pair<Uid, Uid>, std::size_t> got;
    for (const auto& w : ws) {
      ASSERT_FALSE(w.path.empty());
      ASSERT_EQ(w.kinds.size(), w.path.size() - 1);
      ASSERT_TRUE(sources.count(w.path.front()));
      ASSERT_TRUE(sinks.count(w.path.back()));
      for (std::size_t i = 0; i < w.path.size(); ++i) {
        ASSERT_FALSE(barrier.count(w.path[i]));
        if (i) ASSERT_TRUE(has_edge(g, w.path[i - 1], w.path[i], w.kinds[i - 1]));
      }
      std::set<Uid> distinct(w.path.begin(), w.path.end());
      ASSERT_EQ(distinct.size(), w.path.size());
      auto key = std::make_pair(w.path.front(), w.path.back());
      ASSERT_FALSE(got.count(key));
      got[key] = w.path.size() - 1;
      ASSERT_EQ(w.must, oracle.must.at(key)) << "must mismatch";
    }
    ASSERT_EQ(got, oracle.pairs) << "case " << compared;
    witnesses += ws.size();
  }
  EXPECT_GT(witnesses, 1000u);
  EXPECT_LT(skipped, 50u);
}

TEST(TaintOracle, BarrierMonotonicity) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    auto g = oracle_graph(rng);
    auto sources = sample(rng, g, 30), sinks = sample(rng, g, 30), barrier = sample(rng, g, 10);
    std::vector<Uid> s(sources.begin(), sources.end()), k(sinks.begin(), sinks.end());
    auto base = taint_reachability(s, k, barrier, g);
    auto more = barrier;
    for (Uid u : sample(rng, g, 10)) more.insert(u);
    auto fewer = taint_reachability(s, k, more, g);
    std::set<std::pair<Uid, Uid>> a, b;
    for (const auto& w : base) a.insert({w.path.front(), w.path.back()});
    for (const auto& w : fewer) b.insert({w.path.front(), w.path.back()});
    ASSERT_TRUE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST(ObjectFlow, LoopBetweenFreesStillMust) {
  auto g = graph_of(
      "int main(int c) {\n  char *p = malloc(4);\n  free(p);\n  while (c) {\n    c = c - 1;\n  }\n  free(p);\n  return 0;\n}\n");
  const char* q = R"(from Call f, Call g, TaintFlow df
where f.getFunction().equals("free") and g.getFunction().equals("free") and
  df.source(f).sink(g).sameObject().exists()
select f, df)";
  auto rows = run_query(q, Engine(g));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(std::get<FlowWitness>(*rows[0].get("df")).must);
}
