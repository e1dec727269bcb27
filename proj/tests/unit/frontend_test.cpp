#include <gtest/gtest.h>

#include <random>

#include "cpgscan/minic/lexer.hpp"
#include "cpgscan/minic/lower.hpp"
#include "cpgscan/minic/parser.hpp"
#include "fixtures.hpp"

using namespace cpgscan;
using namespace cpgscan::minic;

namespace {

LoweredUnit lower_text(const std::string& src, Uid base = 0) {
  auto toks = tokenize(src, "t.c");
  return lower(parse(toks, "t.c"), src, base);
}

const UnifiedStatement& find_code(const LoweredUnit& u, const std::string& code) {
  for (const auto& fn : u.functions)
    for (const auto& s : fn.statements)
      if (s.code == code) return s;
  throw std::runtime_error("no statement " + code);
}

// Independent counter over the token stream: ';' at paren depth 0, control
// headers, declarator commas, and Entry/Exit plus parameters per function.
std::size_t count_statements(const std::vector<Token>& toks) {
  std::size_t count = 0;
  int parens = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.is_punct("(")) ++parens;
    if (t.is_punct(")")) --parens;
    if (parens == 0 && (t.is_punct(";") || t.is_punct(","))) ++count;
    if (t.is_keyword("if") || t.is_keyword("while")) ++count;
    if (t.is_punct("{") && i > 0 && toks[i - 1].is_punct(")")) {
      // Walk back over the parameter list of what may be a function header.
      std::size_t j = i - 1;
      int depth = 0;
      std::size_t commas = 0;
      bool empty = true, is_void = false;
      while (true) {
        if (toks[j].is_punct(")")) ++depth;
        else if (toks[j].is_punct("(")) --depth;
        else if (depth == 1 && toks[j].is_punct(",")) ++commas;
        if (depth == 0) break;
        --j;
      }
      if (j == 0 || toks[j - 1].kind != TokenKind::Identifier) continue;
      if (j >= 2 && (toks[j - 2].is_keyword("if") || toks[j - 2].is_keyword("while"))) continue;
      empty = j + 1 == i - 1;
      is_void = j + 2 == i - 1 && toks[j + 1].is_keyword("void");
      count += 2 + ((empty || is_void) ? 0 : commas + 1);
    }
  }
  return count;
}

}  // namespace

TEST(Lexer, SimpleDeclaration) {
  auto toks = tokenize("int a = 2;", "t.c");
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_TRUE(toks[0].is_keyword("int"));
  EXPECT_EQ(toks[1].text, "a");
  EXPECT_TRUE(toks[2].is_punct("="));
  EXPECT_EQ(toks[3].kind, TokenKind::IntLiteral);
  EXPECT_TRUE(toks[4].is_punct(";"));
}

TEST(Lexer, EmptyInput) { EXPECT_TRUE(tokenize("", "t.c").empty()); }

TEST(Lexer, SubtractionStatementHasSixTokens) { EXPECT_EQ(tokenize("b = b - a;", "t.c").size(), 6u); }

TEST(Lexer, IllegalCharacterCarriesSpan) {
  try {
    tokenize("int a;\n  @", "t.c");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.where().line, 2);
    EXPECT_EQ(e.where().col, 3);
    EXPECT_EQ(e.code(), ErrorCode::Lex);
  }
}

TEST(Lexer, TokensAndSkippedTextReproduceSource) {
  const std::string& src = fixtures::kSquareProgram;
  auto toks = tokenize(src, "t.c");
  std::size_t pos = 0;
  for (const auto& t : toks) {
    ASSERT_GE(t.offset, pos);
    EXPECT_EQ(src.substr(t.offset, t.text.size()), t.text);
    pos = t.offset + t.text.size();
  }
}

TEST(Lexer, LongestMatchOperators) {
  auto toks = tokenize("a==b&&c!=d||e<=f", "t.c");
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"a", "==", "b", "&&", "c", "!=", "d", "||", "e", "<=", "f"}));
}

TEST(Parser, SquareProgramHasSixBodyStatements) {
  auto tu = parse(tokenize(fixtures::kSquareProgram, "t.c"), "t.c");
  ASSERT_EQ(tu.children.size(), 1u);
  const auto& fn = tu.children[0];
  EXPECT_EQ(fn.kind, AstKind::FunctionDef);
  EXPECT_EQ(fn.text, "main");
  const auto& body = fn.children.back();
  EXPECT_EQ(body.kind, AstKind::Block);
  EXPECT_EQ(body.children.size(), 5u);  // decl, decl, if, printf, return
  // The if counts its one body statement: 6 statements in the body overall.
  std::size_t total = 0;
  for (const auto& s : body.children) total += 1 + (s.kind == AstKind::If ? s.children[1].children.size() : 0);
  EXPECT_EQ(total, 6u);
}

TEST(Parser, EmptyFunctionBody) {
  auto tu = parse(tokenize("int f(){}", "t.c"), "t.c");
  ASSERT_EQ(tu.children.size(), 1u);
  EXPECT_EQ(tu.children[0].children.back().kind, AstKind::Block);
  EXPECT_TRUE(tu.children[0].children.back().children.empty());
}

TEST(Parser, IfWithPredicateAndBlock) {
  auto tu = parse(tokenize("int f(int a, int b){ if (b > a) { b = b - a; } }", "t.c"), "t.c");
  const auto& iff = tu.children[0].children.back().children[0];
  ASSERT_EQ(iff.kind, AstKind::If);
  EXPECT_EQ(iff.children[0].kind, AstKind::BinaryOp);
  EXPECT_EQ(iff.children[0].text, ">");
  EXPECT_EQ(iff.children[1].kind, AstKind::Block);
  EXPECT_EQ(iff.children[1].children.size(), 1u);
}

TEST(Parser, RecoversAndReportsSeveralErrors) {
  try {
    parse(tokenize("int f() { a = ; b = 1; c = ) ; }", "t.c"), "t.c");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostics().size(), 2u);
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_FALSE(e.diagnostics()[0].expected.empty());
  }
}

TEST(Parser, SpansAreNested) {
  auto tu = parse(tokenize(fixtures::kSquareProgram, "t.c"), "t.c");
  std::function<void(const MiniCAst&)> check = [&](const MiniCAst& n) {
    for (const auto& c : n.children) {
      EXPECT_GE(c.begin, n.begin);
      EXPECT_LE(c.end, n.end);
      check(c);
    }
    if (n.is_leaf()) {
      EXPECT_TRUE(n.children.empty());
    }
  };
  check(tu);
}

TEST(Lower, DeclarationDefsAndUses) {
  auto u = lower_text("int f(int a){ int b = a * a; return b; }");
  const auto& s = find_code(u, "int b = a * a;");
  EXPECT_EQ(s.defs, std::vector<std::string>{"b"});
  EXPECT_EQ(s.uses, std::vector<std::string>{"a"});
  EXPECT_TRUE(s.callees.empty());
}

TEST(Lower, PrintfCallees) {
  auto u = lower_text(fixtures::kSquareProgram);
  const auto& s = find_code(u, "printf(\"a + b = %d\", a + b);");
  EXPECT_EQ(s.callees, std::vector<std::string>{"printf"});
  EXPECT_EQ(s.uses, (std::vector<std::string>{"a", "b"}));
}

TEST(Lower, MallocAssignment) {
  auto u = lower_text("int f(){ char *p; p = malloc(10); return 0; }");
  const auto& s = find_code(u, "p = malloc(10);");
  EXPECT_EQ(s.defs, std::vector<std::string>{"p"});
  EXPECT_EQ(s.callees, std::vector<std::string>{"malloc"});
}

TEST(Lower, EntryExitAndPredicates) {
  auto u = lower_text(fixtures::kSquareProgram);
  ASSERT_EQ(u.functions.size(), 1u);
  const auto& st = u.functions[0].statements;
  ASSERT_EQ(st.size(), 8u);
  EXPECT_EQ(st.front().kind, StmtKind::Entry);
  EXPECT_EQ(st.back().kind, StmtKind::Exit);
  EXPECT_TRUE(st.front().code.empty());
  EXPECT_TRUE(st.back().defs.empty() && st.back().uses.empty());
  const auto& pred = find_code(u, "if (b > a)");
  EXPECT_EQ(pred.kind, StmtKind::Predicate);
  EXPECT_EQ(pred.span.line, 5);
}

TEST(Lower, MultiDeclarationSplits) {
  auto u = lower_text("int f(){ int a, b = 1; return a; }");
  EXPECT_EQ(find_code(u, "a").defs, std::vector<std::string>{"a"});
  EXPECT_EQ(find_code(u, "b = 1").defs, std::vector<std::string>{"b"});
}

TEST(Lower, DerefAssignmentIsUse) {
  auto u = lower_text("int f(int *p){ *p = 1; return 0; }");
  const auto& s = find_code(u, "*p = 1;");
  EXPECT_TRUE(s.defs.empty());
  EXPECT_EQ(s.uses, std::vector<std::string>{"p"});
}

TEST(Lower, RejectsNonLvalue) { EXPECT_THROW(lower_text("int f(){ 1 = 2; return 0; }"), LoweringError); }

TEST(Lower, RejectsRedeclaration) { EXPECT_THROW(lower_text("int f(){ int a; int a; return 0; }"), LoweringError); }

TEST(Lower, CodeIsVerbatimAtSpan) {
  const std::string& src = fixtures::kSquareProgram;
  auto u = lower_text(src);
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < src.size(); ++i)
    if (src[i] == '\n') starts.push_back(i + 1);
  for (const auto& s : u.all_statements()) {
    if (s.code.empty()) continue;
    std::size_t off = starts[s.span.line - 1] + s.span.col - 1;
    EXPECT_EQ(src.substr(off, s.code.size()), s.code);
  }
}

TEST(Lower, DeterministicUids) {
  auto a = lower_text(fixtures::kSquareProgram, 1 << 20);
  auto b = lower_text(fixtures::kSquareProgram, 1 << 20);
  EXPECT_EQ(a.all_statements(), b.all_statements());
  EXPECT_EQ(a.all_statements().front().uid, 1 << 20);
}

TEST(Lower, StatementCountMatchesTokenCounter) {
  const std::vector<std::string> programs = {
      fixtures::kSquareProgram,
      fixtures::kInjection,
      "int g; char *h, *k;\nint f(int a, char *b){ int c, d = 1; while (c < d) { c = c + 1; if (c) { d = 0; } else d = 2; } return a; }\n"
      "void h2(void){ free(h); }\n",
      "int f(){}",
  };
  for (const auto& p : programs) {
    auto toks = tokenize(p, "t.c");
    auto u = lower(parse(toks, "t.c"), p, 0);
    EXPECT_EQ(u.all_statements().size(), count_statements(toks)) << p;
  }
}

TEST(Lower, StatementCountOnGeneratedPrograms) {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::string p;
    int fns = 1 + rng() % 3;
    for (int f = 0; f < fns; ++f) {
      int params = rng() % 3;
      p += "int f" + std::to_string(f) + "(";
      for (int i = 0; i < params; ++i) p += (i ? ", int p" : "int p") + std::to_string(i);
      p += ") {\n int x = 0;\n";
      int stmts = rng() % 8;
      for (int s = 0; s < stmts; ++s) {
        switch (rng() % 5) {
          case 0: p += " x = x + 1;\n"; break;
          case 1: p += " if (x > 1) { x = 2; } else { x = 3; }\n"; break;
          case 2: p += " while (x < 9) x = x + 2;\n"; break;
          case 3: p += " int v" + std::to_string(s) + ", w" + std::to_string(s) + " = x;\n"; break;
          default: p += " foo(x, 1);\n"; break;
        }
      }
      p += " return x;\n}\n";
    }
    auto toks = tokenize(p, "t.c");
    auto u = lower(parse(toks, "t.c"), p, 0);
    ASSERT_EQ(u.all_statements().size(), count_statements(toks)) << p;
  }
}
