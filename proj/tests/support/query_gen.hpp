#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cpgscan/query/plan.hpp"

namespace cpgscan::test_support {

using namespace cpgscan::query;

// Random grammar-valid queries. Flow and node predicates target bindings of
// the right type so that the output also translates.
struct QueryGen {
  std::mt19937_64& rng;
  std::vector<std::string> nodes, flows;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool coin() { return pick(2) == 0; }

  std::string random_string() {
    static const std::string alphabet = "abcXYZ_ .*^$()[]\\\"\t\n\xc3\xa9/";
    std::string s;
    int n = pick(8);
    for (int i = 0; i < n; ++i) s += alphabet[pick(static_cast<int>(alphabet.size()))];
    return s;
  }

  Argument str() { return {Argument::Kind::String, random_string(), 0}; }
  Argument name(const std::vector<std::string>& from) { return {Argument::Kind::Name, from[pick(from.size())], 0}; }

  Predicate node_pred() {
    Predicate p;
    p.receiver = nodes[pick(nodes.size())];
    static const char* kMatch[] = {"equals", "contains", "matchesRegex"};
    switch (pick(4)) {
      case 0: p.chain = {{"getFunction", {}}, {kMatch[pick(3)], {str()}}}; break;
      case 1: p.chain = {{kMatch[pick(3)], {str()}}}; break;
      case 2: p.chain = {{"inFile", {str()}}}; break;
      default: {
        std::int64_t lo = pick(100) - 10;
        p.chain = {{"lineBetween", {{Argument::Kind::Integer, std::to_string(lo), lo},
                                    {Argument::Kind::Integer, std::to_string(lo + 5), lo + 5}}}};
      }
    }
    return p;
  }

  Predicate flow_pred(const std::string& f) {
    Predicate p;
    p.receiver = f;
    std::vector<MethodCall> parts = {{"source", {name(nodes)}}, {"sink", {name(nodes)}}};
    if (coin()) parts.push_back({"barrier", {name(nodes)}});
    if (coin()) parts.push_back({"as", {{Argument::Kind::Name, f, 0}}});
    std::shuffle(parts.begin(), parts.end(), rng);
    p.chain = parts;
    p.chain.push_back({"exists", {}});
    return p;
  }

  Condition leaf(std::set<std::string>& used_flows) {
    Condition c;
    std::vector<std::string> free;
    for (const auto& f : flows)
      if (!used_flows.count(f)) free.push_back(f);
    if (!free.empty() && pick(3) == 0) {
      c.predicate = flow_pred(free[pick(free.size())]);
      used_flows.insert(c.predicate.receiver);
      return c;
    }
    c.predicate = node_pred();
    if (coin()) {
      Condition n;
      n.kind = Condition::Kind::Not;
      n.operands.push_back(std::move(c));
      return n;
    }
    return c;
  }

  // Only and-chains keep every flow constrained in every term.
  Condition conjunction(int n, std::set<std::string>& used) {
    Condition lhs = leaf(used);
    for (int i = 1; i < n; ++i) {
      Condition c;
      c.kind = Condition::Kind::And;
      c.operands.push_back(std::move(lhs));
      c.operands.push_back(leaf(used));
      lhs = std::move(c);
    }
    return lhs;
  }

  QueryAst query() {
    QueryAst q;
    nodes.clear();
    flows.clear();
    int nn = 1 + pick(4), nf = pick(3);
    static const char* kTypes[] = {"Call", "Statement", "Expression"};
    for (int i = 0; i < nn; ++i) {
      std::string n = "n" + std::to_string(i);
      nodes.push_back(n);
      if (pick(5) == 0)
        q.decls.push_back({"ContainsFunctionCall", n, std::vector<Argument>{str()}});
      else
        q.decls.push_back({kTypes[pick(3)], n, std::nullopt});
    }
    for (int i = 0; i < nf; ++i) {
      flows.push_back("f" + std::to_string(i));
      q.decls.push_back({"TaintFlow", flows.back(), std::nullopt});
    }
    std::shuffle(q.decls.begin(), q.decls.end(), rng);
    std::set<std::string> used;
    if (coin() || nf) {
      // Disjunctions only when there are no flows to keep constrained.
      int terms = nf ? 1 : 1 + pick(3);
      Condition where = conjunction(1 + pick(4), used);
      for (int t = 1; t < terms; ++t) {
        Condition c;
        c.kind = Condition::Kind::Or;
        c.operands.push_back(std::move(where));
        std::set<std::string> none;
        c.operands.push_back(conjunction(1 + pick(3), none));
        where = std::move(c);
      }
      q.where = std::move(where);
    }
    int ns = 1 + pick(3);
    for (int i = 0; i < ns; ++i) {
      if (pick(4) == 0) q.selects.push_back({true, random_string()});
      else q.selects.push_back({false, nodes[pick(nodes.size())]});
    }
    for (const auto& f : used)
      if (coin()) q.selects.push_back({false, f});
    return q;
  }
};

}  // namespace cpgscan::test_support
