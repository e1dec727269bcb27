#include <algorithm>
#include <map>
#include <set>

#include "cpgscan/query/plan.hpp"

namespace cpgscan::query {

namespace {

[[noreturn]] void type_error(const std::string& msg) { throw Error(ErrorCode::Type, msg); }

std::string chain_text(const Predicate& p) {
  std::string s = p.receiver;
  for (const auto& m : p.chain) s += "." + m.name + "(...)";
  return s;
}

const std::string& string_arg(const MethodCall& m, const Predicate& p) {
  if (m.args.size() != 1 || m.args[0].kind != Argument::Kind::String)
    type_error(m.name + "() takes one string argument in " + chain_text(p));
  return m.args[0].text;
}

Match match_of(const std::string& method) {
  if (method == "equals") return Match::Equals;
  if (method == "contains") return Match::Contains;
  return Match::Regex;
}

bool is_match_method(const std::string& m) { return m == "equals" || m == "contains" || m == "matchesRegex"; }

NodePredicate node_predicate(const Predicate& p) {
  const auto& c = p.chain;
  NodePredicate np;
  if (c.size() == 2 && (c[0].name == "getFunction" || c[0].name == "getCode") && c[0].args.empty() &&
      is_match_method(c[1].name)) {
    np.subject = c[0].name == "getFunction" ? Subject::Function : Subject::Code;
    np.match = match_of(c[1].name);
    np.strings = {string_arg(c[1], p)};
    return np;
  }
  if (c.size() == 1 && is_match_method(c[0].name)) {
    np.subject = Subject::Code;
    np.match = match_of(c[0].name);
    np.strings = {string_arg(c[0], p)};
    return np;
  }
  if (c.size() == 1 && c[0].name == "inFile") {
    np.subject = Subject::File;
    np.match = Match::Equals;
    np.strings = {string_arg(c[0], p)};
    return np;
  }
  if (c.size() == 1 && c[0].name == "lineBetween") {
    if (c[0].args.size() != 2 || c[0].args[0].kind != Argument::Kind::Integer ||
        c[0].args[1].kind != Argument::Kind::Integer)
      type_error("lineBetween() takes two integers in " + chain_text(p));
    np.subject = Subject::Line;
    np.match = Match::Between;
    np.ints = {c[0].args[0].value, c[0].args[1].value};
    return np;
  }
  type_error("unsupported node predicate " + chain_text(p));
}

NodePredicate class_predicate(const Declaration& d) {
  const auto& args = *d.class_args;
  if (args.size() != 1 || args[0].kind != Argument::Kind::String)
    type_error(d.type + " takes one string argument");
  NodePredicate np;
  np.strings = {args[0].text};
  if (d.type == "ContainsFunctionCall") {
    np.subject = Subject::Function;
    np.match = Match::Equals;
  } else if (d.type == "FunctionMatches") {
    np.subject = Subject::Function;
    np.match = Match::Regex;
  } else if (d.type == "CodeContains") {
    np.subject = Subject::Code;
    np.match = Match::Contains;
  } else {
    np.subject = Subject::Code;
    np.match = Match::Regex;
  }
  return np;
}

class Translator {
 public:
  explicit Translator(const QueryAst& ast) : ast_(ast) {
    for (const auto& d : ast.decls) types_[d.name] = d.class_args ? "Call" : d.type;
  }

  QueryPlan run() {
    QueryPlan plan;
    std::vector<FilterStep> class_filters;
    for (const auto& d : ast_.decls) {
      if (is_flow_type(types_[d.name])) continue;
      plan.contexts.push_back({d.name, types_[d.name]});
      if (d.class_args) class_filters.push_back({d.name, class_predicate(d), false});
    }
    plan.terms = ast_.where ? terms(*ast_.where) : std::vector<PlanTerm>{PlanTerm{}};
    for (auto& t : plan.terms) {
      t.filters.insert(t.filters.begin(), class_filters.begin(), class_filters.end());
      check_term(t);
    }
    for (const auto& s : ast_.selects) {
      if (!s.is_string) check_selectable(s.text, plan);
      plan.projection.push_back({s.is_string, s.text});
    }
    return plan;
  }

 private:
  bool is_flow(const std::string& name) const { return is_flow_type(types_.at(name)); }

  std::vector<PlanTerm> terms(const Condition& c) {
    switch (c.kind) {
      case Condition::Kind::Leaf: return {leaf(c.predicate, false)};
      case Condition::Kind::Not: return {leaf(c.operands[0].predicate, true)};
      case Condition::Kind::Or: {
        auto l = terms(c.operands[0]);
        auto r = terms(c.operands[1]);
        l.insert(l.end(), r.begin(), r.end());
        return l;
      }
      case Condition::Kind::And: {
        auto l = terms(c.operands[0]);
        auto r = terms(c.operands[1]);
        std::vector<PlanTerm> out;
        for (const auto& a : l)
          for (const auto& b : r) {
            PlanTerm t = a;
            t.filters.insert(t.filters.end(), b.filters.begin(), b.filters.end());
            t.flows.insert(t.flows.end(), b.flows.begin(), b.flows.end());
            out.push_back(std::move(t));
          }
        return out;
      }
    }
    return {};
  }

  PlanTerm leaf(const Predicate& p, bool negated) {
    PlanTerm t;
    if (!is_flow(p.receiver)) {
      t.filters.push_back({p.receiver, node_predicate(p), negated});
      return t;
    }
    if (negated) type_error("flow predicates cannot be negated: " + chain_text(p));
    t.flows.push_back(flow(p));
    return t;
  }

  std::string node_arg(const MethodCall& m, const Predicate& p) {
    if (m.args.size() != 1 || m.args[0].kind != Argument::Kind::Name)
      type_error(m.name + "() takes one binding in " + chain_text(p));
    const std::string& n = m.args[0].text;
    if (is_flow(n)) type_error(m.name + "() needs a node binding, got flow '" + n + "'");
    return n;
  }

  FlowStep flow(const Predicate& p) {
    FlowStep f;
    f.name = p.receiver;
    bool same_object = false, terminal = false;
    std::optional<std::string> source, sink;
    for (std::size_t i = 0; i < p.chain.size(); ++i) {
      const auto& m = p.chain[i];
      if (terminal) type_error("nothing may follow " + p.chain[i - 1].name + "() in " + chain_text(p));
      auto once = [&](std::optional<std::string>& slot) {
        if (slot) type_error(m.name + "() given twice in " + chain_text(p));
        slot = node_arg(m, p);
      };
      if (m.name == "source") once(source);
      else if (m.name == "sink") once(sink);
      else if (m.name == "barrier") once(f.barrier);
      else if (m.name == "as") {
        if (m.args.size() != 1 || m.args[0].text != p.receiver)
          type_error("as() must name the flow binding '" + p.receiver + "'");
      } else if (m.name == "sameObject" && m.args.empty()) {
        same_object = true;
      } else if ((m.name == "exists" || m.name == "avoids") && m.args.empty()) {
        terminal = true;
        f.mode = m.name == "avoids" ? FlowMode::Avoids : same_object ? FlowMode::SameObject : FlowMode::Taint;
        if (m.name == "avoids" && !same_object) type_error("avoids() requires sameObject() in " + chain_text(p));
      } else {
        type_error("method " + m.name + "() is not applicable to flow '" + p.receiver + "'");
      }
    }
    if (!terminal) type_error("flow predicate must end with exists() or avoids(): " + chain_text(p));
    if (!source || !sink) type_error("flow predicate needs source() and sink(): " + chain_text(p));
    f.source = *source;
    f.sink = *sink;
    return f;
  }

  void check_term(const PlanTerm& t) {
    std::set<std::string> flows;
    for (const auto& f : t.flows)
      if (!flows.insert(f.name).second) type_error("flow '" + f.name + "' constrained twice in one conjunction");
  }

  void check_selectable(const std::string& name, const QueryPlan& plan) {
    for (const auto& t : plan.terms)
      for (const auto& f : t.flows) {
        if (f.barrier && *f.barrier == name) type_error("barrier binding '" + name + "' cannot be selected");
        if (f.mode == FlowMode::Avoids && f.sink == name)
          type_error("sink binding '" + name + "' of an avoids() flow cannot be selected");
      }
    if (!is_flow(name)) return;
    for (const auto& t : plan.terms) {
      bool defined = std::any_of(t.flows.begin(), t.flows.end(), [&](const FlowStep& f) { return f.name == name; });
      if (!defined) type_error("flow '" + name + "' is selected but not constrained by exists() or avoids()");
    }
  }

  const QueryAst& ast_;
  std::map<std::string, std::string> types_;
};

const char* fluent_class(const std::string& type) {
  if (type == "Call") return "CallExpression";
  return type == "Statement" ? "Statement" : "Expression";
}

std::string fluent_predicate(const NodePredicate& p) {
  std::string cls;
  switch (p.subject) {
    case Subject::Function:
      cls = p.match == Match::Equals ? "ContainsFunctionCall" : p.match == Match::Contains ? "FunctionNameContains"
                                                                                           : "FunctionNameMatches";
      break;
    case Subject::Code:
      cls = p.match == Match::Equals ? "CodeEquals" : p.match == Match::Contains ? "CodeContains" : "CodeMatches";
      break;
    case Subject::File: cls = "InFile"; break;
    case Subject::Line: cls = "LineBetween"; break;
  }
  std::string args;
  for (const auto& s : p.strings) args += (args.empty() ? "" : ", ") + quote(s);
  for (auto v : p.ints) args += (args.empty() ? "" : ", ") + std::to_string(v);
  return "new " + cls + "(" + args + ")";
}

}  // namespace

std::string NodePredicate::canonical() const {
  static const char* kSubject[] = {"function", "code", "file", "line"};
  static const char* kMatch[] = {"=", "~contains", "~regex", "~between"};
  std::vector<std::string> args = strings;
  std::sort(args.begin(), args.end());
  std::string out = std::string(kSubject[static_cast<int>(subject)]) + kMatch[static_cast<int>(match)] + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + quote(args[i]);
  for (std::size_t i = 0; i < ints.size(); ++i) out += (i || !args.empty() ? "," : "") + std::to_string(ints[i]);
  return out + ")";
}

const ContextStep* QueryPlan::context(const std::string& binding) const {
  for (const auto& c : contexts)
    if (c.binding == binding) return &c;
  return nullptr;
}

QueryPlan translate(const QueryAst& ast) { return Translator(ast).run(); }

std::string render_fluent(const QueryPlan& plan) {
  std::string out = "QueryDescriptor.open()\n";
  for (const auto& c : plan.contexts)
    out += "    .from(" + quote(c.binding) + ", " + fluent_class(c.type) + ".class)\n";
  for (std::size_t t = 0; t < plan.terms.size(); ++t) {
    if (t) out += "    .or()\n";
    for (const auto& f : plan.terms[t].filters)
      out += "    .where(q -> q.onTable(" + quote(f.binding) + ")." + (f.negated ? "whereNot(" : "where(") +
             fluent_predicate(f.predicate) + "))\n";
    for (const auto& f : plan.terms[t].flows) {
      out += "    .where(TaintFlowPredicate.with().source(" + quote(f.source) + ").sink(" + quote(f.sink) + ")";
      if (f.barrier) out += ".barrier(" + quote(*f.barrier) + ")";
      if (f.mode != FlowMode::Taint) out += ".sameObject()";
      out += ".as(" + quote(f.name) + ")";
      out += f.mode == FlowMode::Avoids ? ".avoids())\n" : ".exists())\n";
    }
  }
  out += "    .select(";
  for (std::size_t i = 0; i < plan.projection.size(); ++i) out += (i ? ", " : "") + quote(plan.projection[i].text);
  out += ");";
  return out;
}

PlanBuilder& PlanBuilder::from(const std::string& binding, const std::string& type) {
  plan_.contexts.push_back({binding, type});
  return *this;
}

PlanBuilder& PlanBuilder::where(const std::string& binding, NodePredicate p, bool negated) {
  plan_.terms.back().filters.push_back({binding, std::move(p), negated});
  return *this;
}

PlanBuilder& PlanBuilder::flow(FlowStep step) {
  plan_.terms.back().flows.push_back(std::move(step));
  return *this;
}

PlanBuilder& PlanBuilder::or_() {
  plan_.terms.emplace_back();
  return *this;
}

PlanBuilder& PlanBuilder::select(std::vector<std::string> bindings) {
  for (auto& b : bindings) plan_.projection.push_back({false, std::move(b)});
  return *this;
}

NodePredicate contains_function_call(const std::string& name) {
  NodePredicate p;
  p.subject = Subject::Function;
  p.match = Match::Equals;
  p.strings = {name};
  return p;
}

}  // namespace cpgscan::query
