#include "cpgscan/minic/lower.hpp"

#include <algorithm>

namespace cpgscan::minic {

LoweringError::LoweringError(const Span& where, const std::string& msg)
    : Error(ErrorCode::Lowering,
            where.file + ":" + std::to_string(where.line) + ":" + std::to_string(where.col) + ": " + msg) {}

std::vector<UnifiedStatement> LoweredUnit::all_statements() const {
  std::vector<UnifiedStatement> out = globals;
  for (const auto& fn : functions) out.insert(out.end(), fn.statements.begin(), fn.statements.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.uid < b.uid; });
  return out;
}

namespace {

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

bool is_pointer_type(const std::string& type) {
  return type.find('*') != std::string::npos || type.find("[]") != std::string::npos;
}

// Def/use/callee collection over one statement's expression trees.
struct Occurrences {
  std::vector<std::string> defs;
  std::vector<std::string> uses;
  std::vector<std::string> callees;

  void expr(const MiniCAst& e) {
    switch (e.kind) {
      case AstKind::Identifier:
        if (e.text != "NULL") push_unique(uses, e.text);
        return;
      case AstKind::Assign: {
        const MiniCAst& lhs = e.children[0];
        if (lhs.kind == AstKind::Identifier) {
          push_unique(defs, lhs.text);
        } else if (lhs.kind == AstKind::Deref || lhs.kind == AstKind::Index) {
          expr(lhs);
        } else {
          throw LoweringError(lhs.span, "assignment target is not an lvalue");
        }
        expr(e.children[1]);
        return;
      }
      case AstKind::Call:
        push_unique(callees, e.text);
        for (const auto& a : e.children) expr(a);
        return;
      case AstKind::DeclStmt:
        push_unique(defs, e.children[0].text);
        if (e.children.size() > 1) expr(e.children[1]);
        return;
      default:
        for (const auto& c : e.children) expr(c);
    }
  }
};

class Lowerer {
 public:
  Lowerer(std::string_view src, Uid base) : src_(src), next_uid_(base) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n') line_starts_.push_back(i + 1);
  }

  LoweredUnit run(const MiniCAst& tu) {
    LoweredUnit unit;
    unit.file = tu.span.file;
    file_ = unit.file;
    std::set<std::string> seen_functions;
    for (const auto& child : tu.children) {
      if (child.kind == AstKind::FunctionDef) {
        if (!seen_functions.insert(child.text).second)
          throw LoweringError(child.span, "function '" + child.text + "' defined twice");
        unit.functions.push_back(function(child));
      } else if (child.kind == AstKind::DeclStmt) {
        for (const auto& d : child.children) {
          const std::string& name = d.children[0].text;
          check_declarable(d);
          if (unit.global_declarations.count(name))
            throw LoweringError(d.span, "redeclaration of global '" + name + "'");
          UnifiedStatement s = declarator_statement(child, d, "");
          unit.global_declarations[name] = s.uid;
          if (is_pointer_type(d.text)) unit.global_pointers.insert(name);
          unit.globals.push_back(std::move(s));
        }
      } else {
        throw LoweringError(child.span, std::string("unexpected ") + to_string(child.kind) + " at file scope");
      }
    }
    return unit;
  }

 private:
  Span span_at(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    std::size_t col = offset - line_starts_[line - 1] + 1;
    return Span{file_, static_cast<int>(line), static_cast<int>(col)};
  }

  std::string slice(std::size_t begin, std::size_t end) const {
    return std::string(src_.substr(begin, end - begin));
  }

  Uid take_uid() { return next_uid_++; }

  void check_declarable(const MiniCAst& d) const {
    if (d.text == "void") throw LoweringError(d.span, "variable '" + d.children[0].text + "' declared void");
  }

  UnifiedStatement statement(StmtKind kind, std::size_t begin, std::size_t end, Json ast, const std::string& fn) {
    UnifiedStatement s;
    s.uid = take_uid();
    s.span = span_at(begin);
    s.code = slice(begin, end);
    s.ast = std::move(ast);
    s.kind = kind;
    s.fn = fn;
    return s;
  }

  static void fill(UnifiedStatement& s, const Occurrences& occ) {
    s.defs = occ.defs;
    s.uses = occ.uses;
    s.callees = occ.callees;
  }

  // Declarations with one declarator keep the whole statement text; split
  // multi-declarations use each declarator's own text.
  UnifiedStatement declarator_statement(const MiniCAst& decl, const MiniCAst& d, const std::string& fn) {
    bool single = decl.children.size() == 1;
    std::size_t begin = single ? decl.begin : d.begin;
    std::size_t end = single ? decl.end : d.end;
    UnifiedStatement s = statement(StmtKind::Plain, begin, end, to_json(d), fn);
    Occurrences occ;
    occ.expr(d);
    fill(s, occ);
    return s;
  }

  LoweredFunction function(const MiniCAst& def) {
    LoweredFunction fn;
    fn.name = def.text;
    fn.file = file_;
    fn_ = &fn;
    Json marker = Json::object();
    marker["kind"] = to_string(AstKind::FunctionDef);
    marker["text"] = def.text;

    UnifiedStatement entry;
    entry.uid = take_uid();
    entry.span = def.span;
    entry.ast = marker;
    entry.kind = StmtKind::Entry;
    entry.fn = fn.name;
    fn.entry = entry.uid;
    fn.statements.push_back(entry);

    const MiniCAst* body = nullptr;
    for (const auto& c : def.children) {
      if (c.kind == AstKind::Param) {
        const std::string& name = c.children[0].text;
        if (c.text == "void") throw LoweringError(c.span, "parameter '" + name + "' declared void");
        if (!fn.declarations.emplace(name, 0).second)
          throw LoweringError(c.span, "duplicate parameter '" + name + "'");
        UnifiedStatement p = statement(StmtKind::FunctionDecl, c.begin, c.end, to_json(c), fn.name);
        p.defs = {name};
        fn.declarations[name] = p.uid;
        if (is_pointer_type(c.text)) fn.pointer_vars.insert(name);
        fn.params.push_back(p.uid);
        fn.param_names.push_back(name);
        fn.statements.push_back(std::move(p));
      } else {
        body = &c;
      }
    }
    fn.body = block(*body);

    UnifiedStatement exit;
    exit.uid = take_uid();
    exit.span = span_at(body->end - 1);
    exit.ast = marker;
    exit.kind = StmtKind::Exit;
    exit.fn = fn.name;
    fn.exit = exit.uid;
    fn.statements.push_back(exit);

    fn_ = nullptr;
    return fn;
  }

  std::vector<ControlNode> block(const MiniCAst& b) {
    std::vector<ControlNode> out;
    for (const auto& s : b.children) lower_statement(s, out);
    return out;
  }

  std::vector<ControlNode> branch(const MiniCAst& b) {
    if (b.kind == AstKind::Block) return block(b);
    std::vector<ControlNode> out;
    lower_statement(b, out);
    return out;
  }

  void lower_statement(const MiniCAst& s, std::vector<ControlNode>& out) {
    LoweredFunction& fn = *fn_;
    switch (s.kind) {
      case AstKind::Block: {
        auto inner = block(s);
        out.insert(out.end(), std::make_move_iterator(inner.begin()), std::make_move_iterator(inner.end()));
        return;
      }
      case AstKind::DeclStmt:
        for (const auto& d : s.children) {
          const std::string& name = d.children[0].text;
          check_declarable(d);
          if (fn.declarations.count(name))
            throw LoweringError(d.span, "redeclaration of '" + name + "' in function '" + fn.name + "'");
          UnifiedStatement st = declarator_statement(s, d, fn.name);
          fn.declarations[name] = st.uid;
          if (is_pointer_type(d.text)) fn.pointer_vars.insert(name);
          out.push_back(ControlNode{st.uid, ControlNode::Shape::Simple, {}, {}});
          fn.statements.push_back(std::move(st));
        }
        return;
      case AstKind::ExprStmt:
      case AstKind::Return: {
        Json ast = to_json(s);
        UnifiedStatement st = statement(StmtKind::Plain, s.begin, s.end, std::move(ast), fn.name);
        Occurrences occ;
        for (const auto& c : s.children) occ.expr(c);
        fill(st, occ);
        auto shape = s.kind == AstKind::Return ? ControlNode::Shape::Return : ControlNode::Shape::Simple;
        out.push_back(ControlNode{st.uid, shape, {}, {}});
        fn.statements.push_back(std::move(st));
        return;
      }
      case AstKind::If:
      case AstKind::While: {
        // The header alone becomes the predicate statement; branches are lowered separately.
        Json ast = Json::object();
        ast["kind"] = to_string(s.kind);
        ast["children"] = Json::array({to_json(s.children[0])});
        UnifiedStatement st = statement(StmtKind::Predicate, s.begin, s.header_end, std::move(ast), fn.name);
        Occurrences occ;
        occ.expr(s.children[0]);
        fill(st, occ);
        ControlNode node{st.uid, s.kind == AstKind::If ? ControlNode::Shape::If : ControlNode::Shape::While, {}, {}};
        fn.statements.push_back(std::move(st));
        node.then_branch = branch(s.children[1]);
        if (s.children.size() > 2) node.else_branch = branch(s.children[2]);
        out.push_back(std::move(node));
        return;
      }
      default:
        throw LoweringError(s.span, std::string("unsupported statement ") + to_string(s.kind));
    }
  }

  std::string_view src_;
  Uid next_uid_;
  std::string file_;
  std::vector<std::size_t> line_starts_;
  LoweredFunction* fn_ = nullptr;
};

}  // namespace

LoweredUnit lower(const MiniCAst& tu, std::string_view source, Uid uid_base) {
  if (tu.kind != AstKind::TranslationUnit) throw LoweringError(tu.span, "expected a translation unit");
  return Lowerer(source, uid_base).run(tu);
}

}  // namespace cpgscan::minic
