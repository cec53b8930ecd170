// Copyright 2026 The Reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reach/parser.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

#include "reach/validate.hpp"

namespace reach {
namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Single-line token scanner. Identifiers are [A-Za-z_$][A-Za-z0-9_$]*;
// punctuation tokens are = ( ) { } [ ] , : . and the two-char arrow ->.
class LineLexer {
 public:
  LineLexer(std::string_view line, int line_no)
      : line_(line), line_no_(line_no) {}

  // Peeks at the next token without consuming it. Empty string at EOL.
  std::string_view peek() {
    size_t save = pos_;
    std::string_view tok = next();
    pos_ = save;
    return tok;
  }

  std::string_view next() {
    skip_spaces();
    token_col_ = static_cast<int>(pos_) + 1;
    if (pos_ >= line_.size()) return {};
    char c = line_[pos_];
    if (is_ident_start(c)) {
      size_t start = pos_;
      while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
      return line_.substr(start, pos_ - start);
    }
    if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
      pos_ += 2;
      return line_.substr(pos_ - 2, 2);
    }
    ++pos_;
    return line_.substr(pos_ - 1, 1);
  }

  std::string_view expect_ident(const char* what) {
    std::string_view tok = next();
    if (tok.empty() || !is_ident_start(tok[0])) {
      fail(std::string("expected ") + what);
    }
    return tok;
  }

  void expect(std::string_view punct) {
    std::string_view tok = next();
    if (tok != punct) {
      fail("expected '" + std::string(punct) + "'" +
           (tok.empty() ? " before end of line"
                        : ", found '" + std::string(tok) + "'"));
    }
  }

  bool accept(std::string_view punct) {
    size_t save = pos_;
    if (next() == punct) return true;
    pos_ = save;
    return false;
  }

  bool at_end() {
    skip_spaces();
    return pos_ >= line_.size();
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_no_, token_col_);
  }

  int column() const { return token_col_; }
  int line_no() const { return line_no_; }

 private:
  void skip_spaces() {
    while (pos_ < line_.size() &&
           (line_[pos_] == ' ' || line_[pos_] == '\t')) {
      ++pos_;
    }
  }

  std::string_view line_;
  int line_no_;
  size_t pos_ = 0;
  int token_col_ = 1;
};

// --- raw (unresolved) declarations ---------------------------------------

struct RawMethodToken {
  std::string owner;
  std::string name;
  std::vector<std::string> params;
};

struct RawFieldToken {
  std::string owner;
  std::string name;
};

struct RawInstr {
  enum Kind {
    kNew,
    kNewArray,
    kConst,
    kInvokeStatic,
    kInvokeVirtual,
    kInvokeSpecial,
    kGetField,
    kPutField,
    kGetStatic,
    kPutStatic,
    kReturn,
  };
  Kind kind;
  std::optional<std::string> dst;
  std::string operand;             // type / object / base-object / src local
  std::string src;                 // second local operand where needed
  RawMethodToken callee;           // invokes
  RawFieldToken field;             // field accesses
  std::vector<std::string> call;   // receiver+args (locals), invokes only
  int line = 0;
  int column = 1;
};

struct RawField {
  bool is_static = false;
  std::string name;
  std::string type_name;
  std::string value_object;  // static field value, optional
  int line = 0;
};

struct RawMethod {
  bool is_static = false;
  bool is_abstract = false;
  std::string name;
  std::vector<std::string> param_types;
  std::string return_type;  // empty = void
  std::vector<RawInstr> body;
  int line = 0;
};

struct RawType {
  TypeKind kind = TypeKind::kClass;
  bool is_abstract = false;
  std::string name;
  std::string super_name;
  std::vector<std::string> interface_names;
  std::string element_name;  // arrays
  std::vector<RawField> fields;
  std::vector<RawMethod> methods;
  int line = 0;
};

struct RawObject {
  std::string name;
  std::string type_name;
  std::vector<std::pair<RawFieldToken, std::string>> field_values;
  std::vector<std::string> elements;
  bool trivial = false;
  int line = 0;
};

struct RawModel {
  std::vector<RawType> types;
  std::vector<RawObject> objects;
  std::vector<std::pair<RawMethodToken, int>> roots;
  std::vector<std::pair<std::string, int>> inits;
};

RawMethodToken parse_method_token(LineLexer& lex) {
  RawMethodToken tok;
  tok.owner = lex.expect_ident("type name");
  lex.expect(".");
  tok.name = lex.expect_ident("method name");
  lex.expect("(");
  if (!lex.accept(")")) {
    while (true) {
      tok.params.emplace_back(lex.expect_ident("parameter type"));
      if (lex.accept(")")) break;
      lex.expect(",");
    }
  }
  return tok;
}

RawFieldToken parse_field_token(LineLexer& lex) {
  RawFieldToken tok;
  tok.owner = lex.expect_ident("type name");
  lex.expect(".");
  tok.name = lex.expect_ident("field name");
  return tok;
}

std::vector<std::string> parse_call_list(LineLexer& lex) {
  std::vector<std::string> locals;
  lex.expect("(");
  if (lex.accept(")")) return locals;
  while (true) {
    locals.emplace_back(lex.expect_ident("local name"));
    if (lex.accept(")")) break;
    lex.expect(",");
  }
  return locals;
}

RawInstr parse_instruction(std::string_view text, int line_no) {
  LineLexer lex(text, line_no);
  RawInstr instr;
  instr.line = line_no;

  std::string_view first = lex.next();
  std::optional<std::string> dst;
  std::string_view op = first;
  if (lex.peek() == "=") {
    dst = std::string(first);
    lex.expect("=");
    op = lex.next();
  }

  auto require_dst = [&](const char* mnemonic) {
    if (!dst) {
      throw ParseError(std::string(mnemonic) + " requires a destination local",
                       line_no, 1);
    }
  };
  auto forbid_dst = [&](const char* mnemonic) {
    if (dst) {
      throw ParseError(std::string(mnemonic) + " takes no destination local",
                       line_no, 1);
    }
  };

  if (op == "new") {
    require_dst("new");
    instr.kind = RawInstr::kNew;
    instr.dst = dst;
    instr.operand = lex.expect_ident("type name");
  } else if (op == "newarray") {
    require_dst("newarray");
    instr.kind = RawInstr::kNewArray;
    instr.dst = dst;
    instr.operand = lex.expect_ident("array type name");
  } else if (op == "const") {
    require_dst("const");
    instr.kind = RawInstr::kConst;
    instr.dst = dst;
    instr.operand = lex.expect_ident("object id");
  } else if (op == "invokestatic" || op == "invokevirtual" ||
             op == "invokespecial") {
    instr.kind = op == "invokestatic"    ? RawInstr::kInvokeStatic
                 : op == "invokevirtual" ? RawInstr::kInvokeVirtual
                                         : RawInstr::kInvokeSpecial;
    instr.dst = dst;
    instr.callee = parse_method_token(lex);
    instr.call = parse_call_list(lex);
    if (instr.kind != RawInstr::kInvokeStatic && instr.call.empty()) {
      throw ParseError("instance invoke needs a receiver as first call operand",
                       line_no, 1);
    }
  } else if (op == "getfield") {
    require_dst("getfield");
    instr.kind = RawInstr::kGetField;
    instr.dst = dst;
    instr.operand = lex.expect_ident("local name");
    lex.expect(",");
    instr.field = parse_field_token(lex);
  } else if (op == "putfield") {
    forbid_dst("putfield");
    instr.kind = RawInstr::kPutField;
    instr.operand = lex.expect_ident("local name");
    lex.expect(",");
    instr.field = parse_field_token(lex);
    lex.expect(",");
    instr.src = lex.expect_ident("local name");
  } else if (op == "getstatic") {
    require_dst("getstatic");
    instr.kind = RawInstr::kGetStatic;
    instr.dst = dst;
    instr.field = parse_field_token(lex);
  } else if (op == "putstatic") {
    forbid_dst("putstatic");
    instr.kind = RawInstr::kPutStatic;
    instr.field = parse_field_token(lex);
    lex.expect(",");
    instr.src = lex.expect_ident("local name");
  } else if (op == "return") {
    forbid_dst("return");
    instr.kind = RawInstr::kReturn;
    if (!lex.at_end()) instr.operand = std::string(lex.expect_ident("local name"));
  } else {
    throw ParseError("unknown instruction '" + std::string(op) + "'", line_no,
                     1);
  }
  lex.expect_end();
  return instr;
}

// --- pass A: lines -> raw model -------------------------------------------

RawModel scan_lines(const std::string& text) {
  RawModel raw;
  RawType* open_type = nullptr;
  RawMethod* open_method = nullptr;

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == '#') continue;          // comment
    bool indented = first > 0;

    LineLexer lex(line, line_no);
    std::string_view head = lex.peek();

    if (!indented) {
      open_method = nullptr;
      if (head == "class" || head == "interface" || head == "array") {
        lex.next();
        RawType t;
        t.line = line_no;
        t.kind = head == "class"       ? TypeKind::kClass
                 : head == "interface" ? TypeKind::kInterface
                                       : TypeKind::kArray;
        if (t.kind == TypeKind::kClass && lex.peek() == "abstract") {
          lex.next();
          t.is_abstract = true;
        }
        t.name = lex.expect_ident("type name");
        if (t.kind == TypeKind::kArray) {
          lex.expect("of");
          t.element_name = lex.expect_ident("element type name");
        }
        if (lex.peek() == "extends") {
          lex.next();
          t.super_name = lex.expect_ident("superclass name");
        }
        if (lex.peek() == "implements") {
          lex.next();
          while (true) {
            t.interface_names.emplace_back(lex.expect_ident("interface name"));
            if (!lex.accept(",")) break;
          }
        }
        lex.expect_end();
        raw.types.push_back(std::move(t));
        open_type = &raw.types.back();
      } else if (head == "object") {
        lex.next();
        open_type = nullptr;
        RawObject o;
        o.line = line_no;
        o.name = lex.expect_ident("object id");
        lex.expect(":");
        o.type_name = lex.expect_ident("type name");
        if (lex.accept("{")) {
          if (!lex.accept("}")) {
            while (true) {
              RawFieldToken f = parse_field_token(lex);
              lex.expect("->");
              std::string value(lex.expect_ident("object id"));
              o.field_values.emplace_back(std::move(f), std::move(value));
              if (lex.accept("}")) break;
              lex.expect(",");
            }
          }
        } else if (lex.accept("[")) {
          if (!lex.accept("]")) {
            while (true) {
              o.elements.emplace_back(lex.expect_ident("object id"));
              if (lex.accept("]")) break;
              lex.expect(",");
            }
          }
        }
        if (lex.peek() == "trivial") {
          lex.next();
          o.trivial = true;
        }
        lex.expect_end();
        raw.objects.push_back(std::move(o));
      } else if (head == "root") {
        lex.next();
        open_type = nullptr;
        raw.roots.emplace_back(parse_method_token(lex), line_no);
        lex.expect_end();
      } else if (head == "init") {
        lex.next();
        open_type = nullptr;
        raw.inits.emplace_back(lex.expect_ident("type name"), line_no);
        lex.expect_end();
      } else {
        throw ParseError("expected a top-level declaration, found '" +
                             std::string(head) + "'",
                         line_no, static_cast<int>(first) + 1);
      }
      continue;
    }

    // Indented: a member of the open type, or an instruction of the open
    // method. `field`/`method` followed by `=` is a local of that name.
    bool member_keyword = false;
    if (head == "field" || head == "method") {
      LineLexer probe(line, line_no);
      probe.next();
      member_keyword = probe.peek() != "=";
    }

    if (member_keyword) {
      if (open_type == nullptr) {
        throw ParseError("member declaration outside a type block", line_no,
                         static_cast<int>(first) + 1);
      }
      if (open_type->kind == TypeKind::kArray) {
        throw ParseError("array types take no member declarations", line_no,
                         static_cast<int>(first) + 1);
      }
      lex.next();
      if (head == "field") {
        open_method = nullptr;
        RawField f;
        f.line = line_no;
        if (lex.peek() == "static") {
          lex.next();
          f.is_static = true;
        }
        f.name = lex.expect_ident("field name");
        lex.expect(":");
        f.type_name = lex.expect_ident("type name");
        if (lex.accept("=")) {
          f.value_object = lex.expect_ident("object id");
        }
        lex.expect_end();
        open_type->fields.push_back(std::move(f));
      } else {
        RawMethod m;
        m.line = line_no;
        while (lex.peek() == "static" || lex.peek() == "abstract") {
          if (lex.next() == "static") {
            m.is_static = true;
          } else {
            m.is_abstract = true;
          }
        }
        m.name = lex.expect_ident("method name");
        lex.expect("(");
        if (!lex.accept(")")) {
          while (true) {
            m.param_types.emplace_back(lex.expect_ident("parameter type"));
            if (lex.accept(")")) break;
            lex.expect(",");
          }
        }
        lex.expect(":");
        std::string_view ret = lex.expect_ident("return type or void");
        if (ret != "void") m.return_type = std::string(ret);
        lex.expect_end();
        open_type->methods.push_back(std::move(m));
        open_method = &open_type->methods.back();
      }
      continue;
    }

    if (open_method == nullptr || open_method->is_abstract) {
      throw ParseError(
          open_method == nullptr
              ? "instruction outside a method body"
              : "abstract method '" + open_method->name + "' takes no body",
          line_no, static_cast<int>(first) + 1);
    }
    open_method->body.push_back(
        parse_instruction(std::string_view(line).substr(first), line_no));
  }
  return raw;
}

// --- pass B: raw model -> resolved ProgramModel ---------------------------

class Resolver {
 public:
  explicit Resolver(const RawModel& raw) : raw_(raw) {}

  ProgramModel resolve() {
    declare_types();
    declare_objects();
    declare_members();
    resolve_type_clauses();
    resolve_member_details();
    resolve_objects();
    resolve_roots_and_inits();
    model_.reindex();
    return std::move(model_);
  }

 private:
  [[noreturn]] void fail(const std::string& message, int line) const {
    throw ParseError(message, line, 1);
  }

  TypeId type_ref(const std::string& name, int line) const {
    auto it = type_ids_.find(name);
    if (it == type_ids_.end()) fail("undeclared type '" + name + "'", line);
    return it->second;
  }

  ObjectId object_ref(const std::string& name, int line) const {
    auto it = object_ids_.find(name);
    if (it == object_ids_.end()) fail("undeclared object '" + name + "'", line);
    return it->second;
  }

  MethodId method_ref(const RawMethodToken& tok, int line) const {
    TypeId owner = type_ref(tok.owner, line);
    std::vector<TypeId> params;
    params.reserve(tok.params.size());
    for (const std::string& p : tok.params) params.push_back(type_ref(p, line));
    MethodId id = model_.find_method(owner, tok.name, params);
    if (!id.valid()) {
      std::string sig = tok.owner + "." + tok.name + "(";
      for (size_t i = 0; i < tok.params.size(); ++i) {
        if (i) sig += ",";
        sig += tok.params[i];
      }
      fail("undeclared method '" + sig + ")'", line);
    }
    return id;
  }

  FieldId field_ref(const RawFieldToken& tok, int line) const {
    TypeId owner = type_ref(tok.owner, line);
    FieldId id = model_.find_field(owner, tok.name);
    if (!id.valid()) {
      fail("undeclared field '" + tok.owner + "." + tok.name + "'", line);
    }
    return id;
  }

  void declare_types() {
    for (const RawType& rt : raw_.types) {
      if (type_ids_.count(rt.name)) {
        fail("duplicate type '" + rt.name + "'", rt.line);
      }
      TypeId id(static_cast<uint32_t>(model_.types.size()));
      type_ids_.emplace(rt.name, id);
      TypeDecl t;
      t.id = id;
      t.name = rt.name;
      t.kind = rt.kind;
      t.is_abstract = rt.is_abstract;
      model_.types.push_back(std::move(t));
    }
  }

  void declare_objects() {
    for (const RawObject& ro : raw_.objects) {
      if (object_ids_.count(ro.name)) {
        fail("duplicate object '" + ro.name + "'", ro.line);
      }
      ObjectId id(static_cast<uint32_t>(model_.heap.size()));
      object_ids_.emplace(ro.name, id);
      HeapObject o;
      o.id = id;
      o.name = ro.name;
      model_.heap.push_back(std::move(o));
    }
  }

  // Fields and methods get global ids in declaration order so that
  // signatures can be resolved before any body is visited.
  void declare_members() {
    for (size_t ti = 0; ti < raw_.types.size(); ++ti) {
      TypeDecl& t = model_.types[ti];
      for (const RawField& rf : raw_.types[ti].fields) {
        FieldId fid(static_cast<uint32_t>(model_.fields.size()));
        FieldDecl f;
        f.id = fid;
        f.owner = t.id;
        f.name = rf.name;
        f.is_static = rf.is_static;
        model_.fields.push_back(std::move(f));
        t.fields.push_back(fid);
      }
      for (const RawMethod& rm : raw_.types[ti].methods) {
        MethodId mid(static_cast<uint32_t>(model_.methods.size()));
        MethodDecl m;
        m.id = mid;
        m.owner = t.id;
        m.name = rm.name;
        m.is_static = rm.is_static;
        m.is_abstract = rm.is_abstract;
        model_.methods.push_back(std::move(m));
        t.methods.push_back(mid);
      }
    }
  }

  void resolve_type_clauses() {
    for (size_t ti = 0; ti < raw_.types.size(); ++ti) {
      const RawType& rt = raw_.types[ti];
      TypeDecl& t = model_.types[ti];
      if (!rt.super_name.empty()) {
        t.superclass = type_ref(rt.super_name, rt.line);
      }
      for (const std::string& iname : rt.interface_names) {
        TypeId iid = type_ref(iname, rt.line);
        for (TypeId seen : t.interfaces) {
          if (seen == iid) {
            fail("duplicate interface '" + iname + "' on '" + rt.name + "'",
                 rt.line);
          }
        }
        t.interfaces.push_back(iid);
      }
      if (!rt.element_name.empty()) {
        t.element_type = type_ref(rt.element_name, rt.line);
      }
    }
  }

  // Signatures first, bodies second: instruction operands may reference
  // methods declared later in the file.
  void resolve_member_details() {
    for (size_t ti = 0; ti < raw_.types.size(); ++ti) {
      const RawType& rt = raw_.types[ti];
      TypeDecl& t = model_.types[ti];
      for (size_t fi = 0; fi < rt.fields.size(); ++fi) {
        const RawField& rf = rt.fields[fi];
        FieldDecl& f = model_.fields[t.fields[fi].index()];
        f.type = type_ref(rf.type_name, rf.line);
        if (!rf.value_object.empty()) {
          t.static_field_values.emplace_back(
              f.id, object_ref(rf.value_object, rf.line));
        }
      }
      for (size_t mi = 0; mi < rt.methods.size(); ++mi) {
        const RawMethod& rm = rt.methods[mi];
        MethodDecl& m = model_.methods[t.methods[mi].index()];
        for (const std::string& p : rm.param_types) {
          m.params.push_back(type_ref(p, rm.line));
        }
        if (!rm.return_type.empty()) {
          m.return_type = type_ref(rm.return_type, rm.line);
        }
      }
    }
    for (size_t ti = 0; ti < raw_.types.size(); ++ti) {
      const RawType& rt = raw_.types[ti];
      TypeDecl& t = model_.types[ti];
      for (size_t mi = 0; mi < rt.methods.size(); ++mi) {
        resolve_body(rt.methods[mi], model_.methods[t.methods[mi].index()]);
      }
    }
  }

  // Local discipline (single assignment, def before use) is deliberately
  // not enforced here; the validator reports it as violation data.
  void resolve_body(const RawMethod& rm, MethodDecl& m) {
    if (m.is_abstract) return;  // no body, no local slots
    std::unordered_map<std::string, LocalId> locals;
    auto intern = [&](const std::string& name) {
      auto it = locals.find(name);
      if (it != locals.end()) return it->second;
      LocalId id(static_cast<uint32_t>(m.local_names.size()));
      locals.emplace(name, id);
      m.local_names.push_back(name);
      return id;
    };
    if (!m.is_static) intern("this");
    for (size_t i = 0; i < m.params.size(); ++i) {
      intern("p" + std::to_string(i));
    }

    for (const RawInstr& ri : rm.body) {
      auto dst = [&]() { return intern(*ri.dst); };
      auto local = [&](const std::string& n) { return intern(n); };
      auto call_locals = [&](size_t from) {
        std::vector<LocalId> out;
        for (size_t i = from; i < ri.call.size(); ++i) {
          out.push_back(local(ri.call[i]));
        }
        return out;
      };
      switch (ri.kind) {
        case RawInstr::kNew:
          m.body.push_back(Alloc{dst(), type_ref(ri.operand, ri.line)});
          break;
        case RawInstr::kNewArray:
          m.body.push_back(AllocArray{dst(), type_ref(ri.operand, ri.line)});
          break;
        case RawInstr::kConst:
          m.body.push_back(ConstLoad{dst(), object_ref(ri.operand, ri.line)});
          break;
        case RawInstr::kInvokeStatic: {
          InvokeStatic in;
          in.dst = ri.dst ? std::optional<LocalId>(intern(*ri.dst))
                          : std::nullopt;
          in.callee = method_ref(ri.callee, ri.line);
          in.args = call_locals(0);
          m.body.push_back(std::move(in));
          break;
        }
        case RawInstr::kInvokeVirtual: {
          InvokeVirtual in;
          in.dst = ri.dst ? std::optional<LocalId>(intern(*ri.dst))
                          : std::nullopt;
          in.declared = method_ref(ri.callee, ri.line);
          in.receiver = local(ri.call[0]);
          in.args = call_locals(1);
          m.body.push_back(std::move(in));
          break;
        }
        case RawInstr::kInvokeSpecial: {
          InvokeSpecial in;
          in.dst = ri.dst ? std::optional<LocalId>(intern(*ri.dst))
                          : std::nullopt;
          in.target = method_ref(ri.callee, ri.line);
          in.receiver = local(ri.call[0]);
          in.args = call_locals(1);
          m.body.push_back(std::move(in));
          break;
        }
        case RawInstr::kGetField:
          m.body.push_back(LoadField{dst(), local(ri.operand),
                                     field_ref(ri.field, ri.line)});
          break;
        case RawInstr::kPutField:
          m.body.push_back(StoreField{local(ri.operand),
                                      field_ref(ri.field, ri.line),
                                      local(ri.src)});
          break;
        case RawInstr::kGetStatic:
          m.body.push_back(LoadStatic{dst(), field_ref(ri.field, ri.line)});
          break;
        case RawInstr::kPutStatic:
          m.body.push_back(
              StoreStatic{field_ref(ri.field, ri.line), local(ri.src)});
          break;
        case RawInstr::kReturn:
          m.body.push_back(Return{ri.operand.empty()
                                      ? std::nullopt
                                      : std::optional<LocalId>(
                                            local(ri.operand))});
          break;
      }
    }
  }

  void resolve_objects() {
    for (size_t oi = 0; oi < raw_.objects.size(); ++oi) {
      const RawObject& ro = raw_.objects[oi];
      HeapObject& o = model_.heap[oi];
      o.type = type_ref(ro.type_name, ro.line);
      o.trivial = ro.trivial;
      for (const auto& [ftok, value] : ro.field_values) {
        o.field_values.emplace_back(field_ref(ftok, ro.line),
                                    object_ref(value, ro.line));
      }
      for (const std::string& e : ro.elements) {
        o.elements.push_back(object_ref(e, ro.line));
      }
    }
  }

  void resolve_roots_and_inits() {
    for (const auto& [tok, line] : raw_.roots) {
      model_.roots.push_back(method_ref(tok, line));
    }
    for (const auto& [name, line] : raw_.inits) {
      TypeDecl& t = model_.types[type_ref(name, line).index()];
      if (t.build_time_initialized) {
        fail("duplicate init for type '" + name + "'", line);
      }
      t.build_time_initialized = true;
    }
  }

  const RawModel& raw_;
  ProgramModel model_;
  std::unordered_map<std::string, TypeId> type_ids_;
  std::unordered_map<std::string, ObjectId> object_ids_;
};

}  // namespace

ProgramModel parse_model_unvalidated(const std::string& text) {
  RawModel raw = scan_lines(text);
  return Resolver(raw).resolve();
}

ProgramModel parse_model(const std::string& text) {
  ProgramModel model = parse_model_unvalidated(text);
  std::vector<Violation> violations = validate(model);
  if (!violations.empty()) {
    throw ModelViolationError(std::move(violations));
  }
  return model;
}

// --- serializer ------------------------------------------------------------

namespace {

void write_instruction(const ProgramModel& model, const MethodDecl& m,
                       const Instruction& in, std::string& out) {
  auto local = [&](LocalId id) -> const std::string& {
    return m.local_names[id.index()];
  };
  auto call_list = [&](LocalId receiver, const std::vector<LocalId>& args,
                       bool has_receiver) {
    std::string s = "(";
    bool first = true;
    if (has_receiver) {
      s += local(receiver);
      first = false;
    }
    for (LocalId a : args) {
      if (!first) s += ",";
      s += local(a);
      first = false;
    }
    s += ")";
    return s;
  };

  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Alloc>) {
          out += local(i.dst) + " = new " + model.type(i.type).name;
        } else if constexpr (std::is_same_v<T, AllocArray>) {
          out += local(i.dst) + " = newarray " + model.type(i.type).name;
        } else if constexpr (std::is_same_v<T, ConstLoad>) {
          out += local(i.dst) + " = const " + model.object(i.object).name;
        } else if constexpr (std::is_same_v<T, InvokeStatic>) {
          if (i.dst) out += local(*i.dst) + " = ";
          out += "invokestatic " + model.method_token(i.callee) +
                 call_list(LocalId(), i.args, false);
        } else if constexpr (std::is_same_v<T, InvokeVirtual>) {
          if (i.dst) out += local(*i.dst) + " = ";
          out += "invokevirtual " + model.method_token(i.declared) +
                 call_list(i.receiver, i.args, true);
        } else if constexpr (std::is_same_v<T, InvokeSpecial>) {
          if (i.dst) out += local(*i.dst) + " = ";
          out += "invokespecial " + model.method_token(i.target) +
                 call_list(i.receiver, i.args, true);
        } else if constexpr (std::is_same_v<T, LoadField>) {
          out += local(i.dst) + " = getfield " + local(i.object) + ", " +
                 model.field_token(i.field);
        } else if constexpr (std::is_same_v<T, StoreField>) {
          out += "putfield " + local(i.object) + ", " +
                 model.field_token(i.field) + ", " + local(i.src);
        } else if constexpr (std::is_same_v<T, LoadStatic>) {
          out += local(i.dst) + " = getstatic " + model.field_token(i.field);
        } else if constexpr (std::is_same_v<T, StoreStatic>) {
          out += "putstatic " + model.field_token(i.field) + ", " +
                 local(i.src);
        } else if constexpr (std::is_same_v<T, Return>) {
          out += "return";
          if (i.src) out += " " + local(*i.src);
        }
      },
      in);
}

}  // namespace

std::string serialize_body(const ProgramModel& model,
                           const MethodDecl& method) {
  std::string out;
  for (const Instruction& in : method.body) {
    write_instruction(model, method, in, out);
    out += "\n";
  }
  return out;
}

std::string serialize_model(const ProgramModel& model) {
  std::string out;
  for (const TypeDecl& t : model.types) {
    switch (t.kind) {
      case TypeKind::kClass:
        out += t.is_abstract ? "class abstract " : "class ";
        out += t.name;
        break;
      case TypeKind::kInterface:
        out += "interface " + t.name;
        break;
      case TypeKind::kArray:
        out += "array " + t.name + " of ";
        out += t.element_type ? model.type(*t.element_type).name : "?";
        break;
    }
    if (t.superclass) out += " extends " + model.type(*t.superclass).name;
    if (!t.interfaces.empty()) {
      out += " implements ";
      for (size_t i = 0; i < t.interfaces.size(); ++i) {
        if (i) out += ",";
        out += model.type(t.interfaces[i]).name;
      }
    }
    out += "\n";

    for (FieldId fid : t.fields) {
      const FieldDecl& f = model.field(fid);
      out += "  field ";
      if (f.is_static) out += "static ";
      out += f.name + ": " + model.type(f.type).name;
      for (const auto& [vf, vo] : t.static_field_values) {
        if (vf == fid) {
          out += " = " + model.object(vo).name;
          break;
        }
      }
      out += "\n";
    }
    for (MethodId mid : t.methods) {
      const MethodDecl& m = model.method(mid);
      out += "  method ";
      if (m.is_static) out += "static ";
      if (m.is_abstract) out += "abstract ";
      out += m.name + model.signature_string(m) + ": ";
      out += m.return_type ? model.type(*m.return_type).name : "void";
      out += "\n";
      for (const Instruction& in : m.body) {
        out += "    ";
        write_instruction(model, m, in, out);
        out += "\n";
      }
    }
    out += "\n";
  }

  for (const HeapObject& o : model.heap) {
    out += "object " + o.name + ": " + model.type(o.type).name;
    if (!o.field_values.empty()) {
      out += " {";
      for (size_t i = 0; i < o.field_values.size(); ++i) {
        if (i) out += ", ";
        out += model.field_token(o.field_values[i].first) + " -> " +
               model.object(o.field_values[i].second).name;
      }
      out += "}";
    } else if (!o.elements.empty()) {
      out += " [";
      for (size_t i = 0; i < o.elements.size(); ++i) {
        if (i) out += ", ";
        out += model.object(o.elements[i]).name;
      }
      out += "]";
    }
    if (o.trivial) out += " trivial";
    out += "\n";
  }
  for (const TypeDecl& t : model.types) {
    if (t.build_time_initialized) out += "init " + t.name + "\n";
  }
  for (MethodId r : model.roots) {
    out += "root " + model.method_token(r) + "\n";
  }
  return out;
}

std::optional<MethodTokenParts> split_method_token(std::string_view token) {
  size_t dot = token.find('.');
  size_t open = token.find('(', dot == std::string_view::npos ? 0 : dot);
  if (dot == std::string_view::npos || open == std::string_view::npos ||
      token.back() != ')' || dot == 0 || open <= dot + 1) {
    return std::nullopt;
  }
  MethodTokenParts parts;
  parts.owner = std::string(token.substr(0, dot));
  parts.name = std::string(token.substr(dot + 1, open - dot - 1));
  std::string_view sig = token.substr(open + 1, token.size() - open - 2);
  while (!sig.empty()) {
    size_t comma = sig.find(',');
    std::string_view piece =
        comma == std::string_view::npos ? sig : sig.substr(0, comma);
    if (piece.empty()) return std::nullopt;
    parts.params.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    sig.remove_prefix(comma + 1);
    if (sig.empty()) return std::nullopt;
  }
  return parts;
}

std::optional<FieldTokenParts> split_field_token(std::string_view token) {
  size_t dot = token.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 >= token.size()) {
    return std::nullopt;
  }
  return FieldTokenParts{std::string(token.substr(0, dot)),
                         std::string(token.substr(dot + 1))};
}

}  // namespace reach
