#include "bcproof/io.hpp"

#include <fstream>
#include <sstream>

namespace bcproof {

using Json = nlohmann::ordered_json;

SchemaError::SchemaError(std::string where, const std::string& message)
    : std::runtime_error(where + ": " + message), where_(std::move(where)) {}

// ---------------------------------------------------------------------------
// Writing.

namespace {

Json rational_array(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
  return out;
}

Json integer_or_null(const std::optional<Integer>& v) { return v ? Json(to_string(*v)) : Json(nullptr); }

void require_primitive(const CuttingPlane& cut) {
  const Vector& a = cut.halfspace.coeffs;
  if (nonzeros(a) == 0) return;
  if (!is_integral(a) || !equal(primitive_form(a).primitive, a)) {
    throw std::invalid_argument("cut coefficients " + to_string(a) + " are not a primitive integer vector");
  }
}

}  // namespace

Json to_json(const LinearConstraint& c) {
  Json j;
  j["coeffs"] = rational_array(c.coeffs);
  j["relation"] = to_string(c.relation);
  j["rhs"] = to_string(c.rhs);
  return j;
}

Json to_json(const Disjunction& d) {
  Json j;
  j["kind"] = to_string(d.kind());
  if (d.kind() == DisjunctionKind::Generic) {
    j["variable"] = d.variable();
    Json intervals = Json::array();
    for (const auto& iv : d.intervals()) {
      Json e;
      e["lower"] = integer_or_null(iv.lower);
      e["upper"] = integer_or_null(iv.upper);
      intervals.push_back(e);
    }
    j["intervals"] = intervals;
  } else {
    j["pi"] = rational_array(d.pi());
    j["pi0"] = to_string(d.pi0());
  }
  return j;
}

Json to_json(const CuttingPlane& cut) {
  require_primitive(cut);
  Json j;
  j["halfspace"] = to_json(cut.halfspace);
  Json cert;
  if (const auto* cg = std::get_if<CgCertificate>(&cut.certificate)) {
    cert["type"] = "cg";
    cert["multipliers"] = rational_array(cg->multipliers);
  } else {
    const auto& dc = std::get<DisjunctiveCertificate>(cut.certificate);
    cert["type"] = "disjunctive";
    cert["disjunction"] = to_json(dc.disjunction);
    Json ws = Json::array();
    for (const auto& w : dc.witnesses) ws.push_back(rational_array(w.multipliers));
    cert["witnesses"] = ws;
  }
  j["certificate"] = cert;
  return j;
}

Json to_json(const Instance& instance) {
  Json j;
  j["n_int"] = instance.n_int();
  j["n_cont"] = instance.n_cont();
  Json cs = Json::array();
  for (const auto& c : instance.polyhedron.constraints()) cs.push_back(to_json(c));
  j["constraints"] = cs;
  j["objective"] = rational_array(instance.objective);
  j["bound"] = to_string(instance.bound);
  j["goal"] = to_string(instance.goal);
  return j;
}

Json to_json(const ProofTree& tree) {
  Json j;
  j["mode"] = to_string(tree.mode());
  j["instance"] = to_json(tree.instance());
  Json nodes = Json::array();
  for (const auto& n : tree.nodes()) {
    Json e;
    e["id"] = n.id;
    e["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    Json added = Json::array();
    for (const auto& c : n.added) added.push_back(to_json(c));
    e["added"] = added;
    e["kind"] = to_string(n.kind);
    switch (n.kind) {
      case NodeKind::Branch:
        e["disjunction"] = to_json(*n.disjunction);
        e["children"] = n.children;
        break;
      case NodeKind::Cut:
        e["cut"] = to_json(*n.cut);
        e["children"] = n.children;
        break;
      case NodeKind::Leaf:
        e["reason"] = to_string(n.reason);
        break;
      case NodeKind::Pending:
        break;
    }
    nodes.push_back(e);
  }
  j["nodes"] = nodes;
  return j;
}

Json to_json(const VerifyReport& report) {
  Json j;
  j["accepted"] = report.accepted();
  if (report.issue) {
    j["node"] = report.issue->node;
    j["condition"] = to_string(report.issue->condition);
    j["message"] = report.issue->message;
  }
  return j;
}

std::string write_instance(const Instance& instance) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["instance"] = to_json(instance);
  return doc.dump(2) + "\n";
}

std::string write_proof(const ProofTree& tree) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["proof"] = to_json(tree);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reading.

namespace {

std::string child_path(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child_path(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Json& field(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child_path(path, key), "missing field");
  return *it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::size_t as_index(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Rational as_rational(const Json& j, const std::string& path) {
  // Exact values are strings; small JSON integers are tolerated on input.
  if (j.is_number_integer()) return Rational(j.get<long long>());
  try {
    return parse_rational(as_string(j, path));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

Integer as_integer(const Json& j, const std::string& path) {
  const Rational r = as_rational(j, path);
  if (!is_integer(r)) throw SchemaError(path, "expected an integer");
  return floor(r);
}

Vector as_vector(const Json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  if (size && j.size() != *size) {
    throw SchemaError(path, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
  }
  Vector v = zeros(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_rational(j[i], child_path(path, i));
  return v;
}

template <typename F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
}

LinearConstraint read_constraint(const Json& j, const std::string& path, std::size_t dim) {
  LinearConstraint c;
  c.coeffs = as_vector(field(j, path, "coeffs"), child_path(path, "coeffs"), dim);
  c.relation = wrap(child_path(path, "relation"),
                    [&] { return parse_relation(as_string(field(j, path, "relation"), child_path(path, "relation"))); });
  c.rhs = as_rational(field(j, path, "rhs"), child_path(path, "rhs"));
  return c;
}

std::vector<LinearConstraint> read_constraints(const Json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_constraint(j[i], child_path(path, i), dim));
  return out;
}

Disjunction read_disjunction(const Json& j, const std::string& path, std::size_t n, std::size_t d) {
  const auto kind = wrap(child_path(path, "kind"),
                         [&] { return parse_disjunction_kind(as_string(field(j, path, "kind"), child_path(path, "kind"))); });
  return wrap(path, [&] {
    if (kind == DisjunctionKind::Generic) {
      const std::size_t var = as_index(field(j, path, "variable"), child_path(path, "variable"));
      const Json& ivs = field(j, path, "intervals");
      if (!ivs.is_array()) throw SchemaError(child_path(path, "intervals"), "expected an array");
      std::vector<Interval> intervals;
      for (std::size_t i = 0; i < ivs.size(); ++i) {
        const std::string ip = child_path(child_path(path, "intervals"), i);
        Interval iv;
        const Json& lo = field(ivs[i], ip, "lower");
        const Json& hi = field(ivs[i], ip, "upper");
        if (!lo.is_null()) iv.lower = as_integer(lo, child_path(ip, "lower"));
        if (!hi.is_null()) iv.upper = as_integer(hi, child_path(ip, "upper"));
        intervals.push_back(iv);
      }
      return make_interval_partition(var, std::move(intervals), n, d);
    }
    const Vector pi = as_vector(field(j, path, "pi"), child_path(path, "pi"), n + d);
    const Integer pi0 = as_integer(field(j, path, "pi0"), child_path(path, "pi0"));
    Disjunction split = make_split(pi, pi0, n, d);
    if (split.kind() != kind) throw SchemaError(child_path(path, "kind"), "does not match pi");
    return split;
  });
}

CuttingPlane read_cut(const Json& j, const std::string& path, std::size_t n, std::size_t d) {
  CuttingPlane cut;
  cut.halfspace = read_constraint(field(j, path, "halfspace"), child_path(path, "halfspace"), n + d);
  if (cut.halfspace.relation != Relation::LessEqual) {
    throw SchemaError(child_path(child_path(path, "halfspace"), "relation"), "cuts are stored as <=");
  }
  const std::string cp = child_path(path, "certificate");
  const Json& cert = field(j, path, "certificate");
  const std::string type = as_string(field(cert, cp, "type"), child_path(cp, "type"));
  if (type == "cg") {
    cut.certificate = CgCertificate{as_vector(field(cert, cp, "multipliers"), child_path(cp, "multipliers"))};
  } else if (type == "disjunctive") {
    DisjunctiveCertificate dc{read_disjunction(field(cert, cp, "disjunction"), child_path(cp, "disjunction"), n, d), {}};
    const Json& ws = field(cert, cp, "witnesses");
    if (!ws.is_array()) throw SchemaError(child_path(cp, "witnesses"), "expected an array");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      dc.witnesses.push_back({as_vector(ws[i], child_path(child_path(cp, "witnesses"), i))});
    }
    cut.certificate = std::move(dc);
  } else {
    throw SchemaError(child_path(cp, "type"), "unknown certificate type '" + type + "'");
  }
  wrap(child_path(path, "halfspace"), [&] {
    require_primitive(cut);
    return 0;
  });
  return cut;
}

Instance read_instance_json(const Json& j, const std::string& path) {
  const std::size_t n = as_index(field(j, path, "n_int"), child_path(path, "n_int"));
  const std::size_t d = as_index(field(j, path, "n_cont"), child_path(path, "n_cont"));
  auto constraints = read_constraints(field(j, path, "constraints"), child_path(path, "constraints"), n + d);
  Vector objective = as_vector(field(j, path, "objective"), child_path(path, "objective"), n + d);
  Rational bound = as_rational(field(j, path, "bound"), child_path(path, "bound"));
  const Goal goal = wrap(child_path(path, "goal"),
                         [&] { return parse_goal(as_string(field(j, path, "goal"), child_path(path, "goal"))); });
  return Instance(Polyhedron(n, d, std::move(constraints)), std::move(objective), std::move(bound), goal);
}

ProofTree read_proof_json(const Json& j, const std::string& path) {
  const ProofMode mode = wrap(child_path(path, "mode"),
                              [&] { return parse_proof_mode(as_string(field(j, path, "mode"), child_path(path, "mode"))); });
  Instance inst = read_instance_json(field(j, path, "instance"), child_path(path, "instance"));
  const std::size_t n = inst.n_int();
  const std::size_t d = inst.n_cont();
  ProofTree tree(std::move(inst), mode);

  const std::string np = child_path(path, "nodes");
  const Json& nodes = field(j, path, "nodes");
  if (!nodes.is_array()) throw SchemaError(np, "expected an array");
  const std::size_t count = nodes.size();
  for (std::size_t i = 0; i < count; ++i) {
    const std::string p = child_path(np, i);
    const Json& e = nodes[i];
    ProofNode node;
    node.id = as_index(field(e, p, "id"), child_path(p, "id"));
    if (node.id != i) throw SchemaError(child_path(p, "id"), "expected id " + std::to_string(i));
    const Json& parent = field(e, p, "parent");
    if (!parent.is_null()) {
      node.parent = as_index(parent, child_path(p, "parent"));
      if (*node.parent >= count) throw SchemaError(child_path(p, "parent"), "no node with id " + std::to_string(*node.parent));
    }
    node.added = read_constraints(field(e, p, "added"), child_path(p, "added"), n + d);
    node.kind = wrap(child_path(p, "kind"),
                     [&] { return parse_node_kind(as_string(field(e, p, "kind"), child_path(p, "kind"))); });
    auto read_children = [&] {
      const Json& kids = field(e, p, "children");
      if (!kids.is_array()) throw SchemaError(child_path(p, "children"), "expected an array");
      for (std::size_t k = 0; k < kids.size(); ++k) {
        const std::size_t c = as_index(kids[k], child_path(child_path(p, "children"), k));
        if (c >= count) throw SchemaError(child_path(child_path(p, "children"), k), "no node with id " + std::to_string(c));
        node.children.push_back(c);
      }
    };
    switch (node.kind) {
      case NodeKind::Branch:
        node.disjunction = read_disjunction(field(e, p, "disjunction"), child_path(p, "disjunction"), n, d);
        read_children();
        break;
      case NodeKind::Cut:
        node.cut = read_cut(field(e, p, "cut"), child_path(p, "cut"), n, d);
        read_children();
        break;
      case NodeKind::Leaf:
        node.reason = wrap(child_path(p, "reason"), [&] {
          return parse_leaf_reason(as_string(field(e, p, "reason"), child_path(p, "reason")));
        });
        break;
      case NodeKind::Pending:
        break;
    }
    tree.push_raw(std::move(node));
  }
  return tree;
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(column), "invalid JSON");
  }
}

const Json& body(const Json& doc, const std::string& key) {
  const Json& version = field(doc, "", "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw SchemaError("/format_version", "unsupported format version (expected " + std::to_string(kFormatVersion) + ")");
  }
  return field(doc, "", key);
}

}  // namespace

DocumentKind document_kind(std::string_view text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  if (doc.contains("proof")) return DocumentKind::Proof;
  if (doc.contains("instance")) return DocumentKind::Instance;
  throw SchemaError("", "neither an instance nor a proof document");
}

Instance read_instance(std::string_view text) {
  const Json doc = parse_document(text);
  return read_instance_json(body(doc, "instance"), "/instance");
}

ProofTree read_proof(std::string_view text) {
  const Json doc = parse_document(text);
  return read_proof_json(body(doc, "proof"), "/proof");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell(r[i]);
    out += "\n";
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace bcproof
