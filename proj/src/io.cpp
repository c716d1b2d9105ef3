#include "modtrace/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modtrace/category.hpp"
#include "modtrace/decomp.hpp"
#include "modtrace/errors.hpp"

namespace modtrace {

using nlohmann::json;

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s.to_string());
  return a;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

json terms_json(const std::vector<StructureTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back(json::array({t.i, t.j, t.k, t.coeff.to_string()}));
  return a;
}

const json& field_of(const json& doc, const char* key) {
  if (!doc.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  return doc.at(key);
}

Scalar scalar_of(const FieldSpec& f, const json& x) {
  if (x.is_string()) return f.parse_scalar(x.get<std::string>());
  if (x.is_number_integer()) return f.from_int(x.get<long long>());
  throw MalformedInput("scalar must be a string or integer");
}

Vec vec_of(const FieldSpec& f, const json& a, std::size_t n, const char* what) {
  if (!a.is_array() || a.size() != n) throw MalformedInput(std::string(what) + " must have length " + std::to_string(n));
  Vec v;
  for (const auto& x : a) v.push_back(scalar_of(f, x));
  return v;
}

Matrix matrix_of(const FieldSpec& f, const json& rows, std::size_t n, std::size_t m, const char* what) {
  if (!rows.is_array() || rows.size() != n) throw MalformedInput(std::string(what) + ": wrong number of rows");
  Matrix out(f, n, m);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != m) throw MalformedInput(std::string(what) + ": wrong row length");
    for (std::size_t c = 0; c < m; ++c) out.set(r, c, scalar_of(f, rows[r][c]));
  }
  return out;
}

std::vector<StructureTerm> terms_of(const FieldSpec& f, const json& a, const char* what) {
  if (!a.is_array()) throw MalformedInput(std::string(what) + " must be an array");
  std::vector<StructureTerm> out;
  for (const auto& t : a) {
    if (!t.is_array() || t.size() != 4 || !t[0].is_number_unsigned() || !t[1].is_number_unsigned() ||
        !t[2].is_number_unsigned())
      throw MalformedInput(std::string(what) + " entries must be [i, j, k, scalar]");
    out.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>(), scalar_of(f, t[3])});
  }
  return out;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

unsigned parse_param(const std::string& s, const std::string& key) {
  std::string digits = s.rfind(key + "=", 0) == 0 ? s.substr(key.size() + 1) : s;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw MalformedInput("expected " + key + "=<integer>, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(digits));
}

}  // namespace

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string hopf_to_json(const HopfPresentation& h) {
  json doc;
  doc["format"] = "hopf";
  doc["name"] = h.name();
  doc["field"] = h.field().to_string();
  doc["dim"] = h.dim();
  doc["labels"] = h.basis_labels();
  doc["mult"] = terms_json(h.mult_terms());
  doc["comult"] = terms_json(h.comult_terms());
  doc["unit"] = vec_json(h.unit());
  doc["counit"] = vec_json(h.counit());
  doc["antipode"] = matrix_json(h.antipode());
  doc["pivot"] = vec_json(h.pivot());
  doc["generators"] = h.generators();
  return doc.dump(1);
}

HopfData hopf_from_json(std::string_view text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw MalformedInput("Hopf document must be an object");
  try {
    FieldSpec f = FieldSpec::parse(field_of(doc, "field").get<std::string>());
    HopfData d(f);
    d.name = doc.value("name", std::string("unnamed"));
    const json& dim = field_of(doc, "dim");
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) throw MalformedInput("dim must be a positive integer");
    d.dim = dim.get<std::size_t>();
    if (doc.contains("labels")) d.basis_labels = doc.at("labels").get<std::vector<std::string>>();
    else
      for (std::size_t i = 0; i < d.dim; ++i) d.basis_labels.push_back("b" + std::to_string(i));
    d.mult = terms_of(f, field_of(doc, "mult"), "mult");
    d.comult = terms_of(f, field_of(doc, "comult"), "comult");
    d.unit = vec_of(f, field_of(doc, "unit"), d.dim, "unit");
    d.counit = vec_of(f, field_of(doc, "counit"), d.dim, "counit");
    d.antipode = matrix_of(f, field_of(doc, "antipode"), d.dim, d.dim, "antipode");
    d.pivot = vec_of(f, field_of(doc, "pivot"), d.dim, "pivot");
    d.generators = field_of(doc, "generators").get<std::vector<std::size_t>>();
    return d;
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("malformed Hopf document: ") + e.what());
  }
}

std::string module_to_json(const ModuleRep& m) {
  json doc;
  doc["format"] = "module";
  doc["algebra"] = m.algebra()->name();
  doc["algebra_hash"] = hex64(m.algebra()->fingerprint());
  doc["label"] = m.label();
  doc["dim"] = m.dim();
  json gens = json::array();
  for (const auto& g : m.generator_actions()) gens.push_back(matrix_json(g));
  doc["generator_actions"] = std::move(gens);
  return doc.dump(1);
}

ModulePtr module_from_json(std::string_view text, const HopfPtr& h) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw MalformedInput("module document must be an object");
  try {
    if (doc.contains("algebra_hash") && doc.at("algebra_hash").get<std::string>() != hex64(h->fingerprint()))
      throw MalformedInput("module document was written for a different algebra");
    const std::size_t d = field_of(doc, "dim").get<std::size_t>();
    const std::string label = doc.value("label", std::string("module"));
    const FieldSpec& f = h->field();
    auto read_list = [&](const json& a, std::size_t count, const char* what) {
      if (!a.is_array() || a.size() != count)
        throw MalformedInput(std::string(what) + " must list " + std::to_string(count) + " matrices");
      std::vector<Matrix> out;
      for (const auto& m : a) out.push_back(matrix_of(f, m, d, d, what));
      return out;
    };
    ModulePtr m;
    if (doc.contains("generator_actions"))
      m = ModuleRep::from_generator_actions(h, label,
                                            read_list(doc.at("generator_actions"), h->generators().size(),
                                                      "generator_actions"),
                                            false);
    else
      m = ModuleRep::from_actions(h, label, read_list(field_of(doc, "actions"), h->dim(), "actions"), false);
    return m;
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("malformed module document: ") + e.what());
  }
}

std::string document_kind(std::string_view text) {
  json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("format") || !doc.at("format").is_string())
    throw MalformedInput("document has no format field");
  std::string kind = doc.at("format").get<std::string>();
  if (kind != "hopf" && kind != "module") throw MalformedInput("unknown document format '" + kind + "'");
  return kind;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Family resolve_algebra(std::string_view ref) {
  if (ref.rfind("builder:", 0) != 0) {
    HopfPtr h = HopfPresentation::create(hopf_from_json(read_text_file(std::string(ref))));
    ValidationReport r = validate_hopf(*h);
    if (r.passed()) r = validate_pivot(*h);
    if (!r.passed()) throw InvalidHopfData(h->name() + ": " + r.summary());
    Family fam;
    fam.algebra = h;
    fam.modules.emplace_back("trivial", trivial_module(h));
    fam.simples = {"trivial"};
    return fam;
  }
  auto parts = split(ref.substr(8), ':');
  const std::string& kind = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n) throw MalformedInput("malformed builder reference '" + std::string(ref) + "'");
  };
  if (kind == "group") {
    need(3);
    return build_group_algebra(FieldSpec::parse(parts[2]), GroupTable::named(parts[1]));
  }
  if (kind == "double") {
    need(3);
    return build_drinfeld_double_group(FieldSpec::parse(parts[2]), GroupTable::named(parts[1]));
  }
  if (kind == "usl2") {
    need(2);
    return build_restricted_usl2(parse_param(parts[1], "p"));
  }
  if (kind == "quantum") {
    need(2);
    return build_small_quantum_sl2(parse_param(parts[1], "l"));
  }
  if (kind == "sweedler") {
    need(2);
    return build_sweedler(FieldSpec::parse(parts[1]));
  }
  throw MalformedInput("unknown builder '" + kind + "'");
}

ModulePtr resolve_module(const Family& fam, std::string_view ref, std::uint64_t seed) {
  if (ref.rfind("module:", 0) != 0) {
    ModulePtr m = module_from_json(read_text_file(std::string(ref)), fam.algebra);
    ValidationReport r = validate_module(*m);
    if (!r.passed()) throw InvalidHopfData("module '" + m->label() + "': " + r.summary());
    return m;
  }
  std::string name(ref.substr(7));
  if (name == "P1") {
    ModulePtr m = projective_cover_unit(fam.algebra, seed).summand.module;
    return ModuleRep::from_generator_actions(fam.algebra, "P1", m->generator_actions(), false);
  }
  if (name.rfind("proj:", 0) == 0) {
    const std::size_t k = parse_param(name.substr(5), "k");
    DecompositionResult d = decompose(regular_module(fam.algebra), seed);
    if (k >= d.summands.size())
      throw MalformedInput("the regular module has " + std::to_string(d.summands.size()) + " summands");
    return ModuleRep::from_generator_actions(fam.algebra, name, d.summands[k].module->generator_actions(), false);
  }
  if (name.rfind("dual:", 0) == 0) return dual_module(fam.module(name.substr(5)));
  return fam.module(name);
}

}  // namespace modtrace
