#include "condlog/io.hpp"

#include <fstream>
#include <sstream>

#include "condlog/errors.hpp"
#include "condlog/parser.hpp"

namespace condlog {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& field(const json& doc, const char* name) {
  if (!doc.contains(name)) fail("model", std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array, got " + v.dump());
  return v;
}

const json& as_object(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object, got " + v.dump());
  return v;
}

std::vector<std::string> name_list(const json& v, const std::string& where, std::size_t limit) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    std::string name = as_string(v[i], where + "[" + std::to_string(i) + "]");
    if (std::find(out.begin(), out.end(), name) != out.end())
      fail(where, "duplicate name '" + name + "'");
    out.push_back(std::move(name));
  }
  if (out.size() > limit) fail(where, "more than " + std::to_string(limit) + " entries");
  return out;
}

std::size_t world_ref(const Frame& f, const json& v, const std::string& where) {
  const std::string name = as_string(v, where);
  auto i = f.world_index(name);
  if (!i) fail(where, "unknown world '" + name + "'");
  return *i;
}

std::size_t element_ref(const Frame& f, const json& v, const std::string& where) {
  const std::string name = as_string(v, where);
  auto i = f.element_index(name);
  if (!i) fail(where, "unknown domain element '" + name + "'");
  return *i;
}

WorldSet world_set(const Frame& f, const json& v, const std::string& where) {
  WorldSet out = 0;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i)
    out |= bit(world_ref(f, v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string describe_set(const Frame& f, WorldSet s) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.num_worlds(); ++i)
    if (contains(s, i)) out += (out.size() > 1 ? "," : "") + f.world_names[i];
  return out + "}";
}

std::vector<std::vector<WorldSet>> load_order(const Frame& f, const json& order) {
  const std::size_t n = f.num_worlds();
  std::vector<std::vector<WorldSet>> below(n, std::vector<WorldSet>(n, 0));
  for (const auto& [wname, pairs] : as_object(order, "order").items()) {
    const std::string where = "order." + wname;
    const std::size_t w = world_ref(f, json(wname), where);
    for (std::size_t i = 0; i < as_array(pairs, where).size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      const json& pair = as_array(pairs[i], at);
      if (pair.size() != 2) fail(at, "expected a pair [x, y]");
      const std::size_t x = world_ref(f, pair[0], at);
      const std::size_t y = world_ref(f, pair[1], at);
      if (!contains(f.access[w], x) || !contains(f.access[w], y))
        fail(at, "pair (" + f.world_names[x] + "," + f.world_names[y] + ") is outside R(" +
                     wname + ") x R(" + wname + ")");
      below[w][y] |= bit(x);
    }
  }
  return below;
}

json order_to_json(const Frame& f) {
  json out = json::object();
  for (std::size_t w = 0; w < f.num_worlds(); ++w) {
    json pairs = json::array();
    for (std::size_t y = 0; y < f.num_worlds(); ++y)
      for (std::size_t x = 0; x < f.num_worlds(); ++x)
        if (f.precedes(w, x, y)) pairs.push_back({f.world_names[x], f.world_names[y]});
    out[f.world_names[w]] = pairs;
  }
  return out;
}

json world_list(const Frame& f, WorldSet s) {
  json out = json::array();
  for (std::size_t i = 0; i < f.num_worlds(); ++i)
    if (contains(s, i)) out.push_back(f.world_names[i]);
  return out;
}

void load_interpretation(Model& m, const json& doc) {
  const Frame& f = m.frame;
  for (const auto& [pname, per_world] : as_object(doc, "interpretation").items()) {
    const std::string where = "interpretation." + pname;
    auto index = parse_predicate_index(pname);
    if (!index) fail(where, "not a predicate name");
    std::optional<std::size_t> arity;
    std::vector<std::tuple<std::size_t, std::vector<std::size_t>>> facts;
    for (const auto& [wname, tuples] : as_object(per_world, where).items()) {
      const std::string wat = where + "." + wname;
      const std::size_t w = world_ref(f, json(wname), wat);
      for (std::size_t i = 0; i < as_array(tuples, wat).size(); ++i) {
        const std::string at = wat + "[" + std::to_string(i) + "]";
        std::vector<std::size_t> args;
        if (tuples[i].is_string()) {
          args.push_back(element_ref(f, tuples[i], at));
        } else {
          for (const json& e : as_array(tuples[i], at)) args.push_back(element_ref(f, e, at));
        }
        if (arity && *arity != args.size())
          fail(at, "tuple length " + std::to_string(args.size()) + " differs from arity " +
                       std::to_string(*arity));
        arity = args.size();
        facts.emplace_back(w, std::move(args));
      }
    }
    if (!arity) continue;  // empty everywhere, same as absent
    const Predicate p{*index, static_cast<std::uint32_t>(*arity)};
    m.interp.ext[p].assign(tuple_count(f.domain_size(), *arity), 0);
    for (const auto& [w, args] : facts) {
      std::size_t tuple = 0;
      for (std::size_t i = args.size(); i-- > 0;) tuple = tuple * f.domain_size() + args[i];
      m.interp.set(p, tuple, w, true, f.domain_size());
    }
  }
}

json interpretation_to_json(const Model& m) {
  const Frame& f = m.frame;
  json out = json::object();
  for (const auto& [p, rows] : m.interp.ext) {
    json per_world = json::object();
    for (std::size_t w = 0; w < f.num_worlds(); ++w) {
      json tuples = json::array();
      for (std::size_t t = 0; t < rows.size(); ++t) {
        if (!contains(rows[t], w)) continue;
        json args = json::array();
        std::size_t rest = t;
        for (std::uint32_t i = 0; i < p.arity; ++i) {
          args.push_back(f.domain_names[rest % f.domain_size()]);
          rest /= f.domain_size();
        }
        tuples.push_back(args);
      }
      if (!tuples.empty()) per_world[f.world_names[w]] = tuples;
    }
    if (!per_world.empty()) out[predicate_name(p)] = per_world;
  }
  return out;
}

}  // namespace

Model load_model(const json& doc) {
  if (!doc.is_object()) fail("model", "expected a JSON object");
  Model m;
  Frame& f = m.frame;
  const std::string kind = as_string(field(doc, "kind"), "kind");
  if (kind == "selection")
    f.kind = FrameKind::Selection;
  else if (kind == "ordering")
    f.kind = FrameKind::Ordering;
  else if (kind == "quasi-selection")
    f.kind = FrameKind::QuasiSelection;
  else
    fail("kind", "unknown frame kind '" + kind + "'");

  f.world_names = name_list(field(doc, "worlds"), "worlds", kMaxWorlds);
  if (f.world_names.empty()) fail("worlds", "a frame needs at least one world");
  f.domain_names = name_list(field(doc, "domain"), "domain", kMaxDomain);
  const std::size_t n = f.num_worlds();

  f.access.assign(n, 0);
  const json& r = as_array(field(doc, "R"), "R");
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::string at = "R[" + std::to_string(i) + "]";
    if (!r[i].is_array() || r[i].size() != 2) fail(at, "expected a pair [w, v]");
    f.access[world_ref(f, r[i][0], at)] |= bit(world_ref(f, r[i][1], at));
  }

  f.local.assign(n, f.all_elements());
  if (doc.contains("localDomains")) {
    for (const auto& [wname, elems] : as_object(doc.at("localDomains"), "localDomains").items()) {
      const std::string where = "localDomains." + wname;
      const std::size_t w = world_ref(f, json(wname), where);
      DomainSet d = 0;
      for (std::size_t i = 0; i < as_array(elems, where).size(); ++i)
        d |= bit(element_ref(f, elems[i], where + "[" + std::to_string(i) + "]"));
      f.local[w] = d;
    }
  }

  if (f.kind == FrameKind::Selection) {
    if (n > kMaxSelectionWorlds)
      throw ResourceLimit("selection frames are limited to " +
                          std::to_string(kMaxSelectionWorlds) + " worlds");
    const std::string rule = as_string(field(doc, "default"), "default");
    if (rule == "empty")
      fill_default_table(f, SelectionDefault::Empty);
    else if (rule == "centering")
      fill_default_table(f, SelectionDefault::Centering);
    else
      fail("default", "expected \"empty\" or \"centering\", got '" + rule + "'");
    std::vector<bool> seen(f.table.size(), false);
    const json& entries = doc.contains("selection") ? as_array(doc.at("selection"), "selection")
                                                    : json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string at = "selection[" + std::to_string(i) + "]";
      const json& e = as_object(entries[i], at);
      for (const char* key : {"P", "w", "out"})
        if (!e.contains(key)) fail(at, std::string("missing field '") + key + "'");
      const WorldSet p = world_set(f, e.at("P"), at + ".P");
      const std::size_t w = world_ref(f, e.at("w"), at + ".w");
      const std::size_t slot = static_cast<std::size_t>(p) * n + w;
      if (seen[slot]) fail(at, "duplicate entry for (P, w)");
      seen[slot] = true;
      f.table[slot] = world_set(f, e.at("out"), at + ".out");
    }
    for (WorldSet p = 0; p < (WorldSet{1} << n); ++p)
      for (std::size_t w = 0; w < n; ++w) {
        const WorldSet out = f.select(p, w);
        if (!subset_of(out, f.access[w]))
          fail("selection", "f(" + describe_set(f, p) + "," + f.world_names[w] + ") = " +
                                describe_set(f, out) + " is not within R(" + f.world_names[w] +
                                ") = " + describe_set(f, f.access[w]));
      }
  } else {
    if (f.kind == FrameKind::QuasiSelection) {
      const json& strategy = field(doc, "quasiStrategy");
      const json* order = doc.contains("order") ? &doc.at("order") : nullptr;
      std::string name;
      if (strategy.is_object()) {
        name = as_string(field(strategy, "strategy"), "quasiStrategy.strategy");
        if (strategy.contains("order")) order = &strategy.at("order");
      } else {
        name = as_string(strategy, "quasiStrategy");
      }
      if (name != "min-of-order") fail("quasiStrategy", "only \"min-of-order\" is supported");
      if (!order) fail("quasiStrategy", "missing embedded 'order'");
      f.below = load_order(f, *order);
    } else {
      f.below = load_order(f, field(doc, "order"));
    }
  }

  if (doc.contains("interpretation")) load_interpretation(m, doc.at("interpretation"));
  return m;
}

Model load_model_text(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("model: not valid JSON");
  return load_model(doc);
}

json model_to_json(const Model& m) {
  const Frame& f = m.frame;
  json doc;
  switch (f.kind) {
    case FrameKind::Selection: doc["kind"] = "selection"; break;
    case FrameKind::Ordering: doc["kind"] = "ordering"; break;
    case FrameKind::QuasiSelection: doc["kind"] = "quasi-selection"; break;
  }
  doc["worlds"] = f.world_names;
  json r = json::array();
  for (std::size_t w = 0; w < f.num_worlds(); ++w)
    for (std::size_t v = 0; v < f.num_worlds(); ++v)
      if (contains(f.access[w], v)) r.push_back({f.world_names[w], f.world_names[v]});
  doc["R"] = r;
  doc["domain"] = f.domain_names;
  if (std::any_of(f.local.begin(), f.local.end(),
                  [&](DomainSet d) { return d != f.all_elements(); })) {
    json local = json::object();
    for (std::size_t w = 0; w < f.num_worlds(); ++w) {
      json elems = json::array();
      for (std::size_t a = 0; a < f.domain_size(); ++a)
        if (contains(f.local[w], a)) elems.push_back(f.domain_names[a]);
      local[f.world_names[w]] = elems;
    }
    doc["localDomains"] = local;
  }
  if (f.kind == FrameKind::Selection) {
    Frame defaults = f;
    fill_default_table(defaults, f.default_rule);
    doc["default"] = f.default_rule == SelectionDefault::Empty ? "empty" : "centering";
    json entries = json::array();
    for (WorldSet p = 0; p < (WorldSet{1} << f.num_worlds()); ++p)
      for (std::size_t w = 0; w < f.num_worlds(); ++w)
        if (f.select(p, w) != defaults.select(p, w))
          entries.push_back({{"P", world_list(f, p)},
                             {"w", f.world_names[w]},
                             {"out", world_list(f, f.select(p, w))}});
    doc["selection"] = entries;
  } else {
    doc["order"] = order_to_json(f);
    if (f.kind == FrameKind::QuasiSelection) doc["quasiStrategy"] = "min-of-order";
  }
  doc["interpretation"] = interpretation_to_json(m);
  return doc;
}

ProofScript load_proof(const json& doc) {
  if (!doc.is_object()) fail("proof", "expected a JSON object");
  if (!doc.contains("logic")) fail("proof", "missing field 'logic'");
  ProofScript proof;
  const std::string name = as_string(doc.at("logic"), "logic");
  auto logic = parse_logic(name);
  if (!logic) fail("logic", "unknown logic '" + name + "'");
  proof.logic = *logic;
  const Language lang = logic_language(*logic);
  if (!doc.contains("lines")) return proof;
  const json& lines = as_array(doc.at("lines"), "lines");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string at = "lines[" + std::to_string(i) + "] (line " + std::to_string(i + 1) + ")";
    const json& line = as_object(lines[i], at);
    if (!line.contains("formula") || !line.contains("just"))
      fail(at, "expected fields 'formula' and 'just'");
    ProofLine out;
    try {
      out.formula = parse_formula(as_string(line.at("formula"), at + ".formula"), lang);
    } catch (const ParseError& e) {
      fail(at + ".formula", e.what());
    }
    const json& just = as_object(line.at("just"), at + ".just");
    if (just.contains("axiom")) {
      out.just.axiom = true;
      out.just.id = as_string(just.at("axiom"), at + ".just.axiom");
      const auto& known = all_schema_ids();
      if (std::find(known.begin(), known.end(), out.just.id) == known.end())
        fail(at, "unknown axiom schema '" + out.just.id + "'");
    } else if (just.contains("rule")) {
      out.just.axiom = false;
      out.just.id = as_string(just.at("rule"), at + ".just.rule");
      const auto& known = all_rule_ids();
      if (std::find(known.begin(), known.end(), out.just.id) == known.end())
        fail(at, "unknown rule '" + out.just.id + "'");
      const json& premises =
          just.contains("premises") ? as_array(just.at("premises"), at + ".just.premises")
                                    : json::array();
      for (const json& k : premises) {
        if (!k.is_number_integer()) fail(at, "premise numbers must be integers");
        const auto number = k.get<long long>();
        if (number < 1 || static_cast<std::size_t>(number) > i)
          fail(at, "premise " + std::to_string(number) + " does not cite an earlier line");
        out.just.premises.push_back(static_cast<std::size_t>(number));
      }
    } else {
      fail(at, "justification needs 'axiom' or 'rule'");
    }
    proof.lines.push_back(std::move(out));
  }
  return proof;
}

ProofScript load_proof_text(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("proof: not valid JSON");
  return load_proof(doc);
}

json proof_to_json(const ProofScript& proof) {
  json lines = json::array();
  for (const ProofLine& line : proof.lines) {
    json just;
    if (line.just.axiom) {
      just["axiom"] = line.just.id;
    } else {
      just["rule"] = line.just.id;
      just["premises"] = line.just.premises;
    }
    lines.push_back({{"formula", print_formula(line.formula)}, {"just", just}});
  }
  return {{"logic", std::string(logic_name(proof.logic))}, {"lines", lines}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace condlog
