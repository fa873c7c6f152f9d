// File-driven front end. All verdict logic lives in the library; this
// translates files and flags, and maps outcomes onto exit codes:
//   0  property holds / construction done
//   1  property fails (report or witness on stdout)
//   2  unusable input (parse error, schema violation, unknown id,
//      form or t-norm mismatch, size cap)

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <probmet/probmet.hpp>

namespace fs = std::filesystem;
using namespace probmet;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot open for writing");
  out << text;
}

void emit(const std::string& out_path, const json& doc) {
  if (out_path.empty())
    std::cout << dump_json(doc);
  else
    write_text_file(out_path, dump_json(doc));
}

/// Space references inside a morphism or lift file resolve relative to
/// that file's directory.
std::function<json(const std::string&)> resolver_for(const std::string& file) {
  fs::path dir = fs::path(file).parent_path();
  return [dir](const std::string& ref) {
    return read_json_file((dir / ref).string());
  };
}

Report validate_any(const SpaceVar& v) {
  if (std::holds_alternative<LevelSpace>(v))
    return validate_level_space(std::get<LevelSpace>(v));
  return validate_ddf_space(std::get<DdfSpace>(v));
}

bool is_levels(const SpaceVar& v) {
  return std::holds_alternative<LevelSpace>(v);
}

/// Constructions run on the level presentation; ddf inputs are carried
/// across the isomorphism first.
LevelSpace to_levels(const SpaceVar& v) {
  if (is_levels(v)) return std::get<LevelSpace>(v);
  return delta(std::get<DdfSpace>(v));
}

/// Load + validate, printing the report and signalling exit 1 on failure.
/// `label` prefixes the report when several spaces are in play.
bool load_valid_space(const std::string& path, const std::string& label,
                      SpaceVar& out) {
  out = space_from_json(read_json_file(path));
  Report rep = validate_any(out);
  if (!rep.pass) {
    if (!label.empty()) std::cout << label << ":\n";
    std::cout << rep.render();
    return false;
  }
  return true;
}

/// --set values: each occurrence is either one exact point id or a
/// comma-separated list (exact match wins, so ids containing commas,
/// e.g. product points, stay addressable).
std::vector<std::string> resolve_set(const std::vector<std::string>& raw,
                                     const Carrier& c) {
  std::vector<std::string> out;
  for (const std::string& item : raw) {
    if (c.contains(item)) {
      out.push_back(item);
      continue;
    }
    std::string::size_type pos = 0;
    while (true) {
      std::string::size_type comma = item.find(',', pos);
      std::string piece = item.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      c.index_of(piece);  // throws on unknown ids
      out.push_back(piece);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

json map_to_json(const PointMap& f) {
  json m = json::object();
  for (std::size_t i = 0; i < f.source.size(); ++i)
    m[f.source.id(i)] = f.target.id(f.map[i]);
  json doc = json::object();
  doc["map"] = std::move(m);
  return doc;
}

int run_verify(const std::string& file) {
  json j = read_json_file(file);
  if (!j.is_object() || !j.contains("form") || !j["form"].is_string())
    throw ParseError("form", "missing or non-string");
  Report rep;
  if (j["form"] == "metric")
    rep = validate_metric(metric_from_json(j));
  else
    rep = validate_any(space_from_json(j));
  std::cout << rep.render();
  return rep.pass ? 0 : 1;
}

int run_convert(const std::string& file, const std::string& to,
                const std::string& out) {
  SpaceVar v{};
  if (!load_valid_space(file, "", v)) return 1;
  if (to == "levels")
    emit(out, space_to_json(to_levels(v)));
  else
    emit(out, space_to_json(is_levels(v) ? phi(std::get<LevelSpace>(v))
                                         : std::get<DdfSpace>(v)));
  return 0;
}

int run_closure(const std::string& file, const std::vector<std::string>& raw,
                const std::string& out) {
  SpaceVar v{};
  if (!load_valid_space(file, "", v)) return 1;
  LevelSpace s = to_levels(v);
  std::vector<std::string> A = resolve_set(raw, s.carrier);
  json doc = json::object();
  doc["closure"] = closure(s, A);
  emit(out, doc);
  return 0;
}

int run_classify(const std::string& map_file, const std::string& out) {
  MorphismData md = morphism_from_json(read_json_file(map_file),
                                       resolver_for(map_file));
  if (is_levels(md.source) != is_levels(md.target))
    throw ParseError("map", "source and target use different forms");
  Report sr = validate_any(md.source);
  if (!sr.pass) {
    std::cout << "source:\n" << sr.render();
    return 1;
  }
  Report tr = validate_any(md.target);
  if (!tr.pass) {
    std::cout << "target:\n" << tr.render();
    return 1;
  }
  LevelSpace X = to_levels(md.source), Y = to_levels(md.target);
  Report ne = is_nonexpansive(md.map, X, Y);
  if (!ne.pass) {
    std::cout << ne.render();
    return 1;
  }
  MorphismClass c = classify_morphism(md.map, X, Y);
  json doc = json::object();
  doc["mono"] = c.mono;
  doc["epi"] = c.epi;
  doc["regular_mono"] = c.regular_mono;
  emit(out, doc);
  return 0;
}

int run_witness(const std::string& file, const std::vector<std::string>& raw,
                const std::string& point, const std::string& out) {
  SpaceVar v{};
  if (!load_valid_space(file, "", v)) return 1;
  LevelSpace s = to_levels(v);
  std::vector<std::string> A = resolve_set(raw, s.carrier);
  s.carrier.index_of(point);
  for (const std::string& c : closure(s, A))
    if (c == point) {
      std::cout << "point \"" << point
                << "\" lies in the closure of the set; no separating "
                   "cospan exists\n";
      return 1;
    }
  Cospan w = cospan_witness(s, A, point);
  if (out.empty()) {
    json doc = json::object();
    doc["Z"] = space_to_json(w.Z);
    doc["u"] = map_to_json(w.u);
    doc["v"] = map_to_json(w.v);
    emit("", doc);
  } else {
    write_text_file(out + ".Z.json", dump_json(space_to_json(w.Z)));
    write_text_file(out + ".u.json", dump_json(map_to_json(w.u)));
    write_text_file(out + ".v.json", dump_json(map_to_json(w.v)));
  }
  return 0;
}

int run_lift(const std::string& file, const std::string& out) {
  json j = read_json_file(file);
  if (!j.is_object()) throw ParseError("", "expected a JSON object");
  Carrier domain =
      ioext::points_field(ioext::member(j, "points", ""), "points");
  const json& legs = ioext::member(j, "legs", "");
  if (!legs.is_array() || legs.empty())
    throw ParseError("legs", "expected a non-empty array");
  auto resolve = resolver_for(file);

  StructuredSource src{domain, {}};
  for (std::size_t i = 0; i < legs.size(); ++i) {
    std::string p = "legs[" + std::to_string(i) + "]";
    const json& leg = legs[i];
    if (!leg.is_object()) throw ParseError(p, "expected an object");
    const json& sp = ioext::member(leg, "space", p);
    SpaceVar v{};
    try {
      v = sp.is_string() ? space_from_json(resolve(sp.get<std::string>()))
                         : space_from_json(sp);
    } catch (const ParseError& e) {
      throw ParseError(p + ".space", e.what());
    }
    Report rep = validate_any(v);
    if (!rep.pass) {
      std::cout << p << ".space:\n" << rep.render();
      return 1;
    }
    LevelSpace target = to_levels(v);
    const json& mp = ioext::member(leg, "map", p);
    if (!mp.is_object()) throw ParseError(p + ".map", "expected an object");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto it = mp.begin(); it != mp.end(); ++it)
      pairs.emplace_back(it.key(), ioext::require_string(
                                       it.value(), p + ".map[\"" + it.key() +
                                                       "\"]"));
    PointMap f = PointMap::from_assignments(domain, target.carrier, pairs);
    src.legs.emplace_back(std::move(f), std::move(target));
  }
  emit(out, space_to_json(initial_lift(src)));
  return 0;
}

int run_product(const std::vector<std::string>& files,
                const std::string& out) {
  std::vector<LevelSpace> factors;
  for (const std::string& file : files) {
    SpaceVar v{};
    if (!load_valid_space(file, file, v)) return 1;
    factors.push_back(to_levels(v));
  }
  emit(out, space_to_json(product(factors).first));
  return 0;
}

int run_coreflect(const std::string& file, const std::string& out) {
  SpaceVar v{};
  if (!load_valid_space(file, "", v)) return 1;
  LevelSpace s = to_levels(v);
  if (!s.separated)
    throw std::invalid_argument("coreflect requires a separated space");
  emit(out, metric_to_json(coreflect(s).space));
  return 0;
}

int run_reflect(const std::string& file, const std::string& out) {
  SpaceVar v{};
  if (!load_valid_space(file, "", v)) return 1;
  Reflection r = reflect(to_levels(v));
  if (out.empty()) {
    json doc = json::object();
    doc["metric"] = metric_to_json(r.space);
    doc["map"] = map_to_json(r.unit)["map"];
    emit("", doc);
  } else {
    write_text_file(out + ".metric.json", dump_json(metric_to_json(r.space)));
    write_text_file(out + ".map.json", dump_json(map_to_json(r.unit)));
  }
  return 0;
}

int run_quotient(const std::string& file, const std::string& out) {
  SpaceVar v{};
  if (!load_valid_space(file, "", v)) return 1;
  auto [q, f] = t0_quotient(to_levels(v));
  if (out.empty()) {
    json doc = json::object();
    doc["space"] = space_to_json(q);
    doc["map"] = map_to_json(f)["map"];
    emit("", doc);
  } else {
    write_text_file(out + ".space.json", dump_json(space_to_json(q)));
    write_text_file(out + ".map.json", dump_json(map_to_json(f)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic metric space toolkit"};
  app.require_subcommand(1);

  std::string file, out, to, point, map_file;
  std::vector<std::string> set_items, files;

  CLI::App* verify =
      app.add_subcommand("verify", "check every axiom of a space or metric");
  verify->add_option("file", file, "space or metric file")->required();

  CLI::App* convert =
      app.add_subcommand("convert", "carry a space across the isomorphism");
  convert->add_option("file", file, "space file")->required();
  convert->add_option("--to", to, "output form")
      ->required()
      ->check(CLI::IsMember({"levels", "ddf"}));
  convert->add_option("--out", out, "output path (default stdout)");

  CLI::App* closure_cmd =
      app.add_subcommand("closure", "closure of a point set");
  closure_cmd->add_option("file", file, "space file")->required();
  closure_cmd->add_option("--set", set_items, "subset of point ids")
      ->required();
  closure_cmd->add_option("--out", out, "output path (default stdout)");

  CLI::App* classify =
      app.add_subcommand("classify", "mono/epi flags of a morphism");
  classify->add_option("--map", map_file, "morphism file")->required();
  classify->add_option("--out", out, "output path (default stdout)");

  CLI::App* witness = app.add_subcommand(
      "witness", "cospan separating a point from a set's closure");
  witness->add_option("file", file, "space file")->required();
  witness->add_option("--set", set_items, "subset of point ids")->required();
  witness->add_option("--point", point, "point to separate")->required();
  witness->add_option("--out", out,
                      "output base path BASE -> BASE.Z.json, BASE.u.json, "
                      "BASE.v.json (default combined stdout)");

  CLI::App* lift =
      app.add_subcommand("lift", "initial structure of a structured source");
  lift->add_option("file", file, "source file: points + legs")->required();
  lift->add_option("--out", out, "output path (default stdout)");

  CLI::App* prod = app.add_subcommand("product", "finite product of spaces");
  prod->add_option("files", files, "space files")->required();
  prod->add_option("--out", out, "output path (default stdout)");

  CLI::App* coreflect_cmd = app.add_subcommand(
      "coreflect", "largest compatible metric (level-0+ values)");
  coreflect_cmd->add_option("file", file, "space file")->required();
  coreflect_cmd->add_option("--out", out, "output path (default stdout)");

  CLI::App* reflect_cmd = app.add_subcommand(
      "reflect", "universal metric quotient (level-1 values)");
  reflect_cmd->add_option("file", file, "space file")->required();
  reflect_cmd->add_option("--out", out,
                          "output base path BASE -> BASE.metric.json, "
                          "BASE.map.json (default combined stdout)");

  CLI::App* quotient_cmd = app.add_subcommand(
      "quotient", "collapse zero-distance points to a separated space");
  quotient_cmd->add_option("file", file, "space file")->required();
  quotient_cmd->add_option("--out", out,
                           "output base path BASE -> BASE.space.json, "
                           "BASE.map.json (default combined stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return run_verify(file);
    if (*convert) return run_convert(file, to, out);
    if (*closure_cmd) return run_closure(file, set_items, out);
    if (*classify) return run_classify(map_file, out);
    if (*witness) return run_witness(file, set_items, point, out);
    if (*lift) return run_lift(file, out);
    if (*prod) return run_product(files, out);
    if (*coreflect_cmd) return run_coreflect(file, out);
    if (*reflect_cmd) return run_reflect(file, out);
    if (*quotient_cmd) return run_quotient(file, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
