// Command-line front end: classification reports, bundled worked examples,
// parameter scans, raster emission, and direct access to the library
// operations.  Exit codes: 0 success, 2 malformed input or domain violation,
// 3 configured resource budget exhausted.

#include "ietlab/errors.hpp"
#include "ietlab/gasket.hpp"
#include "ietlab/homology.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/json_io.hpp"
#include "ietlab/restriction.hpp"
#include "ietlab/spi_itm.hpp"
#include "ietlab/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace ietlab;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoFailure("short write to " + path);
}

Json parse_json_text(const std::string& text) { return Json::parse(text); }

Json load_json_file(const std::string& path) {
  return parse_json_text(read_file(path));
}

Json tool_info() {
  return Json{{"name", "ietlab"}, {"version", IETLAB_VERSION}};
}

// Reports go to stdout unless an output path is configured.
void emit_report(const Json& report, const std::string& out) {
  std::string text = report.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
  std::vector<Rat> out;
  for (const std::string& part : split_list(text)) out.push_back(parse_number(part));
  return out;
}

Rat fv_approx(const FieldVector& v) {
  Rat acc = 0;
  const BasisPtr& basis = v.basis();
  for (std::size_t k = 0; k < v.coeffs().size(); ++k)
    acc += v.coeffs()[k] * basis->value(k);
  return acc;
}

std::string fv_decimal(const FieldVector& v) { return decimal_string(fv_approx(v), 12); }

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string sanitize_cell(std::string text) {
  for (char& ch : text)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return text;
}

// Truncated decimal expansion of sqrt(n), good to the active precision.
std::string sqrt_decimal(unsigned n, unsigned digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 2 * digits);
  mpz_class root = sqrt(mpz_class(n) * scale);
  std::string s = root.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  return s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

// Basis {1, sqrt(n1), sqrt(n2), ...} at the active precision.
BasisPtr sqrt_basis(const std::vector<unsigned>& radicands) {
  unsigned digits = default_precision();
  std::vector<std::string> names = {"1"};
  std::vector<std::string> decimals;
  for (unsigned n : radicands) {
    names.push_back("r" + std::to_string(n));
    decimals.push_back(sqrt_decimal(n, digits));
  }
  return std::make_shared<GeneratorBasis>(std::move(names), decimals, digits);
}

// Config file values fill in whatever was not given on the command line.
struct Merged {
  const CLI::App* cmd = nullptr;
  Json file = Json::object();

  template <typename T>
  void pull(const std::string& name, T& value) const {
    if (cmd->count("--" + name) == 0 && file.contains(name))
      file.at(name).get_to(value);
  }
};

Merged merge_config(const CLI::App* cmd, const std::string& config_path) {
  Merged m;
  m.cmd = cmd;
  if (!config_path.empty()) {
    m.file = load_json_file(config_path);
    if (!m.file.is_object()) throw StructuralError("config file must hold a JSON object");
  }
  return m;
}

// Inline JSON wins over a path; a config file may embed the object directly.
Json object_input(const Merged& m, const std::string& inline_json,
                  const std::string& input_path, const char* embed_key,
                  const char* what) {
  if (!inline_json.empty()) return parse_json_text(inline_json);
  if (!input_path.empty()) return load_json_file(input_path);
  if (m.file.contains(embed_key)) return m.file.at(embed_key);
  throw StructuralError(std::string(what) + " needs --input, --json, or a config entry");
}

Json verdict_to_json(const MinimalityVerdict& verdict) {
  Json j;
  if (const auto* p = std::get_if<NonMinimalPeriodic>(&verdict)) {
    j["kind"] = "periodic";
    j["period"] = p->period;
    j["left"] = fv_to_json(p->interval_left);
    j["right"] = fv_to_json(p->interval_right);
    j["leftDecimal"] = fv_decimal(p->interval_left);
    j["rightDecimal"] = fv_decimal(p->interval_right);
  } else if (const auto* s = std::get_if<SaddleConnection>(&verdict)) {
    j["kind"] = "saddle";
    j["from"] = s->from;
    j["to"] = s->to;
    j["steps"] = s->steps;
  } else {
    const auto& n = std::get<NoObstructionUpTo>(verdict);
    j["kind"] = "no-obstruction";
    j["depth"] = n.depth;
    j["maxFrequencyDeviation"] = n.max_frequency_deviation;
  }
  return j;
}

std::string verdict_kind(const MinimalityVerdict& verdict) {
  if (std::holds_alternative<NonMinimalPeriodic>(verdict)) return "periodic";
  if (std::holds_alternative<SaddleConnection>(verdict)) return "saddle";
  return "no-obstruction";
}

std::string verdict_detail(const MinimalityVerdict& verdict) {
  std::ostringstream out;
  if (const auto* p = std::get_if<NonMinimalPeriodic>(&verdict)) {
    out << "period " << p->period << " fixes " << fv_decimal(p->interval_left)
        << " .. " << fv_decimal(p->interval_right);
  } else if (const auto* s = std::get_if<SaddleConnection>(&verdict)) {
    out << "x" << s->from << " reaches x" << s->to << " in " << s->steps << " steps";
  } else {
    const auto& n = std::get<NoObstructionUpTo>(verdict);
    out << "depth " << n.depth << " deviation " << n.max_frequency_deviation;
  }
  return out.str();
}

Json gasket_verdict_to_json(const MembershipTrace& trace) {
  Json j;
  if (const auto* e = std::get_if<GasketEscaped>(&trace.verdict)) {
    j["kind"] = "escaped";
    j["step"] = e->step;
    j["tie"] = e->tie;
  } else if (const auto* s = std::get_if<GasketIndexStarved>(&trace.verdict)) {
    j["kind"] = "starved";
    j["missing"] = s->missing;
    j["window"] = s->window;
    j["step"] = s->step;
  } else {
    j["kind"] = "inside";
    j["depth"] = std::get<GasketInside>(trace.verdict).depth;
  }
  return j;
}

std::string gasket_kind(const MembershipTrace& trace) {
  if (std::holds_alternative<GasketEscaped>(trace.verdict)) return "escaped";
  if (std::holds_alternative<GasketIndexStarved>(trace.verdict)) return "starved";
  return "inside";
}

std::string gasket_detail(const MembershipTrace& trace) {
  std::ostringstream out;
  if (const auto* e = std::get_if<GasketEscaped>(&trace.verdict)) {
    out << "step " << e->step << (e->tie ? " boundary" : " gap");
  } else if (const auto* s = std::get_if<GasketIndexStarved>(&trace.verdict)) {
    out << "step " << s->step << " window " << s->window;
  } else {
    out << "depth " << std::get<GasketInside>(trace.verdict).depth;
  }
  return out.str();
}

// Full classification block shared by `classify` and the worked examples:
// suspension surface invariants, rich/poor verdict with witnesses, the
// translation invariant matrix, and a separating cycle when one exists.
Json classification_block(const Iet& map, const RestrictionSpace& space) {
  const Permutation& perm = map.perm();
  SurfaceInvariants surface = surface_invariants(perm);
  Dichotomy dich = classify_rich_poor(space, perm);
  SafMatrix saf = saf_invariant(map);
  std::optional<SeparatingCycle> cycle = find_separating_cycle(map);

  Json j;
  j["permutation"] = permutation_to_json(perm);
  j["genus"] = surface.genus;
  j["sCount"] = surface.marked_points;
  j["omegaRank"] = surface.rank;
  j["restrictionBasis"] = restriction_to_json(space)["rows"];
  j["restrictionDim"] = space.dim();
  j["verdict"] = dich.rich ? "rich" : "poor";
  j["obstruction"] = rat_to_json(dich.obstruction);
  if (dich.witness) {
    j["witnesses"] = Json{{"u", rat_vector_to_json(dich.witness->first)},
                          {"v", rat_vector_to_json(dich.witness->second)}};
  } else {
    j["witnesses"] = nullptr;
  }
  Json saf_rows = Json::array();
  for (const auto& row : saf.matrix()) saf_rows.push_back(rat_vector_to_json(row));
  j["safMatrix"] = saf_rows;
  j["safNonzero"] = !saf.is_zero();
  if (cycle) {
    j["separatingCycle"] = rat_vector_to_json(cycle->cycle);
    j["separatingWitness"] = rat_vector_to_json(cycle->witness);
    j["separatingPairing"] = fv_to_json(cycle->pairing);
  } else {
    j["separatingCycle"] = nullptr;
    j["separatingWitness"] = nullptr;
    j["separatingPairing"] = nullptr;
  }
  return j;
}

RasterRegion parse_region(const std::string& name) {
  if (name == "delta") return RasterRegion::Delta;
  if (name == "example4slice") return RasterRegion::Example4Slice;
  if (name == "example3square") return RasterRegion::Example3Square;
  throw StructuralError("unknown region \"" + name +
                        "\"; expected delta, example4slice, or example3square");
}

// ---------------------------------------------------------------------------
// Bundled instances.

// Four intervals with slots reversed pairwise; first and last lengths equal,
// so the map fixes [x2, x3) pointwise.
Iet example2_iet() {
  BasisPtr basis = rational_basis();
  auto c = [&](Rat v) { return FieldVector::constant(basis, v); };
  return Iet(Permutation::from_one_based({2, 4, 3, 1}),
             {c(Rat(1, 5)), c(Rat(3, 10)), c(Rat(3, 10)), c(Rat(1, 5))});
}

// Same slot pattern under the single relation 3 a1 = a2 + a4; a1 and a2 are
// free, a4 = 3 a1 - a2 and a3 = 1 - 4 a1.  Returns the failed constraint
// instead of a map when the point leaves the open parameter square.
std::variant<Iet, std::string> example3_rational(const Rat& a1, const Rat& a2) {
  Rat a4 = 3 * a1 - a2;
  Rat a3 = 1 - 4 * a1;
  if (sgn(a1) <= 0) return std::string("a1 must be positive");
  if (sgn(a2) <= 0) return std::string("a2 must be positive");
  if (sgn(a3) <= 0) return std::string("needs a1 < 1/4");
  if (sgn(a4) <= 0) return std::string("needs a2 < 3 a1");
  BasisPtr basis = rational_basis();
  auto c = [&](Rat v) { return FieldVector::constant(basis, v); };
  return Iet(Permutation::from_one_based({2, 4, 3, 1}), {c(a1), c(a2), c(a3), c(a4)});
}

// Independent-length instance of the same relation with a2 < a1:
// a1 = r3/48 + r2/12, a2 = r3/16, a3 = 1 - r2/3 - r3/12, a4 = r2/4.
Iet example3_irrational() {
  BasisPtr basis = sqrt_basis({2, 3});
  auto fv = [&](Rat one, Rat r2, Rat r3) {
    return FieldVector(basis, {std::move(one), std::move(r2), std::move(r3)});
  };
  std::vector<FieldVector> lengths = {
      fv(0, Rat(1, 12), Rat(1, 48)),
      fv(0, 0, Rat(1, 16)),
      fv(1, Rat(-1, 3), Rat(-1, 12)),
      fv(0, Rat(1, 4), 0),
  };
  return Iet(Permutation::from_one_based({2, 4, 3, 1}), lengths);
}

const std::vector<std::size_t>& example4_permutation() {
  static const std::vector<std::size_t> pi = {3, 6, 5, 2, 7, 4, 1};
  return pi;
}

// Seven lengths repeating (a1, a2, a3, a3, a1, a1, a2); the total is
// 3 a1 + 2 a2 + 2 a3, so slice parameters must satisfy that equation = 1.
std::vector<FieldVector> example4_lengths(const FieldVector& a1, const FieldVector& a2,
                                          const FieldVector& a3) {
  return {a1, a2, a3, a3, a1, a1, a2};
}

Iet example4_iet() {
  BasisPtr basis = sqrt_basis({2, 3});
  auto fv = [&](Rat one, Rat r2, Rat r3) {
    return FieldVector(basis, {std::move(one), std::move(r2), std::move(r3)});
  };
  FieldVector a1 = fv(0, Rat(1, 8), 0);
  FieldVector a2 = fv(0, 0, Rat(1, 8));
  FieldVector a3 = fv(Rat(1, 2), Rat(-3, 16), Rat(-1, 8));
  return Iet(Permutation::from_one_based(example4_permutation()),
             example4_lengths(a1, a2, a3));
}

Iet example4_iet_from_slice(const RatTriple& a) {
  BasisPtr basis = rational_basis();
  auto c = [&](const Rat& v) { return FieldVector::constant(basis, v); };
  return Iet(Permutation::from_one_based(example4_permutation()),
             example4_lengths(c(a[0]), c(a[1]), c(a[2])));
}

// Alternating family instance: lengths repeat (a1, a2) with a1/a2 irrational,
// scaled so k copies of the pair tile the unit interval.
Iet example1_iet(std::size_t k) {
  BasisPtr basis = sqrt_basis({2});
  Rat half_over_k = Rat(1) / Rat(2 * k);
  FieldVector a1(basis, {0, half_over_k});
  FieldVector a2(basis, {Rat(1) / Rat(k), -half_over_k});
  std::vector<FieldVector> lengths;
  for (std::size_t i = 0; i < k; ++i) {
    lengths.push_back(a1);
    lengths.push_back(a2);
  }
  return Iet(alternating_family_permutation(k), lengths);
}

// ---------------------------------------------------------------------------
// Slice sampling used by the correlation summary.

// Projective scaling that lands a positive triple on the parameter slice,
// where the recovered lengths satisfy 3 a1 + 2 a2 + 2 a3 = 1.
std::optional<RatTriple> scale_to_slice(const RatTriple& t) {
  Rat denom = t[0] + 2 * t[1];
  if (sgn(denom) <= 0) return std::nullopt;
  RatTriple b = {t[0] / denom, t[1] / denom, t[2] / denom};
  RatTriple a = {b[0], 2 * b[1] - b[2], b[2] - b[0] - b[1]};
  if (sgn(a[0]) <= 0 || sgn(a[1]) <= 0 || sgn(a[2]) <= 0) return std::nullopt;
  return b;
}

// Deterministic search for balanced slice points surviving `depth`
// subtractions: push small integer seeds into the cells by composing the
// inverse moves, then keep the landings inside the balanced window.
std::vector<RatTriple> balanced_survivors(std::size_t count, std::size_t depth) {
  static const std::array<std::array<int, 3>, 6> orders = {
      {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
  static const std::array<std::array<unsigned, 3>, 12> seeds = {
      {{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 1, 1}, {1, 2, 3}, {3, 2, 1},
       {2, 3, 1}, {1, 3, 2}, {2, 2, 3}, {5, 3, 2}, {3, 1, 1}, {2, 5, 3}}};
  std::vector<RatTriple> found;
  std::set<std::array<std::string, 3>> seen;
  for (const auto& order : orders) {
    for (const auto& seed : seeds) {
      RatTriple p = {Rat(seed[0]), Rat(seed[1]), Rat(seed[2])};
      for (std::size_t step = 0; step < depth; ++step)
        p = gasket_apply(p, order[(depth - 1 - step) % 3]);
      std::optional<RatTriple> b = scale_to_slice(p);
      if (!b || !balanced_region(*b)) continue;
      MembershipTrace trace = gasket_membership(*b, depth);
      if (!std::holds_alternative<GasketInside>(trace.verdict)) continue;
      std::array<std::string, 3> key = {to_string((*b)[0]), to_string((*b)[1]),
                                        to_string((*b)[2])};
      if (!seen.insert(key).second) continue;
      found.push_back(*b);
      if (found.size() == count) return found;
    }
  }
  return found;
}

// First interior slice points on a fixed lattice whose expansion leaves the
// cells within `depth` subtractions.
std::vector<RatTriple> interior_escapers(std::size_t count, std::size_t depth) {
  std::vector<RatTriple> found;
  for (unsigned den : {7u, 11u, 13u}) {
    for (unsigned i = 1; i < den && found.size() < count; ++i) {
      for (unsigned j = 1; j < den && found.size() < count; ++j) {
        Rat a1(i, 3 * den);
        Rat a2(j, 2 * den);
        a1.canonicalize();
        a2.canonicalize();
        Rat a3 = (1 - 3 * a1 - 2 * a2) / 2;
        if (sgn(a3) <= 0) continue;
        RatTriple b = slice_chart(RatTriple{a1, a2, a3});
        MembershipTrace trace = gasket_membership(b, depth);
        if (std::holds_alternative<GasketEscaped>(trace.verdict)) found.push_back(b);
      }
    }
    if (found.size() >= count) break;
  }
  return found;
}

// Correlates membership of a slice point with the orbit verdict of its
// interval exchange: points staying inside should resist every obstruction
// search, escapers should yield a non-minimality certificate.
Json correlate_slice_point(const RatTriple& b, std::size_t gasket_depth,
                           std::size_t orbit_depth, std::size_t power_cap,
                           std::size_t piece_cap) {
  RatTriple a = slice_chart_inverse(b);
  MembershipTrace trace = gasket_membership(b, gasket_depth);
  Iet map = example4_iet_from_slice(a);
  MinimalityVerdict verdict = minimality_verdict(map, orbit_depth, power_cap, piece_cap);
  bool inside = std::holds_alternative<GasketInside>(trace.verdict);
  bool no_obstruction = std::holds_alternative<NoObstructionUpTo>(verdict);
  Json j;
  j["b"] = Json::array({rat_to_json(b[0]), rat_to_json(b[1]), rat_to_json(b[2])});
  j["a"] = Json::array({rat_to_json(a[0]), rat_to_json(a[1]), rat_to_json(a[2])});
  j["gasket"] = gasket_verdict_to_json(trace);
  j["orbit"] = verdict_to_json(verdict);
  j["expected"] = inside ? "no-obstruction" : "certificate";
  j["agrees"] = inside ? no_obstruction : !no_obstruction;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

struct CommonIo {
  std::string input;
  std::string inline_json;
  std::string out;
  std::string config;
};

void cmd_classify(const CLI::App* cmd, const CommonIo& io) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  Json input_json = object_input(m, io.inline_json, input, "iet", "classify");

  Iet map = iet_from_json(input_json);
  if (!map.perm().is_irreducible())
    throw StructuralError("reducible permutation: a proper prefix of intervals is invariant");
  RestrictionSpace space = input_json.contains("restriction")
                               ? restriction_from_json(input_json.at("restriction"))
                               : full_restriction_lattice(map);
  if (space.ambient() != map.size())
    throw StructuralError("restriction ambient dimension does not match the map");

  Json report;
  report["command"] = "classify";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? "(inline)" : input}, {"out", out}};
  report["input"] = iet_to_json(map);
  report.update(classification_block(map, space));
  emit_report(report, out);
}

void cmd_saf(const CLI::App* cmd, const CommonIo& io) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  Json input_json = object_input(m, io.inline_json, input, "iet", "saf");

  Iet map = iet_from_json(input_json);
  SafMatrix saf = saf_invariant(map);
  Json rows = Json::array();
  for (const auto& row : saf.matrix()) rows.push_back(rat_vector_to_json(row));

  Json report;
  report["command"] = "saf";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? "(inline)" : input}, {"out", out}};
  report["input"] = iet_to_json(map);
  report["generators"] = basis_to_json(map.basis());
  report["safMatrix"] = rows;
  report["safNonzero"] = !saf.is_zero();
  emit_report(report, out);
}

void cmd_rauzy(const CLI::App* cmd, const CommonIo& io, std::size_t steps) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  m.pull("steps", steps);
  Json input_json = object_input(m, io.inline_json, input, "iet", "rauzy");

  Iet map = iet_from_json(input_json);
  std::vector<IetData> chain = rauzy_chain(map.data(), steps);

  SafMatrix first = saf_invariant(chain.front().perm, chain.front().lengths);
  bool saf_constant = true;
  Json steps_json = Json::array();
  for (const IetData& data : chain) {
    SafMatrix saf = saf_invariant(data.perm, data.lengths);
    if (!(saf == first)) saf_constant = false;
    Json entry;
    entry["pi"] = permutation_to_json(data.perm);
    Json lens = Json::array();
    for (const FieldVector& a : data.lengths) lens.push_back(fv_to_json(a));
    entry["lengths"] = lens;
    entry["total"] = fv_to_json(data.total());
    steps_json.push_back(std::move(entry));
  }

  Json report;
  report["command"] = "rauzy";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? "(inline)" : input},
                          {"steps", steps},
                          {"out", out}};
  report["generators"] = basis_to_json(map.basis());
  report["steps"] = steps_json;
  report["safConstant"] = saf_constant;
  emit_report(report, out);
}

void cmd_gasket(const CLI::App* cmd, const CommonIo& io, std::string coords,
                std::size_t depth, std::size_t window) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  m.pull("coords", coords);
  m.pull("depth", depth);
  m.pull("window", window);

  Json point_echo;
  MembershipTrace trace;
  if (!coords.empty()) {
    std::vector<Rat> v = parse_rat_list(coords);
    if (v.size() != 3) throw StructuralError("coords need exactly three entries");
    RatTriple p = {v[0], v[1], v[2]};
    trace = gasket_membership(p, depth, window);
    point_echo = Json::array({rat_to_json(v[0]), rat_to_json(v[1]), rat_to_json(v[2])});
  } else {
    Json input_json = object_input(m, io.inline_json, input, "point", "gasket");
    GasketPoint p = gasket_point_from_json(input_json);
    trace = gasket_membership(p, depth, window);
    point_echo = gasket_point_to_json(p);
  }

  Json report;
  report["command"] = "gasket";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? (coords.empty() ? "(inline)" : "(coords)") : input},
                          {"coords", coords},
                          {"depth", depth},
                          {"window", window},
                          {"out", out}};
  report["point"] = point_echo;
  report["verdict"] = gasket_verdict_to_json(trace);
  report["cells"] = trace.cells;
  emit_report(report, out);
}

void cmd_render(const CLI::App* cmd, const std::string& config_path, std::string region,
                std::size_t width, std::size_t height, std::size_t depth,
                unsigned threads, std::string out, std::string report_path) {
  Merged m = merge_config(cmd, config_path);
  m.pull("region", region);
  m.pull("width", width);
  m.pull("height", height);
  m.pull("depth", depth);
  m.pull("threads", threads);
  m.pull("out", out);
  m.pull("report", report_path);
  if (height == 0) height = width;

  RasterResult raster = render_raster(parse_region(region), width, height, depth, threads);
  std::string pgm = serialize_pgm(raster);
  write_file(out, pgm);

  std::size_t black = 0;
  for (std::uint8_t px : raster.pixels)
    if (px == 0) ++black;

  Json report;
  report["command"] = "render";
  report["tool"] = tool_info();
  report["config"] = Json{{"region", region}, {"width", width},     {"height", height},
                          {"depth", depth},   {"threads", threads}, {"out", out}};
  report["bytes"] = pgm.size();
  report["blackPixels"] = black;
  report["checksum"] = hex64(fnv1a64(pgm));
  report["output"] = out;
  emit_report(report, report_path);
}

void scan_row_example3(std::ostream& csv, std::size_t row, std::size_t col,
                       const Rat& a1, const Rat& a2, std::size_t depth,
                       std::size_t power_cap) {
  auto built = example3_rational(a1, a2);
  Rat a4 = 3 * a1 - a2;
  Rat a3 = 1 - 4 * a1;
  csv << row << "," << col << "," << to_string(a1) << "," << to_string(a2) << ","
      << to_string(a3) << "," << to_string(a4) << ",";
  if (const std::string* bad = std::get_if<std::string>(&built)) {
    csv << "invalid," << sanitize_cell(*bad) << "\n";
    return;
  }
  try {
    MinimalityVerdict verdict =
        minimality_verdict(std::get<Iet>(built), depth, power_cap);
    csv << verdict_kind(verdict) << "," << sanitize_cell(verdict_detail(verdict)) << "\n";
  } catch (const Error& e) {
    std::clog << "scan point " << row << "," << col << ": " << e.what() << "\n";
    csv << "error," << sanitize_cell(e.what()) << "\n";
  }
}

void scan_row_membership(std::ostream& csv, std::size_t row, std::size_t col,
                         const RatTriple& p, bool slice, std::size_t depth) {
  try {
    if (slice) {
      RatTriple b = slice_chart(p);
      csv << to_string(b[0]) << "," << to_string(b[1]) << "," << to_string(b[2]) << ",";
      MembershipTrace trace = gasket_membership(b, depth);
      csv << gasket_kind(trace) << "," << sanitize_cell(gasket_detail(trace)) << "\n";
    } else {
      MembershipTrace trace = gasket_membership(p, depth);
      csv << gasket_kind(trace) << "," << sanitize_cell(gasket_detail(trace)) << "\n";
    }
  } catch (const Error& e) {
    std::clog << "scan point " << row << "," << col << ": " << e.what() << "\n";
    if (slice) csv << ",,,";
    csv << "error," << sanitize_cell(e.what()) << "\n";
  }
}

void cmd_scan(const CLI::App* cmd, const std::string& config_path, std::string region,
              std::size_t nx, std::size_t ny, std::size_t depth, std::size_t power_cap,
              std::string out, std::string report_path) {
  Merged m = merge_config(cmd, config_path);
  m.pull("region", region);
  m.pull("nx", nx);
  m.pull("ny", ny);
  m.pull("depth", depth);
  m.pull("power-cap", power_cap);
  m.pull("out", out);
  m.pull("report", report_path);

  RasterRegion reg = parse_region(region);
  if (depth == 0) depth = (reg == RasterRegion::Example3Square) ? 64 : 12;

  std::ostringstream csv;
  switch (reg) {
  case RasterRegion::Example3Square:
    csv << "row,col,a1,a2,a3,a4,verdict,detail\n";
    break;
  case RasterRegion::Example4Slice:
    csv << "row,col,a1,a2,a3,b1,b2,b3,verdict,detail\n";
    break;
  case RasterRegion::Delta:
    csv << "row,col,x1,x2,x3,verdict,detail\n";
    break;
  }

  // Grid points sit at pixel centers so scans agree with rasters of the
  // same size and depth.
  for (std::size_t row = 0; row < ny; ++row) {
    for (std::size_t col = 0; col < nx; ++col) {
      Rat cx(2 * col + 1, 2 * nx);
      Rat cy(2 * row + 1, 2 * ny);
      cx.canonicalize();
      cy.canonicalize();
      switch (reg) {
      case RasterRegion::Example3Square: {
        Rat a1 = cy / 4;
        Rat a2 = 3 * cx / 4;
        scan_row_example3(csv, row, col, a1, a2, depth, power_cap);
        break;
      }
      case RasterRegion::Example4Slice: {
        Rat a1 = cy / 3;
        Rat a2 = cx / 2;
        Rat a3 = (1 - 3 * a1 - 2 * a2) / 2;
        csv << row << "," << col << "," << to_string(a1) << "," << to_string(a2)
            << "," << to_string(a3) << ",";
        if (sgn(a3) < 0) {
          csv << ",,,outside,negative a3\n";
        } else {
          scan_row_membership(csv, row, col, RatTriple{a1, a2, a3}, true, depth);
        }
        break;
      }
      case RasterRegion::Delta: {
        Rat x3 = 1 - cx - cy;
        csv << row << "," << col << "," << to_string(cx) << "," << to_string(cy)
            << "," << to_string(x3) << ",";
        if (sgn(x3) < 0) {
          csv << "outside,negative x3\n";
        } else {
          scan_row_membership(csv, row, col, RatTriple{cx, cy, x3}, false, depth);
        }
        break;
      }
      }
    }
  }

  if (out.empty()) {
    std::cout << csv.str();
    return;
  }
  write_file(out, csv.str());
  Json report;
  report["command"] = "scan";
  report["tool"] = tool_info();
  report["config"] = Json{{"region", region}, {"nx", nx},   {"ny", ny},
                          {"depth", depth},   {"power-cap", power_cap}, {"out", out}};
  report["rows"] = nx * ny;
  report["output"] = out;
  emit_report(report, report_path);
}

struct ExampleBudget {
  std::size_t depth = 10000;
  std::size_t power_cap = 200;
  std::size_t piece_cap = 1000000;
  std::size_t samples = 3;
  std::size_t gasket_depth = 40;
  std::size_t width = 256;
  std::size_t raster_depth = 12;
};

// The repeating lengths force T(x_1) onto another breakpoint for every
// parameter choice, so the orbit verdict is always a saddle connection even
// though the family is minimal; occupation frequencies from a generic point
// are reported alongside as equidistribution evidence.
Json run_example1(const ExampleBudget& budget) {
  Json cases = Json::array();
  for (std::size_t k = 2; k <= 4; ++k) {
    Iet map = example1_iet(k);
    MinimalityVerdict verdict =
        minimality_verdict(map, budget.depth, budget.power_cap, budget.piece_cap);
    RestrictionSpace space = alternating_family_restriction(k);
    Dichotomy dich = classify_rich_poor(space, map.perm());

    FieldVector start = FieldVector::constant(map.basis(), Rat(1, 10));
    std::vector<std::size_t> visits = occupation_vector(map, start, budget.depth);
    double deviation = 0;
    for (std::size_t i = 0; i < visits.size(); ++i) {
      double freq = static_cast<double>(visits[i]) / static_cast<double>(budget.depth);
      double len = fv_approx(map.lengths()[i]).get_d();
      deviation = std::max(deviation, std::abs(freq - len));
    }

    Json entry;
    entry["k"] = k;
    entry["permutation"] = permutation_to_json(map.perm());
    entry["orbit"] = verdict_to_json(verdict);
    entry["occupationDeviation"] = deviation;
    entry["verdict"] = dich.rich ? "rich" : "poor";
    entry["obstruction"] = rat_to_json(dich.obstruction);
    if (dich.witness)
      entry["witnesses"] = Json{{"u", rat_vector_to_json(dich.witness->first)},
                                {"v", rat_vector_to_json(dich.witness->second)}};
    cases.push_back(std::move(entry));
  }
  return Json{{"cases", cases}};
}

Json run_example2(const ExampleBudget& budget) {
  Iet map = example2_iet();
  MinimalityVerdict verdict =
      minimality_verdict(map, budget.depth, budget.power_cap, budget.piece_cap);
  FieldVector x2 = map.x(2);
  FieldVector x3 = map.x(3);
  bool exact = false;
  if (const auto* p = std::get_if<NonMinimalPeriodic>(&verdict))
    exact = p->period == 1 && (p->interval_left - x2).is_zero() &&
            (p->interval_right - x3).is_zero();
  Json j;
  j["input"] = iet_to_json(map);
  j["orbit"] = verdict_to_json(verdict);
  j["expectedLeft"] = fv_to_json(x2);
  j["expectedRight"] = fv_to_json(x3);
  j["exactMatch"] = exact;
  return j;
}

Json run_example3(const ExampleBudget& budget) {
  Json j;

  // Rational branch a2 > a1: the fourth power fixes an interval containing
  // [max(0, a1 - a4), min(a1, a2 - a1)).
  {
    Rat a1(1, 10), a2(2, 10);
    Iet map = std::get<Iet>(example3_rational(a1, a2));
    PiecewiseTranslation power = iet_power(map, 4, budget.piece_cap);
    auto fixed = detect_fixed_intervals(power);
    Rat a4 = 3 * a1 - a2;
    BasisPtr basis = map.basis();
    Rat lo_rat = a1 - a4;
    if (sgn(lo_rat) < 0) lo_rat = 0;
    Rat hi_rat = a2 - a1;
    if (hi_rat > a1) hi_rat = a1;
    FieldVector lo = FieldVector::constant(basis, lo_rat);
    FieldVector hi = FieldVector::constant(basis, hi_rat);
    bool contained = false;
    for (const auto& [left, right] : fixed)
      if (fv_less_equal(left, lo) && fv_less_equal(hi, right)) contained = true;
    Json fixed_json = Json::array();
    for (const auto& [left, right] : fixed)
      fixed_json.push_back(Json::array({fv_to_json(left), fv_to_json(right)}));
    MinimalityVerdict verdict =
        minimality_verdict(map, budget.depth, budget.power_cap, budget.piece_cap);
    j["periodicBranch"] = Json{{"input", iet_to_json(map)},
                               {"fixedIntervalsOfFourthPower", fixed_json},
                               {"predictedLeft", fv_to_json(lo)},
                               {"predictedRight", fv_to_json(hi)},
                               {"predictionContained", contained},
                               {"orbit", verdict_to_json(verdict)}};
  }

  // Independent branch a2 < a1: no obstruction appears, the restriction is
  // poor, and the documented cycle (2, -1, 1, 0) passes the checker.
  {
    Iet map = example3_irrational();
    MinimalityVerdict verdict =
        minimality_verdict(map, budget.depth, budget.power_cap, budget.piece_cap);
    RestrictionSpace space = full_restriction_lattice(map);
    std::vector<Rat> s = {2, -1, 1, 0};
    bool cycle_ok = check_separating_cycle(map.perm(), space, s, map.lengths());
    Json block = classification_block(map, space);
    block["input"] = iet_to_json(map);
    block["orbit"] = verdict_to_json(verdict);
    block["documentedCycle"] = rat_vector_to_json(s);
    block["documentedCycleAccepted"] = cycle_ok;
    j["independentBranch"] = std::move(block);
  }
  return j;
}

Json run_example4(const ExampleBudget& budget, const std::string& dir) {
  Json j;

  {
    Iet map = example4_iet();
    RestrictionSpace space = full_restriction_lattice(map);
    Json block = classification_block(map, space);
    block["input"] = iet_to_json(map);
    j["classification"] = std::move(block);
  }

  {
    RasterResult raster = render_raster(RasterRegion::Example4Slice, budget.width,
                                        budget.width, budget.raster_depth, 1);
    std::string pgm = serialize_pgm(raster);
    std::string path =
        (std::filesystem::path(dir) / "example4-slice.pgm").string();
    write_file(path, pgm);
    j["raster"] = Json{{"output", path},
                       {"width", budget.width},
                       {"depth", budget.raster_depth},
                       {"bytes", pgm.size()},
                       {"checksum", hex64(fnv1a64(pgm))}};
  }

  {
    Json survivors = Json::array();
    for (const RatTriple& b : balanced_survivors(budget.samples, budget.gasket_depth))
      survivors.push_back(correlate_slice_point(b, budget.gasket_depth, budget.depth,
                                                budget.power_cap, budget.piece_cap));
    Json escapers = Json::array();
    for (const RatTriple& b : interior_escapers(budget.samples, budget.gasket_depth))
      escapers.push_back(correlate_slice_point(b, budget.gasket_depth, budget.depth,
                                               budget.power_cap, budget.piece_cap));
    std::size_t agree = 0, total = 0;
    for (const Json* list : {&survivors, &escapers})
      for (const Json& entry : *list) {
        ++total;
        if (entry.at("agrees").get<bool>()) ++agree;
      }
    j["correlation"] = Json{{"survivors", survivors},
                            {"escapers", escapers},
                            {"agreeing", agree},
                            {"total", total}};
  }
  return j;
}

void cmd_examples(const CLI::App* cmd, const std::string& config_path, int which,
                  std::string dir, ExampleBudget budget) {
  Merged m = merge_config(cmd, config_path);
  m.pull("which", which);
  m.pull("dir", dir);
  m.pull("depth", budget.depth);
  m.pull("power-cap", budget.power_cap);
  m.pull("piece-cap", budget.piece_cap);
  m.pull("samples", budget.samples);
  m.pull("gasket-depth", budget.gasket_depth);
  m.pull("width", budget.width);
  m.pull("raster-depth", budget.raster_depth);
  if (which < 1 || which > 4) throw StructuralError("--which must be 1, 2, 3, or 4");

  std::filesystem::create_directories(dir);

  Json report;
  report["command"] = "examples";
  report["tool"] = tool_info();
  report["config"] = Json{{"which", which},
                          {"dir", dir},
                          {"depth", budget.depth},
                          {"power-cap", budget.power_cap},
                          {"piece-cap", budget.piece_cap},
                          {"samples", budget.samples},
                          {"gasket-depth", budget.gasket_depth},
                          {"width", budget.width},
                          {"raster-depth", budget.raster_depth}};
  switch (which) {
  case 1: report.update(run_example1(budget)); break;
  case 2: report.update(run_example2(budget)); break;
  case 3: report.update(run_example3(budget)); break;
  case 4: report.update(run_example4(budget, dir)); break;
  }

  std::string path = (std::filesystem::path(dir) /
                      ("example" + std::to_string(which) + "-report.json"))
                         .string();
  emit_report(report, path);
  emit_report(report, "");
}

Spi spi_from_flags(const Merged& m, const std::string& inline_json,
                   const std::string& input, const std::string& b_list,
                   const std::string& y_list) {
  if (!b_list.empty()) {
    std::vector<Rat> b = parse_rat_list(b_list);
    if (b.size() != 3) throw StructuralError("--b needs exactly three lengths");
    BasisPtr basis = rational_basis();
    auto c = [&](const Rat& v) { return FieldVector::constant(basis, v); };
    std::vector<SpiArm> arms;
    for (const Rat& bi : b)
      arms.push_back(SpiArm{c(0), c(bi), c(1 - bi), c(1)});
    std::vector<Rat> y;
    if (!y_list.empty()) {
      y = parse_rat_list(y_list);
    } else {
      for (int i = 1; i <= 6; ++i) y.push_back(Rat(i, 7));
    }
    std::vector<FieldVector> heights;
    for (const Rat& h : y) heights.push_back(c(h));
    return Spi(std::move(arms), std::move(heights));
  }
  Json input_json = object_input(m, inline_json, input, "spi", "spi");
  Spi spi = spi_from_json(input_json);
  if (!y_list.empty()) {
    std::vector<Rat> y = parse_rat_list(y_list);
    std::vector<FieldVector> heights;
    for (const Rat& h : y)
      heights.push_back(FieldVector::constant(spi.basis(), h));
    return Spi(spi.arms(), std::move(heights));
  }
  return spi;
}

void cmd_spi_excess(const CLI::App* cmd, const CommonIo& io, std::string b_list,
                    std::string y_list) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  m.pull("b", b_list);
  m.pull("y", y_list);
  Spi spi = spi_from_flags(m, io.inline_json, input, b_list, y_list);
  FieldVector excess = spi_excess(spi);

  Json report;
  report["command"] = "spi excess";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? "(inline)" : input},
                          {"b", b_list},
                          {"out", out}};
  report["spi"] = spi_to_json(spi);
  report["excess"] = fv_to_json(excess);
  report["excessDecimal"] = fv_decimal(excess);
  report["zero"] = excess.is_zero();
  emit_report(report, out);
}

void cmd_spi_family(const CLI::App* cmd, const std::string& config_path,
                    std::string b_list, std::string out) {
  Merged m = merge_config(cmd, config_path);
  m.pull("b", b_list);
  m.pull("out", out);
  if (b_list.empty()) throw StructuralError("family-k3 needs --b b1,b2,b3");
  std::vector<Rat> b = parse_rat_list(b_list);
  if (b.size() != 3) throw StructuralError("--b needs exactly three lengths");
  BasisPtr basis = rational_basis();
  Iet map = family_k3(FieldVector::constant(basis, b[0]),
                      FieldVector::constant(basis, b[1]),
                      FieldVector::constant(basis, b[2]));

  Json report;
  report["command"] = "spi family-k3";
  report["tool"] = tool_info();
  report["config"] = Json{{"b", b_list}, {"out", out}};
  report["iet"] = iet_to_json(map);
  emit_report(report, out);
}

void cmd_spi_suspend(const CLI::App* cmd, const CommonIo& io, std::string b_list,
                     std::string y_list) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  m.pull("b", b_list);
  m.pull("y", y_list);
  Spi spi = spi_from_flags(m, io.inline_json, input, b_list, y_list);
  DoubleSuspension susp = double_suspension(spi);

  Json report;
  report["command"] = "spi suspend";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? "(inline)" : input},
                          {"b", b_list},
                          {"y", y_list},
                          {"out", out}};
  report["spi"] = spi_to_json(spi);
  report["iet"] = iet_to_json(susp.iet);
  report["fills"] = susp.fills;
  if (susp.cycle) {
    report["cycle"] = Json{{"edge", susp.cycle->edge},
                           {"left", fv_to_json(susp.cycle->left)},
                           {"right", fv_to_json(susp.cycle->right)}};
  } else {
    report["cycle"] = nullptr;
  }
  emit_report(report, out);
}

void cmd_itm_type(const CLI::App* cmd, const CommonIo& io, std::string lengths,
                  std::string translations, std::size_t cap) {
  Merged m = merge_config(cmd, io.config);
  std::string input = io.input;
  std::string out = io.out;
  m.pull("input", input);
  m.pull("out", out);
  m.pull("cap", cap);
  m.pull("lengths", lengths);
  m.pull("translations", translations);

  std::optional<Itm> map;
  if (!lengths.empty() || !translations.empty()) {
    std::vector<Rat> lens = parse_rat_list(lengths);
    std::vector<Rat> shifts = parse_rat_list(translations);
    BasisPtr basis = rational_basis();
    std::vector<FieldVector> l, t;
    for (const Rat& v : lens) l.push_back(FieldVector::constant(basis, v));
    for (const Rat& v : shifts) t.push_back(FieldVector::constant(basis, v));
    map.emplace(std::move(l), std::move(t));
  } else {
    Json input_json = object_input(m, io.inline_json, input, "itm", "itm");
    map.emplace(itm_from_json(input_json));
  }

  ItmTypeResult result = itm_finite_type(*map, cap);
  Json result_json;
  if (const auto* fin = std::get_if<ItmFiniteType>(&result)) {
    result_json["kind"] = "finite";
    result_json["index"] = fin->index;
    result_json["attractor"] = interval_set_to_json(fin->attractor);
  } else {
    result_json["kind"] = "undetermined";
    result_json["cap"] = std::get<ItmUndetermined>(result).cap;
  }

  Json report;
  report["command"] = "itm type";
  report["tool"] = tool_info();
  report["config"] = Json{{"input", input.empty() ? "(inline)" : input},
                          {"cap", cap},
                          {"out", out}};
  report["itm"] = itm_to_json(*map);
  report["result"] = result_json;
  emit_report(report, out);
}

Json error_json(const std::string& type, const std::string& message) {
  Json j;
  j["tool"] = tool_info();
  j["error"] = Json{{"type", type}, {"message", message}};
  return j;
}

int emit_error(const std::string& type, const std::string& message, int code) {
  std::cout << error_json(type, message).dump(2) << "\n";
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic laboratory for restricted interval exchanges"};
  app.set_version_flag("--version", IETLAB_VERSION);
  app.require_subcommand(1);

  CommonIo classify_io;
  CLI::App* classify = app.add_subcommand(
      "classify", "surface invariants, rich/poor verdict, separating cycle");
  classify->add_option("--input", classify_io.input, "interval exchange JSON file (- for stdin)");
  classify->add_option("--json", classify_io.inline_json, "inline interval exchange JSON");
  classify->add_option("--out", classify_io.out, "report path (default stdout)");
  classify->add_option("--config", classify_io.config, "config JSON file");

  CommonIo saf_io;
  CLI::App* saf = app.add_subcommand("saf", "translation invariant matrix of a map");
  saf->add_option("--input", saf_io.input, "interval exchange JSON file (- for stdin)");
  saf->add_option("--json", saf_io.inline_json, "inline interval exchange JSON");
  saf->add_option("--out", saf_io.out, "report path (default stdout)");
  saf->add_option("--config", saf_io.config, "config JSON file");

  CommonIo rauzy_io;
  std::size_t rauzy_steps = 10;
  CLI::App* rauzy = app.add_subcommand("rauzy", "right induction chain on length data");
  rauzy->add_option("--input", rauzy_io.input, "interval exchange JSON file (- for stdin)");
  rauzy->add_option("--json", rauzy_io.inline_json, "inline interval exchange JSON");
  rauzy->add_option("--steps", rauzy_steps, "induction steps (default 10)");
  rauzy->add_option("--out", rauzy_io.out, "report path (default stdout)");
  rauzy->add_option("--config", rauzy_io.config, "config JSON file");

  CommonIo gasket_io;
  std::string gasket_coords;
  std::size_t gasket_depth = 50;
  std::size_t gasket_window = 30;
  CLI::App* gasket = app.add_subcommand("gasket", "membership trace of a projective point");
  gasket->add_option("--coords", gasket_coords, "three rational coordinates x1,x2,x3");
  gasket->add_option("--input", gasket_io.input, "point JSON file (- for stdin)");
  gasket->add_option("--json", gasket_io.inline_json, "inline point JSON");
  gasket->add_option("--depth", gasket_depth, "subtraction budget (default 50)");
  gasket->add_option("--window", gasket_window,
                     "starvation window, 0 disables (default 30)");
  gasket->add_option("--out", gasket_io.out, "report path (default stdout)");
  gasket->add_option("--config", gasket_io.config, "config JSON file");

  std::string render_config, render_region = "delta", render_out = "raster.pgm";
  std::string render_report;
  std::size_t render_width = 0, render_height = 0, render_depth = 12;
  unsigned render_threads = 1;
  CLI::App* render = app.add_subcommand("render", "rasterize a region to a PGM file");
  render->add_option("--region", render_region, "delta | example4slice | example3square");
  render->add_option("--width", render_width, "pixels per row");
  render->add_option("--height", render_height, "rows (default: width)");
  render->add_option("--depth", render_depth, "classification depth (default 12)");
  render->add_option("--threads", render_threads, "worker threads (default 1)");
  render->add_option("--out", render_out, "PGM path (default raster.pgm)");
  render->add_option("--report", render_report, "report path (default stdout)");
  render->add_option("--config", render_config, "config JSON file");

  std::string scan_config, scan_region = "example3square", scan_out, scan_report;
  std::size_t scan_nx = 64, scan_ny = 64, scan_depth = 0, scan_power_cap = 12;
  CLI::App* scan = app.add_subcommand("scan", "verdict grid over a parameter region (CSV)");
  scan->add_option("--region", scan_region, "delta | example4slice | example3square");
  scan->add_option("--nx", scan_nx, "grid columns (default 64)");
  scan->add_option("--ny", scan_ny, "grid rows (default 64)");
  scan->add_option("--depth", scan_depth, "orbit or subtraction depth (0 = per-region default)");
  scan->add_option("--power-cap", scan_power_cap, "periodic search cap (default 12)");
  scan->add_option("--out", scan_out, "CSV path (default stdout)");
  scan->add_option("--report", scan_report, "report path when --out is set (default stdout)");
  scan->add_option("--config", scan_config, "config JSON file");

  std::string examples_config, examples_dir = ".";
  int examples_which = 0;
  ExampleBudget examples_budget;
  CLI::App* examples = app.add_subcommand("examples", "reproduce a bundled worked example");
  examples->add_option("--which", examples_which, "example number 1..4");
  examples->add_option("--dir", examples_dir, "artifact directory (default .)");
  examples->add_option("--depth", examples_budget.depth, "orbit depth (default 10000)");
  examples->add_option("--power-cap", examples_budget.power_cap,
                       "periodic search cap (default 200)");
  examples->add_option("--piece-cap", examples_budget.piece_cap,
                       "piece budget for compositions (default 1000000)");
  examples->add_option("--samples", examples_budget.samples,
                       "correlation samples per class (default 3)");
  examples->add_option("--gasket-depth", examples_budget.gasket_depth,
                       "membership depth for correlation (default 40)");
  examples->add_option("--width", examples_budget.width, "raster width (default 256)");
  examples->add_option("--raster-depth", examples_budget.raster_depth,
                       "raster depth (default 12)");
  examples->add_option("--config", examples_config, "config JSON file");

  CLI::App* spi = app.add_subcommand("spi", "partial isometry systems");
  spi->require_subcommand(1);
  CommonIo spi_excess_io;
  std::string spi_excess_b, spi_excess_y;
  CLI::App* spi_excess_cmd = spi->add_subcommand("excess", "total domain length minus 1");
  spi_excess_cmd->add_option("--input", spi_excess_io.input, "system JSON file (- for stdin)");
  spi_excess_cmd->add_option("--json", spi_excess_io.inline_json, "inline system JSON");
  spi_excess_cmd->add_option("--b", spi_excess_b, "three lengths b1,b2,b3 for arms [0,bi) -> [1-bi,1)");
  spi_excess_cmd->add_option("--y", spi_excess_y, "suspension heights y1,...,y2k");
  spi_excess_cmd->add_option("--out", spi_excess_io.out, "report path (default stdout)");
  spi_excess_cmd->add_option("--config", spi_excess_io.config, "config JSON file");

  std::string spi_family_config, spi_family_b, spi_family_out;
  CLI::App* spi_family_cmd =
      spi->add_subcommand("family-k3", "seven-interval exchange of the three-arm family");
  spi_family_cmd->add_option("--b", spi_family_b, "three lengths b1,b2,b3");
  spi_family_cmd->add_option("--out", spi_family_out, "report path (default stdout)");
  spi_family_cmd->add_option("--config", spi_family_config, "config JSON file");

  CommonIo spi_suspend_io;
  std::string spi_suspend_b, spi_suspend_y;
  CLI::App* spi_suspend_cmd =
      spi->add_subcommand("suspend", "bottom return map of the double suspension");
  spi_suspend_cmd->add_option("--input", spi_suspend_io.input, "system JSON file (- for stdin)");
  spi_suspend_cmd->add_option("--json", spi_suspend_io.inline_json, "inline system JSON");
  spi_suspend_cmd->add_option("--b", spi_suspend_b, "three lengths b1,b2,b3 for arms [0,bi) -> [1-bi,1)");
  spi_suspend_cmd->add_option("--y", spi_suspend_y, "suspension heights y1,...,y2k");
  spi_suspend_cmd->add_option("--out", spi_suspend_io.out, "report path (default stdout)");
  spi_suspend_cmd->add_option("--config", spi_suspend_io.config, "config JSON file");

  CLI::App* itm = app.add_subcommand("itm", "interval translation mappings");
  itm->require_subcommand(1);
  CommonIo itm_io;
  std::string itm_lengths, itm_translations;
  std::size_t itm_cap = 64;
  CLI::App* itm_type = itm->add_subcommand("type", "finite-type index and attractor");
  itm_type->add_option("--input", itm_io.input, "mapping JSON file (- for stdin)");
  itm_type->add_option("--json", itm_io.inline_json, "inline mapping JSON");
  itm_type->add_option("--lengths", itm_lengths, "rational lengths l1,...,ln");
  itm_type->add_option("--translations", itm_translations, "rational shifts t1,...,tn");
  itm_type->add_option("--cap", itm_cap, "image iteration budget (default 64)");
  itm_type->add_option("--out", itm_io.out, "report path (default stdout)");
  itm_type->add_option("--config", itm_io.config, "config JSON file");

  try {
    app.parse(argc, argv);
    if (classify->parsed()) cmd_classify(classify, classify_io);
    if (saf->parsed()) cmd_saf(saf, saf_io);
    if (rauzy->parsed()) cmd_rauzy(rauzy, rauzy_io, rauzy_steps);
    if (gasket->parsed())
      cmd_gasket(gasket, gasket_io, gasket_coords, gasket_depth, gasket_window);
    if (render->parsed())
      cmd_render(render, render_config, render_region, render_width, render_height,
                 render_depth, render_threads, render_out, render_report);
    if (scan->parsed())
      cmd_scan(scan, scan_config, scan_region, scan_nx, scan_ny, scan_depth,
               scan_power_cap, scan_out, scan_report);
    if (examples->parsed())
      cmd_examples(examples, examples_config, examples_which, examples_dir,
                   examples_budget);
    if (spi_excess_cmd->parsed())
      cmd_spi_excess(spi_excess_cmd, spi_excess_io, spi_excess_b, spi_excess_y);
    if (spi_family_cmd->parsed())
      cmd_spi_family(spi_family_cmd, spi_family_config, spi_family_b, spi_family_out);
    if (spi_suspend_cmd->parsed())
      cmd_spi_suspend(spi_suspend_cmd, spi_suspend_io, spi_suspend_b, spi_suspend_y);
    if (itm_type->parsed())
      cmd_itm_type(itm_type, itm_io, itm_lengths, itm_translations, itm_cap);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), 2);
  } catch (const ResourceLimit& e) {
    return emit_error("resource", e.what(), 3);
  } catch (const StructuralError& e) {
    return emit_error("structural", e.what(), 2);
  } catch (const DomainError& e) {
    return emit_error("domain", e.what(), 2);
  } catch (const Error& e) {
    return emit_error("domain", e.what(), 2);
  } catch (const Json::exception& e) {
    return emit_error("parse", e.what(), 2);
  } catch (const IoFailure& e) {
    return emit_error("io", e.what(), 2);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 2);
  }
}
