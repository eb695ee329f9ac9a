#include "epslab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace epslab {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Index index_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_number_integer() || f.get<long long>() < 0) {
    throw FormatError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return f.get<Index>();
}

double number_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  return f.get<double>();
}

double number_or_zero(const Json& j, const char* key) { return j.contains(key) ? number_field(j, key) : 0.0; }

Json scalar_json(Scalar c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

Json to_json(const NormSpec& spec) {
  if (spec.kind() == NormSpec::Kind::sup) return Json{{"kind", "sup"}};
  return Json{{"kind", "lp"}, {"p", spec.p()}};
}

NormSpec norm_spec_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (kind == "sup") return NormSpec::sup();
  if (kind == "lp") return NormSpec::lp(number_field(j, "p"));
  throw FormatError("norm kind must be \"lp\" or \"sup\"");
}

Json to_json(const CoeffVector& v) {
  Json coeffs = Json::array();
  for (const auto& [i, c] : v) coeffs.push_back(Json{{"i", i}, {"re", c.real()}, {"im", c.imag()}});
  return Json{{"coeffs", std::move(coeffs)}};
}

Json to_json(const DirectSumVector& u) {
  Json blocks = Json::array();
  for (const auto& [n, v] : u) {
    Json b = to_json(v);
    b["n"] = n;
    blocks.push_back(std::move(b));
  }
  return Json{{"blocks", std::move(blocks)}};
}

CoeffVector coeff_vector_from_json(const Json& j) {
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw FormatError("'coeffs' must be an array");
  CoeffVector v;
  for (const Json& c : coeffs) v.add(index_field(c, "i"), Scalar(number_or_zero(c, "re"), number_or_zero(c, "im")));
  return v;
}

DirectSumVector direct_sum_from_json(const Json& j) {
  DirectSumVector u;
  if (j.is_object() && !j.contains("blocks") && j.contains("coeffs")) {
    u.set_block(0, coeff_vector_from_json(j));
    return u;
  }
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) throw FormatError("'blocks' must be an array");
  for (const Json& b : blocks) {
    const Index n = index_field(b, "n");
    CoeffVector v = coeff_vector_from_json(b);
    v += u.block(n);
    u.set_block(n, std::move(v));
  }
  return u;
}

Json to_json(const BlockPlan& plan) {
  Json blocks = Json::array();
  for (const auto& b : plan.blocks()) {
    blocks.push_back(Json{{"k", b.k}, {"m", b.m}, {"r", b.r}, {"omega", b.omega}, {"y", b.y}});
  }
  const Constants& c = plan.constants();
  return Json{{"eps", c.eps},
              {"lambda", c.lambda},
              {"kappa", c.kappa},
              {"specX", to_json(plan.spec_x())},
              {"blocks", std::move(blocks)}};
}

BlockPlan plan_from_json(const Json& j) {
  const Constants c{number_field(j, "eps"), number_field(j, "lambda"), number_field(j, "kappa")};
  if (!(c.eps > 0.0 && c.eps < 1.0)) throw FormatError("plan eps must lie in (0,1)");
  const NormSpec spec = norm_spec_from_json(field(j, "specX"));
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) throw FormatError("plan needs a nonempty 'blocks' array");
  std::vector<BlockRecord> records;
  for (const Json& b : blocks) {
    records.push_back(
        {index_field(b, "k"), index_field(b, "m"), index_field(b, "r"), number_field(b, "omega"), number_field(b, "y")});
  }
  BlockPlan plan(c, spec, std::move(records));
  validate_plan(plan);
  return plan;
}

std::string plan_hash(const BlockPlan& plan) {
  const std::string text = to_json(plan).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Target> targets_from_json(const Json& j) {
  const Json& list = field(j, "targets");
  if (!list.is_array()) throw FormatError("'targets' must be an array");
  std::vector<Target> out;
  for (const Json& t : list) out.push_back({index_field(t, "k"), direct_sum_from_json(field(t, "vector"))});
  return out;
}

Json to_json(const std::vector<Target>& targets) {
  Json list = Json::array();
  for (const auto& t : targets) list.push_back(Json{{"k", t.k}, {"vector", to_json(t.u)}});
  return Json{{"targets", std::move(list)}};
}

Json to_json(const GeoSolution& g) {
  return Json{{"omega", g.omega}, {"y_star", g.y_star}, {"min_value", g.min_value}, {"residual", g.residual}};
}

Json to_json(const WitnessResult& w) {
  Json comps = Json::array();
  for (const auto& c : w.components) {
    comps.push_back(Json{{"j", c.j},
                         {"l", c.l},
                         {"case", c.block_start ? "block_start" : "interior"},
                         {"x", scalar_json(c.x)},
                         {"y", scalar_json(c.y)},
                         {"mu", c.mu},
                         {"v_norm", c.v_norm},
                         {"v_bound", c.v_bound},
                         {"residual_norm", c.residual_norm},
                         {"residual_bound", c.residual_bound},
                         {"identity_error", c.identity_error}});
  }
  return Json{{"k", w.k},
              {"n_k", w.n_k},
              {"eps", w.eps},
              {"approx_error", w.approx_error},
              {"target_norm", w.target_norm},
              {"v_norm", w.v_norm},
              {"pass", w.pass},
              {"target", to_json(w.target)},
              {"v", to_json(w.v)},
              {"components", std::move(comps)}};
}

Json to_json(const CriterionReport& r) {
  Json ann = Json::array();
  for (const auto& a : r.annihilation) {
    ann.push_back(Json{{"support_max", a.support_max}, {"power", a.power}, {"exact_zero", a.exact_zero}});
  }
  Json bullets = Json::array();
  for (const auto& b : r.bullets) bullets.push_back(Json{{"name", b.name}, {"status", b.status}, {"detail", b.detail}});
  Json wit = Json::array();
  for (const auto& w : r.witnesses) wit.push_back(to_json(w));
  return Json{{"pass", r.pass}, {"bullets", std::move(bullets)}, {"annihilation", std::move(ann)},
              {"witnesses", std::move(wit)}};
}

Json to_json(const LowerBoundResult& r) {
  return Json{{"eps", r.eps},         {"delta", r.delta},         {"K", r.K_scalar},
              {"horizon", r.horizon}, {"min_ratio", r.min_ratio}, {"min_slack", r.min_slack},
              {"pass", r.pass},       {"per_n_slack", r.per_n_slack}};
}

Json to_json(const IntervalReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.intervals) {
    Json j{{"n", e.n}, {"block_start", e.block_start}, {"u_n0", scalar_json(e.u_n0)}, {"empty", e.empty}};
    if (e.has_superset) {
      j["x_n"] = scalar_json(e.x_n);
      j["superset"] = Json{{"anchor", e.anchor},
                           {"lower_offset", e.lower_offset},
                           {"upper_offset", e.upper_offset},
                           {"length", e.superset_length()}};
    }
    if (!e.empty) {
      j["lo"] = e.lo;
      j["hi"] = e.hi;
      j["length"] = e.length();
      j["negative_re_x"] = e.negative_re_x;
    }
    entries.push_back(std::move(j));
  }
  Json out{{"eps", r.eps},
           {"M", r.M},
           {"ray_start", r.ray_start},
           {"horizon", r.horizon},
           {"probe_length", r.probe_length},
           {"total_length", r.total_length},
           {"bound", r.bound},
           {"flagged", r.flagged},
           {"intervals", std::move(entries)}};
  out["uncovered_point"] = r.uncovered_point ? Json(*r.uncovered_point) : Json(nullptr);
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace epslab
