#include "lieweight/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lieweight/errors.hpp"
#include "lieweight/expression.hpp"
#include "lieweight/jets.hpp"
#include "lieweight/osculating.hpp"
#include "lieweight/weighted.hpp"

namespace lieweight {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Problem files

namespace {

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing key \"") + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw InputError(what + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw InputError(what + " must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Rational rational_value(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw InputError(what + " must be a rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw InputError(what + ": malformed rational \"" + v.get<std::string>() + "\"");
  }
}

template <class T>
std::optional<T> optional_nonnegative(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (!it->is_number_integer() || it->get<long long>() < 0)
    throw InputError(std::string("\"") + key + "\" must be a non-negative integer");
  return static_cast<T>(it->get<long long>());
}

}  // namespace

ProblemSpec parse_problem(const json& doc) {
  if (!doc.is_object()) throw InputError("a problem must be a JSON object");
  static const std::set<std::string> known{"variables", "order",        "filtration", "submanifold",
                                           "degree_bound", "seed", "samples"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw InputError("unknown key \"" + key + "\"");

  Chart chart;
  try {
    chart = Chart(string_list(require(doc, "variables"), "\"variables\""));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("\"variables\": ") + e.what());
  }
  const std::size_t n = chart.dimension();

  const json& order = require(doc, "order");
  if (!order.is_number_integer() || order.get<long long>() < 1 || order.get<long long>() > 64)
    throw InputError("\"order\" must be an integer between 1 and 64");
  const int r = order.get<int>();

  const json& filt = require(doc, "filtration");
  if (!filt.is_object()) throw InputError("\"filtration\" must be an object keyed \"-1\" ... \"-r\"");
  std::vector<std::vector<VectorField>> levels(static_cast<std::size_t>(r));
  std::set<std::string> keys;
  for (int i = 1; i <= r; ++i) keys.insert("-" + std::to_string(i));
  for (const auto& [key, value] : filt.items())
    if (!keys.count(key)) throw InputError("\"filtration\": unexpected level \"" + key + "\"");
  for (int i = 1; i <= r; ++i) {
    const std::string key = "-" + std::to_string(i);
    auto it = filt.find(key);
    if (it == filt.end()) throw InputError("\"filtration\": level \"" + key + "\" is missing");
    if (it->is_string()) {
      if (it->get<std::string>() != "full" || i != r)
        throw InputError("\"filtration\": only the last level may be \"full\"");
      continue;  // the coordinate fields are adjoined at level -r anyway
    }
    std::size_t k = 0;
    for (const auto& src : string_list(*it, "\"filtration\" level " + key)) {
      try {
        levels[static_cast<std::size_t>(i - 1)].push_back(parse_vf(src, chart));
      } catch (const ParseError& e) {
        throw InputError("\"filtration\" level " + key + " entry " + std::to_string(k) + ": " + e.what());
      }
      ++k;
    }
  }

  const json& sub = require(doc, "submanifold");
  if (!sub.is_object()) throw InputError("\"submanifold\" must be an object");
  for (const auto& [key, value] : sub.items())
    if (key != "tangent" && key != "base_point") throw InputError("\"submanifold\": unknown key \"" + key + "\"");
  std::vector<std::size_t> tangent;
  for (const auto& name : string_list(require(sub, "tangent"), "\"submanifold.tangent\"")) {
    auto idx = chart.index_of(name);
    if (!idx) throw InputError("\"submanifold.tangent\": unknown variable \"" + name + "\"");
    tangent.push_back(*idx);
  }
  const json& bp = require(sub, "base_point");
  if (!bp.is_array() || bp.size() != n)
    throw InputError("\"submanifold.base_point\" must list one rational per variable");
  std::vector<Rational> point;
  for (const auto& v : bp) point.push_back(rational_value(v, "\"submanifold.base_point\""));

  std::optional<Submanifold> sm;
  try {
    sm.emplace(n, tangent, point);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("\"submanifold\": ") + e.what());
  }
  std::optional<Filtration> f;
  try {
    f.emplace(n, std::move(levels));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("\"filtration\": ") + e.what());
  }
  return ProblemSpec{chart,
                     r,
                     std::move(*f),
                     std::move(*sm),
                     optional_nonnegative<int>(doc, "degree_bound"),
                     optional_nonnegative<std::uint64_t>(doc, "seed"),
                     optional_nonnegative<std::size_t>(doc, "samples")};
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return parse_problem(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Pipeline

std::optional<Command> parse_command(const std::string& name) {
  if (name == "check") return Command::Check;
  if (name == "weights") return Command::Weights;
  if (name == "coords") return Command::Coords;
  if (name == "jets") return Command::Jets;
  if (name == "osculate") return Command::Osculate;
  if (name == "report") return Command::Report;
  return std::nullopt;
}

std::vector<std::string> stages_for(Command c) {
  std::vector<std::string> s{"bracket_compat", "clean"};
  if (c == Command::Check) return s;
  s.push_back("weights");
  if (c == Command::Weights) return s;
  s.push_back("coordinates");
  if (c == Command::Coords) return s;
  if (c == Command::Jets || c == Command::Report) s.push_back("jets");
  if (c == Command::Osculate || c == Command::Report) s.push_back("osculating");
  return s;
}

namespace {

ordered_json rational_list(std::span<const Rational> v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

template <class T>
ordered_json number_list(const std::vector<T>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

ordered_json membership_json(const MembershipResult& m) {
  ordered_json j;
  j["verdict"] = to_string(m.verdict);
  if (m.witness) j["witness"] = rational_list(*m.witness);
  if (!m.reason.empty()) j["reason"] = m.reason;
  return j;
}

class Pipeline {
 public:
  Pipeline(const ProblemSpec& p, const RunOptions& o)
      : p_(p),
        bound_(o.degree_bound.value_or(p.degree_bound.value_or(p.filtration.default_degree_bound()))),
        samples_(o.samples.value_or(p.samples.value_or(100))),
        seed_(o.seed.value_or(p.seed.value_or(0))) {}

  StageResult run(const std::string& name) {
    StageResult s{name, Verdict::Pass, ordered_json::object()};
    try {
      if (name == "bracket_compat") bracket_compat(s);
      else if (name == "clean") clean(s);
      else if (name == "weights") weights(s);
      else if (name == "coordinates") coordinates(s);
      else if (name == "jets") jets(s);
      else if (name == "osculating") osculating(s);
    } catch (const PreconditionError& e) {
      s.verdict = Verdict::Fail;
      s.data["error"] = e.what();
    } catch (const InternalInconsistency& e) {
      s.verdict = Verdict::Fail;
      s.data["error"] = e.what();
    }
    return s;
  }

 private:
  const Chart& chart() const { return p_.chart; }

  void bracket_compat(StageResult& s) {
    const BracketCompatReport rep = check_bracket_compat(p_.filtration, bound_);
    s.verdict = rep.verdict;
    s.data["degree_bound"] = bound_;
    s.data["checked"] = rep.checks.size();
    ordered_json issues = ordered_json::array();
    for (const auto& c : rep.checks) {
      if (c.result.verdict == Verdict::Pass) continue;
      ordered_json j;
      j["levels"] = {c.i, c.j};
      j["first"] = to_string(p_.filtration.generators(c.i)[c.first], chart());
      j["second"] = to_string(p_.filtration.generators(c.j)[c.second], chart());
      j["bracket"] = to_string(c.bracket, chart());
      j["target_level"] = c.target_level;
      j.update(membership_json(c.result));
      issues.push_back(std::move(j));
    }
    s.data["issues"] = std::move(issues);
  }

  void clean(StageResult& s) {
    clean_ = check_clean(p_.filtration, p_.submanifold);
    s.verdict = clean_->verdict;
    s.data["ranks"] = number_list(clean_->ranks);
    s.data["generic_ranks"] = number_list(clean_->generic_ranks);
    if (clean_->failing_level) s.data["failing_level"] = *clean_->failing_level;
    if (clean_->witness) s.data["witness"] = rational_list(*clean_->witness);
  }

  void weights(StageResult& s) {
    w_ = weighted_coordinates(p_.filtration, p_.submanifold, chart());
    s.data["weights"] = number_list(w_->weights);
    s.data["ranks"] = number_list(clean_->ranks);
    ordered_json frame = ordered_json::array();
    for (const auto& v : w_->frame.fields) frame.push_back(to_string(v, chart()));
    s.data["frame"] = std::move(frame);
  }

  void coordinates(StageResult& s) {
    const Chart slots = w_->slot_chart();
    s.data["variables"] = number_list(w_->slot_names);
    s.data["weights"] = number_list(w_->weights);
    ordered_json coords = ordered_json::array(), inverse = ordered_json::array();
    for (const auto& x : w_->coordinates) coords.push_back(to_string(x, chart()));
    for (const auto& x : w_->inverse) inverse.push_back(to_string(x, slots));
    s.data["coordinates"] = std::move(coords);
    s.data["inverse"] = std::move(inverse);
    ordered_json corr = ordered_json::array();
    for (const auto& rec : w_->records) {
      ordered_json j;
      j["slot"] = w_->base_dimension() + rec.slot;
      ordered_json mi = ordered_json::array();
      for (std::size_t b = 0; b < rec.s.size(); ++b) mi.push_back(rec.s[b]);
      j["multi_index"] = std::move(mi);
      j["c"] = to_string(rec.c);
      j["chi"] = to_string(rec.chi, chart());
      corr.push_back(std::move(j));
    }
    s.data["corrections"] = std::move(corr);
  }

  void jets(StageResult& s) {
    const FlowoutReport rep = flowout_sample(p_.filtration, *w_, samples_, seed_);
    const QDimension q = q_dimension(clean_->ranks);
    s.verdict = rep.verdict;
    s.data["q_dimension"] = q.total;
    s.data["graded_dimensions"] = number_list(q.graded);
    ordered_json samples;
    samples["seed"] = seed_;
    samples["tested"] = rep.tested;
    samples["failed"] = rep.failed;
    if (rep.first_failure) {
      ordered_json comps = ordered_json::array();
      for (int i = 0; i <= rep.first_failure->order(); ++i) {
        std::vector<Rational> row;
        for (std::size_t a = 0; a < rep.first_failure->dimension(); ++a) row.push_back((*rep.first_failure)(i, a));
        comps.push_back(rational_list(row));
      }
      samples["first_failure"] = {{"components", std::move(comps)}};
    } else {
      samples["first_failure"] = nullptr;
    }
    s.data["samples"] = std::move(samples);
  }

  void osculating(StageResult& s) {
    const OsculatingAlgebra p = osculating_at(p_.filtration, p_.submanifold.base_point(), bound_);
    const GradedSubalg r = tangent_subalg(p_.filtration, p_.submanifold, p, bound_);
    const HHReport hh = verify_hh(p_.filtration, p_.submanifold, *w_, p, r);
    Verdict v = hh.verdict;
    if (!p.algebra.is_antisymmetric() || !p.algebra.satisfies_jacobi() || !p.algebra.is_graded() ||
        !is_closed(p.algebra, r))
      v = Verdict::Fail;
    s.verdict = v;
    s.data["point"] = rational_list(p.point);
    s.data["dimensions"] = number_list(hh.p_dims);
    ordered_json reps = ordered_json::array();
    for (const auto& x : p.representatives) reps.push_back(to_string(x, chart()));
    s.data["representatives"] = std::move(reps);
    ordered_json sc = ordered_json::array();
    const std::size_t dim = p.algebra.dimension();
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a + 1; b < dim; ++b)
        for (std::size_t k = 0; k < dim; ++k) {
          const Rational& c = p.algebra.bracket_basis(a, b)[k];
          if (!is_zero(c)) sc.push_back({a + 1, b + 1, k + 1, to_string(c)});
        }
    s.data["structure_constants"] = std::move(sc);
    s.data["structure_constants_verified"] = p.verdict == Verdict::Pass;
    s.data["tangent_dimensions"] = number_list(hh.r_dims);
    s.data["quotient_dimensions"] = number_list(hh.quotient_dims);
    s.data["weight_multiplicities"] = number_list(hh.weight_multiplicities);
    ordered_json checks = ordered_json::array();
    for (const auto& item : hh.items) {
      ordered_json j;
      j["name"] = item.name;
      j["verdict"] = to_string(item.verdict);
      j["detail"] = item.detail;
      checks.push_back(std::move(j));
    }
    s.data["checks"] = std::move(checks);
  }

  const ProblemSpec& p_;
  int bound_;
  std::size_t samples_;
  std::uint64_t seed_;
  std::optional<CleanResult> clean_;
  std::optional<WeightedChart> w_;
};

std::string summary(const StageResult& s) {
  const auto& d = s.data;
  auto join = [](const ordered_json& a, const char* sep) {
    std::string out;
    for (const auto& x : a) {
      if (!out.empty()) out += sep;
      out += x.is_string() ? x.get<std::string>() : x.dump();
    }
    return out;
  };
  if (d.contains("error")) return d["error"].get<std::string>();
  if (s.name == "bracket_compat")
    return std::to_string(d["checked"].get<std::size_t>()) + " brackets, " +
           std::to_string(d["issues"].size()) + " not certified";
  if (s.name == "clean") return "ranks " + join(d["ranks"], " ");
  if (s.name == "weights") return "weights " + join(d["weights"], " ");
  if (s.name == "coordinates") return join(d["coordinates"], ", ");
  if (s.name == "jets") {
    const auto& sm = d["samples"];
    return std::to_string(sm["tested"].get<std::size_t>()) + " samples, " +
           std::to_string(sm["failed"].get<std::size_t>()) + " outside Q; dim Q = " +
           std::to_string(d["q_dimension"].get<std::size_t>());
  }
  if (s.name == "osculating")
    return "dims " + join(d["dimensions"], " ") + "; tangent " + join(d["tangent_dimensions"], " ") +
           "; quotient " + join(d["quotient_dimensions"], " ");
  return "";
}

}  // namespace

Report run_pipeline(const ProblemSpec& p, Command c, const RunOptions& opts) {
  Report rep;
  Pipeline pipe(p, opts);
  for (const auto& name : stages_for(c)) {
    rep.stages.push_back(pipe.run(name));
    if (rep.stages.back().verdict == Verdict::Fail) break;
  }
  return rep;
}

int exit_code(const Report& r) {
  Verdict v = Verdict::Pass;
  for (const auto& s : r.stages) v = combine(v, s.verdict);
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 1;
}

ordered_json to_json(const Report& r) {
  ordered_json stages = ordered_json::array();
  for (const auto& s : r.stages) {
    ordered_json j;
    j["name"] = s.name;
    j["verdict"] = to_string(s.verdict);
    j["data"] = s.data;
    stages.push_back(std::move(j));
  }
  ordered_json doc;
  doc["stages"] = std::move(stages);
  return doc;
}

std::string emit_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string emit_text(const Report& r) {
  std::ostringstream out;
  for (const auto& s : r.stages) {
    std::string name = s.name, verdict = to_string(s.verdict);
    name.resize(std::max<std::size_t>(name.size(), 16), ' ');
    verdict.resize(std::max<std::size_t>(verdict.size(), 14), ' ');
    out << name << verdict << summary(s) << "\n";
  }
  return out.str();
}

}  // namespace lieweight
