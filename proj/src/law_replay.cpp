#include <functional>
#include <map>

#include "opmeans/error.hpp"
#include "opmeans/laws.hpp"
#include "opmeans/matrix_json.hpp"

namespace opmeans {

using nlohmann::json;

/// Parsed matrix fields keyed by input name, each stored with the JSON it
/// came from so a changed field is never served from the cache.
struct LawEvaluator::Cache {
  std::map<std::string, std::pair<json, PositiveMatrix>, std::less<>> positive;
  std::map<std::string, std::pair<json, InvertibleMatrix>, std::less<>> invertible;
};

namespace {

template <class T, class Parse>
const T& lookup(std::map<std::string, std::pair<json, T>, std::less<>>& m, const char* key,
                const json& src, Parse parse) {
  const auto it = m.find(key);
  if (it != m.end() && it->second.first == src) return it->second.second;
  return m.insert_or_assign(key, std::pair<json, T>(src, parse(src))).first->second.second;
}

class Reader {
public:
  Reader(const json& j, LawEvaluator::Cache& cache) : j_(j), cache_(cache) {}

  const json& field(const char* key) const {
    if (!j_.is_object() || !j_.contains(key)) {
      throw Error(ErrorCode::ParseError, std::string("missing input field \"") + key + "\"");
    }
    return j_.at(key);
  }

  double num(const char* key) const {
    const json& v = field(key);
    if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" is not a number");
    return v.get<double>();
  }

  double num_or(const char* key, double fallback) const {
    return j_.contains(key) ? num(key) : fallback;
  }

  const PositiveMatrix& pos(const char* key) {
    return lookup(cache_.positive, key, field(key), [](const json& src) {
      return PositiveMatrix(HermitianMatrix(matrix_from_json(src)));
    });
  }

  const InvertibleMatrix& inv(const char* key) {
    return lookup(cache_.invertible, key, field(key),
                  [](const json& src) { return InvertibleMatrix(matrix_from_json(src)); });
  }

private:
  const json& j_;
  LawEvaluator::Cache& cache_;
};

ConvexFamily convex_family(const std::string& name) {
  for (const ConvexFamily f : {ConvexFamily::exponential, ConvexFamily::power,
                               ConvexFamily::negative_log, ConvexFamily::affine_minus_power}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::ParseError, "unknown convex family \"" + name + "\"");
}

JensenInstance jensen(const Reader& outer, const char* key, LawEvaluator::Cache& cache) {
  const Reader j(outer.field(key), cache);
  JensenInstance inst;
  inst.points = j.field("points").get<std::vector<double>>();
  inst.weights = j.field("weights").get<std::vector<double>>();
  inst.function.family = convex_family(j.field("family").get<std::string>());
  inst.function.param = j.num("param");
  return inst;
}

using Evaluator = std::function<LawReport(Reader&, LawEvaluator::Cache&, const Tolerances&)>;

struct Entry {
  std::string id;
  Evaluator eval;
};

Evaluator xy_nu(LawReport (*fn)(const InvertibleMatrix&, const InvertibleMatrix&, double,
                                const Tolerances&)) {
  return [fn](Reader& j, LawEvaluator::Cache&, const Tolerances& t) {
    return fn(j.inv("x"), j.inv("y"), j.num("nu"), t);
  };
}

Evaluator hga(ChainKind kind) {
  return [kind](Reader& j, LawEvaluator::Cache&, const Tolerances& t) {
    return check_hga_chain(j.inv("x"), j.inv("y"), j.num("nu"), kind, t);
  };
}

Evaluator refinement(RefinementForm form) {
  return [form](Reader& j, LawEvaluator::Cache&, const Tolerances& t) {
    return check_operator_refinement(j.inv("x"), j.inv("y"), j.num("p"), j.num_or("q", 0.5), form,
                                     t);
  };
}

Evaluator bounded(BoundedForm form) {
  return [form](Reader& j, LawEvaluator::Cache&, const Tolerances& t) {
    return check_bounded_estimates(j.inv("x"), j.inv("y"), j.num("nu"), form,
                                   j.num_or("widen", 1.0), t);
  };
}

Evaluator scalar(ScalarFamily family) {
  return [family](Reader& j, LawEvaluator::Cache&, const Tolerances& t) {
    return check_scalar_refinements(j.num("a"), j.num("b"), j.num("p"), j.num_or("q", 0.5),
                                    j.num_or("alpha", 1.0), family, t);
  };
}

const std::vector<Entry>& entries() {
  using C = LawEvaluator::Cache;
  static const std::vector<Entry> table = [] {
    std::vector<Entry> e;
    e.push_back({"dcd-power-selfadjoint", [](Reader& j, C&, const Tolerances& t) {
                   return check_dcd_identity(j.pos("c"), j.inv("d"), j.num("lambda"),
                                             DcdVariant::selfadjoint, t);
                 }});
    e.push_back({"dcd-power-star", [](Reader& j, C&, const Tolerances& t) {
                   return check_dcd_identity(j.pos("c"), j.inv("d"), j.num("lambda"),
                                             DcdVariant::star, t);
                 }});
    e.push_back({"geometric-swap", [](Reader& j, C&, const Tolerances& t) {
                   return check_geo_symmetry(j.pos("a"), j.pos("b"), j.num("nu"), t);
                 }});
    e.push_back({"quadratic-inverse", xy_nu(&check_inverse_identities)});
    e.push_back({"quadratic-representation", xy_nu(&check_representation)});
    e.push_back({"quadratic-extends-geometric", [](Reader& j, C&, const Tolerances& t) {
                   return check_quadratic_extends_geometric(j.pos("a"), j.pos("b"), j.num("nu"),
                                                            t);
                 }});
    e.push_back({"mean-symmetry", [](Reader& j, C&, const Tolerances& t) {
                   return check_mean_symmetry(j.pos("a"), j.pos("b"), t);
                 }});
    e.push_back({"mean-congruence", [](Reader& j, C&, const Tolerances& t) {
                   return check_mean_congruence(j.pos("a"), j.pos("b"), j.inv("c"), t);
                 }});
    e.push_back({"mean-inversion", [](Reader& j, C&, const Tolerances& t) {
                   return check_mean_inversion(j.pos("a"), j.pos("b"), j.num("nu"), t);
                 }});
    e.push_back({"power-rules", [](Reader& j, C&, const Tolerances& t) {
                   return check_power_rules(j.pos("a"), j.num("alpha"), j.num("beta"), t);
                 }});
    e.push_back({"loewner-heinz", [](Reader& j, C&, const Tolerances& t) {
                   return check_loewner_heinz(j.pos("a"), j.pos("b"), j.num("p"), t);
                 }});
    e.push_back({"contour-oracle", [](Reader& j, C&, const Tolerances& t) {
                   return check_contour_oracle(j.pos("a"), j.num("alpha"),
                                               j.field("nodes").get<std::size_t>(), t);
                 }});
    e.push_back({"hga-squared", hga(ChainKind::squared)});
    e.push_back({"hga-half", hga(ChainKind::half)});
    e.push_back({"hga-positive-pair", hga(ChainKind::positive_pair)});
    e.push_back({"norm-chain", xy_nu(&check_norm_chain)});
    e.push_back({"refinement-general", refinement(RefinementForm::general)});
    e.push_back({"refinement-midpoint", refinement(RefinementForm::midpoint)});
    e.push_back({"refinement-pair", refinement(RefinementForm::positive_pair)});
    e.push_back({"refinement-pair-midpoint", refinement(RefinementForm::positive_pair_midpoint)});
    e.push_back({"bounded-delta", bounded(BoundedForm::delta)});
    e.push_back({"bounded-root", bounded(BoundedForm::root)});
    e.push_back({"bounded-pair-delta", bounded(BoundedForm::pair_delta)});
    e.push_back({"bounded-pair-root", bounded(BoundedForm::pair_root)});
    e.push_back({"jensen-ratio-bounds", [](Reader& j, C& cache, const Tolerances& t) {
                   return check_jensen_bounds(jensen(j, "p", cache), jensen(j, "q", cache), t);
                 }});
    for (const ScalarFamily f : {ScalarFamily::exp, ScalarFamily::exp_midpoint,
                                 ScalarFamily::power, ScalarFamily::power_midpoint,
                                 ScalarFamily::amgm, ScalarFamily::amgm_midpoint}) {
      e.push_back({"scalar-" + std::string(to_string(f)), scalar(f)});
    }
    return e;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& law_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const Entry& e : entries()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

LawEvaluator::LawEvaluator(std::string_view law_id) : cache_(std::make_unique<Cache>()) {
  const auto& table = entries();
  for (entry_ = 0; entry_ < table.size(); ++entry_)
    if (table[entry_].id == law_id) return;
  throw Error(ErrorCode::UnknownLawId, "no law named \"" + std::string(law_id) + "\"");
}

LawEvaluator::~LawEvaluator() = default;
LawEvaluator::LawEvaluator(LawEvaluator&&) noexcept = default;
LawEvaluator& LawEvaluator::operator=(LawEvaluator&&) noexcept = default;

const std::string& LawEvaluator::law_id() const { return entries()[entry_].id; }

LawReport LawEvaluator::operator()(const nlohmann::json& inputs, const Tolerances& tol) {
  try {
    Reader reader(inputs, *cache_);
    return entries()[entry_].eval(reader, *cache_, tol);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

LawReport evaluate_law(std::string_view law_id, const nlohmann::json& inputs,
                       const Tolerances& tol) {
  return LawEvaluator(law_id)(inputs, tol);
}

}  // namespace opmeans
