#include "nsw/json_io.hpp"

#include <limits>
#include <memory>

namespace nsw {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

const Json& array_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_array()) throw InputError(where + ": field \"" + key + "\" must be an array");
  return v;
}

Json compact_rat(const Rat& v) {
  if (v.is_integer()) {
    const mpz_class& num = v.raw().get_num();
    if (num.fits_slong_p()) return num.get_si();
  }
  return v.str();
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw InputError(where + ": integer out of range");
  }
  return static_cast<int>(v);
}

std::vector<Rat> rats_from_json(const Json& arr, const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rat> out;
  for (std::size_t t = 0; t < arr.size(); ++t) out.push_back(rat_from_json(arr[t], where + "[" + std::to_string(t) + "]"));
  return out;
}

Json rats_to_json(const std::vector<Rat>& values) {
  Json arr = Json::array();
  for (const Rat& v : values) arr.push_back(rat_to_json(v));
  return arr;
}

}  // namespace

Json rat_to_json(const Rat& v) {
  Json j;
  j["num"] = v.numerator_string();
  j["den"] = v.denominator_string();
  j["approx"] = v.to_double();
  return j;
}

Json ext_rat_to_json(const ExtRat& v) {
  if (v.is_infinite()) return "inf";
  return rat_to_json(v.value());
}

Rat rat_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_object()) {
      const Json& num = field(j, "num", where);
      const Json& den = field(j, "den", where);
      if (!num.is_string() || !den.is_string()) throw InputError(where + ": num and den must be strings");
      return Rat::from_strings(num.get<std::string>(), den.get<std::string>());
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected an integer or a rational string like \"3/4\"");
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance: expected a JSON object");
  Instance inst;
  const Json& agents = array_field(doc, "agents", "instance");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const Json& cap = field(agents[i], "cap", where);
    if (cap.is_null()) {
      inst.caps.emplace_back(std::nullopt);
    } else {
      inst.caps.emplace_back(rat_from_json(cap, where + ".cap"));
    }
  }
  const Json& goods = array_field(doc, "goods", "instance");
  for (std::size_t j = 0; j < goods.size(); ++j) {
    const std::string where = "goods[" + std::to_string(j) + "]";
    inst.copies.push_back(int_from_json(field(goods[j], "copies", where), where + ".copies"));
  }
  const Json& utils = array_field(doc, "utilities", "instance");
  for (std::size_t i = 0; i < utils.size(); ++i) {
    const std::string wi = "utilities[" + std::to_string(i) + "]";
    if (!utils[i].is_array()) throw InputError(wi + ": expected an array");
    std::vector<std::vector<Rat>> row;
    for (std::size_t j = 0; j < utils[i].size(); ++j) {
      row.push_back(rats_from_json(utils[i][j], wi + "[" + std::to_string(j) + "]"));
    }
    inst.utils.push_back(std::move(row));
  }
  return inst;
}

Instance parse_instance_text(std::string_view text) { return parse_instance(parse_json_text(text)); }

Json instance_to_json(const Instance& inst) {
  Json doc;
  Json agents = Json::array();
  for (const Cap& cap : inst.caps) {
    Json a;
    a["cap"] = cap ? compact_rat(*cap) : Json(nullptr);
    agents.push_back(a);
  }
  Json goods = Json::array();
  for (int k : inst.copies) {
    Json g;
    g["copies"] = k;
    goods.push_back(g);
  }
  Json utils = Json::array();
  for (const auto& agent : inst.utils) {
    Json row = Json::array();
    for (const auto& good : agent) {
      Json copies = Json::array();
      for (const Rat& u : good) copies.push_back(compact_rat(u));
      row.push_back(copies);
    }
    utils.push_back(row);
  }
  doc["agents"] = agents;
  doc["goods"] = goods;
  doc["utilities"] = utils;
  return doc;
}

Json solver_output_to_json(const SolverOutput& out) {
  const MarketState& s = out.state;
  Json doc;
  doc["epsilon"] = rat_to_json(out.epsilon);
  doc["allocation"] = s.allocation();
  doc["prices"] = rats_to_json(s.prices());
  doc["mbb"] = rats_to_json(s.mbbs());
  Json values = Json::array();
  for (int i = 0; i < s.agents(); ++i) values.push_back(rat_to_json(bundle_value(s, i)));
  doc["bundle_values"] = values;
  const Rat nsw = nsw_nth_power(s.instance().values, s.allocation());
  doc["nsw_nth_power"] = rat_to_json(nsw);
  doc["nsw"] = nth_root(nsw, s.agents());
  doc["iterations"] = out.iterations;
  doc["swap_events"] = out.swap_events;
  doc["copy_moves"] = out.copy_moves;
  doc["price_increases"] = out.price_increases;
  doc["iteration_cap"] = out.iteration_cap;
  doc["terminal"] = out.terminal == TerminalKind::Ef1Check ? "ef1_check" : "beta3_break";
  return doc;
}

Solution parse_solution(const Json& doc) {
  if (!doc.is_object()) throw InputError("solution: expected a JSON object");
  Solution sol;
  sol.epsilon = rat_from_json(field(doc, "epsilon", "solution"), "solution.epsilon");
  const Json& alloc = array_field(doc, "allocation", "solution");
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    const std::string wi = "allocation[" + std::to_string(i) + "]";
    if (!alloc[i].is_array()) throw InputError(wi + ": expected an array");
    std::vector<int> row;
    for (std::size_t j = 0; j < alloc[i].size(); ++j) {
      row.push_back(int_from_json(alloc[i][j], wi + "[" + std::to_string(j) + "]"));
    }
    sol.allocation.push_back(std::move(row));
  }
  sol.prices = rats_from_json(array_field(doc, "prices", "solution"), "solution.prices");
  sol.mbb = rats_from_json(array_field(doc, "mbb", "solution"), "solution.mbb");
  return sol;
}

Solution parse_solution_text(std::string_view text) { return parse_solution(parse_json_text(text)); }

MarketState solution_state(const Instance& inst, const Solution& sol) {
  std::shared_ptr<const RoundedInstance> rounded;
  try {
    rounded = std::make_shared<const RoundedInstance>(cap_and_round(inst, sol.epsilon));
  } catch (const ParameterError& e) {
    throw InputError(std::string("solution: ") + e.what());
  }
  MarketState s(rounded);
  const int n = inst.agents();
  const int m = inst.goods();
  if (static_cast<int>(sol.prices.size()) != m || static_cast<int>(sol.mbb.size()) != n) {
    throw InputError("solution: prices or MBB vector does not match the instance size");
  }
  try {
    s.set_allocation(sol.allocation);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("solution: ") + e.what());
  }
  if (!conservation_violations(s).empty()) {
    throw InputError("solution: allocation does not hand out every copy exactly once");
  }
  for (int j = 0; j < m; ++j) {
    if (sol.prices[j].sign() < 0) throw InputError("solution: negative price");
    s.set_price(j, sol.prices[j]);
  }
  for (int i = 0; i < n; ++i) {
    if (sol.mbb[i].sign() <= 0) throw InputError("solution: MBB ratios must be positive");
    s.set_mbb(i, sol.mbb[i]);
  }
  return s;
}

Json certificate_to_json(const Certificate& cert) {
  Json doc;
  doc["market_ok"] = cert.market_ok;
  doc["ef1_ok"] = cert.ef1_ok;
  doc["worst_individual_ratio"] = ext_rat_to_json(cert.individual.worst_ratio);
  if (cert.individual.witness) {
    doc["individual_witness"] = {cert.individual.witness->envious + 1, cert.individual.witness->envied + 1};
  } else {
    doc["individual_witness"] = nullptr;
  }
  doc["individual_ok"] = cert.individual_ok;
  doc["upper_bound_nth_power"] = rat_to_json(cert.upper_bound_nth_power);
  doc["alg_nsw_nth_power"] = rat_to_json(cert.alg_nsw_nth_power);
  doc["ratio_nth_power"] = ext_rat_to_json(cert.ratio_nth_power);
  doc["ratio"] = cert.ratio;
  doc["theoretical_cap"] = cert.theoretical_cap;
  doc["within_cap"] = cert.within_cap;
  Json aux;
  aux["h"] = cert.auxiliary.h;
  aux["k"] = cert.auxiliary.k;
  aux["delta"] = rat_to_json(cert.auxiliary.delta);
  aux["degenerate"] = cert.auxiliary.degenerate;
  aux["from_caps_only"] = cert.auxiliary.from_caps_only;
  doc["auxiliary"] = aux;
  doc["passed"] = cert.passed();
  return doc;
}

Json oracle_to_json(const OracleResult& res, int agents) {
  Json doc;
  doc["best_nsw_nth_power"] = rat_to_json(res.best_nth_power);
  doc["best_nsw"] = nth_root(res.best_nth_power, agents);
  doc["allocation"] = res.best;
  doc["optimum_count"] = res.optimum_count;
  doc["states"] = res.states;
  return doc;
}

}  // namespace nsw
