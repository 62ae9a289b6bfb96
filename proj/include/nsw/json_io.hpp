#pragma once

// JSON encodings of instances, solver outputs, certificates and oracle
// results. Exact values are written as {"num", "den", "approx"} objects.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsw/certify.hpp"
#include "nsw/instance.hpp"
#include "nsw/market.hpp"
#include "nsw/oracle.hpp"
#include "nsw/rat.hpp"
#include "nsw/solver.hpp"

namespace nsw {

using Json = nlohmann::ordered_json;

// Malformed JSON or a document of the wrong shape.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json rat_to_json(const Rat& v);
// "inf" for +infinity.
Json ext_rat_to_json(const ExtRat& v);
// Accepts an integer, a "p/q" string or a {"num", "den"} object.
Rat rat_from_json(const Json& j, const std::string& where);

// Structural parse only; run validate() afterwards.
Instance parse_instance(const Json& doc);
Instance parse_instance_text(std::string_view text);
// Integers stay integers, other rationals become "p/q" strings.
Json instance_to_json(const Instance& inst);

Json solver_output_to_json(const SolverOutput& out);

struct Solution {
  Rat epsilon;
  Allocation allocation;
  std::vector<Rat> prices;
  std::vector<Rat> mbb;
};

Solution parse_solution(const Json& doc);
Solution parse_solution_text(std::string_view text);
// Rebuilds the market state the solution refers to. Throws InputError when
// the solution does not fit the instance.
MarketState solution_state(const Instance& inst, const Solution& sol);

Json certificate_to_json(const Certificate& cert);
Json oracle_to_json(const OracleResult& res, int agents);

Json parse_json_text(std::string_view text);

}  // namespace nsw
