#pragma once

#include <json.hpp>

#include "permlattice/graph.hpp"
#include "permlattice/integrals.hpp"
#include "permlattice/lattice.hpp"

namespace permlattice {

using Json = nlohmann::ordered_json;

Json to_json(const RestrictionSet& a);
Json to_json(const Region& u);
Json to_json(const Pattern& p);
Json to_json(const UndirectedGraph& g);
Json big_json(const BigInt& x);  // decimal string
Json big_list(const std::vector<BigInt>& v);

RestrictionSet set_from_json(const Json& j);
Region region_from_json(const Json& j);
Pattern pattern_from_json(const Json& j);
// {"vertices": n, "edges": [[u, v], ...]}; parallel edges kept.
UndirectedGraph graph_from_json(const Json& j);
// {"terms": [[a, b, re], [a, b, re, im], ...]}
TorusIntegrand integrand_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace permlattice
