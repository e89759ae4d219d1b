#pragma once

#include <string>

#include <json.hpp>

#include "khplumb/detection.hpp"
#include "khplumb/gluing.hpp"
#include "khplumb/homology.hpp"
#include "khplumb/structure.hpp"

namespace khplumb {

using Json = nlohmann::ordered_json;

std::string circle_name(int id);  // "c5", free loops "c-1"

Json to_json(const Chain& c);
std::string to_text(const Chain& c);

Json to_json(const HomologyTable& h, Ring r);
std::string homology_text(const HomologyTable& h, Ring r);

Json to_json(const State& x, const ZoneDecomposition& z);
std::string zones_text(const State& x, const ZoneDecomposition& z);
// Graphviz rendering of G_x; A-arcs solid, B-arcs dashed.
std::string zones_dot(const State& x, const ZoneDecomposition& z);

Json to_json(const DetectionCertificate& c);
std::string certificate_text(const DetectionCertificate& c);

Json to_json(const GluingMap& g);

// Every state with its gradings; with enhancements when requested.
Json states_json(const DiagramPtr& d, bool enhanced, int cap);
std::string states_text(const DiagramPtr& d, bool enhanced, int cap);

}  // namespace khplumb
