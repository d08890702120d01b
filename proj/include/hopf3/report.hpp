#ifndef HOPF3_REPORT_HPP
#define HOPF3_REPORT_HPP

#include "hopf3/classify.hpp"

#include <json.hpp>

namespace hopf3 {

using Json = nlohmann::ordered_json;

Json scalar_json(const Scalar& s);
Json series_json(const SSeries& s, const std::array<const char*, 3>& names);
Json tree_json(const BlowupTree& tree);
Json report_json(const ClassifyResult& r, const Json& input_echo, const Json& options_echo);

} // namespace hopf3

#endif
