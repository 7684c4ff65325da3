#ifndef HALFCERT_JSON_IO_HPP
#define HALFCERT_JSON_IO_HPP

#include <filesystem>

#include "json.hpp"

#include "halfcert/certificate.hpp"
#include "halfcert/entropy.hpp"
#include "halfcert/family.hpp"
#include "halfcert/search.hpp"

namespace halfcert {

using Json = nlohmann::json;

// Family files look like {"n": 2, "sets": [[], [1], [1, 2]]}. Elements are
// 1-based; inner lists may be unordered and contain duplicates; the loaded
// family is canonicalized. Semantic errors name the offending field.
Family family_from_json(const Json& j);
Family load_family(const std::filesystem::path& file);
Json family_to_json(const Family& fam);

Json to_json(const FrequencyTable& table);
Json to_json(const CertificateReport& report); // exact integers as strings
Json to_json(const DecompositionVector& vec);
Json to_json(const DecompositionCheck& check);
Json to_json(const SearchOutcome& outcome);
Json to_json(const ThresholdReport& report);

} // namespace halfcert

#endif
