#pragma once

// Command-line front end and the JSON form of witness certificates.

#include <iosfwd>
#include <string>
#include <vector>

#include "arborlab/tower.hpp"
#include "json.hpp"

namespace arborlab::cli {

using json = nlohmann::ordered_json;
using zp::u64;

// Every JSON document starts with this field; it is the only part of the
// output allowed to change between releases for identical input.
inline constexpr const char* kToolHeader = "arborlab 0.1.0";

enum ExitCode : int {
    kOk = 0,
    kResourceLimit = 1,
    kPrecondition = 2,
    kUsage = 64,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

json verdict_witness_to_json(const galois::GaloisVerdict& v);
galois::GaloisVerdict verdict_from_json(const std::string& verdict, const json& witness);

json certificate_to_json(const tower::WitnessCertificate& cert);
// Rebuilds the certificate fields that verify_certificate inspects. Throws
// Error or nlohmann::json::exception on malformed input.
tower::WitnessCertificate certificate_from_json(const json& j);

}  // namespace arborlab::cli
