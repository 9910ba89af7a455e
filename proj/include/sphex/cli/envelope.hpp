#pragma once

#include <string>

#include "sphex/cli/specs.hpp"

/// Result envelope shared by all subcommands:
///   {"version", "config", "results", "provenance"}
/// provenance holds the tool name and version, the schema version, the
/// command, the master seed (if any), a wall-clock timestamp and
/// payload_sha256. The digest covers the canonical payload: the envelope
/// without the timestamp and the digest itself, serialized with sorted keys.
namespace sphex::cli {

json make_envelope(const std::string& command, const json& config, const json& results);

/// The envelope with the wall-clock fields removed.
json canonical_payload(const json& envelope);

std::string payload_digest(const json& envelope);

std::string sha256_hex(const std::string& bytes);

}  // namespace sphex::cli
