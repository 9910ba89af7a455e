#include "sphex/cli/envelope.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "sphex/errors.hpp"

namespace sphex::cli {

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 computation failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

json canonical_payload(const json& envelope) {
  json payload = envelope;
  if (payload.contains("provenance")) {
    payload["provenance"].erase("timestamp");
    payload["provenance"].erase("payload_sha256");
  }
  return payload;
}

std::string payload_digest(const json& envelope) { return sha256_hex(canonical_payload(envelope).dump()); }

json make_envelope(const std::string& command, const json& config, const json& results) {
  json envelope{{"version", kSchemaVersion}, {"config", config}, {"results", results}};
  json provenance{{"tool", kToolName},
                  {"tool_version", kToolVersion},
                  {"schema_version", kSchemaVersion},
                  {"command", command}};
  if (config.contains("seed")) provenance["seed"] = config["seed"];
  envelope["provenance"] = provenance;
  envelope["provenance"]["payload_sha256"] = payload_digest(envelope);
  envelope["provenance"]["timestamp"] = utc_timestamp();
  return envelope;
}

}  // namespace sphex::cli
