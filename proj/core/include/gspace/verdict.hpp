#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace gspace {

// Uniform result of every fuel-bounded semi-decider. Verified and Refuted
// carry a witness that re-validates using oracle queries alone; Unknown means
// the budget ran out. One unit of fuel is one oracle query or one
// enumerated/derived word, uniformly across modules.
enum class Status { Verified, Refuted, Unknown };

struct Verdict {
  Status status = Status::Unknown;
  nlohmann::json witness;  // structured certificate, empty for Unknown
  std::uint64_t fuel_spent = 0;

  static Verdict verified(nlohmann::json w, std::uint64_t fuel) {
    return {Status::Verified, std::move(w), fuel};
  }
  static Verdict refuted(nlohmann::json w, std::uint64_t fuel) {
    return {Status::Refuted, std::move(w), fuel};
  }
  static Verdict unknown(std::uint64_t fuel) {
    return {Status::Unknown, nlohmann::json(), fuel};
  }

  bool verified() const { return status == Status::Verified; }
  bool refuted() const { return status == Status::Refuted; }
  bool unknown() const { return status == Status::Unknown; }

  nlohmann::json to_json() const {
    return nlohmann::json{{"status", status_name(status)},
                          {"witness", witness},
                          {"fuel_spent", fuel_spent}};
  }

  // CLI exit-code contract: 0 Verified/true, 1 Refuted/false, 2 Unknown.
  int exit_code() const {
    switch (status) {
      case Status::Verified: return 0;
      case Status::Refuted: return 1;
      default: return 2;
    }
  }

  static const char* status_name(Status s) {
    switch (s) {
      case Status::Verified: return "verified";
      case Status::Refuted: return "refuted";
      default: return "unknown";
    }
  }
};

}  // namespace gspace
