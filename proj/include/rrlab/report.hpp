#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "rrlab/verify.hpp"

namespace rrlab {

enum class OutputFormat { human, json, tsv };

inline nlohmann::json to_json(const VerificationResult& r) {
  return nlohmann::json{{"check", r.check},       {"witness", r.witness},
                        {"modulus", r.modulus.str()}, {"lhs", r.lhs.value.str()},
                        {"rhs", r.rhs.value.str()},   {"holds", r.holds}};
}

inline std::string tsv_header() { return "check\twitness\tmodulus\tlhs\trhs\tholds"; }

inline std::string to_tsv(const VerificationResult& r) {
  return r.check + "\t" + r.witness + "\t" + r.modulus.str() + "\t" + r.lhs.value.str() + "\t" +
         r.rhs.value.str() + "\t" + (r.holds ? "true" : "false");
}

inline std::string to_human(const VerificationResult& r) {
  return r.check + " " + r.witness + ": " + (r.holds ? "holds" : "FAILS") +
         " lhs=" + r.lhs.value.str() + " rhs=" + r.rhs.value.str() + " (mod " + r.modulus.str() +
         ")";
}

/// One line per result; machine formats are byte-stable across runs and
/// worker counts (timings go to a separate stream, never into reports).
inline void write_result(std::ostream& os, const VerificationResult& r, OutputFormat fmt,
                         bool tsv_with_header = true) {
  switch (fmt) {
    case OutputFormat::json:
      os << to_json(r).dump() << '\n';
      break;
    case OutputFormat::tsv:
      if (tsv_with_header) os << tsv_header() << '\n';
      os << to_tsv(r) << '\n';
      break;
    case OutputFormat::human:
      os << to_human(r) << '\n';
      break;
  }
}

inline void write_report(std::ostream& os, const SweepReport& report, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::json: {
      for (const VerificationResult& r : report.results) os << to_json(r).dump() << '\n';
      nlohmann::json summary{{"summary", {{"check", report.check},
                                          {"ranges", report.ranges},
                                          {"cases", report.total},
                                          {"failures", report.failures.size()},
                                          {"skipped", report.skipped}}}};
      os << summary.dump() << '\n';
      break;
    }
    case OutputFormat::tsv: {
      os << tsv_header() << '\n';
      for (const VerificationResult& r : report.results) os << to_tsv(r) << '\n';
      os << "# check=" << report.check << " ranges=" << report.ranges
         << " cases=" << report.total << " failures=" << report.failures.size()
         << " skipped=" << report.skipped << '\n';
      break;
    }
    case OutputFormat::human: {
      os << report.check << " sweep [" << report.ranges << "]: " << report.total << " cases, "
         << report.failures.size() << " failures";
      if (report.skipped) os << ", " << report.skipped << " skipped (outside localization)";
      os << '\n';
      for (const VerificationResult& r : report.failures) os << "  " << to_human(r) << '\n';
      break;
    }
  }
}

}  // namespace rrlab
