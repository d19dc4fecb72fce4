#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadspec/quadruple.hpp"
#include "quadspec/reconstruct.hpp"

namespace quadspec {

// Fixed 17-significant-digit rendering; reports are byte-reproducible.
std::string format_g17(double v);
std::string json_escape(const std::string& s);
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

struct ReportHeader {
  std::string command;
  std::string config_hash;
  std::string run_id;
};

std::string checks_to_json(const std::vector<CheckReport>& checks, const ReportHeader& header);
std::string checks_to_csv(const std::vector<CheckReport>& checks);

std::string reconstruction_to_json(const ReconstructionResult& r, const ReportHeader& header);
std::string reconstruction_to_csv(const ReconstructionResult& r);

}  // namespace quadspec
