#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cechborder/border.hpp"

namespace cechb::cli {

struct AuditLine {
    std::string suite;
    std::string subject;  // no spaces; unique within a suite
    bool pass = false;
    std::string detail;
};

struct AuditOptions {
    std::optional<Example> example;  // restricts fixtures to those using it
    std::optional<SpacePair> space;  // exactness and triple suites only
    int depth = 5;
    unsigned long long seed = 0;
    int random = 3;
    BorderOptions border;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
std::vector<AuditLine> run_suite(std::string_view suite, const AuditOptions& opts);

// Seeded random closed mask used by the randomized audits.
std::vector<bool> audit_mask(const FilteredSpace& space, unsigned long long seed, int index);

// Maps with names, shared by the functoriality audits and the benchmarks.
struct NamedMap {
    std::string name;
    ProperModelMap map;
};
std::vector<NamedMap> fixture_maps(int depth);

}  // namespace cechb::cli
