// Shipped data files: generator matrices, sporadic bounds and cited existence results.
#pragma once

#include "spreadlab/gfcore.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dataset {

/// Names relative to the data directory, e.g. "matrices/hill_cap.txt".
std::vector<std::string> names();

/// Contents of a data file: the override directory first, then the copy embedded at build time.
std::optional<std::string> load(std::string_view name);

/// Directory searched before the embedded copies; empty disables the override.
void set_override_dir(std::string dir);

struct SporadicBound {
    std::uint64_t q = 0;
    unsigned v = 0;
    unsigned k = 0;
    gfcore::BigInt value;
    bool lower = true;
    std::string citation;
};

std::vector<SporadicBound> sporadic_bounds();

enum class CitedKind { Exists, Decided };

struct CitedStatus {
    std::uint64_t q = 0;
    unsigned r = 0;
    std::uint64_t n = 0;
    CitedKind kind = CitedKind::Exists;
    std::string citation;
};

std::vector<CitedStatus> cited_status();
std::optional<CitedStatus> cited(std::uint64_t q, unsigned r, std::uint64_t n);

/// A shipped generator matrix over F_q.
gfcore::Matrix matrix(std::string_view name, std::uint64_t q);

}  // namespace dataset
