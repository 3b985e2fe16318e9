#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sievelab/structured_sets.hpp"

namespace sievelab {

/// Ordered `key = value` pairs; repeated keys are kept.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines. '#' starts a comment; blank lines are skipped.
KeyValues parse_key_values(std::string_view text);

/// Reads the `set.*` keys:
///   set.kind = nat | ap | kfree | bohr | typeb
///   set.a, set.q                 (ap)
///   set.a, set.k                 (kfree)
///   set.coeffs = c0, c1, ...     (bohr; constants as accepted by ExactReal::parse)
///   set.d                        (bohr; rational)
///   set.kappa, set.bound, set.z  (typeb; z makes it approximate)
///   set.profile = m: r1, r2, ... (typeb; repeated)
SetDescriptor set_from_config(const KeyValues& kv);

/// Inverse of set_from_config; one `set.* = value` line per entry.
std::string set_to_config(const SetDescriptor& s);

/// Command-line short form: `nat`, `ap:a,q`, `kfree:a[,k]`,
/// `kfreeb:a,k,bound[,z]`, `bohr:c0;c1;...,d`.
SetDescriptor parse_set_spec(std::string_view spec);

}  // namespace sievelab
