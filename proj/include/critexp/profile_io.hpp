#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "critexp/profiles.hpp"
#include "critexp/rearrange.hpp"

namespace critexp {

// Profile files: header `r,u` (radial) or `t,w` (half-line), then one
// `x,y` pair per line. Blank lines and lines starting with '#' are skipped.
// Polar samples: header `nr,ntheta` as two integers (optionally preceded by
// the literal line `nr,ntheta`), then nr rows of ntheta values; row i sits
// at radius i/(nr-1).

using AnyProfile = std::variant<RadialProfile, HalfLineProfile>;

AnyProfile read_profile(std::istream& in, const std::string& source = "<stream>");
AnyProfile load_profile(const std::filesystem::path& path);
RadialProfile load_radial_profile(const std::filesystem::path& path);

void write_profile(std::ostream& out, const RadialProfile& u);
void write_profile(std::ostream& out, const HalfLineProfile& w);

PolarSample read_polar_sample(std::istream& in, const std::string& source = "<stream>");
PolarSample load_polar_sample(const std::filesystem::path& path);
void write_polar_sample(std::ostream& out, const PolarSample& s);

}  // namespace critexp
