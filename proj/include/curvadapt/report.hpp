#pragma once

// Serialization of results to JSON (stable key order), CSV and Markdown.

#include "curvadapt/cayley_plane.hpp"
#include "curvadapt/isoparametric.hpp"
#include "curvadapt/sweep.hpp"
#include "curvadapt/theorem2.hpp"
#include "curvadapt/theorem3.hpp"
#include "curvadapt/tube_flow.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace curvadapt::report {

using Json = nlohmann::ordered_json;

/// "%.17g"
std::string format_double(double x);

Json octonion_table_json();
std::string octonion_table_csv();
std::string octonion_table_md();

Json spectrum_json(const Spectrum& spec, SpaceSign s, std::uint64_t seed, const cayley::TangentPair& xi);
Json sectional_json(const sweep::SectionalStats& st, SpaceSign s, std::uint64_t seed);

Json pcsystem_json(const tube::PCSystem& sys, const tube::TubeDescriptor& d);
std::string pcsystem_csv(const tube::PCSystem& sys);
std::string pcsystem_md(const tube::PCSystem& sys);

Json theorem2_json(const tube::Theorem2Result& r);
Json theorem3_json(const tube::Theorem3Certificate& c, const tube::EqualityBranchResult& eq);
Json certificate_json(const iso::Certificate& c);
Json cascade_json(const iso::CascadeResult& r, int kmax, double t);

/// Systems as arrays of {kappa, theta, mult, regime}; regime "cot" (default) reads theta,
/// "coth", "tanh", "const" and "flat" read lambda.  Throws InvalidArgument on bad entries.
iso::ProfileSystem parse_system(const Json& j, const std::string& label);
Json system_json(const iso::ProfileSystem& s);

}  // namespace curvadapt::report
