#ifndef GPTLAB_IO_HPP
#define GPTLAB_IO_HPP

#include <json.hpp>
#include <string>

#include "gptlab/model.hpp"
#include "gptlab/polytope.hpp"
#include "gptlab/postulates.hpp"

namespace gptlab {

/** Insertion-ordered JSON keeps serialization byte-deterministic. */
using Json = nlohmann::ordered_json;

Json rat_vec_to_json(const RatVec& v);
RatVec rat_vec_from_json(const Json& j);

/** { "ambient_dim": m, "vertices": [["p/q", ...], ...] } */
Json polytope_to_json(const VPolytope& P);
/** Accepts unordered and redundant points; canonicalizes via from_points. */
VPolytope polytope_from_json(const Json& j);

/** { "ambient_dim": m, "omega_vertices": [[...], ...], "u": ["0",...,"1"] } */
Json state_space_to_json(const StateSpace& space);
/**
 * Validates the canonical-embedding invariants (u is the last-coordinate
 * covector, u = 1 on every vertex, generating cone) and throws UsageError
 * naming the violated invariant.
 */
StateSpace state_space_from_json(const Json& j);

Json measurement_to_json(const Measurement& m);
Json farkas_to_json(const FarkasCertificate& cert);
Json distinguishability_to_json(const DistinguishabilityResult& result);

/** Which sections cmd_report emits. */
struct ReportSelection
{
    bool classical = false;
    bool preservation = false;
    bool discrimination = false;
    bool subspace = false;
    bool effects = false;
    bool faces = false;

    static ReportSelection all();
    static ReportSelection parse(const std::string& which);  // throws UsageError
};

/** Enumeration caps applied by the report builder. */
struct ReportLimits
{
    int discrimination_vertices = 10;
    int subspace_pure_effects = kMaxPureEffectsForEnumeration;
};

/**
 * The postulate report for a model: classicality cross-check, per-facet
 * preservation verdicts, the discrimination-violation search and the
 * physical-subspace checks. Sections exceeding enumeration limits are
 * marked skipped instead of failing.
 */
Json build_report(const Model& model, const std::string& descriptor, const ReportSelection& which,
                  const ReportLimits& limits = {});

/** Render the report for humans. */
std::string report_to_text(const Json& report);

/** Canonical dump: two-space indent, trailing newline. */
std::string dump_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace gptlab

#endif  // GPTLAB_IO_HPP
