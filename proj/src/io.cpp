#include "gptlab/io.hpp"

#include <fstream>
#include <sstream>

#include "gptlab/errors.hpp"

namespace gptlab {

Json rat_vec_to_json(const RatVec& v)
{
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(to_string(v(i)));
    return arr;
}

RatVec rat_vec_from_json(const Json& j)
{
    if (!j.is_array())
        throw UsageError("expected a JSON array of rationals");
    RatVec v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const Json& entry : j)
    {
        if (!entry.is_string())
            throw UsageError("rationals must be JSON strings in p/q form");
        v(i++) = parse_rational(entry.get<std::string>());
    }
    return v;
}

Json polytope_to_json(const VPolytope& P)
{
    Json j;
    j["ambient_dim"] = P.ambient_dim();
    Json verts = Json::array();
    for (const RatVec& v : P.vertices())
        verts.push_back(rat_vec_to_json(v));
    j["vertices"] = verts;
    return j;
}

VPolytope polytope_from_json(const Json& j)
{
    if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
        throw UsageError("polytope JSON: missing integer ambient_dim");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw UsageError("polytope JSON: missing vertices array");
    const int m = j["ambient_dim"].get<int>();
    std::vector<RatVec> points;
    for (const Json& row : j["vertices"])
    {
        RatVec v = rat_vec_from_json(row);
        if (v.size() != m)
            throw UsageError("polytope JSON: vertex of wrong dimension");
        points.push_back(std::move(v));
    }
    return VPolytope::from_points(m, points);
}

Json state_space_to_json(const StateSpace& space)
{
    Json j;
    j["ambient_dim"] = space.dim();
    Json verts = Json::array();
    for (const RatVec& v : space.omega().vertices())
        verts.push_back(rat_vec_to_json(v));
    j["omega_vertices"] = verts;
    j["u"] = rat_vec_to_json(space.unit());
    return j;
}

StateSpace state_space_from_json(const Json& j)
{
    if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
        throw UsageError("state space JSON: missing integer ambient_dim");
    if (!j.contains("omega_vertices") || !j["omega_vertices"].is_array())
        throw UsageError("state space JSON: missing omega_vertices array");
    const int m = j["ambient_dim"].get<int>();
    if (m < 1)
        throw UsageError("state space JSON: ambient_dim must be positive");
    if (j.contains("u"))
    {
        const RatVec u = rat_vec_from_json(j["u"]);
        RatVec expected = RatVec::Zero(m);
        expected(m - 1) = 1;
        if (u.size() != m)
            throw UsageError("state space JSON: u of wrong dimension");
        for (Eigen::Index i = 0; i < m; ++i)
        {
            if (u(i) != expected(i))
                throw UsageError(
                    "state space JSON: invariant violated: u must be the last-coordinate covector "
                    "of the canonical embedding");
        }
    }
    std::vector<RatVec> points;
    for (const Json& row : j["omega_vertices"])
    {
        RatVec v = rat_vec_from_json(row);
        if (v.size() != m)
            throw UsageError("state space JSON: vertex of wrong dimension");
        points.push_back(std::move(v));
    }
    // from_omega_vertices reports which invariant fails (u(omega) = 1 or the
    // generating-cone condition).
    return StateSpace::from_omega_vertices(m, points);
}

Json measurement_to_json(const Measurement& m)
{
    Json arr = Json::array();
    for (const Effect& e : m.effects)
        arr.push_back(rat_vec_to_json(e));
    return arr;
}

Json farkas_to_json(const FarkasCertificate& cert)
{
    Json j;
    j["eq_multipliers"] = rat_vec_to_json(cert.eq_multipliers);
    j["ineq_multipliers"] = rat_vec_to_json(cert.ineq_multipliers);
    return j;
}

Json distinguishability_to_json(const DistinguishabilityResult& result)
{
    Json j;
    j["distinguishable"] = result.distinguishable;
    if (result.distinguishable)
        j["witness"] = measurement_to_json(result.witness);
    else
        j["certificate"] = farkas_to_json(result.certificate);
    return j;
}

ReportSelection ReportSelection::all()
{
    ReportSelection s;
    s.classical = s.preservation = s.discrimination = s.subspace = s.effects = s.faces = true;
    return s;
}

ReportSelection ReportSelection::parse(const std::string& which)
{
    ReportSelection s;
    if (which == "all")
        return all();
    if (which == "classical")
        s.classical = true;
    else if (which == "preservation")
        s.preservation = true;
    else if (which == "discrimination")
        s.discrimination = true;
    else if (which == "subspace")
        s.subspace = true;
    else if (which == "effects")
        s.effects = true;
    else if (which == "faces")
        s.faces = true;
    else
        throw UsageError("unknown report selection: " + which);
    return s;
}

namespace {

Json indices_to_json(const std::vector<int>& v)
{
    return Json(v);
}

Json preservation_outcome_to_json(const PreservationFacetOutcome& o)
{
    Json j;
    j["facet"] = indices_to_json(o.facet.vertex_indices);
    switch (o.kind)
    {
        case PreservationFacetOutcome::Kind::Holds:
        {
            j["verdict"] = "holds";
            Json rows = Json::array();
            for (Eigen::Index r = 0; r < o.map.rows(); ++r)
                rows.push_back(rat_vec_to_json(o.map.row(r).transpose()));
            j["map"] = rows;
            break;
        }
        case PreservationFacetOutcome::Kind::DimensionClash:
            j["verdict"] = "dimension_clash";
            j["span_face_dim"] = o.span_face_dim;
            j["span_opposite_dim"] = o.span_opposite_dim;
            break;
        case PreservationFacetOutcome::Kind::NonPositive:
            j["verdict"] = "non_positive";
            j["witness_vertex"] = o.witness_vertex;
            j["image"] = rat_vec_to_json(o.witness_image);
            j["violated_inequality"] = rat_vec_to_json(o.violated_inequality);
            break;
        case PreservationFacetOutcome::Kind::OppositeFaceEmpty:
            j["verdict"] = "opposite_face_empty";
            break;
    }
    return j;
}

const char* subspace_outcome_name(SubspaceMeasurementOutcome::Kind kind)
{
    switch (kind)
    {
        case SubspaceMeasurementOutcome::Kind::Extended:
            return "extended";
        case SubspaceMeasurementOutcome::Kind::NoExtendingPureEffect:
            return "no_extending_pure_effect";
        case SubspaceMeasurementOutcome::Kind::NoFaceMatch:
            return "no_face_match";
        case SubspaceMeasurementOutcome::Kind::NoCompletion:
            return "no_completion";
    }
    return "unknown";
}

}  // namespace

Json build_report(const Model& model, const std::string& descriptor, const ReportSelection& which,
                  const ReportLimits& limits)
{
    Json report;
    report["model"] = descriptor;
    report["ambient_dim"] = model.dim();
    report["vertices"] = model.omega().vertex_count();

    if (which.classical)
    {
        const ClassicalityReport c = is_classical(model);
        Json j;
        j["classical"] = c.classical;
        j["simplex"] = c.simplex;
        j["uniformly_pyramidal"] = c.uniformly_pyramidal;
        j["preservation_holds"] = c.preservation_holds;
        report["classical"] = j;
    }
    if (which.preservation)
    {
        const PreservationVerdict v = check_preservation_postulate(model);
        Json j;
        j["holds"] = v.holds;
        Json facets = Json::array();
        for (const PreservationFacetOutcome& o : v.per_facet)
            facets.push_back(preservation_outcome_to_json(o));
        j["facets"] = facets;
        report["preservation"] = j;
    }
    if (which.discrimination)
    {
        Json j;
        try
        {
            const auto violation = find_discrimination_violation(model, limits.discrimination_vertices);
            if (violation.has_value())
            {
                Json v;
                v["lambda1"] = indices_to_json(violation->lambda1);
                v["lambda2"] = indices_to_json(violation->lambda2);
                v["lambda3"] = indices_to_json(violation->lambda3);
                v["lambda4"] = indices_to_json(violation->lambda4);
                v["premise1_witness"] = measurement_to_json(violation->premise1_witness);
                v["premise2_witness"] = measurement_to_json(violation->premise2_witness);
                v["conclusion_certificate"] = farkas_to_json(violation->conclusion_certificate);
                j["violation"] = v;
            }
            else
            {
                j["violation"] = nullptr;
            }
        }
        catch (const TooLargeError& e)
        {
            j["skipped"] = e.what();
        }
        report["discrimination"] = j;
    }
    if (which.subspace)
    {
        Json entries = Json::array();
        try
        {
            const FaceLattice lattice = face_lattice(model.omega());
            for (int k = 0; k < lattice.dim; ++k)
            {
                for (const Face& f : lattice.by_dim[static_cast<std::size_t>(k)])
                {
                    const SubspaceVerdict verdict =
                        check_physical_subspace(model, f, limits.subspace_pure_effects);
                    Json entry;
                    entry["face"] = indices_to_json(f.vertex_indices);
                    entry["associated"] = verdict.is_associated_face;
                    if (verdict.is_associated_face)
                    {
                        entry["condition_a"] = verdict.condition_a;
                        Json outcomes = Json::array();
                        for (const SubspaceMeasurementOutcome& o : verdict.condition_b)
                        {
                            Json oj;
                            oj["sub_effect"] = rat_vec_to_json(o.sub_effect);
                            oj["outcome"] = subspace_outcome_name(o.kind);
                            if (o.kind == SubspaceMeasurementOutcome::Kind::Extended)
                                oj["extension"] = measurement_to_json(o.extension);
                            outcomes.push_back(oj);
                        }
                        entry["outcomes"] = outcomes;
                        entry["pass"] = verdict.all_pass();
                    }
                    entries.push_back(entry);
                }
            }
            report["subspace"] = entries;
        }
        catch (const TooLargeError& e)
        {
            Json j;
            j["skipped"] = e.what();
            report["subspace"] = j;
        }
    }
    if (which.effects)
    {
        Json j;
        j["count"] = static_cast<int>(model.pure_effects().size());
        Json list = Json::array();
        for (const RatVec& f : model.pure_effects())
            list.push_back(rat_vec_to_json(f));
        j["pure_effects"] = list;
        report["effects"] = j;
    }
    if (which.faces)
    {
        const FaceLattice lattice = face_lattice(model.omega());
        Json j;
        j["dim"] = lattice.dim;
        j["f_vector"] = Json(lattice.f_vector());
        Json by_dim = Json::array();
        for (const auto& bucket : lattice.by_dim)
        {
            Json faces = Json::array();
            for (const Face& f : bucket)
                faces.push_back(indices_to_json(f.vertex_indices));
            by_dim.push_back(faces);
        }
        j["by_dim"] = by_dim;
        report["faces"] = j;
    }
    return report;
}

std::string report_to_text(const Json& report)
{
    std::ostringstream out;
    out << "model: " << report["model"].get<std::string>() << "\n";
    out << "ambient_dim: " << report["ambient_dim"].get<int>()
        << ", vertices: " << report["vertices"].get<int>() << "\n";
    if (report.contains("classical"))
    {
        const Json& c = report["classical"];
        out << "classical: " << (c["classical"].get<bool>() ? "yes" : "no")
            << " (simplex " << (c["simplex"].get<bool>() ? "yes" : "no")
            << ", uniformly pyramidal " << (c["uniformly_pyramidal"].get<bool>() ? "yes" : "no")
            << ", preservation " << (c["preservation_holds"].get<bool>() ? "holds" : "fails") << ")\n";
    }
    if (report.contains("preservation"))
    {
        const Json& p = report["preservation"];
        out << "preservation: " << (p["holds"].get<bool>() ? "holds" : "fails") << "\n";
        for (const Json& f : p["facets"])
        {
            out << "  facet " << f["facet"].dump() << ": " << f["verdict"].get<std::string>();
            if (f.contains("witness_vertex"))
                out << " (vertex " << f["witness_vertex"].get<int>() << ", image "
                    << f["image"].dump() << ")";
            if (f.contains("span_face_dim"))
                out << " (" << f["span_face_dim"].get<int>() << " + "
                    << f["span_opposite_dim"].get<int>() << " > ambient)";
            out << "\n";
        }
    }
    if (report.contains("discrimination"))
    {
        const Json& d = report["discrimination"];
        if (d.contains("skipped"))
            out << "discrimination: skipped (" << d["skipped"].get<std::string>() << ")\n";
        else if (d["violation"].is_null())
            out << "discrimination: no violation found\n";
        else
        {
            const Json& v = d["violation"];
            out << "discrimination: violation with sets " << v["lambda1"].dump() << " "
                << v["lambda2"].dump() << " " << v["lambda3"].dump() << " " << v["lambda4"].dump()
                << "\n";
            out << "  premise witnesses " << v["premise1_witness"].dump() << " and "
                << v["premise2_witness"].dump() << "\n";
        }
    }
    if (report.contains("subspace"))
    {
        const Json& s = report["subspace"];
        if (s.is_object() && s.contains("skipped"))
            out << "subspace: skipped (" << s["skipped"].get<std::string>() << ")\n";
        else
        {
            out << "subspace:\n";
            for (const Json& entry : s)
            {
                out << "  face " << entry["face"].dump() << ": ";
                if (!entry["associated"].get<bool>())
                {
                    out << "not associated with a pure effect\n";
                    continue;
                }
                out << (entry["pass"].get<bool>() ? "physical" : "fails");
                for (const Json& o : entry["outcomes"])
                {
                    if (o["outcome"].get<std::string>() != "extended")
                        out << " [" << o["outcome"].get<std::string>() << " for "
                            << o["sub_effect"].dump() << "]";
                }
                out << "\n";
            }
        }
    }
    if (report.contains("effects"))
    {
        const Json& e = report["effects"];
        out << "pure effects (" << e["count"].get<int>() << "):\n";
        for (const Json& f : e["pure_effects"])
            out << "  " << f.dump() << "\n";
    }
    if (report.contains("faces"))
    {
        const Json& f = report["faces"];
        out << "face lattice: dim " << f["dim"].get<int>() << ", f-vector " << f["f_vector"].dump()
            << "\n";
    }
    return out.str();
}

std::string dump_json(const Json& j)
{
    return j.dump(2) + "\n";
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open file: " + path);
    Json j;
    try
    {
        in >> j;
    }
    catch (const std::exception& e)
    {
        throw UsageError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write file: " + path);
    out << dump_json(j);
}

}  // namespace gptlab
