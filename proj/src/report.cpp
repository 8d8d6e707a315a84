#include <segre/report.hpp>

#include <sstream>

namespace segre {

using json = nlohmann::ordered_json;

json series_to_json(const TruncatedSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) {
        json t = json::array();
        t.push_back(e);
        t.push_back(c.re_str());
        t.push_back(c.im_str());
        terms.push_back(std::move(t));
    }
    return json{{"vars", s.vars()}, {"cap", s.cap()}, {"terms", std::move(terms)}};
}

namespace {

json series_list(const SeriesVector& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(series_to_json(s));
    return out;
}

json trace_json(const std::vector<std::pair<unsigned, int>>& trace) {
    json out = json::array();
    for (const auto& [a, b] : trace) out.push_back(json::array({a, b}));
    return out;
}

json minimality_json(const GenericManifold& m, const AnalyzeOptions& opt) {
    MinimalityVerdict v = decide_minimality(m);
    json out;
    switch (v.status) {
        case MinimalityVerdict::Status::Minimal: out["status"] = "minimal"; break;
        case MinimalityVerdict::Status::NotMinimalAtCap:
            out["status"] = "not-minimal-at-cap";
            break;
        case MinimalityVerdict::Status::Inconclusive: out["status"] = "inconclusive"; break;
    }
    if (v.d) out["d"] = *v.d;
    out["rank_trace"] = trace_json(v.rank_trace);
    // seeded evaluation cross-check at the decisive chain index
    if (!v.rank_trace.empty()) {
        unsigned d_last = v.rank_trace.back().first;
        SegreChain chain = build_chain(m, d_last);
        out["sampled_rank_at_decision"] =
            sampled_rank(jacobian(chain.map, 0, chain.map.front().vars().size()), opt.seed);
    }
    out["d_max"] = v.d_max;
    out["cap"] = v.cap;
    if (v.status == MinimalityVerdict::Status::NotMinimalAtCap)
        out["note"] = "verdict is relative to the truncation degree; rerun with a higher "
                      "--degree to confirm";
    return out;
}

json nondegeneracy_json(const GenericManifold& m, const AnalyzeOptions& opt) {
    json out;

    JetSpanRecord fin = finite_nondegeneracy_order(m);
    json jf;
    jf["status"] = fin.order ? "order" : "not-up-to-cap";
    if (fin.order) jf["order"] = *fin.order;
    jf["span_dim"] = fin.span_dim;
    jf["k_reached"] = fin.k_reached;
    jf["span_trace"] = trace_json(fin.span_trace);
    jf["cap"] = fin.cap;
    out["finite_type"] = std::move(jf);

    LeviRecord levi = holomorphic_nondegeneracy(m);
    json jl;
    jl["holomorphically_nondegenerate"] = levi.holomorphically_nondegenerate;
    if (levi.levi_type) jl["levi_type"] = *levi.levi_type;
    jl["r_max"] = levi.r_max;
    jl["r_trace"] = trace_json(levi.r_trace);
    jl["cap"] = levi.cap;
    out["levi"] = std::move(jl);

    DegeneracyRecord deg = degeneracy(m);
    out["degeneracy"] = json{{"value", deg.degeneracy},
                             {"coefficient_rank", deg.coefficient_rank},
                             {"stabilized_at", deg.stabilized_at},
                             {"cap", deg.cap}};

    CertificateFamily cert = certificate_family(m, opt.seed);
    json ji = json::array();
    for (const auto& [beta, nu] : cert.indices)
        ji.push_back(json{{"beta", beta}, {"nu", nu}});
    out["certificate"] = json{{"indices", std::move(ji)},
                              {"size", cert.indices.size()},
                              {"verified_rank", cert.verified_rank},
                              {"sampled_rank", cert.sampled_rank_bound},
                              {"cap", cert.cap}};

    // Two independent rank routes must agree on nondegeneracy.
    out["cross_check_holo_iff_degeneracy_zero"] =
        levi.holomorphically_nondegenerate == (deg.degeneracy == 0);
    return out;
}

json manifold_summary(const GenericManifold& m) {
    json out;
    out["n"] = m.n();
    out["codim"] = m.c();
    out["cr_dim"] = m.N();
    out["cap"] = m.cap();
    out["variables"] = m.display_names();
    out["coordinate_permutation"] = m.permutation();
    out["generic"] = true;   // construction invariant
    out["real"] = true;      // construction invariant
    out["defining_truncated"] = m.defining_truncated();
    out["normal_coordinates"] = m.normal_coordinates();
    out["reality_identity"] = check_reality_identity(m);
    out["defining"] = series_list(m.rho());
    out["graph"] = series_list(m.phi());
    return out;
}

mpq_class max_norm2(const TruncatedSeries& s) {
    mpq_class best(0);
    for (const auto& [e, c] : s.terms()) {
        mpq_class n2 = c.norm2();
        if (n2 > best) best = n2;
    }
    return best;
}

json convergence_json(const ConvergenceDiagnostic& d) {
    json degrees = json::array();
    for (const auto& q : d.degree_norm2) degrees.push_back(q.get_str());
    return json{{"verdict", to_string(d.verdict)},
                {"fitted_ratio", d.fitted_ratio},
                {"heuristic", true},
                {"degree_max_norm2", std::move(degrees)}};
}

} // namespace

json manifold_report(const GenericManifold& m, const AnalyzeOptions& opt,
                     const std::string& input_name) {
    json doc;
    doc["schema"] = "segre-report/1";
    doc["kind"] = "manifold";
    doc["input"] = json{{"file", input_name}, {"degree", opt.degree}, {"seed", opt.seed}};
    doc["manifold"] = manifold_summary(m);
    doc["minimality"] = minimality_json(m, opt);
    doc["nondegeneracy"] = nondegeneracy_json(m, opt);
    return doc;
}

json map_report(const GenericManifold& src, const GenericManifold& tgt,
                const FormalMapRecord& f, const AnalyzeOptions& opt,
                const std::string& src_name, const std::string& tgt_name,
                const std::string& map_name) {
    json doc;
    doc["schema"] = "segre-report/1";
    doc["kind"] = "map";
    doc["input"] = json{{"source", src_name},
                        {"target", tgt_name},
                        {"map", map_name},
                        {"degree", opt.degree},
                        {"alpha_max", opt.alpha_max},
                        {"jet_order", opt.effective_jet_order()},
                        {"seed", opt.seed}};
    doc["source"] = manifold_summary(src);
    doc["source"]["minimality"] = minimality_json(src, opt);
    doc["target"] = manifold_summary(tgt);
    doc["target"]["nondegeneracy"] = nondegeneracy_json(tgt, opt);

    json jm;
    jm["source_ref"] = f.source_ref;
    jm["target_ref"] = f.target_ref;
    jm["components"] = series_list(f.components);
    jm["jacobian_nondegenerate"] = f.nondegenerate;
    if (f.jacobian) jm["jacobian"] = series_to_json(*f.jacobian);

    CrValidation cr = validate_cr_map(f, src, tgt);
    jm["cr_valid"] = cr.valid;
    jm["cr_cap"] = cr.cap;
    if (cr.first_nonzero)
        jm["first_nonzero_residual"] = json{{"nu", cr.first_nonzero->nu},
                                            {"exponents", cr.first_nonzero->exponents},
                                            {"re", cr.first_nonzero->coeff.re_str()},
                                            {"im", cr.first_nonzero->coeff.im_str()}};

    bool equidim = f.n_src == f.n_tgt && f.N_tgt == src.N();
    if (equidim) {
        DeterminantRecord d = determinant_D(f, src);
        jm["determinant"] = json{{"series", series_to_json(d.d)},
                                 {"nonzero_on_complexification", d.nonzero_on_M}};
        if (cr.valid && d.nonzero_on_M) {
            json ids = json::array();
            for (const auto& id : reflection_identities(f, src, tgt, opt.alpha_max)) {
                TruncatedSeries residual = sub_aligned(id.lhs_on_M[0], id.rhs_on_M[0]);
                for (size_t nu = 1; nu < id.lhs_on_M.size(); ++nu) {
                    TruncatedSeries r = sub_aligned(id.lhs_on_M[nu], id.rhs_on_M[nu]);
                    if (max_norm2(r) > max_norm2(residual)) residual = r;
                }
                ids.push_back(json{{"alpha", id.alpha},
                                   {"residual_zero", id.residual_zero},
                                   {"residual_max_norm2", max_norm2(residual).get_str()},
                                   {"cap", id.cap}});
            }
            jm["reflection_identities"] = std::move(ids);
        } else {
            jm["reflection_identities_skipped"] =
                cr.valid ? "determinant vanishes on the complexification"
                         : "map is not CR";
        }
    } else {
        jm["reflection_identities_skipped"] = "source and target dimensions differ";
    }

    SeriesVector refl = reflection_map(f, tgt);
    jm["reflection_map"] = series_list(refl);

    if (tgt.normal_coordinates()) {
        NormalComponents nc = normal_components(f, tgt);
        jm["normal_components"] = json{{"available", true},
                                       {"matches_declared", nc.matches_declared},
                                       {"slice", series_list(nc.slice)}};
    } else {
        jm["normal_components"] = json{{"available", false},
                                       {"reason", "target not in normal coordinates"}};
    }

    CharVarietyRecord cv = char_variety(f, src, tgt, opt.effective_jet_order());
    json gens = json::array();
    for (const auto& g : cv.generators)
        gens.push_back(
            json{{"gamma", g.gamma}, {"nu", g.nu}, {"poly", series_to_json(g.poly)}});
    jm["char_variety"] = json{{"jet_order", cv.jet_order},
                              {"generator_count", cv.generators.size()},
                              {"all_vanish_at_zero", cv.all_vanish_at_zero},
                              {"jacobian_rank_at_zero", cv.jacobian_rank_at_zero},
                              {"zero_dim_certified", cv.zero_dim_certified},
                              {"cap", cv.cap},
                              {"generators", std::move(gens)}};

    json conv = json::array();
    for (const auto& comp : refl) conv.push_back(convergence_json(convergence_diagnostic(comp)));
    jm["convergence"] = std::move(conv);

    doc["map"] = std::move(jm);
    return doc;
}

namespace {

void render_lines(const json& node, const std::string& prefix, std::ostringstream& out) {
    if (node.is_object()) {
        for (const auto& [k, v] : node.items()) {
            std::string path = prefix.empty() ? k : prefix + "." + k;
            render_lines(v, path, out);
        }
    } else if (node.is_array()) {
        bool scalar_only = true;
        for (const auto& v : node)
            scalar_only = scalar_only && !(v.is_object() || v.is_array());
        if (scalar_only) {
            out << prefix << " =";
            for (const auto& v : node) out << " " << v.dump();
            out << "\n";
        } else {
            size_t idx = 0;
            for (const auto& v : node)
                render_lines(v, prefix + "[" + std::to_string(idx++) + "]", out);
        }
    } else {
        out << prefix << " = " << node.dump() << "\n";
    }
}

} // namespace

std::string render_text(const json& doc) {
    std::ostringstream out;
    render_lines(doc, "", out);
    return out.str();
}

namespace {

std::string finish(const json& doc, const std::string& format) {
    if (format == "text") return render_text(doc);
    return doc.dump(2) + "\n";
}

} // namespace

std::string run_manifold_analysis(const std::string& path, const AnalyzeOptions& opt,
                                  const std::string& format) {
    GenericManifold m =
        GenericManifold::from_file(read_manifold_file(slurp_file(path)), opt.degree);
    return finish(manifold_report(m, opt, path), format);
}

std::string run_map_analysis(const std::string& src_path, const std::string& tgt_path,
                             const std::string& map_path, const AnalyzeOptions& opt,
                             const std::string& format) {
    GenericManifold src =
        GenericManifold::from_file(read_manifold_file(slurp_file(src_path)), opt.degree);
    GenericManifold tgt =
        GenericManifold::from_file(read_manifold_file(slurp_file(tgt_path)), opt.degree);
    FormalMapRecord f =
        build_formal_map(read_map_file(slurp_file(map_path)), src, tgt, opt.degree);
    return finish(map_report(src, tgt, f, opt, src_path, tgt_path, map_path), format);
}

} // namespace segre
