// proxivor: voronoi tessellations as exact half-plane intersections,
// strong-proximity classification and hypertopology neighborhoods, finite
// proximity-space axiom checkers, descriptive nearness pipelines, and
// manifold/atlas nearness queries.
//
// Exit codes: 0 the property holds / success, 1 the checked property fails
// or the relation is false, 2 input or precondition errors.
#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "proxivor/io.hpp"
#include "proxivor/selftest.hpp"

namespace {

using json = proxivor::io::json;
using proxivor::Error;
using proxivor::Rational;
using proxivor::rat;

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

struct VoronoiBuildOpts {
    std::string sites_file, out_file;
    bool no_warn_clip = false;
};

struct FileOpt {
    std::string path;
};

struct NbhdOpts {
    std::string diagram_file;
    int site = -1;
};

struct ClassifyOpts {
    std::string diagram_file, out_file;
};

struct RenderOpts {
    std::string diagram_file, out_file, graph_file;
};

struct AxiomOpts {
    std::string space_file, relation_name, relation_file, kind;
    bool x_clause = true;
};

struct LemmaOpts {
    std::string space_file, bfamily_file;
    int max_size = 2;
};

struct SecondCountOpts {
    std::string space_file, bfamily_file, bprime_file;
};

struct GradientOpts {
    std::string image_file, channel, out_file;
};

struct ConnectOpts {
    std::string image_file, segments_file, palette_file, topology_file;
    bool x_clause = true;
};

struct ChainOpts {
    std::string intervals_file;
};

struct ManifoldNearOpts {
    std::string atlas1_file, atlas2_file, palette_file, topology_file;
    bool descriptive = false;
    std::string grid_pitch = "1";
};

int jobs = 1;

int run_voronoi_build(const VoronoiBuildOpts& o) {
    proxivor::vor::SiteSet s =
        proxivor::io::sites_from_json(proxivor::io::load_json_file(o.sites_file));
    proxivor::vor::VoronoiDiagram d = proxivor::vor::build_diagram(s, jobs);
    proxivor::io::write_text_file(o.out_file,
                                  proxivor::io::diagram_to_json(d).dump(2) + "\n");
    json report;
    report["command"] = "voronoi build";
    report["sites"] = static_cast<int>(s.sites.size());
    report["vertex_containment_ok"] = d.vertex_containment_ok;
    report["out"] = o.out_file;
    if (!d.vertex_containment_ok && !o.no_warn_clip) {
        std::cerr << "warning: some unclipped voronoi vertices fall outside the box; "
                     "classification is relative to the clipped diagram\n";
        report["warning"] = "clipped diagram";
    }
    emit(report);
    return 0;
}

int run_voronoi_classify(const ClassifyOpts& o) {
    proxivor::io::DiagramDoc doc =
        proxivor::io::diagram_from_json(proxivor::io::load_json_file(o.diagram_file));
    proxivor::vor::Classification cls = proxivor::vor::classify_all(doc.diagram, jobs);
    proxivor::io::write_text_file(
        o.out_file, proxivor::io::diagram_to_json(doc.diagram, &cls).dump(2) + "\n");
    json report;
    report["command"] = "voronoi classify";
    report["classification"] = cls.rows();
    report["out"] = o.out_file;
    emit(report);
    return 0;
}

int run_voronoi_nbhd(const NbhdOpts& o) {
    proxivor::io::DiagramDoc doc =
        proxivor::io::diagram_from_json(proxivor::io::load_json_file(o.diagram_file));
    proxivor::vor::Classification cls =
        doc.classification ? *doc.classification
                           : proxivor::vor::classify_all(doc.diagram, jobs);
    proxivor::vor::Neighborhood nb =
        proxivor::vor::smallest_open_set(doc.diagram, cls, o.site);
    emit(proxivor::io::neighborhood_to_json(nb));
    return 0;
}

int run_voronoi_check_region_theorem(const FileOpt& o) {
    proxivor::io::DiagramDoc doc =
        proxivor::io::diagram_from_json(proxivor::io::load_json_file(o.path));
    proxivor::vor::Classification cls = proxivor::vor::classify_all(doc.diagram, jobs);
    proxivor::vor::RegionAxiomReport axioms =
        proxivor::vor::check_strong_axioms_on_regions(doc.diagram, cls);
    proxivor::vor::UniquenessReport uniqueness =
        proxivor::vor::region_uniqueness_check(doc.diagram, cls);
    json report;
    report["command"] = "voronoi check-region-theorem";
    report["vertex_containment_ok"] = doc.diagram.vertex_containment_ok;
    report["strong_axioms"] = proxivor::io::region_axiom_report_to_json(axioms);
    report["uniqueness"] = proxivor::io::uniqueness_report_to_json(uniqueness);
    bool holds = axioms.all_pass() && uniqueness.pass;
    report["holds"] = holds;
    if (!doc.diagram.vertex_containment_ok) {
        std::cerr << "warning: diagram is clipped; theorem checks are relative to "
                     "the clipped regions\n";
    }
    emit(report);
    return holds ? 0 : 1;
}

int run_voronoi_render(const RenderOpts& o) {
    proxivor::io::DiagramDoc doc =
        proxivor::io::diagram_from_json(proxivor::io::load_json_file(o.diagram_file));
    proxivor::vor::Classification cls =
        doc.classification ? *doc.classification
                           : proxivor::vor::classify_all(doc.diagram, jobs);
    proxivor::io::write_text_file(o.out_file,
                                  proxivor::io::render_svg(doc.diagram, cls));
    if (!o.graph_file.empty()) {
        proxivor::io::write_text_file(
            o.graph_file,
            proxivor::io::classification_graph_to_json(doc.diagram, cls).dump(2) + "\n");
    }
    return 0;
}

int run_prox_axioms(const AxiomOpts& o) {
    if (o.kind == "manifold") {
        proxivor::man::Atlas atlas =
            proxivor::io::atlas_from_json(proxivor::io::load_json_file(o.space_file));
        proxivor::man::ManifoldAxiomReport rep =
            proxivor::man::check_manifold_strong_axioms(atlas);
        json report = proxivor::io::manifold_axiom_report_to_json(rep);
        report["kind"] = "manifold";
        emit(report);
        return rep.all_pass() ? 0 : 1;
    }

    proxivor::io::NamedSpace space =
        proxivor::io::space_from_json(proxivor::io::load_json_file(o.space_file));
    proxivor::ftop::Role role =
        o.kind == "lodato" ? proxivor::ftop::Role::Lodato : proxivor::ftop::Role::Strong;
    proxivor::ftop::ProximityRelation rel = [&] {
        if (!o.relation_file.empty()) {
            return proxivor::io::relation_from_json(
                proxivor::io::load_json_file(o.relation_file), space, role);
        }
        if (o.relation_name.empty()) {
            throw Error("need --relation NAME or --relation-file FILE");
        }
        return proxivor::io::builtin_relation_by_name(o.relation_name, space, role,
                                                      o.x_clause);
    }();
    proxivor::ftop::AxiomReport rep = role == proxivor::ftop::Role::Lodato
                                          ? proxivor::ftop::check_lodato(rel)
                                          : proxivor::ftop::check_strong(rel);
    json report = proxivor::io::axiom_report_to_json(rep, role);
    report["kind"] = o.kind;
    emit(report);
    return rep.axioms_pass() ? 0 : 1;
}

int run_prox_regular_sets(const FileOpt& o) {
    proxivor::io::NamedSpace space =
        proxivor::io::space_from_json(proxivor::io::load_json_file(o.path));
    auto to_family = [&](const std::vector<proxivor::ftop::Mask>& ms) {
        json out = json::array();
        for (proxivor::ftop::Mask m : ms) {
            out.push_back(proxivor::io::subset_to_json(m, space));
        }
        return out;
    };
    json report;
    report["regular_open"] = to_family(proxivor::ftop::regular_open_sets(space.topology));
    report["regular_closed"] =
        to_family(proxivor::ftop::regular_closed_sets(space.topology));
    report["rcl_star"] = to_family(proxivor::ftop::rcl_star(space.topology));
    emit(report);
    return 0;
}

int run_prox_lemma_sweep(const LemmaOpts& o) {
    proxivor::io::NamedSpace space =
        proxivor::io::space_from_json(proxivor::io::load_json_file(o.space_file));
    std::vector<proxivor::ftop::Mask> bfamily = proxivor::io::family_from_json(
        proxivor::io::load_json_file(o.bfamily_file), space);
    auto lod = proxivor::ftop::lodato_nonempty_intersection(space.topology);
    auto str = proxivor::ftop::canonical_strong(space.topology);
    proxivor::ftop::LemmaSweepHarness harness(space.topology, lod, str);

    std::vector<proxivor::ftop::Mask> bd;
    for (proxivor::ftop::Mask m : proxivor::ftop::sigma(bfamily)) {
        if (m != 0 && space.topology.closure(space.topology.interior(m)) == m) {
            bd.push_back(m);
        }
    }
    if (bd.empty()) throw Error("no nonempty regular closed sets in the union family");

    const std::vector<proxivor::ftop::Mask>& ro = harness.regular_opens();
    std::vector<std::vector<proxivor::ftop::Mask>> lists;
    std::vector<proxivor::ftop::Mask> current;
    std::function<void(size_t, int)> grow = [&](size_t start, int remaining) {
        if (!current.empty()) lists.push_back(current);
        if (remaining == 0) return;
        for (size_t i = start; i < ro.size(); ++i) {
            current.push_back(ro[i]);
            grow(i, remaining - 1);
            current.pop_back();
        }
    };
    grow(0, o.max_size);

    long long equivalent = 0, vacuous = 0;
    json counterexample;
    for (const auto& ulist : lists) {
        for (const auto& vlist : lists) {
            for (proxivor::ftop::Mask b : bd) {
                for (proxivor::ftop::Mask d : bd) {
                    proxivor::ftop::LemmaVerdict v = harness.check(ulist, vlist, b, d);
                    switch (v.status) {
                        case proxivor::ftop::LemmaVerdict::Status::Equivalent:
                            ++equivalent;
                            break;
                        case proxivor::ftop::LemmaVerdict::Status::HypothesesNotSatisfied:
                            ++vacuous;
                            break;
                        case proxivor::ftop::LemmaVerdict::Status::Counterexample:
                            if (counterexample.is_null()) {
                                json u = json::array(), w = json::array();
                                for (auto m : ulist) {
                                    u.push_back(proxivor::io::subset_to_json(m, space));
                                }
                                for (auto m : vlist) {
                                    w.push_back(proxivor::io::subset_to_json(m, space));
                                }
                                counterexample = {
                                    {"ulist", u},
                                    {"vlist", w},
                                    {"B", proxivor::io::subset_to_json(b, space)},
                                    {"D", proxivor::io::subset_to_json(d, space)},
                                    {"detail", v.detail}};
                            }
                            break;
                    }
                }
            }
        }
    }
    json report;
    report["command"] = "prox lemma-sweep";
    report["equivalent"] = equivalent;
    report["vacuous_skipped"] = vacuous;
    report["counterexample"] = counterexample;
    report["verdict"] = counterexample.is_null() ? "equivalent" : "counterexample";
    emit(report);
    return counterexample.is_null() ? 0 : 1;
}

int run_prox_second_countability(const SecondCountOpts& o) {
    proxivor::io::NamedSpace space =
        proxivor::io::space_from_json(proxivor::io::load_json_file(o.space_file));
    std::vector<proxivor::ftop::Mask> bfamily = proxivor::io::family_from_json(
        proxivor::io::load_json_file(o.bfamily_file), space);
    std::vector<proxivor::ftop::Mask> bprime = proxivor::io::family_from_json(
        proxivor::io::load_json_file(o.bprime_file), space);
    auto lod = proxivor::ftop::lodato_nonempty_intersection(space.topology);
    proxivor::ftop::CountabilityResult r =
        proxivor::ftop::second_countability_condition_check(space.topology, lod, bfamily,
                                                            bprime);
    if (r.status == proxivor::ftop::CountabilityResult::Status::HypothesesNotSatisfied) {
        throw Error("hypotheses not satisfied: " + r.detail);
    }
    bool holds = r.status == proxivor::ftop::CountabilityResult::Status::Holds;
    json report;
    report["command"] = "prox second-countability";
    report["holds"] = holds;
    if (!holds) {
        report["witness_b"] = proxivor::io::subset_to_json(r.witness_b, space);
        report["witness_k"] = proxivor::io::subset_to_json(r.witness_k, space);
        report["detail"] = r.detail;
    }
    emit(report);
    return holds ? 0 : 1;
}

int run_desc_gradient(const GradientOpts& o) {
    proxivor::desc::ProbeImage img = proxivor::desc::load_ppm_file(o.image_file);
    proxivor::desc::Channel ch = o.channel == "r"   ? proxivor::desc::Channel::R
                                 : o.channel == "g" ? proxivor::desc::Channel::G
                                                    : proxivor::desc::Channel::B;
    if (img.width < 3 || img.height < 3) {
        throw Error("image too small for a central-difference stencil");
    }
    json rows = json::array();
    for (int y = 1; y < img.height - 1; ++y) {
        json row = json::array();
        for (int x = 1; x < img.width - 1; ++x) {
            row.push_back(proxivor::desc::gradient_angle(img, x, y, ch));
        }
        rows.push_back(row);
    }
    json out;
    out["width"] = img.width;
    out["height"] = img.height;
    out["channel"] = o.channel;
    out["note"] = "angles for interior pixels, row-major, atan2(df/dx, df/dy)";
    out["angles"] = rows;
    proxivor::io::write_text_file(o.out_file, out.dump(2) + "\n");
    json report;
    report["command"] = "desc gradient";
    report["out"] = o.out_file;
    report["interior_rows"] = img.height - 2;
    report["interior_cols"] = img.width - 2;
    emit(report);
    return 0;
}

int run_desc_connect(const ConnectOpts& o) {
    proxivor::desc::ProbeImage img = proxivor::desc::load_ppm_file(o.image_file);
    std::vector<proxivor::desc::PaletteEntry> palette =
        proxivor::io::palette_from_json(proxivor::io::load_json_file(o.palette_file));
    proxivor::io::NamedSpace space =
        proxivor::io::space_from_json(proxivor::io::load_json_file(o.topology_file));
    if (space.points.size() != palette.size()) {
        throw Error("palette and range topology disagree on the label count");
    }
    for (size_t i = 0; i < palette.size(); ++i) {
        if (space.points[i] != palette[i].name) {
            throw Error("palette and range topology disagree on label order");
        }
    }
    int pixel_count = img.width * img.height;
    std::vector<std::vector<int>> parts = proxivor::io::segments_from_json(
        proxivor::io::load_json_file(o.segments_file), pixel_count);
    proxivor::desc::FeatureSpace fs{space.points, space.topology};
    proxivor::desc::Probe probe = [&](int p) {
        return proxivor::desc::quantize_color(img.pixels[static_cast<size_t>(p)],
                                              palette);
    };
    auto strong = proxivor::ftop::canonical_strong(space.topology, o.x_clause);
    proxivor::desc::ConnectReport rep =
        proxivor::desc::desc_connected(parts, probe, fs, strong);
    json report;
    report["command"] = "desc connect";
    report["parts"] = static_cast<int>(parts.size());
    report["connected"] = rep.connected;
    if (!rep.connected) {
        report["failing_part"] = rep.failing_part;
        report["failing_link"] = rep.failing_link;
        report["reason"] = rep.reason;
    }
    emit(report);
    return rep.connected ? 0 : 1;
}

int run_desc_chain(const ChainOpts& o) {
    proxivor::desc::ChainMode mode;
    std::vector<proxivor::desc::AngleInterval> chain = proxivor::io::intervals_from_json(
        proxivor::io::load_json_file(o.intervals_file), &mode);
    bool connected = proxivor::desc::interval_chain_connected(chain, mode);
    json report;
    report["command"] = "desc chain";
    report["intervals"] = static_cast<int>(chain.size());
    report["mode"] =
        mode == proxivor::desc::ChainMode::Overlap ? "overlap" : "interior_overlap";
    report["connected"] = connected;
    emit(report);
    return connected ? 0 : 1;
}

int run_manifold_near(const ManifoldNearOpts& o) {
    proxivor::man::Atlas a1 =
        proxivor::io::atlas_from_json(proxivor::io::load_json_file(o.atlas1_file));
    proxivor::man::Atlas a2 =
        proxivor::io::atlas_from_json(proxivor::io::load_json_file(o.atlas2_file));
    json report;
    report["command"] = "manifold near";

    if (o.descriptive) {
        if (o.palette_file.empty() || o.topology_file.empty()) {
            throw Error("--descriptive needs --palette and --range-topology");
        }
        std::vector<proxivor::desc::PaletteEntry> palette =
            proxivor::io::palette_from_json(proxivor::io::load_json_file(o.palette_file));
        proxivor::io::NamedSpace space =
            proxivor::io::space_from_json(proxivor::io::load_json_file(o.topology_file));
        for (const proxivor::desc::PaletteEntry& e : palette) {
            space.point_index(e.name);  // labels must live in the range carrier
        }
        proxivor::desc::FeatureSpace fs{space.points, space.topology};
        std::vector<const proxivor::man::Chart*> all;
        for (const proxivor::man::Chart& c : a1.charts) all.push_back(&c);
        for (const proxivor::man::Chart& c : a2.charts) all.push_back(&c);
        proxivor::man::PlaneProbe probe = proxivor::man::label_probe(all, fs);
        auto strong = proxivor::ftop::canonical_strong(space.topology);
        Rational pitch = proxivor::parse_rational(o.grid_pitch);
        proxivor::man::AtlasDescReport rep = proxivor::man::atlases_descriptively_near(
            a1, a2, probe, fs, strong, pitch);
        report["descriptive"] = true;
        report["near"] = rep.near;
        json audits = json::array();
        for (const auto& a : rep.audits) {
            audits.push_back({{"chart1", a1.charts[static_cast<size_t>(a.i)].id},
                              {"chart2", a2.charts[static_cast<size_t>(a.j)].id},
                              {"snd", a.snd},
                              {"snd_atlases", a.snd_atlases}});
        }
        report["audits"] = audits;
        json witnesses = json::array();
        for (const auto& [i, j] : rep.non_converse_witnesses) {
            witnesses.push_back({{"chart1", a1.charts[static_cast<size_t>(i)].id},
                                 {"chart2", a2.charts[static_cast<size_t>(j)].id}});
        }
        report["non_converse_witnesses"] = witnesses;
        emit(report);
        return rep.near ? 0 : 1;
    }

    bool all_voronoi = true;
    for (const proxivor::man::Chart& c : a1.charts) {
        all_voronoi = all_voronoi && c.kind == proxivor::man::Chart::ImageKind::Voronoi;
    }
    for (const proxivor::man::Chart& c : a2.charts) {
        all_voronoi = all_voronoi && c.kind == proxivor::man::Chart::ImageKind::Voronoi;
    }
    if (all_voronoi) {
        proxivor::man::VorNearResult r =
            proxivor::man::voronoi_manifolds_strongly_near(a1, a2);
        report["near"] = r.near;
        if (r.near) {
            report["witness"] = {{"chart1", a1.charts[static_cast<size_t>(r.chart_a)].id},
                                 {"chart2", a2.charts[static_cast<size_t>(r.chart_b)].id},
                                 {"region1", r.region_a},
                                 {"region2", r.region_b}};
        }
        emit(report);
        return r.near ? 0 : 1;
    }

    // Generic images: some cross pair of charts with intersecting images.
    for (size_t i = 0; i < a1.charts.size(); ++i) {
        for (size_t j = 0; j < a2.charts.size(); ++j) {
            if (proxivor::man::charts_strongly_near(a1.charts[i], a2.charts[j])) {
                report["near"] = true;
                report["witness"] = {{"chart1", a1.charts[i].id},
                                     {"chart2", a2.charts[j].id}};
                emit(report);
                return 0;
            }
        }
    }
    report["near"] = false;
    emit(report);
    return 1;
}

int run_selftest() {
    std::uint64_t seed = proxivor::selftest::seed_from_env();
    std::vector<proxivor::selftest::CriterionResult> results =
        proxivor::selftest::run_acceptance(seed, std::cerr, jobs);
    json criteria = json::array();
    for (const auto& r : results) {
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"seconds", r.seconds},
                            {"budget_seconds", r.budget_seconds},
                            {"detail", r.detail}});
    }
    bool ok = proxivor::selftest::all_passed(results);
    json report;
    report["command"] = "selftest";
    report["seed"] = seed;
    report["criteria"] = criteria;
    report["all_pass"] = ok;
    emit(report);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact voronoi tessellations, strong proximities, and "
                 "hit-and-miss neighborhoods"};
    app.require_subcommand(1);
    app.add_option("--jobs", jobs, "worker threads for diagram construction")
        ->check(CLI::PositiveNumber);

    int exit_code = 0;
    auto set = [&exit_code](int code) { exit_code = code; };

    CLI::App* voronoi = app.add_subcommand("voronoi", "build, classify, render");
    voronoi->require_subcommand(1);
    auto build_opts = std::make_shared<VoronoiBuildOpts>();
    CLI::App* vb = voronoi->add_subcommand("build", "construct a diagram from sites");
    vb->add_option("--sites", build_opts->sites_file, "sites JSON")->required();
    vb->add_option("--out", build_opts->out_file, "output diagram JSON")->required();
    vb->add_flag("--no-warn-clip", build_opts->no_warn_clip,
                 "suppress the clipped-diagram warning");
    vb->callback([=] { set(run_voronoi_build(*build_opts)); });

    auto classify_opts = std::make_shared<ClassifyOpts>();
    CLI::App* vc = voronoi->add_subcommand("classify", "all-pairs region classification");
    vc->add_option("--diagram", classify_opts->diagram_file, "diagram JSON")->required();
    vc->add_option("--out", classify_opts->out_file, "output diagram JSON")->required();
    vc->callback([=] { set(run_voronoi_classify(*classify_opts)); });

    auto nbhd_opts = std::make_shared<NbhdOpts>();
    CLI::App* vn = voronoi->add_subcommand("nbhd", "smallest open neighborhood of a region");
    vn->add_option("--diagram", nbhd_opts->diagram_file, "diagram JSON")->required();
    vn->add_option("--site", nbhd_opts->site, "site index")->required();
    vn->callback([=] { set(run_voronoi_nbhd(*nbhd_opts)); });

    auto thm_opts = std::make_shared<FileOpt>();
    CLI::App* vt = voronoi->add_subcommand("check-region-theorem",
                                           "strong axioms and neighborhood uniqueness");
    vt->add_option("--diagram", thm_opts->path, "diagram JSON")->required();
    vt->callback([=] { set(run_voronoi_check_region_theorem(*thm_opts)); });

    auto render_opts = std::make_shared<RenderOpts>();
    CLI::App* vr = voronoi->add_subcommand("render", "SVG output");
    vr->add_option("--diagram", render_opts->diagram_file, "diagram JSON")->required();
    vr->add_option("--out", render_opts->out_file, "output SVG")->required();
    vr->add_option("--graph", render_opts->graph_file, "also write the proximity graph");
    vr->callback([=] { set(run_voronoi_render(*render_opts)); });

    CLI::App* prox = app.add_subcommand("prox", "finite proximity spaces");
    prox->require_subcommand(1);
    auto axiom_opts = std::make_shared<AxiomOpts>();
    CLI::App* pa = prox->add_subcommand("axioms", "check an axiom system");
    pa->add_option("--space", axiom_opts->space_file,
                   "topology JSON (atlas JSON for --kind manifold)")
        ->required();
    pa->add_option("--relation", axiom_opts->relation_name,
                   "nonempty_intersection | interior_intersection | cl_cl");
    pa->add_option("--relation-file", axiom_opts->relation_file, "relation JSON");
    pa->add_option("--kind", axiom_opts->kind, "lodato | strong | manifold")
        ->required()
        ->check(CLI::IsMember({"lodato", "strong", "manifold"}));
    pa->add_flag("--x-clause,!--no-x-clause", axiom_opts->x_clause,
                 "whole-space clause of the canonical strong relation");
    pa->callback([=] { set(run_prox_axioms(*axiom_opts)); });

    auto regular_opts = std::make_shared<FileOpt>();
    CLI::App* pr = prox->add_subcommand("regular-sets", "regular open/closed families");
    pr->add_option("--space", regular_opts->path, "topology JSON")->required();
    pr->callback([=] { set(run_prox_regular_sets(*regular_opts)); });

    auto lemma_opts = std::make_shared<LemmaOpts>();
    CLI::App* pl = prox->add_subcommand("lemma-sweep",
                                        "containment equivalence over all instances");
    pl->add_option("--space", lemma_opts->space_file, "topology JSON")->required();
    pl->add_option("--bfamily", lemma_opts->bfamily_file, "closed family JSON")->required();
    pl->add_option("--max-size", lemma_opts->max_size, "factor list size cap")
        ->check(CLI::Range(1, 4));
    pl->callback([=] { set(run_prox_lemma_sweep(*lemma_opts)); });

    auto sc_opts = std::make_shared<SecondCountOpts>();
    CLI::App* ps = prox->add_subcommand("second-countability",
                                        "countable-subfamily covering condition");
    ps->add_option("--space", sc_opts->space_file, "topology JSON")->required();
    ps->add_option("--bfamily", sc_opts->bfamily_file, "closed family JSON")->required();
    ps->add_option("--bprime", sc_opts->bprime_file, "candidate subfamily JSON")->required();
    ps->callback([=] { set(run_prox_second_countability(*sc_opts)); });

    CLI::App* desc = app.add_subcommand("desc", "descriptive pipelines");
    desc->require_subcommand(1);
    auto grad_opts = std::make_shared<GradientOpts>();
    CLI::App* dg = desc->add_subcommand("gradient", "gradient angles of a PPM image");
    dg->add_option("--image", grad_opts->image_file, "PPM image (P3 or P6)")->required();
    dg->add_option("--channel", grad_opts->channel, "r | g | b")
        ->required()
        ->check(CLI::IsMember({"r", "g", "b"}));
    dg->add_option("--out", grad_opts->out_file, "output JSON")->required();
    dg->callback([=] { set(run_desc_gradient(*grad_opts)); });

    auto connect_opts = std::make_shared<ConnectOpts>();
    CLI::App* dc = desc->add_subcommand("connect",
                                        "descriptive connectedness of a decomposition");
    dc->add_option("--image", connect_opts->image_file, "PPM image")->required();
    dc->add_option("--segments", connect_opts->segments_file, "pixel-index arrays JSON")
        ->required();
    dc->add_option("--palette", connect_opts->palette_file, "palette JSON")->required();
    dc->add_option("--range-topology", connect_opts->topology_file, "topology JSON")
        ->required();
    dc->add_flag("--x-clause,!--no-x-clause", connect_opts->x_clause,
                 "whole-space clause of the canonical strong relation");
    dc->callback([=] { set(run_desc_connect(*connect_opts)); });

    auto chain_opts = std::make_shared<ChainOpts>();
    CLI::App* dch = desc->add_subcommand("chain", "angle interval chain connectedness");
    dch->add_option("--intervals", chain_opts->intervals_file, "intervals JSON")->required();
    dch->callback([=] { set(run_desc_chain(*chain_opts)); });

    CLI::App* manifold = app.add_subcommand("manifold", "atlas nearness queries");
    manifold->require_subcommand(1);
    auto near_opts = std::make_shared<ManifoldNearOpts>();
    CLI::App* mn = manifold->add_subcommand("near", "are two manifolds strongly near");
    mn->add_option("--atlas1", near_opts->atlas1_file, "atlas JSON")->required();
    mn->add_option("--atlas2", near_opts->atlas2_file, "atlas JSON")->required();
    mn->add_flag("--descriptive", near_opts->descriptive, "descriptive nearness");
    mn->add_option("--palette", near_opts->palette_file, "palette JSON");
    mn->add_option("--range-topology", near_opts->topology_file, "topology JSON");
    mn->add_option("--grid-pitch", near_opts->grid_pitch, "sample grid pitch (rational)");
    mn->callback([=] { set(run_manifold_near(*near_opts)); });

    CLI::App* st = app.add_subcommand("selftest", "run the acceptance suite");
    st->callback([&] { set(run_selftest()); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
