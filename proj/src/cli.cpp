#include "gerbecalc/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gerbecalc/alcove.hpp"
#include "gerbecalc/centralizer.hpp"
#include "gerbecalc/covershrink.hpp"
#include "gerbecalc/errors.hpp"
#include "gerbecalc/gluing.hpp"
#include "gerbecalc/json_io.hpp"
#include "gerbecalc/root_system.hpp"

namespace gerbecalc {

namespace {

using nlohmann::json;

json int_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<long>(v.get_si());
    return v.get_str();  // unreachably large values degrade to strings
}

json zvec_json(const ZVec& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(int_json(x));
    return out;
}

json qvec_json(const QVec& v) {
    json out = json::array();
    for (const Rat& x : v) out.push_back(rat_str(x));
    return out;
}

json invariants_json(const AbelianGroupInvariants& g) {
    json out;
    out["free_rank"] = g.free_rank;
    json torsion = json::array();
    for (const Int& t : g.torsion) torsion.push_back(int_json(t));
    out["torsion"] = torsion;
    return out;
}

json extension_json(const ExtensionClass& cls) {
    json out;
    out["face"] = cls.face.indices;
    json gens = json::array();
    for (const ZVec& g : cls.generators) gens.push_back(zvec_json(g));
    out["generators"] = gens;
    json orders = json::array();
    for (const Int& o : cls.orders) orders.push_back(int_json(o));
    out["orders"] = orders;
    json values = json::array();
    for (const Rat& v : cls.values) values.push_back(rat_str(v));
    out["values"] = values;
    out["weight"] = qvec_json(cls.weight);
    out["trivial"] = cls.values_all_zero();
    return out;
}

json word_json(const Word& w) {
    json terms = json::array();
    for (const auto& [term, exp] : w.terms) {
        json t;
        t["exponent"] = int_json(exp);
        t["generator"] = term.gen.name;
        t["word"] = term.word.indices;
        terms.push_back(t);
    }
    return terms;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AlcoveModel model_of(const std::string& type) {
    return alcove_vertices(build_root_system(LieType::parse(type)));
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& part : split_commas(text)) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw ParseError("expected a comma-separated integer list, got '" + text + "'");
        }
        if (used != part.size()) {
            throw ParseError("expected a comma-separated integer list, got '" + text + "'");
        }
        out.push_back(value);
    }
    return out;
}

/// Barycentric coefficients over the alcove vertices; a single value c for a
/// rank-1 type is shorthand for (1-c, c), the coefficient of the vertex mu_1.
QVec parse_point(const AlcoveModel& am, const std::string& text) {
    QVec coords;
    for (const std::string& part : split_commas(text)) coords.push_back(parse_rat(part));
    const int d = am.rs.rank;
    if (d == 1 && coords.size() == 1) {
        coords = QVec{Rat(1) - coords[0], coords[0]};
    }
    if (coords.size() != static_cast<std::size_t>(d) + 1) {
        throw ParseError("expected " + std::to_string(d + 1) +
                         " barycentric coefficients, got " + std::to_string(coords.size()));
    }
    Rat total(0);
    for (const Rat& c : coords) total += c;
    if (total != 1) throw ParseError("barycentric coefficients must sum to 1");
    return coords;
}

std::vector<std::string> table_types(int max_rank) {
    std::vector<std::string> types;
    for (int d = 1; d <= max_rank; ++d) types.push_back("A" + std::to_string(d));
    for (int d = 2; d <= max_rank; ++d) types.push_back("B" + std::to_string(d));
    for (int d = 2; d <= max_rank; ++d) types.push_back("C" + std::to_string(d));
    for (int d = 3; d <= max_rank; ++d) types.push_back("D" + std::to_string(d));
    if (max_rank >= 6) types.push_back("E6");
    if (max_rank >= 7) types.push_back("E7");
    if (max_rank >= 8) types.push_back("E8");
    if (max_rank >= 4) types.push_back("F4");
    if (max_rank >= 2) types.push_back("G2");
    return types;
}

json cmd_table(int max_rank) {
    json doc;
    for (const std::string& name : table_types(max_rank)) {
        doc[name] = int_json(k0(build_root_system(LieType::parse(name))));
    }
    return doc;
}

json cmd_roots(const std::string& type) {
    RootSystem rs = build_root_system(LieType::parse(type));
    json doc;
    json cartan = json::array();
    for (int i = 0; i < rs.rank; ++i) cartan.push_back(zvec_json(rs.cartan.row(i)));
    doc["cartan"] = cartan;
    doc["count"] = static_cast<long>(rs.roots.size());
    doc["half_norms"] = qvec_json(rs.half_norms);
    doc["highest_root"] = zvec_json(rs.highest_root);
    long positive = 0;
    json roots = json::array();
    for (const ZVec& r : rs.roots) {
        roots.push_back(zvec_json(r));
        if (rs.is_positive(r)) ++positive;
    }
    doc["positive_count"] = positive;
    doc["roots"] = roots;
    doc["type"] = rs.type.str();
    return doc;
}

json cmd_alcove(const std::string& type, bool with_level, long level,
                const std::string& point) {
    AlcoveModel am = model_of(type);
    json doc;
    doc["k0"] = int_json(k0(am.rs));
    doc["marks"] = qvec_json(am.marks);
    doc["type"] = am.rs.type.str();
    json vertices = json::array();
    for (const QVec& v : am.vertices) vertices.push_back(qvec_json(v));
    doc["vertices"] = vertices;
    if (with_level) {
        json weights = json::array();
        for (const QVec& w : level_weights(am.rs, Int(level))) {
            weights.push_back(qvec_json(w));
        }
        doc["level_weights"] = weights;
    }
    if (!point.empty()) {
        QVec coords = parse_point(am, point);
        FacePoint fp = face_point(am, from_barycentric(am, coords));
        json pdoc;
        pdoc["barycentric"] = qvec_json(barycentric_coords(am, fp.coords));
        json stars = json::array();
        json moments;
        for (int j = 0; j <= am.rs.rank; ++j) {
            if (!star_membership(am, j, fp)) continue;
            stars.push_back(j);
            moments[std::to_string(j)] = qvec_json(moment_value(am, j, fp));
        }
        pdoc["moments"] = moments;
        pdoc["stars"] = stars;
        doc["point"] = pdoc;
    }
    return doc;
}

json cmd_centralizer(const std::string& type, const std::string& face_text) {
    AlcoveModel am = model_of(type);
    FaceIndexSet face = make_face(am, parse_int_list(face_text));
    CentralizerData cd = centralizer_roots(am, face);
    json doc;
    doc["face"] = cd.face.indices;
    doc["pi1"] = invariants_json(fundamental_group(cd));
    json roots = json::array();
    for (const ZVec& r : cd.roots_sub) roots.push_back(zvec_json(r));
    doc["roots"] = roots;
    json simple = json::array();
    for (const ZVec& r : cd.simple_system) simple.push_back(zvec_json(r));
    doc["simple_system"] = simple;
    doc["type"] = am.rs.type.str();
    if (cd.face.indices.size() == 2) {
        doc["rho_edge"] = extension_json(
            rho_edge(am, cd.face.indices[0], cd.face.indices[1]));
    }
    return doc;
}

json cmd_extension(const std::string& type, int vertex, long scale) {
    AlcoveModel am = model_of(type);
    FaceIndexSet face = make_face(am, {vertex});
    CentralizerData cd = centralizer_roots(am, face);
    QVec mu = am.vertices.at(vertex);
    for (Rat& c : mu) c *= Rat(scale);
    ExtensionClass cls = extension_class(am, face, mu);
    GerbeFragment fragment = gerbe_from_extension(cd, cls);
    json doc;
    doc["class"] = extension_json(cls);
    json frag;
    frag["L"] = fragment.L.name;
    frag["class_trivial"] = fragment.class_trivial;
    frag["pseudo_line_bundle"] = fragment.pseudo_line_bundle;
    frag["s"] = fragment.s ? json(fragment.s->name) : json(nullptr);
    frag["t"] = fragment.t.name;
    doc["fragment"] = frag;
    doc["scale"] = scale;
    doc["trivial"] = extension_is_trivial(cd, cls);
    doc["type"] = am.rs.type.str();
    doc["vertex"] = vertex;
    return doc;
}

json cmd_prequant(const std::string& type, long level, const std::string& point) {
    AlcoveModel am = model_of(type);
    QVec coords = parse_point(am, point);
    FacePoint fp = face_point(am, from_barycentric(am, coords));
    json doc;
    doc["prequantizable"] = is_prequantizable(am, Int(level), fp);
    return doc;
}

json cmd_glue_verify(const std::string& input, const std::string& alcove_type,
                     long scale, const std::string& drop, bool render) {
    GluingData gd;
    json doc;
    if (!input.empty()) {
        gd = parse_gluing_decls(read_file(input));
    } else if (!alcove_type.empty()) {
        AssembledGluing asg = assemble_alcove_gluing(model_of(alcove_type), Int(scale));
        gd = asg.data;
        json fragments = json::array();
        for (const GerbeFragment& f : asg.fragments) {
            json fdoc;
            fdoc["class_trivial"] = f.class_trivial;
            fdoc["pseudo_line_bundle"] = f.pseudo_line_bundle;
            fdoc["s"] = f.s ? json(f.s->name) : json(nullptr);
            json values = json::array();
            for (const Rat& v : f.class_values) values.push_back(rat_str(v));
            fdoc["values"] = values;
            fdoc["vertex"] = f.face.indices.at(0);
            fragments.push_back(fdoc);
        }
        doc["fragments"] = fragments;
    } else {
        gd = standard_gluing(4);
    }
    if (drop == "t-gerbe") gd.rel_t_gerbe = false;
    if (drop == "s-pseudo") gd.rel_s_pseudo = false;
    if (drop == "s-cocycle") gd.rel_s_cocycle = false;
    if (drop == "u-cocycle") gd.rel_u_cocycle = false;

    doc["charts"] = gd.charts;
    json relations;
    relations["s-cocycle"] = gd.rel_s_cocycle;
    relations["s-pseudo"] = gd.rel_s_pseudo;
    relations["t-gerbe"] = gd.rel_t_gerbe;
    relations["u-cocycle"] = gd.rel_u_cocycle;
    doc["relations"] = relations;
    const bool cocycle = verify_cocycle(gd);
    doc["cocycle"] = cocycle;
    if (!cocycle) {
        // report the first chart quadruple, in lexicographic order, whose
        // cocycle equation fails to reduce, together with its residual
        for (int i = 0; i < gd.charts && !doc.contains("residual"); ++i) {
            for (int j = 0; j < gd.charts && !doc.contains("residual"); ++j) {
                for (int k = 0; k < gd.charts && !doc.contains("residual"); ++k) {
                    for (int l = 0; l < gd.charts; ++l) {
                        Word residual = cocycle_residual(gd, {i, j, k, l});
                        if (residual.empty()) continue;
                        doc["residual"] = word_json(residual);
                        doc["residual_at"] = json::array({i, j, k, l});
                        break;
                    }
                }
            }
        }
    }
    if (gd.has_connection) doc["connection"] = verify_connection(gd);
    if (render) doc["canonical"] = render_gluing_decls(gd);
    return doc;
}

json cmd_cover_shrink(const std::string& input, const std::string& alcove_type) {
    OpenCover cover = input.empty() ? alcove_star_cover(model_of(alcove_type))
                                    : cover_from_json(read_file(input));
    ShrinkResult result = shrink_cover(cover);
    json doc = shrink_result_json(cover, result);
    doc["verified"] = verify_shrink(cover, result);
    return doc;
}

}  // namespace

std::vector<std::string> cli_commands() {
    return {"table",     "roots",    "alcove",      "centralizer",
            "extension", "prequant", "glue-verify", "cover-shrink"};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations for basic gerbes over compact simple Lie groups",
                 "gerbecalc"};
    app.require_subcommand(0, 1);

    int table_max_rank = 8;
    CLI::App* sub_table = app.add_subcommand("table", "k0 for each supported type");
    sub_table->add_option("--max-rank", table_max_rank, "largest rank to include")
        ->check(CLI::Range(1, 16));

    std::string roots_type;
    CLI::App* sub_roots = app.add_subcommand("roots", "root system data");
    sub_roots->add_option("--type", roots_type, "type, e.g. B3")->required();

    std::string alcove_type, alcove_point;
    long alcove_level = 0;
    CLI::App* sub_alcove = app.add_subcommand("alcove", "alcove vertices and k0");
    sub_alcove->add_option("--type", alcove_type, "type, e.g. G2")->required();
    CLI::Option* alcove_level_opt =
        sub_alcove->add_option("--level", alcove_level, "also list the level-m weights")
            ->check(CLI::Range(0L, 1000000L));
    sub_alcove->add_option("--point", alcove_point,
                           "barycentric point: stars, moments, coordinates");

    std::string cent_type, cent_face;
    CLI::App* sub_cent = app.add_subcommand("centralizer", "face centralizer data");
    sub_cent->add_option("--type", cent_type, "type, e.g. B3")->required();
    sub_cent->add_option("--face", cent_face, "face vertex indices, e.g. 0,2")->required();

    std::string ext_type;
    int ext_vertex = 0;
    long ext_scale = 1;
    CLI::App* sub_ext = app.add_subcommand("extension", "vertex extension class");
    sub_ext->add_option("--type", ext_type, "type, e.g. G2")->required();
    sub_ext->add_option("--vertex", ext_vertex, "alcove vertex index")->required();
    sub_ext->add_option("--scale", ext_scale, "weight scale m (class of m*mu_j)")
        ->check(CLI::Range(0L, 1000000L));

    std::string pq_type, pq_point;
    long pq_level = 0;
    CLI::App* sub_pq = app.add_subcommand("prequant", "pre-quantization test");
    sub_pq->add_option("--type", pq_type, "type, e.g. A1")->required();
    sub_pq->add_option("--level", pq_level, "level m")
        ->required()
        ->check(CLI::Range(0L, 1000000L));
    sub_pq->add_option("--point", pq_point, "barycentric point")->required();

    std::string gv_input, gv_alcove, gv_drop;
    long gv_scale = 1;
    bool gv_render = false;
    CLI::App* sub_gv = app.add_subcommand("glue-verify", "cocycle/connection verification");
    CLI::Option* gv_input_opt =
        sub_gv->add_option("--input", gv_input, "gluing declarations file");
    CLI::Option* gv_alcove_opt =
        sub_gv->add_option("--alcove-type", gv_alcove,
                           "assemble the vertex-fragment gluing for this type");
    gv_input_opt->excludes(gv_alcove_opt);
    sub_gv->add_option("--scale", gv_scale, "level for --alcove-type")
        ->check(CLI::Range(0L, 1000000L));
    sub_gv->add_option("--drop-relation", gv_drop, "withhold one declared relation")
        ->check(CLI::IsMember({"t-gerbe", "s-pseudo", "s-cocycle", "u-cocycle"}));
    sub_gv->add_flag("--render", gv_render, "include the canonical declaration text");

    std::string cs_input, cs_alcove;
    CLI::App* sub_cs = app.add_subcommand("cover-shrink", "shrink a finite open cover");
    CLI::Option* cs_input_opt =
        sub_cs->add_option("--input", cs_input, "poset/cover JSON file");
    CLI::Option* cs_alcove_opt =
        sub_cs->add_option("--alcove-type", cs_alcove, "use the alcove star cover");
    cs_input_opt->excludes(cs_alcove_opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        json doc;
        if (*sub_table) {
            doc = cmd_table(table_max_rank);
        } else if (*sub_roots) {
            doc = cmd_roots(roots_type);
        } else if (*sub_alcove) {
            doc = cmd_alcove(alcove_type, alcove_level_opt->count() > 0, alcove_level,
                             alcove_point);
        } else if (*sub_cent) {
            doc = cmd_centralizer(cent_type, cent_face);
        } else if (*sub_ext) {
            doc = cmd_extension(ext_type, ext_vertex, ext_scale);
        } else if (*sub_pq) {
            doc = cmd_prequant(pq_type, pq_level, pq_point);
        } else if (*sub_gv) {
            doc = cmd_glue_verify(gv_input, gv_alcove, gv_scale, gv_drop, gv_render);
        } else if (*sub_cs) {
            if (cs_input.empty() && cs_alcove.empty()) {
                throw ParseError("cover-shrink needs --input or --alcove-type");
            }
            doc = cmd_cover_shrink(cs_input, cs_alcove);
        } else {
            err << app.help();
            return 2;
        }
        out << canonical_json(doc);
        return 0;
    } catch (const InvalidType& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedRational& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        json error_doc;
        error_doc["code"] = e.code();
        error_doc["message"] = e.what();
        out << canonical_json(error_doc);
        return 1;
    }
}

}  // namespace gerbecalc
