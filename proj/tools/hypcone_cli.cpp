// Command-line front end. Exit codes: 0 success, 2 precondition or usage
// error, 3 search exhausted, 4 malformed input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "hypcone/character_dynamics.hpp"
#include "hypcone/cli_io.hpp"
#include "hypcone/covering_group.hpp"
#include "hypcone/domain_builder.hpp"
#include "hypcone/errors.hpp"
#include "hypcone/isometries.hpp"
#include "hypcone/surface_glue.hpp"

using namespace hypcone;
using json = nlohmann::ordered_json;

namespace {

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedInput:
      return 4;
    case ErrorCode::NotFound:
    case ErrorCode::SearchExhausted:
    case ErrorCode::NoCompatibleBasepoint:
    case ErrorCode::EpsilonUnderflow:
    case ErrorCode::EmptyAfterMaxRejects:
    case ErrorCode::IterationBudgetExceeded:
      return 3;
    default:
      return 2;
  }
}

json point_json(const PlanePoint& p) {
  if (const auto* h = std::get_if<HPoint>(&p)) return {h->x(), h->y()};
  const auto& b = std::get<BoundaryPoint>(p);
  if (b.is_infinite()) return "inf";
  return {b.x(), 0.0};
}

json matrix_json(const Isometry& m) {
  const Mat2& a = m.matrix();
  return {a.a, a.b, a.c, a.d};
}

json polygon_json(const GeodesicPolygon& poly, double eps) {
  const ValidityReport r = polygon_validate(poly, eps);
  json j;
  json verts = json::array();
  for (const auto& v : poly.vertices) verts.push_back(point_json(v));
  j["vertices"] = verts;
  j["valid"] = r.valid();
  j["nondegenerate"] = r.nondegenerate;
  j["simple"] = r.simple;
  j["orientation"] = to_string(r.orientation);
  j["interior_angles"] = r.interior_angles;
  j["angle_sum"] = r.angle_sum;
  j["area"] = r.area;
  if (!r.reasons.empty()) j["reasons"] = r.reasons;
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::PreconditionFailed, "cannot write " + path);
  out << text;
}

RepDocument load_rep(const std::string& path) {
  RepDocument doc = parse_rep_document(read_text_file(path));
  for (const auto& w : doc.warnings) std::cerr << "warning: " << w << "\n";
  return doc;
}

/// Words in a zero-based document name G0, H0, ...; the library counts from 1.
std::string renumber_word(const std::string& w, bool zero_based) {
  if (!zero_based) return w;
  static const std::regex token("([GHC])([0-9]+)");
  std::string out;
  auto it = std::sregex_iterator(w.begin(), w.end(), token);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += w.substr(last, static_cast<std::size_t>(it->position()) - last);
    out += (*it)[1].str() + std::to_string(std::stoi((*it)[2].str()) + 1);
    last = static_cast<std::size_t>(it->position() + it->length());
  }
  return out + w.substr(last);
}

Decomposition load_decomposition(const std::string& path, bool zero_based) {
  Decomposition dec = parse_decomposition(read_text_file(path));
  for (auto& p : dec.pieces) {
    for (auto& w : p.words) w = renumber_word(w, zero_based);
    p.transport = renumber_word(p.transport, zero_based);
  }
  for (auto& e : dec.edges) e.curve = renumber_word(e.curve, zero_based);
  return dec;
}

void require_shape(const RepDocument& doc, int genus, int boundary, const char* what) {
  if (doc.genus != genus || doc.boundary != boundary) {
    throw Error(ErrorCode::PreconditionFailed, std::string(what) + " needs genus " + std::to_string(genus) +
                                                   " with " + std::to_string(boundary) + " boundary components");
  }
}

Genus2Rep genus2(const RepDocument& doc) {
  require_shape(doc, 2, 0, "glue2");
  const SurfaceRep s = doc.surface();
  return {s.generators[0], s.generators[1], s.generators[2], s.generators[3]};
}

PantsDomain pants_of(const RepDocument& doc) {
  require_shape(doc, 0, 3, "pants");
  const SurfaceRep s = doc.surface();
  if (relator_residual(s) > 1e-8) {
    throw Error(ErrorCode::RelatorNotIdentity, "C1 C2 C3 is not the identity");
  }
  return build_pants(s.generators[0], s.generators[1]);
}

Pentagon pentagon_of(const RepDocument& doc, const std::vector<double>& point, double eps) {
  if (doc.genus != 1) throw Error(ErrorCode::PreconditionFailed, "pentagon needs a genus-1 representation");
  if (point.size() != 2) throw Error(ErrorCode::PreconditionFailed, "--point takes x y");
  const SurfaceRep s = doc.surface();
  return build_pentagon(s.generators[0], s.generators[1], HPoint(point[0], point[1]), eps);
}

/// Genus-2 gluing. With a hyperbolic separating curve the pair whose SL
/// commutator trace exceeds 2 is certified by good_search and the other pair
/// is glued onto it.
GluedDomain glue_any(const Genus2Rep& rep, const GlueOptions& opt, int depth) {
  const Genus2Split split = split_genus2(rep);
  if (split.kase != GlueCase::HYPERBOLIC) return glue_genus2(rep, opt);
  if (std::abs(split.euler) != 1) {
    throw Error(ErrorCode::PreconditionFailed,
                "euler class " + std::to_string(split.euler) + ": gluing needs |E| = 1 (use assemble)");
  }
  Isometry g = rep.g0, h = rep.h0, gw = rep.g1, hw = rep.h1;
  if (commutator(g.matrix(), h.matrix()).trace() < 0.0) {
    std::swap(g, gw);
    std::swap(h, hw);
  }
  const double t = commutator(g.matrix(), h.matrix()).trace();
  SearchOptions so;
  so.depth = depth;
  so.stations = opt.stations;
  so.orientation = split.euler < 0 ? Orientation::CW : Orientation::CCW;
  const auto cert = try_good_search(g, h, collar_width(t), so);
  if (!cert) throw Error(ErrorCode::SearchExhausted, "no w(t)-good basis for the pair with trace > 2");
  return glue_hyperbolic(cert->pentagon, gw, hw, t, opt);
}

json glued_json(const GluedDomain& d, double eps) {
  json j;
  j["case"] = to_string(d.kase);
  j["euler_class"] = d.euler_certificate;
  j["cone_angle"] = d.cone_angle;
  j["area"] = d.area;
  j["vertex_orbit"] = d.vertex_orbit;
  j["pairing_error"] = d.pairing_error;
  j["twist_sum"] = d.pent0.twist + d.pent1.twist;
  j["scale"] = d.scale;
  j["station"] = d.station;
  j["stations_tried"] = d.stations_tried;
  j["octagon"] = polygon_json(d.octagon, eps);
  j["side_piece"] = d.side_piece;
  json pairings = json::object();
  const char* names[] = {"g0", "h0", "g1", "h1"};
  for (int k = 0; k < 4; ++k) pairings[names[k]] = matrix_json(d.pairings[k]);
  j["pairings"] = pairings;
  const ConeEulerReport ce = cone_euler_check(d);
  j["cone_euler_consistent"] = ce.consistent;
  return j;
}

json pants_json(const PantsDomain& d, double eps) {
  json j;
  j["octagon"] = polygon_json(d.octagon, eps);
  j["recompose_error"] = d.recompose_error;
  j["pairing_error"] = d.pairing_error;
  j["parabolic"] = {d.parabolic[0], d.parabolic[1], d.parabolic[2]};
  return j;
}

json pentagon_json(const Pentagon& p, double eps) {
  json j;
  j["g"] = matrix_json(p.g);
  j["h"] = matrix_json(p.h);
  j["p"] = point_json(p.p);
  j["pentagon"] = polygon_json(p.polygon, eps);
  j["corner_angle"] = p.corner_angle;
  j["twist"] = p.twist;
  j["twist_residual"] = p.twist_residual;
  j["pairing_error"] = p.pairing_error;
  return j;
}

SvgOptions svg_options(const std::string& model, bool arrows) {
  SvgOptions o;
  o.model = model == "halfplane" ? SvgModel::HALFPLANE : SvgModel::DISK;
  o.arrows = arrows;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic cone structures from surface group representations"};
  app.require_subcommand(1);
  std::optional<double> tolerance;
  app.add_option("--tolerance", tolerance, "Geometric tolerance (default $HF_TOLERANCE or 1e-9)");
  std::function<void()> run;
  const std::vector<std::string> models = {"disk", "halfplane"};

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Classify the isometry (a b; c d)");
  std::vector<double> mat;
  classify_cmd->add_option("entries", mat, "a b c d")->expected(4)->required();
  classify_cmd->callback([&] {
    run = [&] {
      const Isometry a(mat[0], mat[1], mat[2], mat[3]);
      const IsoClass c = classify(a, tolerance.value_or(kClassifyTol));
      std::cout << "class: " << to_string(c.label) << "\ntrace: " << format_double(a.trace()) << "\n";
      if (c.label == IsoLabel::ELLIPTIC) std::cout << "angle: " << format_double(c.angle) << "\n";
      if (c.label == IsoLabel::HYPERBOLIC) std::cout << "length: " << format_double(c.length) << "\n";
      if (c.label == IsoLabel::PARABOLIC) std::cout << "direction: " << c.parabolic_sign << "\n";
    };
  });

  // euler
  auto* euler_cmd = app.add_subcommand("euler", "Euler class of a surface group representation");
  std::string rep_path;
  euler_cmd->add_option("--rep", rep_path, "RepDocument JSON")->required();
  euler_cmd->callback([&] {
    run = [&] {
      const SurfaceRep s = load_rep(rep_path).surface();
      std::cout << "euler_class: " << euler_class(s) << "\nchi: " << s.euler_characteristic() << "\n";
    };
  });

  // kappa
  auto* kappa_cmd = app.add_subcommand("kappa", "x^2 + y^2 + z^2 - xyz - 2");
  std::vector<double> xyz;
  kappa_cmd->add_option("xyz", xyz, "x y z")->expected(3)->required();
  kappa_cmd->callback([&] { run = [&] { std::cout << format_double(kappa(xyz[0], xyz[1], xyz[2])) << "\n"; }; });

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "Goldman reduction of a character");
  std::vector<double> rxyz;
  std::size_t max_iter = 100000;
  reduce_cmd->add_option("xyz", rxyz, "x y z")->expected(3)->required();
  reduce_cmd->add_option("--max-iter", max_iter, "Iteration budget");
  reduce_cmd->callback([&] {
    run = [&] {
      const ReductionOutcome r = goldman_reduce({rxyz[0], rxyz[1], rxyz[2]}, max_iter);
      std::cout << "type: " << to_string(r.type) << "\nwitness: " << format_double(r.witness.x) << ' '
                << format_double(r.witness.y) << ' ' << format_double(r.witness.z)
                << "\niterations: " << r.iterations << "\nmoves:";
      for (const auto& m : r.moves) std::cout << ' ' << to_string(m);
      std::cout << "\n";
    };
  });

  // char2rep
  auto* c2r_cmd = app.add_subcommand("char2rep", "One-holed torus representation with character (x, y, z)");
  std::vector<double> cxyz;
  std::string c2r_out;
  c2r_cmd->add_option("xyz", cxyz, "x y z")->expected(3)->required();
  c2r_cmd->add_option("--out", c2r_out, "Output file (default stdout)");
  c2r_cmd->callback([&] {
    run = [&] {
      const MatrixPair mp = char_to_rep({cxyz[0], cxyz[1], cxyz[2]});
      RepDocument doc;
      doc.genus = 1;
      doc.boundary = 1;
      doc.names = generator_names(1, 1);
      doc.matrices = {mp.g, mp.h, commutator(mp.g, mp.h).inverse()};
      doc.description = "char_to_rep(" + format_double(cxyz[0]) + ", " + format_double(cxyz[1]) + ", " +
                        format_double(cxyz[2]) + ")";
      write_output(c2r_out, serialize_rep_document(doc));
    };
  });

  // good-rep
  auto* gr_cmd = app.add_subcommand("good-rep", "Good one-holed torus with boundary trace t");
  double gr_t = 3.0;
  std::optional<double> gr_eps;
  std::string gr_orient = "ccw", gr_svg, gr_model = "disk";
  bool gr_arrows = false;
  gr_cmd->add_option("--trace", gr_t, "Boundary trace t > 2")->required();
  gr_cmd->add_option("--epsilon", gr_eps, "Offset from the axis (default w(t)/2)");
  gr_cmd->add_option("--orientation", gr_orient, "ccw or cw")->check(CLI::IsMember({"ccw", "cw"}));
  gr_cmd->add_option("--svg", gr_svg, "Also render the pentagon");
  gr_cmd->add_option("--model", gr_model, "disk or halfplane")->check(CLI::IsMember(models));
  gr_cmd->add_flag("--arrows", gr_arrows, "Draw pairing arrows");
  gr_cmd->callback([&] {
    run = [&] {
      const double eps = geometric_tolerance(tolerance);
      if (!(gr_t > 2.0)) throw Error(ErrorCode::PreconditionFailed, "trace must exceed 2");
      const GoodRep r = good_rep(gr_t, gr_eps.value_or(collar_width(gr_t) / 2),
                                 gr_orient == "cw" ? Orientation::CW : Orientation::CCW);
      json j = pentagon_json(r.pentagon, eps);
      j["t"] = gr_t;
      j["epsilon"] = r.epsilon;
      std::cout << j.dump(2) << "\n";
      if (!gr_svg.empty()) write_output(gr_svg, render_svg({svg_domain(r.pentagon)}, svg_options(gr_model, gr_arrows)));
    };
  });

  // pentagon
  auto* pent_cmd = app.add_subcommand("pentagon", "Pent(G1, H1; p) for a genus-1 representation");
  std::string pent_rep, pent_svg, pent_model = "disk";
  std::vector<double> pent_point;
  bool pent_arrows = false;
  pent_cmd->add_option("--rep", pent_rep, "RepDocument JSON")->required();
  pent_cmd->add_option("--point", pent_point, "Basepoint x y (y > 0)")->expected(2)->required();
  pent_cmd->add_option("--svg", pent_svg, "Also render the pentagon");
  pent_cmd->add_option("--model", pent_model, "disk or halfplane")->check(CLI::IsMember(models));
  pent_cmd->add_flag("--arrows", pent_arrows, "Draw pairing arrows");
  pent_cmd->callback([&] {
    run = [&] {
      const double eps = geometric_tolerance(tolerance);
      const Pentagon p = pentagon_of(load_rep(pent_rep), pent_point, eps);
      std::cout << pentagon_json(p, eps).dump(2) << "\n";
      if (!pent_svg.empty()) write_output(pent_svg, render_svg({svg_domain(p)}, svg_options(pent_model, pent_arrows)));
    };
  });

  // pants
  auto* pants_cmd = app.add_subcommand("pants", "Right-angled octagon for a pair of pants (C1, C2, C3)");
  std::string pants_rep, pants_svg, pants_model = "disk";
  bool pants_arrows = false;
  pants_cmd->add_option("--rep", pants_rep, "RepDocument JSON, genus 0 with 3 boundary components")->required();
  pants_cmd->add_option("--svg", pants_svg, "Also render the octagon");
  pants_cmd->add_option("--model", pants_model, "disk or halfplane")->check(CLI::IsMember(models));
  pants_cmd->add_flag("--arrows", pants_arrows, "Draw pairing arrows");
  pants_cmd->callback([&] {
    run = [&] {
      const double eps = geometric_tolerance(tolerance);
      const PantsDomain d = pants_of(load_rep(pants_rep));
      std::cout << pants_json(d, eps).dump(2) << "\n";
      if (!pants_svg.empty()) write_output(pants_svg, render_svg({svg_domain(d)}, svg_options(pants_model, pants_arrows)));
    };
  });

  // glue2
  auto* glue_cmd = app.add_subcommand("glue2", "Cone-manifold octagon for a closed genus-2 representation");
  std::string glue_rep, glue_svg, glue_model = "disk";
  GlueOptions glue_opt;
  int glue_depth = 12;
  bool glue_arrows = false;
  glue_cmd->add_option("--rep", glue_rep, "RepDocument JSON, genus 2")->required();
  glue_cmd->add_option("--stations", glue_opt.stations, "Stations per scale");
  glue_cmd->add_option("--halvings", glue_opt.halvings, "Scale halvings");
  glue_cmd->add_option("--depth", glue_depth, "Basis search depth (hyperbolic case)");
  glue_cmd->add_option("--svg", glue_svg, "Also render the octagon");
  glue_cmd->add_option("--model", glue_model, "disk or halfplane")->check(CLI::IsMember(models));
  glue_cmd->add_flag("--arrows", glue_arrows, "Draw pairing arrows");
  glue_cmd->callback([&] {
    run = [&] {
      const double eps = geometric_tolerance(tolerance);
      const GluedDomain d = glue_any(genus2(load_rep(glue_rep)), glue_opt, glue_depth);
      std::cout << glued_json(d, eps).dump(2) << "\n";
      if (!glue_svg.empty()) write_output(glue_svg, render_svg({svg_domain(d)}, svg_options(glue_model, glue_arrows)));
    };
  });

  // assemble
  auto* asm_cmd = app.add_subcommand("assemble", "Extremal structure from a pants/torus decomposition");
  std::string asm_rep, asm_dec, asm_svg, asm_model = "disk";
  int asm_preview = 2;
  bool asm_arrows = false, asm_tiling = false;
  asm_cmd->add_option("--rep", asm_rep, "RepDocument JSON")->required();
  asm_cmd->add_option("--decomposition", asm_dec, "Decomposition JSON")->required();
  asm_cmd->add_option("--preview", asm_preview, "Tiling word length (at most 4)")->check(CLI::Range(0, 4));
  asm_cmd->add_option("--svg", asm_svg, "Also render the pieces");
  asm_cmd->add_option("--model", asm_model, "disk or halfplane")->check(CLI::IsMember(models));
  asm_cmd->add_flag("--arrows", asm_arrows, "Draw pairing arrows");
  asm_cmd->add_flag("--tiling", asm_tiling, "Render the tiling preview");
  asm_cmd->callback([&] {
    run = [&] {
      const double eps = geometric_tolerance(tolerance);
      const RepDocument doc = load_rep(asm_rep);
      const Assembly a = assemble_extremal(doc.surface(), load_decomposition(asm_dec, doc.zero_based), asm_preview);
      json j;
      j["euler_class"] = a.euler;
      j["chi"] = a.chi;
      json pieces = json::array();
      for (const auto& p : a.pieces) {
        json jp;
        jp["kind"] = to_string(p.kind);
        jp["euler_class"] = p.euler;
        jp["polygon"] = polygon_json(p.polygon, eps);
        pieces.push_back(jp);
      }
      j["pieces"] = pieces;
      json edges = json::array();
      for (const auto& e : a.edges) {
        edges.push_back({{"edge", e.edge}, {"side_a", e.side_a}, {"side_b", e.side_b},
                         {"incidence_error", e.incidence_error}, {"sign_a", e.sign_a},
                         {"sign_b", e.sign_b}, {"ok", e.ok}});
      }
      j["edges"] = edges;
      json tiles = json::array();
      for (const auto& t : a.tiling) tiles.push_back(t.size());
      j["tiling_sizes"] = tiles;
      json ce = json::array();
      for (const auto& r : cone_euler_check(a)) ce.push_back({{"chi", r.chi}, {"euler", r.euler}, {"consistent", r.consistent}});
      j["cone_euler"] = ce;
      std::cout << j.dump(2) << "\n";
      if (!asm_svg.empty()) write_output(asm_svg, render_svg(svg_domains(a, asm_tiling), svg_options(asm_model, asm_arrows)));
    };
  });

  // ergodic-exp
  auto* exp_cmd = app.add_subcommand(
      "ergodic-exp",
      "Seeded w(t)-goodness experiment on the level set kappa = t.\n"
      "CSV columns: t,index,x,y,z,type,good,depth,stations,ms\n"
      "  type: PANTS or ELLIPTIC (Goldman reduction); good: 1 if a CCW w(t)-good basis was found;\n"
      "  depth: certificate depth, the search budget on failure, 0 for PANTS;\n"
      "  stations: stations searched (0 for PANTS); ms: wall time with --timing, else 0.\n"
      "Lines starting with # carry the schema version, the flags and the summary.");
  ExperimentOptions exp;
  std::string exp_out;
  exp_cmd->add_option("--trace", exp.t, "Level t > 2")->required();
  exp_cmd->add_option("--samples", exp.samples, "Number of samples")->required();
  exp_cmd->add_option("--depth", exp.depth, "Basis search depth");
  exp_cmd->add_option("--stations", exp.stations, "Stations per basis");
  exp_cmd->add_option("--seed", exp.seed, "RNG seed")->required();
  exp_cmd->add_option("--box", exp.box, "Sampling box half-width");
  exp_cmd->add_option("--threads", exp.threads, "Worker threads (output is identical)");
  exp_cmd->add_flag("--timing", exp.timing, "Fill the ms column");
  exp_cmd->add_option("--out", exp_out, "CSV file (default stdout)");
  exp_cmd->callback([&] {
    run = [&] {
      std::ofstream file;
      std::ostream* os = &std::cout;
      if (!exp_out.empty() && exp_out != "-") {
        file.open(exp_out, std::ios::binary);
        if (!file) throw Error(ErrorCode::PreconditionFailed, "cannot write " + exp_out);
        os = &file;
      }
      *os << csv_header(exp);
      const ExperimentSummary s = ergodic_experiment(exp, [&](const ExperimentRecord& r) {
        *os << csv_row(r);
        os->flush();
      });
      *os << csv_footer(s);
      std::cerr << "elliptic: " << s.elliptic_count << "  pants: " << s.pants_count
                << "  good: " << s.good_count << "  rate: " << rate_string(s.rate) << "\n";
    };
  });

  // render
  auto* render_cmd = app.add_subcommand("render", "SVG of the domain for a representation (empty without input)");
  std::string r_rep, r_dec, r_out, r_model = "disk";
  std::vector<double> r_point;
  std::optional<double> r_good;
  bool r_arrows = false, r_tiling = false;
  GlueOptions r_glue;
  render_cmd->add_option("--rep", r_rep, "RepDocument JSON: genus 2 glues, genus 0 with 3 boundaries builds pants, "
                                         "genus 1 needs --point");
  render_cmd->add_option("--decomposition", r_dec, "Render an assembly instead");
  render_cmd->add_option("--point", r_point, "Pentagon basepoint x y")->expected(2);
  render_cmd->add_option("--good-rep", r_good, "Render good_rep(t, w(t)/2, CCW)");
  render_cmd->add_option("--model", r_model, "disk or halfplane")->check(CLI::IsMember(models));
  render_cmd->add_flag("--arrows", r_arrows, "Draw pairing arrows");
  render_cmd->add_flag("--tiling", r_tiling, "Include the tiling preview of an assembly");
  render_cmd->add_option("--out", r_out, "SVG file (default stdout)");
  render_cmd->callback([&] {
    run = [&] {
      const double eps = geometric_tolerance(tolerance);
      std::vector<SvgDomain> domains;
      if (r_good) {
        domains.push_back(svg_domain(good_rep(*r_good, collar_width(*r_good) / 2, Orientation::CCW).pentagon));
      } else if (!r_rep.empty()) {
        const RepDocument doc = load_rep(r_rep);
        if (!r_dec.empty()) {
          domains = svg_domains(assemble_extremal(doc.surface(), load_decomposition(r_dec, doc.zero_based)), r_tiling);
        } else if (doc.genus == 2 && doc.boundary == 0) {
          domains.push_back(svg_domain(glue_any(genus2(doc), r_glue, 12)));
        } else if (doc.genus == 0 && doc.boundary == 3) {
          domains.push_back(svg_domain(pants_of(doc)));
        } else {
          domains.push_back(svg_domain(pentagon_of(doc, r_point, eps)));
        }
      }
      write_output(r_out, render_svg(domains, svg_options(r_model, r_arrows)));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
