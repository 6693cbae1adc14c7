#include "hypcone/cli_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "hypcone/character_dynamics.hpp"
#include "hypcone/domain_builder.hpp"
#include "hypcone/errors.hpp"

namespace hypcone {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double geometric_tolerance(std::optional<double> override_value) {
  double v = kGeomEps;
  std::string source = "--tolerance";
  if (override_value) {
    v = *override_value;
  } else if (const char* env = std::getenv("HF_TOLERANCE"); env && *env) {
    source = "HF_TOLERANCE";
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw Error(ErrorCode::MalformedInput, "HF_TOLERANCE is not a number: " + s);
    }
  } else {
    return v;
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::MalformedInput, source + " must be a positive number");
  }
  return v;
}

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::MalformedInput, path + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "JSON syntax error at line " << line << ", column " << col << ": " << e.what();
    throw Error(ErrorCode::MalformedInput, os.str());
  }
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) malformed(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) malformed(path, std::string("missing \"") + key + "\"");
  return *it;
}

int nonnegative_int(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000) {
    malformed(path, "expected a small non-negative integer");
  }
  return static_cast<int>(v.get<long long>());
}

std::string string_value(const json& v, const std::string& path) {
  if (!v.is_string()) malformed(path, "expected a string");
  return v.get<std::string>();
}

}  // namespace

// --- RepDocument -------------------------------------------------------------

SurfaceRep RepDocument::surface() const {
  SurfaceRep rep{genus, boundary, {}};
  for (const Mat2& m : matrices) rep.generators.emplace_back(m);
  return rep;
}

std::vector<std::string> presentation_names(int genus, int boundary, bool zero_based) {
  if (!zero_based) return generator_names(genus, boundary);
  std::vector<std::string> names;
  for (int i = 0; i < genus; ++i) {
    names.push_back("G" + std::to_string(i));
    names.push_back("H" + std::to_string(i));
  }
  for (int j = 0; j < boundary; ++j) names.push_back("C" + std::to_string(j));
  return names;
}

RepDocument parse_rep_document(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) malformed("/", "expected an object");
  RepDocument doc;
  const json& surface = member(j, "surface", "/");
  doc.genus = nonnegative_int(member(surface, "genus", "/surface"), "/surface/genus");
  doc.boundary = nonnegative_int(member(surface, "boundary", "/surface"), "/surface/boundary");
  const json& gens = member(j, "generators", "/");
  if (!gens.is_object()) malformed("/generators", "expected an object");

  std::set<std::string> keys;
  for (const auto& [k, v] : gens.items()) keys.insert(k);
  const auto one = presentation_names(doc.genus, doc.boundary, false);
  const auto zero = presentation_names(doc.genus, doc.boundary, true);
  if (keys == std::set<std::string>(one.begin(), one.end())) {
    doc.names = one;
  } else if (keys == std::set<std::string>(zero.begin(), zero.end())) {
    doc.names = zero;
    doc.zero_based = true;
  } else {
    std::string expected;
    for (const auto& n : one) expected += (expected.empty() ? "" : ",") + n;
    malformed("/generators", "names do not match the presentation (expected " + expected +
                                 ", or the same numbered from 0)");
  }

  for (const std::string& name : doc.names) {
    const std::string path = "/generators/" + name;
    const json& arr = gens.at(name);
    if (!arr.is_array() || arr.size() != 4) malformed(path, "expected [a, b, c, d]");
    double v[4];
    for (int i = 0; i < 4; ++i) {
      if (!arr[i].is_number()) malformed(path, "entries must be numbers");
      v[i] = arr[i].get<double>();
      if (!std::isfinite(v[i])) malformed(path, "entries must be finite");
    }
    Mat2 m{v[0], v[1], v[2], v[3]};
    const double det = m.det();
    if (!(det > 0.0)) {
      throw Error(ErrorCode::PreconditionFailed,
                  name + ": determinant " + format_double(det) + " is not positive");
    }
    if (std::abs(det - 1.0) > 1e-9) {
      m = to_unit_det(m);
      doc.warnings.push_back(name + ": determinant " + format_double(det) + " normalized to 1");
    }
    doc.matrices.push_back(m);
  }

  if (const auto it = j.find("metadata"); it != j.end()) {
    const json& meta = *it;
    if (!meta.is_object()) malformed("/metadata", "expected an object");
    if (const auto d = meta.find("description"); d != meta.end()) {
      doc.description = string_value(*d, "/metadata/description");
    }
    if (const auto s = meta.find("seed"); s != meta.end() && !s->is_null()) {
      if (!s->is_number_unsigned()) malformed("/metadata/seed", "expected a non-negative integer");
      doc.seed = s->get<std::uint64_t>();
    }
  }
  return doc;
}

std::string serialize_rep_document(const RepDocument& doc) {
  json j;
  j["surface"] = {{"genus", doc.genus}, {"boundary", doc.boundary}};
  json gens = json::object();
  for (std::size_t i = 0; i < doc.names.size(); ++i) {
    const Mat2& m = doc.matrices[i];
    gens[doc.names[i]] = {m.a, m.b, m.c, m.d};
  }
  j["generators"] = gens;
  json meta = json::object();
  meta["description"] = doc.description;
  if (doc.seed) meta["seed"] = *doc.seed;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

RepDocument make_rep_document(const SurfaceRep& rep, const std::string& description) {
  RepDocument doc;
  doc.genus = rep.genus;
  doc.boundary = rep.boundary_count;
  doc.names = generator_names(rep.genus, rep.boundary_count);
  for (const Isometry& g : rep.generators) doc.matrices.push_back(g.matrix());
  doc.description = description;
  return doc;
}

// --- Decomposition -------------------------------------------------------------

Decomposition parse_decomposition(const std::string& text) {
  const json j = parse_json(text);
  Decomposition dec;
  const json& pieces = member(j, "pieces", "/");
  if (!pieces.is_array() || pieces.empty()) malformed("/pieces", "expected a non-empty array");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string path = "/pieces/" + std::to_string(i);
    Piece p;
    const std::string kind = string_value(member(pieces[i], "kind", path), path + "/kind");
    if (kind == "pants") {
      p.kind = PieceKind::PANTS;
    } else if (kind == "punctured_torus") {
      p.kind = PieceKind::PUNCTURED_TORUS;
    } else {
      malformed(path + "/kind", "expected \"pants\" or \"punctured_torus\"");
    }
    const json& words = member(pieces[i], "words", path);
    if (!words.is_array() || words.size() != 2) malformed(path + "/words", "expected two words");
    for (std::size_t k = 0; k < 2; ++k) {
      p.words.push_back(string_value(words[k], path + "/words/" + std::to_string(k)));
    }
    if (const auto t = pieces[i].find("transport"); t != pieces[i].end()) {
      p.transport = string_value(*t, path + "/transport");
    }
    dec.pieces.push_back(p);
  }
  if (const auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) malformed("/edges", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "/edges/" + std::to_string(i);
      const json& e = (*it)[i];
      DecompositionEdge edge;
      edge.piece_a = nonnegative_int(member(e, "a", path), path + "/a");
      edge.piece_b = nonnegative_int(member(e, "b", path), path + "/b");
      edge.curve = string_value(member(e, "curve", path), path + "/curve");
      const int n = static_cast<int>(dec.pieces.size());
      if (edge.piece_a >= n || edge.piece_b >= n || edge.piece_a == edge.piece_b) {
        malformed(path, "edge must join two distinct pieces");
      }
      dec.edges.push_back(edge);
    }
  }
  return dec;
}

std::string serialize_decomposition(const Decomposition& dec) {
  json j;
  json pieces = json::array();
  for (const Piece& p : dec.pieces) {
    json jp;
    jp["kind"] = p.kind == PieceKind::PANTS ? "pants" : "punctured_torus";
    jp["words"] = p.words;
    jp["transport"] = p.transport;
    pieces.push_back(jp);
  }
  j["pieces"] = pieces;
  json edges = json::array();
  for (const auto& e : dec.edges) edges.push_back({{"a", e.piece_a}, {"b", e.piece_b}, {"curve", e.curve}});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::PreconditionFailed, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// --- Ergodicity experiment -------------------------------------------------------

namespace {

ExperimentRecord run_trial(const ExperimentOptions& o, int index) {
  const auto start = std::chrono::steady_clock::now();
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(o.seed >> 32), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  ExperimentRecord r;
  r.t = o.t;
  r.index = index;
  r.character = sample_level_set(o.t, o.box, rng);
  r.type = goldman_reduce(r.character).type;
  if (r.type == ReductionType::ELLIPTIC) {
    const MatrixPair mp = char_to_rep(r.character);
    SearchOptions so;
    so.depth = o.depth;
    so.stations = o.stations;
    so.orientation = Orientation::CCW;
    const auto cert = try_good_search(Isometry(mp.g), Isometry(mp.h), collar_width(o.t), so);
    r.good = cert.has_value();
    r.depth = cert ? cert->depth : o.depth;
    r.stations = o.stations;
  }
  if (o.timing) {
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace

ExperimentSummary ergodic_experiment(const ExperimentOptions& options,
                                     const std::function<void(const ExperimentRecord&)>& on_record) {
  if (!(options.t > 2.0)) throw Error(ErrorCode::PreconditionFailed, "trace must exceed 2");
  if (options.samples < 1) throw Error(ErrorCode::PreconditionFailed, "need at least one sample");
  if (options.depth < 0 || options.stations < 1) {
    throw Error(ErrorCode::PreconditionFailed, "depth must be >= 0 and stations >= 1");
  }
  const int n = options.samples;
  std::vector<std::optional<ExperimentRecord>> slots(static_cast<std::size_t>(n));
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;

  auto worker = [&] {
    for (int i = next++; i < n && !failed; i = next++) {
      try {
        ExperimentRecord r = run_trial(options, i);
        std::lock_guard<std::mutex> lock(mu);
        slots[static_cast<std::size_t>(i)] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
      cv.notify_all();
    }
  };

  const int threads = std::clamp(options.threads, 1, n);
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);

  ExperimentSummary s;
  auto emit = [&](const ExperimentRecord& r) {
    if (r.type == ReductionType::ELLIPTIC) {
      ++s.elliptic_count;
      if (r.good) ++s.good_count;
    } else {
      ++s.pants_count;
    }
    s.records.push_back(r);
    if (on_record) on_record(r);
  };

  if (threads == 1) {
    for (int i = 0; i < n; ++i) emit(run_trial(options, i));
  } else {
    for (int i = 0; i < n; ++i) {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return slots[static_cast<std::size_t>(i)].has_value() || failed.load(); });
      if (!slots[static_cast<std::size_t>(i)]) break;
      const ExperimentRecord r = *slots[static_cast<std::size_t>(i)];
      lock.unlock();
      emit(r);
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  if (s.elliptic_count > 0) s.rate = static_cast<double>(s.good_count) / s.elliptic_count;
  return s;
}

std::string csv_header(const ExperimentOptions& o) {
  std::ostringstream os;
  os << "# hypcone " << kVersion << " ergodic-exp schema " << kCsvSchema << "\n"
     << "# t=" << format_double(o.t) << " samples=" << o.samples << " depth=" << o.depth
     << " stations=" << o.stations << " seed=" << o.seed << " box=" << format_double(o.box) << "\n"
     << "t,index,x,y,z,type,good,depth,stations,ms\n";
  return os.str();
}

std::string csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << format_double(r.t) << ',' << r.index << ',' << format_double(r.character.x) << ','
     << format_double(r.character.y) << ',' << format_double(r.character.z) << ','
     << to_string(r.type) << ',' << (r.good ? 1 : 0) << ',' << r.depth << ',' << r.stations << ','
     << format_double(r.ms) << "\n";
  return os.str();
}

std::string rate_string(const std::optional<double>& rate) {
  return rate ? format_double(*rate) : "n/a";
}

std::string csv_footer(const ExperimentSummary& s) {
  std::ostringstream os;
  os << "# elliptic=" << s.elliptic_count << " pants=" << s.pants_count << " good=" << s.good_count
     << " rate=" << rate_string(s.rate) << "\n";
  return os.str();
}

// --- SVG -------------------------------------------------------------------------------

namespace {

const char* const kPalette[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#17becf", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  // "-0.0000" and "0.0000" must print alike for byte-stable output.
  if (std::string(buf) == "-0.0000") return "0.0000";
  return buf;
}

/// Model coordinates to screen coordinates.
class Canvas {
 public:
  Canvas(SvgModel model, int size, const std::vector<SvgDomain>& domains) : model_(model), size_(size) {
    if (model_ == SvgModel::DISK) {
      scale_ = size_ / 2.2;
      return;
    }
    double lo = -1.0, hi = 1.0, top = 1.0;
    bool any = false;
    for (const auto& d : domains) {
      for (const auto& v : d.polygon.vertices) {
        double x = 0.0;
        if (const auto* h = std::get_if<HPoint>(&v)) {
          x = h->x();
          top = any ? std::max(top, h->y()) : h->y();
        } else if (!std::get<BoundaryPoint>(v).is_infinite()) {
          x = std::get<BoundaryPoint>(v).x();
        } else {
          continue;
        }
        if (!any) lo = hi = x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        any = true;
      }
    }
    const double span = std::max({hi - lo, top, 1e-6});
    x0_ = lo - 0.1 * span;
    const double width = (hi - lo) + 0.2 * span;
    top_ = std::max(top * 1.2, 0.6 * width);
    scale_ = (size_ - 20) / std::max(width, top_);
  }

  std::pair<double, double> screen(Complex model) const {
    if (model_ == SvgModel::DISK) return {size_ / 2.0 + scale_ * model.real(), size_ / 2.0 - scale_ * model.imag()};
    return {10.0 + scale_ * (model.real() - x0_), size_ - 10.0 - scale_ * model.imag()};
  }

  /// Model coordinates of a point: disk position, or the half-plane point with
  /// infinity clamped to the top edge above `x`.
  Complex model(const PlanePoint& p, double x_for_infinity = 0.0) const {
    if (model_ == SvgModel::DISK) return to_disk(p);
    if (const auto* h = std::get_if<HPoint>(&p)) return h->z();
    const auto& b = std::get<BoundaryPoint>(p);
    if (b.is_infinite()) return {x_for_infinity, top_};
    return {b.x(), 0.0};
  }

  std::pair<double, double> screen(const PlanePoint& p, double x_for_infinity = 0.0) const {
    return screen(model(p, x_for_infinity));
  }

  /// Path commands continuing from a to b along the geodesic.
  std::string arc_to(const PlanePoint& a, const PlanePoint& b) const {
    const double xa = finite_x(a, b), xb = finite_x(b, a);
    const auto [sbx, sby] = screen(b, xb);
    std::ostringstream os;
    if (model_ == SvgModel::DISK) {
      const Complex wa = to_disk(a), wb = to_disk(b);
      const double cross = wa.real() * wb.imag() - wa.imag() * wb.real();
      if (std::abs(cross) < 1e-12) {
        os << " L " << num(sbx) << ' ' << num(sby);
        return os.str();
      }
      const double ra = 0.5 * (1.0 + std::norm(wa)), rb = 0.5 * (1.0 + std::norm(wb));
      const Complex c((ra * wb.imag() - rb * wa.imag()) / cross, (wa.real() * rb - wb.real() * ra) / cross);
      const double r = std::sqrt(std::max(0.0, std::norm(c) - 1.0)) * scale_;
      const auto [sax, say] = screen(wa);
      const auto [scx, scy] = screen(c);
      const double sc = (sax - scx) * (sby - scy) - (say - scy) * (sbx - scx);
      os << " A " << num(r) << ' ' << num(r) << " 0 0 " << (sc > 0 ? 1 : 0) << ' ' << num(sbx) << ' '
         << num(sby);
      return os.str();
    }
    const Complex za = model(a, xa), zb = model(b, xb);
    const bool vertical = is_infinite(a) || is_infinite(b) ||
                          std::abs(za.real() - zb.real()) < 1e-12 * (1.0 + std::abs(za.real()));
    if (vertical) {
      os << " L " << num(sbx) << ' ' << num(sby);
      return os.str();
    }
    const double c = (std::norm(za) - std::norm(zb)) / (2.0 * (za.real() - zb.real()));
    const double r = std::abs(za - Complex(c, 0.0)) * scale_;
    os << " A " << num(r) << ' ' << num(r) << " 0 0 " << (za.real() < zb.real() ? 1 : 0) << ' ' << num(sbx)
       << ' ' << num(sby);
    return os.str();
  }

  std::string move_to(const PlanePoint& a, const PlanePoint& toward) const {
    const auto [x, y] = screen(a, finite_x(a, toward));
    return "M " + num(x) + ' ' + num(y);
  }

  double scale() const { return scale_; }

 private:
  static bool is_infinite(const PlanePoint& p) {
    const auto* b = std::get_if<BoundaryPoint>(&p);
    return b && b->is_infinite();
  }
  /// Real part for p; for infinity, that of the other endpoint (vertical sides).
  static double finite_x(const PlanePoint& p, const PlanePoint& other) {
    if (!is_infinite(p)) {
      if (const auto* h = std::get_if<HPoint>(&p)) return h->x();
      return std::get<BoundaryPoint>(p).x();
    }
    if (is_infinite(other)) return 0.0;
    if (const auto* h = std::get_if<HPoint>(&other)) return h->x();
    return std::get<BoundaryPoint>(other).x();
  }

  SvgModel model_;
  int size_;
  double scale_ = 1.0;
  double x0_ = 0.0, top_ = 1.0;
};

std::string closed_path(const Canvas& cv, const GeodesicPolygon& p) {
  const auto& v = p.vertices;
  std::string d = cv.move_to(v[0], v[1]);
  for (std::size_t i = 0; i < v.size(); ++i) d += cv.arc_to(v[i], v[(i + 1) % v.size()]);
  return d + " Z";
}

/// Point at fraction s of the side a -> b, ideal ends clamped.
HPoint side_point(const PlanePoint& a, const PlanePoint& b, double s) {
  const Geodesic l = geodesic_through(a, b);
  const Mat2 n = l.normalizer();
  auto log_height = [&](const PlanePoint& p, bool& known) {
    known = !is_ideal(p);
    return known ? std::log(apply_point(n, std::get<HPoint>(p)).y()) : 0.0;
  };
  bool ka = false, kb = false;
  double la = log_height(a, ka), lb = log_height(b, kb);
  auto ideal_height = [&](const PlanePoint& p, double other) {
    return apply_boundary(n, std::get<BoundaryPoint>(p)).is_infinite() ? other + 4.0 : other - 4.0;
  };
  if (!ka && !kb) {
    la = ideal_height(a, 0.0) / 2.0;
    lb = ideal_height(b, 0.0) / 2.0;
  } else if (!ka) {
    la = ideal_height(a, lb);
  } else if (!kb) {
    lb = ideal_height(b, la);
  }
  return apply_point(n.inverse(), HPoint(0.0, std::exp(la + s * (lb - la))));
}

bool same_point(const PlanePoint& x, const PlanePoint& y) {
  return std::abs(to_disk(x) - to_disk(y)) < 1e-6;
}

struct SidePairing {
  int pairing = 0;
  int from = 0, to = 0;
  bool reversed = false;
};

std::vector<SidePairing> side_pairings(const SvgDomain& d) {
  std::vector<SidePairing> out;
  const auto& v = d.polygon.vertices;
  const int n = static_cast<int>(v.size());
  for (int k = 0; k < static_cast<int>(d.pairings.size()); ++k) {
    const Isometry& a = d.pairings[k];
    for (int s = 0; s < n; ++s) {
      const PlanePoint ia = a.apply(v[s]), ib = a.apply(v[(s + 1) % n]);
      for (int t = 0; t < n; ++t) {
        if (t == s) continue;
        const PlanePoint& c = v[t];
        const PlanePoint& e = v[(t + 1) % n];
        if (same_point(ia, c) && same_point(ib, e)) {
          out.push_back({k, s, t, false});
        } else if (same_point(ia, e) && same_point(ib, c)) {
          out.push_back({k, s, t, true});
        }
      }
    }
  }
  return out;
}

std::string arrow(const Canvas& cv, const PlanePoint& a, const PlanePoint& b, const std::string& colour,
                  int pairing) {
  const auto [x0, y0] = cv.screen(PlanePoint(side_point(a, b, 0.42)));
  const auto [x1, y1] = cv.screen(PlanePoint(side_point(a, b, 0.58)));
  std::ostringstream os;
  os << "  <path class=\"arrow\" data-pairing=\"" << pairing << "\" d=\"M " << num(x0) << ' ' << num(y0)
     << " L " << num(x1) << ' ' << num(y1) << "\" stroke=\"" << colour
     << "\" stroke-width=\"2\" fill=\"none\" marker-end=\"url(#arrowhead" << pairing << ")\"/>\n";
  return os.str();
}

/// Unit screen direction of the side from vertex v toward w.
std::pair<double, double> screen_direction(const Canvas& cv, const HPoint& v, const PlanePoint& w) {
  const Complex dir = direction_toward(v, w);
  const HPoint near(v.z() + 1e-5 * v.y() * dir);
  const auto [x0, y0] = cv.screen(PlanePoint(v));
  const auto [x1, y1] = cv.screen(PlanePoint(near));
  const double len = std::hypot(x1 - x0, y1 - y0);
  return {(x1 - x0) / len, (y1 - y0) / len};
}

std::string right_angle_marks(const Canvas& cv, const GeodesicPolygon& p, const std::string& colour) {
  std::ostringstream os;
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto* h = std::get_if<HPoint>(&v[i]);
    if (!h) continue;
    const PlanePoint& prev = v[(i + n - 1) % n];
    const PlanePoint& next = v[(i + 1) % n];
    if (std::abs(interior_angle(prev, *h, next) - kPi / 2) > 1e-6) continue;
    const auto [ux, uy] = screen_direction(cv, *h, prev);
    const auto [wx, wy] = screen_direction(cv, *h, next);
    const auto [x, y] = cv.screen(v[i]);
    const double s = 8.0;
    os << "  <path class=\"right-angle\" d=\"M " << num(x + s * ux) << ' ' << num(y + s * uy) << " L "
       << num(x + s * (ux + wx)) << ' ' << num(y + s * (uy + wy)) << " L " << num(x + s * wx) << ' '
       << num(y + s * wy) << "\" stroke=\"" << colour << "\" stroke-width=\"1\" fill=\"none\"/>\n";
  }
  return os.str();
}

}  // namespace

std::string render_svg(const std::vector<SvgDomain>& domains, const SvgOptions& options) {
  const Canvas cv(options.model, options.size, domains);
  std::ostringstream os;
  const int size = options.size;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\""
     << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";

  int max_pairings = 0;
  for (const auto& d : domains) max_pairings = std::max(max_pairings, static_cast<int>(d.pairings.size()));
  if (options.arrows && max_pairings > 0) {
    os << "  <defs>\n";
    for (int k = 0; k < max_pairings; ++k) {
      os << "    <marker id=\"arrowhead" << k
         << "\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" orient=\"auto\">"
         << "<path d=\"M 0 0 L 8 4 L 0 8 Z\" fill=\"" << kPalette[k % 8] << "\"/></marker>\n";
    }
    os << "  </defs>\n";
  }

  if (options.model == SvgModel::DISK) {
    os << "  <circle class=\"boundary\" cx=\"" << num(size / 2.0) << "\" cy=\"" << num(size / 2.0)
       << "\" r=\"" << num(cv.scale()) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  } else {
    os << "  <line class=\"boundary\" x1=\"0\" y1=\"" << num(size - 10.0) << "\" x2=\"" << size
       << "\" y2=\"" << num(size - 10.0) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

  for (std::size_t di = 0; di < domains.size(); ++di) {
    const SvgDomain& d = domains[di];
    const auto& v = d.polygon.vertices;
    if (v.size() < 2) continue;
    os << "  <g class=\"domain\" id=\"domain" << di << "\">\n";
    os << "  <path class=\"fill\" d=\"" << closed_path(cv, d.polygon) << "\" fill=\"" << d.fill
       << "\" stroke=\"none\"/>\n";
    for (const auto& [poly, colour] : d.regions) {
      if (poly.vertices.size() < 2) continue;
      os << "  <path class=\"region\" d=\"" << closed_path(cv, poly) << "\" fill=\"" << colour
         << "\" stroke=\"none\"/>\n";
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const PlanePoint& a = v[i];
      const PlanePoint& b = v[(i + 1) % v.size()];
      const std::string& colour = i < d.side_colours.size() ? d.side_colours[i] : d.stroke;
      os << "  <path class=\"side\" data-side=\"" << i << "\" d=\"" << cv.move_to(a, b) << cv.arc_to(a, b)
         << "\" stroke=\"" << colour << "\" stroke-width=\"2\" fill=\"none\"/>\n";
    }
    if (d.right_angle_markers) os << right_angle_marks(cv, d.polygon, d.stroke);
    if (options.arrows) {
      const std::size_t n = v.size();
      for (const SidePairing& sp : side_pairings(d)) {
        const std::string colour = kPalette[sp.pairing % 8];
        const PlanePoint& a = v[sp.from];
        const PlanePoint& b = v[(sp.from + 1) % n];
        os << arrow(cv, a, b, colour, sp.pairing);
        const PlanePoint& c = v[sp.to];
        const PlanePoint& e = v[(sp.to + 1) % n];
        os << (sp.reversed ? arrow(cv, e, c, colour, sp.pairing) : arrow(cv, c, e, colour, sp.pairing));
      }
    }
    os << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

SvgDomain svg_domain(const GluedDomain& d) {
  SvgDomain s;
  s.polygon = d.octagon;
  s.pairings.assign(d.pairings.begin(), d.pairings.end());
  s.fill = "none";
  for (int piece : d.side_piece) s.side_colours.push_back(piece == 0 ? "#1f4e79" : "#7a1f1f");
  s.regions = {{d.pent0.polygon, "#cfe3f7"}, {d.pent1.polygon, "#f7d9cf"}};
  return s;
}

SvgDomain svg_domain(const PantsDomain& d) {
  SvgDomain s;
  s.polygon = d.octagon;
  s.pairings = {d.c1, d.c2};
  s.right_angle_markers = true;
  return s;
}

SvgDomain svg_domain(const Pentagon& p) {
  SvgDomain s;
  s.polygon = p.polygon;
  s.pairings = {p.g, p.h};
  return s;
}

std::vector<SvgDomain> svg_domains(const Assembly& a, bool include_tiling) {
  static const char* const fills[] = {"#cfe3f7", "#f7d9cf", "#d9f7cf", "#efd9f7"};
  std::vector<SvgDomain> out;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const PieceDomain& p = a.pieces[i];
    if (include_tiling && i < a.tiling.size()) {
      for (const auto& t : a.tiling[i]) {
        SvgDomain s;
        s.polygon = t;
        s.fill = "none";
        s.stroke = "#bbbbbb";
        out.push_back(s);
      }
    }
    SvgDomain s;
    s.polygon = p.polygon;
    s.pairings = p.generators;
    s.fill = fills[i % 4];
    s.right_angle_markers = p.kind == PieceKind::PANTS;
    out.push_back(s);
  }
  return out;
}

}  // namespace hypcone
