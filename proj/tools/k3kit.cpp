// k3kit: exact lattice arithmetic, orbit reduction, period-domain and
// q-series computations with a stable text/JSON surface.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "k3kit/counting.hpp"
#include "k3kit/eichler.hpp"
#include "k3kit/enumerate.hpp"
#include "k3kit/error.hpp"
#include "k3kit/json_io.hpp"
#include "k3kit/mirror.hpp"
#include "k3kit/orbit.hpp"
#include "k3kit/period.hpp"
#include "k3kit/spectral.hpp"
#include "k3kit/tube.hpp"

using namespace k3kit;

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt_sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(12) << x;
  return os.str();
}

double numeric_tolerance(double fallback) {
  if (const char* env = std::getenv("K3KIT_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      raise("UsageError", "K3KIT_TOL is not a number");
    }
  }
  return fallback;
}

LatticeVector parse_vector_arg(const LatticePtr& lat, const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    raise("MalformedVector", "vector literals are JSON arrays, got '" + text + "'");
  return LatticeVector(lat, coords_from_json(j));
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) raise("UsageError", "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "p q" header then p*q row-major decimals
PeriodPoint parse_point_text(const std::string& text) {
  std::istringstream is(text);
  int p = 0, q = 0;
  if (!(is >> p >> q) || p < 1 || q < 1)
    raise("InvalidPeriodPoint", "expected 'p q' header then p*q entries");
  Eigen::MatrixXd tau(p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      if (!(is >> tau(i, j))) raise("InvalidPeriodPoint", "short matrix data");
  return make_period_point(tau, p, q);
}

std::string point_to_text(const PeriodPoint& pt) {
  std::ostringstream os;
  os << pt.p << " " << pt.q << "\n";
  for (int i = 0; i < pt.p; ++i) {
    for (int j = 0; j < pt.q; ++j) {
      if (j) os << " ";
      os << fmt_double(pt.tau(i, j));
    }
    os << "\n";
  }
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"exact even-lattice computations: roots, orbits, periods, q-series"};
  app.require_subcommand(1);
  int threads = 0;
  unsigned long long seed = 20240501ULL;
  app.add_option("--threads", threads, "worker threads for enumeration (0 = auto)");
  app.add_option("--seed", seed, "seed echoed into seeded subcommands");

  // ---- lattice ----
  auto* c_lat = app.add_subcommand("lattice", "build a lattice and print its data");
  std::string lat_desc;
  bool lat_json = false;
  c_lat->add_option("--descriptor", lat_desc, "e.g. U^3+E8(-1)^2")->required();
  c_lat->add_flag("--json", lat_json);
  c_lat->callback([&] {
    auto lat = Lattice::make(lat_desc);
    if (lat_json) {
      json j;
      j["label"] = lat->label();
      j["rank"] = lat->rank();
      j["signature"] = {lat->signature().first, lat->signature().second};
      j["det"] = rat_to_json(Rat(lat->det()));
      json rows = json::array();
      for (int i = 0; i < lat->rank(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < lat->rank(); ++j2) row.push_back(lat->gram(i, j2));
        rows.push_back(row);
      }
      j["gram"] = rows;
      std::cout << j.dump() << "\n";
      return;
    }
    std::cout << "lattice " << lat->label() << "\n";
    std::cout << "rank " << lat->rank() << "\n";
    std::cout << "signature " << lat->signature().first << " " << lat->signature().second
              << "\n";
    std::cout << "det " << lat->det() << "\n";
    for (int i = 0; i < lat->rank(); ++i) {
      for (int j = 0; j < lat->rank(); ++j) {
        if (j) std::cout << " ";
        std::cout << lat->gram(i, j);
      }
      std::cout << "\n";
    }
  });

  // ---- roots ----
  auto* c_roots = app.add_subcommand("roots", "enumerate vectors of fixed norm");
  std::string roots_lat;
  long long roots_norm = -2;
  std::vector<std::string> roots_pairs;
  long long roots_box = 0;
  std::string roots_format = "text";
  c_roots->add_option("--lattice", roots_lat)->required();
  c_roots->add_option("--norm", roots_norm, "target norm (default -2)");
  c_roots->add_option("--pair", roots_pairs,
                      "constraint VECTOR=VALUE, e.g. \"[1,1,0,0,0,0,0,0,0,0]=1\"");
  c_roots->add_option("--box", roots_box, "coordinate box bound for the brute scan");
  c_roots->add_option("--format", roots_format)->check(CLI::IsMember({"text", "json"}));
  c_roots->callback([&] {
    auto lat = Lattice::make(roots_lat);
    RootConstraint c;
    c.norm = roots_norm;
    for (const auto& s : roots_pairs) {
      auto eq = s.rfind('=');
      if (eq == std::string::npos) raise("UsageError", "--pair needs VECTOR=VALUE");
      LatticeVector w = parse_vector_arg(lat, s.substr(0, eq));
      c.pairings.push_back({w, Int(s.substr(eq + 1))});
    }
    if (roots_box > 0) c.coordinate_bound = roots_box;
    auto out = enumerate_roots(lat, c, threads);
    if (roots_format == "json") {
      json arr = json::array();
      for (const auto& v : out) arr.push_back(coords_to_json(v.coords()));
      json j;
      j["lattice"] = lat->label();
      j["count"] = out.size();
      j["vectors"] = arr;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "count " << out.size() << "\n";
      for (const auto& v : out) std::cout << v.to_string() << "\n";
    }
  });

  // ---- reduce ----
  auto* c_red = app.add_subcommand("reduce", "orbit reduction with certificates");
  std::string red_lat, red_vec, red_mode = "canonical", red_replay;
  long long red_n = 0;
  int red_budget = 10000;
  c_red->add_option("--lattice", red_lat);
  c_red->add_option("--vector", red_vec, "root as a JSON array");
  c_red->add_option("--mode", red_mode)->check(CLI::IsMember({"canonical", "gamma1", "discriminant"}));
  c_red->add_option("--n", red_n, "polarization degree for --mode discriminant");
  c_red->add_option("--budget", red_budget);
  c_red->add_option("--replay", red_replay, "verify a certificate file and re-emit it");
  c_red->callback([&] {
    if (!red_replay.empty()) {
      auto cert = certificate_from_json(json::parse(read_text(red_replay)));
      if (!certificate_replays(cert)) raise("ReplayMismatch", "certificate does not replay");
      std::cout << certificate_to_json(cert).dump() << "\n";
      return;
    }
    if (red_lat.empty() || red_vec.empty())
      raise("UsageError", "reduce needs --lattice and --vector (or --replay)");
    auto lat = Lattice::make(red_lat);
    LatticeVector v = parse_vector_arg(lat, red_vec);
    if (red_mode == "gamma1") {
      std::cout << certificate_to_json(gamma1_reduce(v, red_budget)).dump() << "\n";
    } else if (red_mode == "canonical") {
      std::cout << certificate_to_json(canonicalize_root(v, red_budget)).dump() << "\n";
    } else {
      if (red_n < 1) raise("UsageError", "--mode discriminant needs --n >= 1");
      std::vector<Rat> lc(lat->rank(), Rat(0));
      lc[0] = 1;
      lc[1] = red_n;
      auto res = discriminant_component(v, LatticeVector(lat, lc), red_budget);
      json j = certificate_to_json(res.certificate);
      j["tag"] = res.tag;
      j["lstar_coefficient"] = rat_to_json(res.lstar_coefficient);
      std::cout << j.dump() << "\n";
    }
  });

  // ---- coords ----
  auto* c_coords = app.add_subcommand("coords", "flat coordinates and automorphy data");
  std::string coords_basis, coords_gamma, coords_lattice;
  int coords_p = 0, coords_q = 0;
  c_coords->add_option("--basis", coords_basis, "file ('-' = stdin): p rows of p+q entries")
      ->required();
  c_coords->add_option("--p", coords_p);
  c_coords->add_option("--q", coords_q);
  c_coords->add_option("--lattice", coords_lattice,
                       "lattice for --gamma (frame coordinates)");
  c_coords->add_option("--gamma", coords_gamma, "integer isometry matrix file");
  c_coords->callback([&] {
    std::string text = read_text(coords_basis);
    PeriodPoint pt = [&] {
      if (coords_p > 0 && coords_q > 0) {
        std::istringstream is(text);
        Eigen::MatrixXd b(coords_p, coords_p + coords_q);
        for (int i = 0; i < coords_p; ++i)
          for (int j = 0; j < coords_p + coords_q; ++j)
            if (!(is >> b(i, j))) raise("InvalidPeriodPoint", "short matrix data");
        return normalize_basis(b, coords_p, coords_q);
      }
      return parse_point_text(text);
    }();
    std::cout << point_to_text(pt);
    std::cout << "gram_det " << fmt_double(gram_det(pt)) << "\n";
    if (!coords_gamma.empty()) {
      if (coords_lattice.empty()) raise("UsageError", "--gamma needs --lattice");
      auto lat = Lattice::make(coords_lattice);
      Frame fr = frame_for(lat);
      std::istringstream is(read_text(coords_gamma));
      std::vector<std::vector<Int>> g(lat->rank(), std::vector<Int>(lat->rank()));
      for (int i = 0; i < lat->rank(); ++i)
        for (int j = 0; j < lat->rank(); ++j) {
          long long x;
          if (!(is >> x)) raise("NotIsometry", "short gamma matrix");
          g[i][j] = x;
        }
      auto fac = factor_of_automorphy(fr, g, pt);
      std::cout << "mu_det " << fmt_double(fac.mu.determinant()) << "\n";
      std::cout << point_to_text(fac.image);
      double g0 = gram_det(pt), g1 = gram_det(fac.image);
      double resid = std::abs(g0 - fac.mu.determinant() * fac.mu.determinant() * g1) /
                     std::abs(g0);
      std::cout << "automorphy_residual " << fmt_sci(resid) << "\n";
    }
  });

  // ---- tube ----
  auto* c_tube = app.add_subcommand("tube", "isotropic embedding of a tube point");
  std::string tube_w;
  c_tube->add_option("--w", tube_w, "JSON array of [re, im] rational pairs")->required();
  c_tube->callback([&] {
    json j = json::parse(tube_w, nullptr, false);
    if (j.is_discarded() || !j.is_array()) raise("UsageError", "--w must be a JSON array");
    TubePoint w;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) raise("UsageError", "--w entries are [re, im]");
      w.w.push_back(RatC(rat_from_json(e[0]), rat_from_json(e[1])));
    }
    auto emb = tube_embed(w);
    json out;
    json psi = json::array();
    for (const auto& z : emb.psi)
      psi.push_back({rat_to_json(z.re), rat_to_json(z.im)});
    out["psi"] = psi;
    out["isotropy"] = {rat_to_json(emb.isotropy.re), rat_to_json(emb.isotropy.im)};
    out["pairing_with_conjugate"] = rat_to_json(emb.pairing_with_conjugate);
    std::cout << out.dump() << "\n";
  });

  // ---- mirror ----
  auto* c_mir = app.add_subcommand("mirror", "lattice-level mirror operations");
  std::string mir_data, mir_bfield, mir_omega;
  c_mir->add_option("--data", mir_data, "MarkedMSurfaceData JSON file ('-' = stdin)");
  c_mir->add_option("--bfield", mir_bfield, "B-field JSON {re:[...], im:[...]}; prints V");
  c_mir->add_option("--omega", mir_omega,
                    "period vector JSON {re:[...], im:[...]} for the 4-plane");
  c_mir->callback([&] {
    if (!mir_bfield.empty()) {
      json j = json::parse(read_text(mir_bfield));
      BField b;
      b.lattice = Lattice::make("U^3+E8(-1)^2");
      b.re = coords_from_json(j.at("re"));
      b.im = coords_from_json(j.at("im"));
      if (!mir_omega.empty()) {
        json jo = json::parse(read_text(mir_omega));
        auto re = coords_from_json(jo.at("re")), im = coords_from_json(jo.at("im"));
        std::vector<RatC> omega(re.size());
        for (size_t i = 0; i < re.size(); ++i) omega[i] = RatC(re[i], im[i]);
        auto fp = four_plane(omega, b);
        json out;
        json gram = json::array();
        for (const auto& row : fp.gram) gram.push_back(coords_to_json(row));
        json rows = json::array();
        for (const auto& row : fp.rows) rows.push_back(coords_to_json(row));
        out["gram"] = gram;
        out["rows"] = rows;
        std::cout << out.dump() << "\n";
        return;
      }
      auto v = extend_bfield(b);
      json arr = json::array();
      for (const auto& z : v.v) arr.push_back({rat_to_json(z.re), rat_to_json(z.im)});
      json out;
      out["extended_lattice"] = v.extended->label();
      out["v"] = arr;
      std::cout << out.dump() << "\n";
      return;
    }
    if (mir_data.empty()) raise("UsageError", "mirror needs --data or --bfield");
    auto d = msurface_from_json(json::parse(read_text(mir_data)));
    auto swapped = mirror_swap(d);
    json out = msurface_to_json(swapped);
    out["picard_rank"] = rank_of_blocks(swapped.ambient, swapped.picard);
    std::cout << out.dump() << "\n";
  });

  // ---- count ----
  auto* c_count = app.add_subcommand("count", "root counts graded by polarization degree");
  std::string count_lat, count_l, count_strategy = "cross", count_format = "csv";
  int count_max = 10;
  c_count->add_option("--lattice", count_lat)->required();
  c_count->add_option("--l", count_l, "polarization as a JSON array")->required();
  c_count->add_option("--max-n", count_max);
  c_count->add_option("--strategy", count_strategy)
      ->check(CLI::IsMember({"enum", "theta", "cross"}));
  c_count->add_option("--format", count_format)->check(CLI::IsMember({"csv", "json"}));
  c_count->callback([&] {
    auto lat = Lattice::make(count_lat);
    LatticeVector l = parse_vector_arg(lat, count_l);
    CountOptions opts;
    opts.threads = threads;
    opts.strategy = count_strategy == "enum"
                        ? CountStrategy::Enumeration
                        : (count_strategy == "theta" ? CountStrategy::Theta
                                                     : CountStrategy::CrossChecked);
    auto profile = count_roots_with_degree(lat, l, count_max, opts);
    if (count_format == "json") {
      std::cout << profile_to_json(profile).dump() << "\n";
      return;
    }
    auto lambert = log_derivative_series(profile);
    std::cout << "n,a_n,c_n\n";
    for (int n = 1; n <= count_max; ++n)
      std::cout << n << "," << profile.a[n - 1] << "," << rat_to_string(lambert.coeff(n))
                << "\n";
  });

  // ---- qseries ----
  auto* c_q = app.add_subcommand("qseries", "exact q-series expansions");
  std::string q_mode = "euler", q_profile, q_weyl = "0";
  int q_order = 40;
  c_q->add_option("--mode", q_mode)->check(CLI::IsMember({"euler", "product", "logderiv"}));
  c_q->add_option("--order", q_order);
  c_q->add_option("--profile", q_profile, "CountProfile JSON file for product/logderiv");
  c_q->add_option("--weyl", q_weyl, "Weyl exponent p/q for --mode product");
  c_q->callback([&] {
    auto emit = [](const PowerSeries& s) {
      for (int k = 0; k <= s.order(); ++k) {
        if (s.coeff(k) == 0) continue;
        std::cout << rat_to_string(s.offset() + k) << "," << rat_to_string(s.coeff(k))
                  << "\n";
      }
    };
    if (q_mode == "euler") {
      emit(euler_product(q_order));
      return;
    }
    if (q_profile.empty()) raise("UsageError", "--profile required for " + q_mode);
    json j = json::parse(read_text(q_profile));
    CountProfile p;
    p.lattice = Lattice::make(j.at("lattice").get<std::string>());
    p.l = LatticeVector(p.lattice, coords_from_json(j.at("l")));
    for (const auto& e : j.at("a")) {
      Rat r = rat_from_json(e);
      p.a.push_back(rat_num(r));
    }
    int order = std::min<int>(q_order, static_cast<int>(p.a.size()));
    if (q_mode == "product") emit(product_expansion(p, parse_rat(q_weyl), order));
    else emit(log_derivative_series(p, order));
  });

  // ---- etadet ----
  auto* c_eta = app.add_subcommand("etadet", "Dedekind eta and the torus determinant");
  std::string eta_tau = "i";
  double eta_tol = 1e-6;
  int eta_terms = 0;
  bool eta_json = false, eta_only = false;
  c_eta->add_option("--tau", eta_tau, "complex modulus, e.g. 0.5+2i");
  c_eta->add_option("--tol", eta_tol);
  c_eta->add_option("--terms", eta_terms, "eta truncation override");
  c_eta->add_flag("--json", eta_json);
  c_eta->add_flag("--eta-only", eta_only);
  c_eta->callback([&] {
    double tol = numeric_tolerance(eta_tol);
    // parse a+bi
    double re = 0, im = 0;
    {
      std::string s = eta_tau;
      if (s == "i") { im = 1; }
      else {
        auto ipos = s.find('i');
        if (ipos == std::string::npos) raise("UsageError", "--tau must be a+bi");
        auto split = s.find_last_of("+-", ipos - 1);
        if (split == std::string::npos || split == 0) {
          im = std::stod(s.substr(0, ipos));
        } else {
          re = std::stod(s.substr(0, split));
          std::string imtext = s.substr(split, ipos - split);
          im = imtext == "+" ? 1 : (imtext == "-" ? -1 : std::stod(imtext));
        }
      }
    }
    TorusModulus m{{re, im}};
    if (eta_only) {
      auto eta = eta_value(m, eta_terms, tol);
      if (eta_json) {
        json j;
        j["eta"] = {fmt_double(eta.value.real()), fmt_double(eta.value.imag())};
        j["terms"] = eta.terms;
        j["tail_bound"] = fmt_sci(eta.tail_bound);
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "eta " << fmt_double(eta.value.real()) << " "
                  << fmt_double(eta.value.imag()) << "\n";
        std::cout << "terms " << eta.terms << "\n";
        std::cout << "tail_bound " << fmt_sci(eta.tail_bound) << "\n";
      }
      return;
    }
    auto rep = torus_det(m, tol);
    if (eta_json) {
      json j;
      j["det"] = fmt_double(rep.det_value);
      j["eta"] = {fmt_double(rep.eta.real()), fmt_double(rep.eta.imag())};
      j["closed_form"] = fmt_double(rep.closed_form);
      j["identity_residual"] = fmt_sci(rep.identity_residual);
      j["terms_used"] = rep.terms_used;
      j["target_precision"] = fmt_sci(rep.target_precision);
      std::cout << j.dump() << "\n";
      return;
    }
    std::cout << "det_value          " << fmt_double(rep.det_value) << "\n";
    std::cout << "closed_form        " << fmt_double(rep.closed_form) << "\n";
    std::cout << "identity_residual  " << fmt_sci(rep.identity_residual) << "\n";
    std::cout << "eta                " << fmt_double(rep.eta.real()) << " "
              << fmt_double(rep.eta.imag()) << "\n";
    std::cout << "terms_used         " << rep.terms_used << "\n";
    std::cout << "target_precision   " << fmt_sci(rep.target_precision) << "\n";
  });

  // ---- assemble ----
  auto* c_asm = app.add_subcommand("assemble", "determinant assembly from parts");
  std::string asm_point, asm_phi = "zero";
  double asm_const = 1.0;
  c_asm->add_option("--point", asm_point, "period point file ('-' = stdin)")->required();
  c_asm->add_option("--phi", asm_phi, "zero | const:<re>,<im>");
  c_asm->add_option("--constant", asm_const, "overall multiplicative constant");
  c_asm->callback([&] {
    PeriodPoint pt = parse_point_text(read_text(asm_point));
    std::function<std::complex<double>(const PeriodPoint&)> phi;
    if (asm_phi == "zero") {
      phi = [](const PeriodPoint&) { return std::complex<double>(0, 0); };
    } else if (asm_phi.rfind("const:", 0) == 0) {
      auto rest = asm_phi.substr(6);
      auto comma = rest.find(',');
      if (comma == std::string::npos) raise("UsageError", "--phi const:<re>,<im>");
      std::complex<double> c(std::stod(rest.substr(0, comma)),
                             std::stod(rest.substr(comma + 1)));
      phi = [c](const PeriodPoint&) { return c; };
    } else {
      raise("UsageError", "unknown --phi '" + asm_phi + "'");
    }
    std::cout << "det " << fmt_double(k3_det_assembly(pt, phi, asm_const)) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "ERROR " << e.code() << ": "
              << std::string(e.what()).substr(e.code().size() + 2) << "\n";
    return e.code() == "UsageError" ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "ERROR Internal: " << e.what() << "\n";
    return 3;
  }
}
