// Acceptance suite: one line per criterion, PASS/FAIL, summary exit code.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "k3kit/counting.hpp"
#include "k3kit/enumerate.hpp"
#include "k3kit/json_io.hpp"
#include "k3kit/orbit.hpp"
#include "k3kit/period.hpp"
#include "k3kit/spectral.hpp"
#include "k3kit/tube.hpp"

using namespace k3kit;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

LatticeVector random_root(const LatticePtr& lat, std::mt19937_64& rng, int moves,
                          long long coord_cap = 1000000) {
  auto us = lat->u_blocks();
  const auto& first_u = lat->summands()[us.front()];
  const auto& last_u = lat->summands()[us.back()];
  while (true) {
    std::vector<Rat> c(lat->rank(), Rat(0));
    c[first_u.offset] = 1;
    c[first_u.offset + 1] = -1;
    LatticeVector v(lat, c);
    for (int i = 0; i < moves; ++i) {
      std::vector<Rat> mu(lat->rank(), Rat(0));
      for (int j = 0; j < lat->rank(); ++j) {
        if (j == last_u.offset || j == last_u.offset + 1) continue;
        mu[j] = static_cast<int>(rng() % 3) - 1;
      }
      LatticeVector m(lat, mu);
      std::vector<Rat> d(mu);
      d[last_u.offset] = 1;
      d[last_u.offset + 1] = (-norm_value(m) - 2) / 2;
      v = reflect(LatticeVector(lat, d), v);
    }
    bool small = true;
    for (int j = 0; j < lat->rank(); ++j)
      if (v[j] > coord_cap || v[j] < -coord_cap) small = false;
    if (small) return v;
  }
}

std::vector<std::vector<Int>> random_isometry(const LatticePtr& lat, std::mt19937_64& rng,
                                              int moves) {
  IsometryWord w(lat);
  auto us = lat->u_blocks();
  for (int i = 0; i < moves; ++i) {
    switch (rng() % 3) {
      case 0: {
        int u = us[rng() % us.size()];
        const auto& sm = lat->summands()[u];
        Reflection r;
        r.root.assign(lat->rank(), 0);
        r.root[sm.offset] = 1;
        r.root[sm.offset + 1] = -1;
        w.push(r);
        break;
      }
      case 1: {
        int u = us[rng() % us.size()];
        const auto& sm = lat->summands()[u];
        std::vector<Rat> lam(lat->rank(), Rat(0));
        for (int j = 0; j < lat->rank(); ++j) {
          if (j >= sm.offset && j < sm.offset + 2) continue;
          lam[j] = static_cast<int>(rng() % 3) - 1;
        }
        w.push(make_transvection(lat, u, rng() % 2 ? 1 : 2, LatticeVector(lat, lam)));
        break;
      }
      default:
        w.push(BlockAutomorphism{"flip_u:" + std::to_string(us[rng() % us.size()])});
    }
  }
  return word_matrix(w);
}

struct Harness {
  int passed = 0, failed = 0;
  unsigned long long seed = 20240501ULL;

  void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    std::cout.flush();
    (ok ? passed : failed) += 1;
  }

  void run(int idx, const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    report(idx, name, ok, detail);
  }
};

std::string run_cli_capture(const std::string& args, int* exit_code) {
  std::string out_path = std::string(std::tmpnam(nullptr)) + ".acc.out";
  std::string cmd = std::string(K3KIT_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream os;
  os << in.rdbuf();
  std::remove(out_path.c_str());
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  Harness h;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) h.seed = std::stoull(argv[++i]);
  }
  std::cout << "k3kit acceptance suite (seed " << h.seed << ")\n";

  // 1. Root census
  h.run(1, "root census: 240 / 2 / 2", [&](std::string& detail) {
    auto t0 = Clock::now();
    auto e8 = Lattice::make("E8(-1)");
    auto e8_roots = enumerate_roots(e8, RootConstraint{});
    double dt = seconds_since(t0);
    auto u_roots = enumerate_roots(Lattice::make("U"), RootConstraint{});
    auto m2_roots = enumerate_roots(Lattice::make("<-2>"), RootConstraint{});
    std::ostringstream os;
    os << "E8 roots " << e8_roots.size() << " in " << dt << " s";
    detail = os.str();
    return e8_roots.size() == 240 && dt < 1.0 && u_roots.size() == 2 && m2_roots.size() == 2;
  });

  // 2. Transitivity with replaying certificates
  h.run(2, "orbit transitivity to f1-f2", [&](std::string& detail) {
    std::mt19937_64 rng(h.seed);
    struct Plan { const char* desc; int count; int moves; };
    std::vector<Plan> plans = {{"U^2+E8(-1)", 1000, 5}, {"U^3+E8(-1)^2", 200, 6}};
    int done = 0;
    for (const auto& plan : plans) {
      auto lat = Lattice::make(plan.desc);
      std::vector<Rat> cc(lat->rank(), Rat(0));
      cc[0] = 1; cc[1] = -1;
      LatticeVector canon(lat, cc);
      for (int rep = 0; rep < plan.count; ++rep) {
        LatticeVector r = random_root(lat, rng, plan.moves);
        auto cert = canonicalize_root(r, 10000);
        if (!(cert.output == canon) || !certificate_replays(cert)) {
          detail = "failure at " + std::string(plan.desc) + " rep " + std::to_string(rep);
          return false;
        }
        ++done;
      }
    }
    detail = std::to_string(done) + " roots canonicalized, zero budget failures";
    return done == 1200;
  });

  // 3. Isometry gate, corrected vs paper-literal transvection
  h.run(3, "isometry gate for emitted generators", [&](std::string& detail) {
    auto lat = Lattice::make("U^2+E8(-1)");
    std::mt19937_64 rng(h.seed + 1);
    // collect generators from real reductions
    std::vector<Generator> gens;
    for (int rep = 0; rep < 25; ++rep) {
      auto cert = canonicalize_root(random_root(lat, rng, 5), 10000);
      for (const auto& g : cert.word.generators()) gens.push_back(g);
    }
    if (gens.empty()) { detail = "no generators emitted"; return false; }
    for (const auto& g : gens)
      if (!generator_is_isometry(g, lat)) { detail = "emitted generator broke the form"; return false; }
    // 1000 random pairs through a full word
    auto cert = canonicalize_root(random_root(lat, rng, 5), 10000);
    for (int t = 0; t < 1000; ++t) {
      std::vector<Rat> a(lat->rank()), b(lat->rank());
      for (auto& x : a) x = static_cast<int>(rng() % 21) - 10;
      for (auto& x : b) x = static_cast<int>(rng() % 21) - 10;
      LatticeVector va(lat, a), vb(lat, b);
      if (pair_value(cert.word.apply(va), cert.word.apply(vb)) != pair_value(va, vb)) {
        detail = "word broke a pairing";
        return false;
      }
    }
    // paper-literal transvection (v + 2m lambda, m, n - <v,lambda> - m<lambda,lambda>)
    auto us = lat->u_blocks();
    const auto& sm = lat->summands()[us.back()];
    std::vector<Rat> lamc(lat->rank(), Rat(0));
    lamc[0] = 1; lamc[2] = 1;
    LatticeVector lam(lat, lamc);
    auto literal = [&](const LatticeVector& v) {
      Rat m = v[sm.offset];
      LatticeVector out = v + lam.scaled(2 * m);
      std::vector<Rat> c(out.coords());
      c[sm.offset + 1] = v[sm.offset + 1] - pair_value(v, lam) - m * norm_value(lam);
      c[sm.offset] = m;
      return LatticeVector(lat, c);
    };
    bool literal_fails = false;
    for (int t = 0; t < 100 && !literal_fails; ++t) {
      std::vector<Rat> a(lat->rank());
      for (auto& x : a) x = static_cast<int>(rng() % 9) - 4;
      LatticeVector v(lat, a);
      if (norm_value(literal(v)) != norm_value(v)) literal_fails = true;
    }
    // corrected form passes by the generator check above
    Generator corrected = make_transvection(lat, us.back(), 2, [&] {
      std::vector<Rat> c(lamc);
      c[sm.offset] = 0; c[sm.offset + 1] = 0;
      return LatticeVector(lat, c);
    }());
    bool corrected_ok = generator_is_isometry(corrected, lat);
    detail = "corrected form preserves the form; paper-literal does not";
    return literal_fails && corrected_ok;
  });

  // 4. Weight -2 automorphy
  h.run(4, "weight -2 automorphy of det<g_i,g_j>", [&](std::string& detail) {
    auto lat = Lattice::make("U^3+E8(-1)^2");
    Frame fr = frame_for(lat);
    std::mt19937_64 rng(h.seed + 2);
    std::uniform_real_distribution<double> dist(-0.12, 0.12);
    double worst = 0;
    for (int rep = 0; rep < 100; ++rep) {
      auto gamma = random_isometry(lat, rng, 4);
      Eigen::MatrixXd tau(3, 19);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 19; ++j) tau(i, j) = dist(rng);
      PeriodPoint pt = make_period_point(tau, 3, 19);
      auto fac = factor_of_automorphy(fr, gamma, pt);
      double mu2 = fac.mu.determinant() * fac.mu.determinant();
      double resid =
          std::abs(gram_det(pt) - mu2 * gram_det(fac.image)) / std::abs(gram_det(fac.image));
      worst = std::max(worst, resid);
      if (!(resid < 1e-9)) {
        detail = "residual " + std::to_string(resid);
        return false;
      }
    }
    std::ostringstream os;
    os << "worst residual " << worst;
    detail = os.str();
    return true;
  });

  // 5. Tube isotropy
  h.run(5, "exact tube isotropy on 100 rational points", [&](std::string& detail) {
    std::mt19937_64 rng(h.seed + 3);
    int done = 0;
    while (done < 100) {
      int p = 2 + static_cast<int>(rng() % 5);
      TubePoint w;
      std::vector<Rat> y(p);
      for (int i = 0; i < p; ++i) {
        Rat re(static_cast<int>(rng() % 11) - 5, 1 + static_cast<int>(rng() % 6));
        Rat im(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 4));
        if (i == 0) im = Rat(5) + (im < 0 ? -im : im);
        w.w.push_back(RatC(re, im));
        y[i] = im;
      }
      if (!in_positive_cone(y)) continue;
      auto emb = tube_embed(w);
      if (!(emb.isotropy.re == 0 && emb.isotropy.im == 0)) {
        detail = "nonzero <Psi,Psi>";
        return false;
      }
      if (!(emb.pairing_with_conjugate > 0)) {
        detail = "<Psi, conj Psi> not positive";
        return false;
      }
      ++done;
    }
    detail = "100 points, exact zero";
    return true;
  });

  // 6. Counting identity on both lattices
  h.run(6, "counting identity to order 200, strategies agree to n = 10",
        [&](std::string& detail) {
    auto t0 = Clock::now();
    for (const char* desc : {"U+E8(-1)", "U+E8(-1)^2"}) {
      auto lat = Lattice::make(desc);
      std::vector<Rat> lc(lat->rank(), Rat(0));
      lc[0] = 1; lc[1] = 1;
      LatticeVector l(lat, lc);

      CountOptions theta;
      theta.strategy = CountStrategy::Theta;
      theta.collect_walls = false;
      auto profile = count_roots_with_degree(lat, l, 200, theta);
      auto prod = product_expansion(profile, Rat(0));
      if (!prod.integral()) { detail = "product not integral"; return false; }
      auto lhs = prod.minus_q_dlog();
      auto rhs = log_derivative_series(profile);
      for (int m = 0; m <= 200; ++m)
        if (lhs.coeff(m) != rhs.coeff(m)) {
          detail = std::string(desc) + ": identity failed at order " + std::to_string(m);
          return false;
        }

      CountOptions enumo;
      enumo.strategy = CountStrategy::Enumeration;
      enumo.collect_walls = false;
      auto p_enum = count_roots_with_degree(lat, l, 10, enumo);
      for (int n = 1; n <= 10; ++n)
        if (p_enum.a[n - 1] != profile.a[n - 1]) {
          detail = std::string(desc) + ": strategies disagree at n = " + std::to_string(n);
          return false;
        }
    }
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "both lattices in " << dt << " s";
    detail = os.str();
    return dt < 60.0;
  });

  // 7. Eta properties
  h.run(7, "pentagonal support and sigma_1 log-derivative", [&](std::string& detail) {
    auto p = euler_product(500);
    for (int m = 1; m <= 500; ++m) {
      bool pent = is_generalized_pentagonal(m);
      const Rat& c = p.coeff(m);
      if (pent && !(c == 1 || c == -1)) { detail = "bad pentagonal coefficient"; return false; }
      if (!pent && c != 0) { detail = "support off pentagonal index " + std::to_string(m); return false; }
    }
    PowerSeries plain(Rat(0), euler_product(100).coeffs());
    auto ld = plain.minus_q_dlog();
    for (int m = 1; m <= 100; ++m) {
      // divisor-enumeration oracle
      Int s = 0;
      for (int d = 1; d <= m; ++d)
        if (m % d == 0) s += d;
      if (ld.coeff(m) != Rat(s)) { detail = "sigma_1 mismatch at " + std::to_string(m); return false; }
    }
    detail = "order 500 support, sigma_1 to 100";
    return true;
  });

  // 8. Kronecker limit formula
  h.run(8, "torus determinant vs (Im tau)^2 |eta|^4", [&](std::string& detail) {
    struct Case { double re, im; };
    std::vector<Case> cases = {{0, 1}, {0, 2}, {0.5, 1}, {1.0 / 3.0, 2}};
    double worst = 0, slowest = 0;
    for (const auto& c : cases) {
      auto t0 = Clock::now();
      auto rep = torus_det({{c.re, c.im}}, 1e-8);
      double dt = seconds_since(t0);
      slowest = std::max(slowest, dt);
      worst = std::max(worst, rep.identity_residual);
      if (!(rep.identity_residual < 1e-6) || dt >= 10.0) {
        std::ostringstream os;
        os << "tau = " << c.re << "+" << c.im << "i residual " << rep.identity_residual
           << " in " << dt << " s";
        detail = os.str();
        return false;
      }
    }
    std::ostringstream os;
    os << "worst residual " << worst << ", slowest " << slowest << " s";
    detail = os.str();
    return true;
  });

  // 9. Mirror rank law
  h.run(9, "mirror swap rank law and double swap", [&](std::string& detail) {
    auto k3 = Lattice::make("U^3+E8(-1)^2");
    struct Case { std::vector<int> pic, trans; int u; };
    std::vector<Case> cases = {
        {{0}, {1, 2, 3, 4}, 1}, {{0, 3}, {1, 2, 4}, 1}, {{0, 3, 4}, {1, 2}, 1}};
    for (const auto& c : cases) {
      MarkedMSurfaceData d;
      d.ambient = k3;
      d.picard = c.pic;
      d.transcendental = c.trans;
      d.u_choice = c.u;
      int rho = rank_of_blocks(k3, d.picard);
      auto m = mirror_swap(d);
      if (rank_of_blocks(k3, m.picard) != 20 - rho) {
        detail = "rank law failed at rho = " + std::to_string(rho);
        return false;
      }
      auto back = mirror_swap(m);
      auto sorted_trans = c.trans;
      std::sort(sorted_trans.begin(), sorted_trans.end());
      if (back.picard != c.pic || back.transcendental != sorted_trans) {
        detail = "double swap did not restore the partition";
        return false;
      }
      // Gram multiset restored trivially since the summand indices are
    }
    detail = "rho in {2, 10, 18}";
    return true;
  });

  // 10. Determinant assembly + restriction consistency
  h.run(10, "det assembly and sublattice restriction", [&](std::string& detail) {
    Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(3, 19);
    tau(0, 2) = 0.2; tau(2, 7) = -0.15;
    auto pt = make_period_point(tau, 3, 19);
    auto zero = [](const PeriodPoint&) { return std::complex<double>(0, 0); };
    if (k3_det_assembly(pt, zero) != gram_det(pt)) {
      detail = "phi = 0 case not exact";
      return false;
    }

    // restriction: S1 = U+E8(-1) counts vs S2 = U+E8(-1)^2 restricted to the
    // sublattice by pairing constraints, evaluated on the tube line q=e^{-2pi t}
    auto s1 = Lattice::make("U+E8(-1)");
    auto s2 = Lattice::make("U+E8(-1)^2");
    std::vector<Rat> l1c(s1->rank(), Rat(0));
    l1c[0] = 1; l1c[1] = 1;
    LatticeVector l1(s1, l1c);
    std::vector<Rat> l2c(s2->rank(), Rat(0));
    l2c[0] = 1; l2c[1] = 1;
    LatticeVector l2(s2, l2c);
    CountOptions opts;
    opts.strategy = CountStrategy::Theta;
    opts.collect_walls = false;
    auto p1 = count_roots_with_degree(s1, l1, 8, opts);
    CountProfile p2 = p1;
    p2.a.clear();
    for (int n = 1; n <= 8; ++n) {
      RootConstraint c;
      c.pairings.push_back({l2, Int(n)});
      for (int i = 10; i < 18; ++i)
        c.pairings.push_back({LatticeVector::basis(s2, i), Int(0)});
      p2.a.push_back(Int(enumerate_roots(s2, c).size()));
    }
    auto sa = log_derivative_series(p1);
    auto sb = log_derivative_series(p2);
    auto phi_of = [&](const PowerSeries& s) {
      return [&s](const PeriodPoint&) {
        double q = std::exp(-2.0 * 3.14159265358979323846 * 0.75);
        double acc = 0, qk = 1;
        for (int k = 1; k <= s.order(); ++k) {
          qk *= q;
          acc += static_cast<double>(s.coeff(k)) * qk;
        }
        return std::complex<double>(acc, 0);
      };
    };
    double va = k3_det_assembly(pt, phi_of(sa));
    double vb = k3_det_assembly(pt, phi_of(sb));
    if (std::abs(va - vb) / std::abs(vb) >= 1e-9) {
      detail = "restricted evaluation mismatch";
      return false;
    }
    detail = "phi = 0 exact; restriction consistent at 1e-9";
    return true;
  });

  // 11. CLI byte determinism
  h.run(11, "CLI byte determinism under fixed --seed", [&](std::string& detail) {
    std::vector<std::string> cmds = {
        "--seed 7 roots --lattice \"E8(-1)\" --norm -2",
        "--seed 7 count --lattice \"U+E8(-1)\" --l \"[1,1,0,0,0,0,0,0,0,0]\" --max-n 8",
        "--seed 7 qseries --mode euler --order 100",
        "--seed 7 etadet --tau 0.5+1i --tol 1e-7",
        "--seed 7 reduce --lattice \"U^3+E8(-1)^2\" --vector "
        "\"[0,0,0,0,1,-1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]\"",
    };
    for (const auto& c : cmds) {
      int code_a = 0, code_b = 0;
      std::string a = run_cli_capture(c, &code_a);
      std::string b = run_cli_capture(c, &code_b);
      if (code_a != 0 || code_b != 0 || a != b || a.empty()) {
        detail = "non-deterministic or failing: " + c;
        return false;
      }
    }
    detail = std::to_string(5) + " commands, identical bytes";
    return true;
  });

  std::cout << h.passed << " passed, " << h.failed << " failed\n";
  return h.failed == 0 ? 0 : 1;
}
