#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "wronsos/json.hpp"
#include "wronsos/parse.hpp"

using namespace wronsos;
using Json = nlohmann::json;

namespace {

// "-" reads stdin, "@path" reads a file, anything else is the text itself.
std::string source_text(const std::string& arg) {
  if (arg == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  if (arg.size() > 1 && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorKind::Precondition, "cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

// All polynomials of one command share the largest variable count.
std::vector<Polynomial> parse_all(const std::vector<std::string>& args) {
  std::vector<std::string> texts;
  std::size_t n = 0;
  for (const auto& a : args) {
    texts.push_back(source_text(a));
    n = std::max(n, parse_polynomial(texts.back()).nvars());
  }
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, n));
  return out;
}

struct Grids {
  RealGrid real;
  HalfPlaneGrid half;

  void attach(CLI::App* cmd) {
    cmd->add_option("--real-lo", real.lo, "lower end of the x2..xd lattice");
    cmd->add_option("--real-hi", real.hi, "upper end of the x2..xd lattice");
    cmd->add_option("--real-step", real.step, "x2..xd lattice step");
    cmd->add_option("--x-lo", half.x_lo, "lower end of Re z1");
    cmd->add_option("--x-hi", half.x_hi, "upper end of Re z1");
    cmd->add_option("--x-step", half.x_step, "Re z1 step");
    cmd->add_option("--y", half.ys, "Im z1 values")->expected(1, -1);
  }
};

struct Result {
  Json body;
  int code = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wronskian SOS certificates, pencil realizations and Herglotz scans"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("--output", output, "write the JSON document here instead of stdout");

  int k = 1;
  auto* wr = app.add_subcommand("wronskian", "W_k[q, p] = q dp/dzk - p dq/dzk");
  std::string wq, wp;
  wr->add_option("q", wq)->required();
  wr->add_option("p", wp)->required();
  wr->add_option("k", k, "1-based variable index")->required();

  std::vector<std::string> pq;
  auto* pol = app.add_subcommand("polarize", "pencil with q(zeta) p(z) = Psi(zeta) A(z) Psi(z)^T");
  pol->add_option("polys", pq, "q p")->required()->expected(2);

  int n = 0;
  std::vector<int> caps;
  auto* kb = app.add_subcommand("kernel-basis", "sparse kernel of S -> Psi S Psi^T");
  kb->add_option("--n", n, "total degree cap")->required();
  kb->add_option("--caps", caps, "per-variable caps")->required()->expected(1, -1);

  std::string f;
  auto* sos = app.add_subcommand("sos", "exact SOS certificate or numeric infeasibility evidence");
  sos->add_option("F", f)->required();

  std::vector<std::string> candidates, factors;
  bool minimize = false;
  auto* artin = app.add_subcommand("artin", "search s with s^2 F SOS");
  artin->add_option("F", f)->required();
  artin->add_option("--candidates", candidates, "denominators to try in order")->expected(1, -1);
  artin->add_flag("--minimize", minimize, "drop factors of s while s^2 F still certifies");
  artin->add_option("--factors", factors, "factorization of s as POLY or POLY:MULT, used by --minimize")
      ->expected(1, -1);

  std::vector<std::string> pqs;
  auto* real = app.add_subcommand("realize", "pencil realization of p/q with A_1 PSD");
  real->add_option("polys", pqs, "p q s")->required()->expected(3);

  Grids scan_grids, cross_grids;
  std::vector<std::string> scan_pq, cross_pq, cross_candidates;
  auto* scan = app.add_subcommand("herglotz-scan", "sample Im p/q with Im z1 > 0 and real x2..xd");
  scan->add_option("polys", scan_pq, "p q")->required()->expected(2);
  scan_grids.attach(scan);
  auto* cross = app.add_subcommand("crosscheck", "compare the SOS test of W_1[q, p] with the slice scan");
  cross->add_option("polys", cross_pq, "p q")->required()->expected(2);
  cross->add_option("--candidates", cross_candidates, "Artin denominators, reported only")->expected(1, -1);
  cross_grids.attach(cross);

  // There are no short options, so "-(z1+z2)" or "-z1" is a polynomial. A
  // leading space hides the dash from CLI11; the grammar ignores it.
  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) {
    std::string a = argv[i];
    if (a.size() > 1 && a[0] == '-' && a[1] != '-' && !std::isdigit(static_cast<unsigned char>(a[1])) && a[1] != '.') {
      a.insert(a.begin(), ' ');
    }
    args.push_back(std::move(a));
  }
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"schema", io::kSchema}, {"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump(2)
              << "\n";
    return 2;
  }

  Result res;
  std::string command;
  try {
    if (*wr) {
      command = "wronskian";
      const auto ps = parse_all({wq, wp});
      if (k < 1 || static_cast<std::size_t>(k) > std::max<std::size_t>(ps[0].nvars(), 1)) {
        throw Error(ErrorKind::Structural, "k must be between 1 and the number of variables");
      }
      const auto [q0, p0] = std::pair{ps[0].nvars() == 0 ? ps[0].lifted(1) : ps[0],
                                      ps[1].nvars() == 0 ? ps[1].lifted(1) : ps[1]};
      res.body = {{"q", to_string(q0)}, {"p", to_string(p0)}, {"k", k},
                  {"polynomial", io::polynomial(wronskian(q0, p0, k - 1))}};
    } else if (*pol) {
      command = "polarize";
      const auto ps = parse_all(pq);
      const auto pencil = product_polarization(ps[0], ps[1]);
      const auto check = verify_pencil(pencil, ps[0], ps[1]);
      res.body = {{"q", to_string(ps[0])}, {"p", to_string(ps[1])}, {"pencil", io::pencil(pencil)},
                  {"verified", check.ok}, {"failure", check.failure}};
      if (!check.ok) throw Error(ErrorKind::InternalConsistency, "pencil identity failed: " + check.failure);
    } else if (*kb) {
      command = "kernel-basis";
      const auto basis = build_basis(n, caps);
      res.body = {{"kernel", io::kernel(basis, kernel_basis(basis))}};
    } else if (*sos) {
      command = "sos";
      const Polynomial F = parse_all({f})[0];
      const auto out = sos_certify(F);
      res.body = {{"F", to_string(F)}, {"certified", out.certified()}};
      if (out.certified()) {
        res.body["certificate"] = io::certificate(*out.certificate);
      } else {
        res.body["evidence"] = io::evidence(*out.evidence);
        res.code = 1;
      }
    } else if (*artin) {
      command = "artin";
      std::vector<std::string> texts{f};
      texts.insert(texts.end(), candidates.begin(), candidates.end());
      std::vector<int> mult;
      for (const auto& fac : factors) {
        const auto colon = fac.rfind(':');
        texts.push_back(colon == std::string::npos ? fac : fac.substr(0, colon));
        mult.push_back(colon == std::string::npos ? 1 : std::stoi(fac.substr(colon + 1)));
      }
      const auto ps = parse_all(texts);
      const Polynomial& F = ps[0];
      std::vector<Polynomial> cands(ps.begin() + 1, ps.begin() + 1 + candidates.size());
      if (cands.empty()) cands = default_candidates(F.nvars());
      res.body = {{"F", to_string(F)}};
      Json tried = Json::array();
      for (const auto& c : cands) tried.push_back(to_string(c));
      res.body["candidates"] = tried;
      const auto found = artin_certify(F, cands);
      res.body["certified"] = found.has_value();
      if (!found) {
        res.code = 1;
      } else {
        res.body["multiplier"] = to_string(found->first);
        res.body["certificate"] = io::certificate(found->second);
        if (minimize) {
          FactoredPolynomial s;
          for (std::size_t i = 0; i < mult.size(); ++i) s.push_back({ps[1 + candidates.size() + i], mult[i]});
          if (s.empty()) s.push_back({found->first, 1});
          Json kept = Json::array();
          const auto m = artin_minimize(F, s);
          for (const auto& [g, e] : m) kept.push_back({{"factor", to_string(g)}, {"multiplicity", e}});
          res.body["minimized"] = {{"factors", kept}, {"multiplier", to_string(expand(m, F.nvars()))}};
        }
      }
    } else if (*real) {
      command = "realize";
      const auto ps = parse_all(pqs);
      const auto r = wronskian_realization(ps[0], ps[1], ps[2]);
      res.body = {{"realization", io::realization(r, verify_realization(r))}};
    } else if (*scan) {
      command = "herglotz-scan";
      const auto ps = parse_all(scan_pq);
      const auto r = slice_scan(ps[0], ps[1], scan_grids.real, scan_grids.half);
      res.body = {{"p", to_string(ps[0])}, {"q", to_string(ps[1])},
                  {"scan", io::scan(r, scan_grids.real, scan_grids.half)}};
      res.code = r.pass ? 0 : 1;
    } else if (*cross) {
      command = "crosscheck";
      std::vector<std::string> texts = cross_pq;
      texts.insert(texts.end(), cross_candidates.begin(), cross_candidates.end());
      auto ps = parse_all(texts);
      if (ps[0].nvars() == 0) {
        for (auto& x : ps) x = x.lifted(1);
      }
      const std::vector<Polynomial> cands(ps.begin() + 2, ps.end());
      const auto r = crosscheck_main_theorem(ps[0], ps[1], cands, cross_grids.real, cross_grids.half);
      res.body = {{"p", to_string(ps[0])}, {"q", to_string(ps[1])},
                  {"crosscheck", io::crosscheck(r, cross_grids.real, cross_grids.half)}};
      res.code = r.verdict == Verdict::Disagree ? 1 : 0;
    }
  } catch (const Error& e) {
    std::cerr << io::error(e).dump(2) << "\n";
    // A failed certification is a certified-negative outcome, not a crash.
    return e.kind() == ErrorKind::NoCertificate ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"schema", io::kSchema}, {"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump(2)
              << "\n";
    return 2;
  }

  const std::string text = io::document(command, res.body).dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << Json{{"schema", io::kSchema}, {"error", {{"kind", "io"}, {"message", "cannot write " + output}}}}
                       .dump(2)
                << "\n";
      return 2;
    }
    out << text;
  }
  return res.code;
}
