#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mpj/adversary.hpp"
#include "mpj/json_io.hpp"
#include "mpj/oracle.hpp"
#include "mpj/protocols.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;

mpj::Instance random_instance(const mpj::ProtocolDef& proto, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = proto.n;
  auto draw = [&](int hi) { return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(hi)); };

  if (proto.name == "tpj") {
    // stay inside the tree shape: live vertices point into their child block
    const int b = std::stoi(proto.params.front());
    const int start = draw(b);
    std::vector<mpj::PointerFn> middles;
    std::int64_t live = b;
    for (int layer = 2; layer <= proto.k - 1; ++layer) {
      std::vector<int> table(static_cast<std::size_t>(n), 1);
      for (int v = 1; v <= live && v <= n; ++v) table[v - 1] = (v - 1) * b + draw(b);
      middles.emplace_back(std::move(table));
      live *= b;
    }
    mpj::BitString x(n);
    for (int pos = 1; pos <= n; ++pos) x.set_bit(pos, static_cast<int>(rng() & 1));
    return {n, proto.k, start, std::move(middles), std::move(x)};
  }

  const int start = draw(n);
  std::vector<mpj::PointerFn> middles;
  for (int layer = 2; layer <= proto.k - 1; ++layer) {
    std::vector<int> table(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) table[v - 1] = draw(n);
    middles.emplace_back(std::move(table));
  }
  mpj::BitString x(n);
  for (int pos = 1; pos <= n; ++pos) x.set_bit(pos, static_cast<int>(rng() & 1));
  return {n, proto.k, start, std::move(middles), std::move(x)};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return json::parse(in);
}

int report_single_run(const mpj::ProtocolDef& proto, const mpj::Instance& inst, json extra) {
  const mpj::Transcript t = mpj::run(proto, inst);
  const int truth = mpj::evaluate(inst);
  extra["instance"] = inst;
  extra["transcript"] = t;
  extra["evaluate"] = truth;
  extra["correct"] = (t.output == truth);
  std::cout << mpj::canonical_json(extra);
  return t.output == truth ? kExitOk : kExitFalsified;
}

int cmd_run(const std::string& proto_spec, int n, int k, const std::string& instance_file,
            bool random, std::uint64_t seed, bool exhaustive, std::uint64_t cap) {
  mpj::ProtocolDef proto = mpj::protocol_by_name(proto_spec, n, k);

  if (exhaustive) {
    mpj::ExhaustiveReport report;
    if (proto.name == "tpj") {
      mpj::TpjShape shape(std::stoi(proto.params.front()), k);
      report = mpj::exhaustive_report_over(proto, mpj::tree_instances(shape));
    } else {
      report = mpj::exhaustive_report(proto, cap);
    }
    std::cout << report.correct << "/" << report.total
              << " correct, C_total=" << mpj::total_cost(proto) << "\n";
    if (!report.all_correct() && report.first_error) {
      std::cout << "first erring instance:\n" << mpj::canonical_json(json(*report.first_error));
    }
    return report.all_correct() ? kExitOk : kExitFalsified;
  }

  if (random) return report_single_run(proto, random_instance(proto, seed), json{{"seed", seed}});

  const mpj::Instance inst = load_json_file(instance_file).get<mpj::Instance>();
  return report_single_run(proto, inst, json::object());
}

int cmd_attack(const std::string& proto_spec, int n, int k, bool uniform,
               const std::string& out_path, const std::string& trace_path) {
  mpj::ProtocolDef proto = mpj::protocol_by_name(proto_spec, n, k);
  mpj::FoolingCertificate cert;
  mpj::AttackTrace trace;
  try {
    cert = uniform ? mpj::attack_uniform(proto, &trace) : mpj::attack(proto, &trace);
  } catch (const mpj::ConstructionFailed& e) {
    std::cerr << e.what() << "\n";
    return kExitFalsified;
  }

  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write '" + trace_path + "'");
    out << mpj::canonical_json(json{{"stages", trace.stages}});
  }

  const std::string text = mpj::canonical_json(json(cert));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << text;
    std::cout << "certificate written to " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& proto_spec, const std::string& cert_path) {
  mpj::FoolingCertificate cert;
  try {
    cert = load_json_file(cert_path).get<mpj::FoolingCertificate>();
  } catch (const json::exception& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kExitUsage;
  }
  mpj::ProtocolDef proto = mpj::protocol_by_name(proto_spec, cert.n, cert.k);
  const mpj::VerifyReport report = mpj::verify_certificate(proto, cert);
  if (report.valid) {
    std::cout << "certificate valid: the protocol answers identically on both inputs and is "
                 "wrong on one of them\n";
    return kExitOk;
  }
  std::cout << "certificate invalid: " << report.reason << "\n";
  return kExitFalsified;
}

int cmd_brute(const std::string& proto_spec, int n, int k, std::uint64_t cap) {
  mpj::ProtocolDef proto = mpj::protocol_by_name(proto_spec, n, k);
  const auto cert = mpj::brute_force_fooling_search(proto, cap);
  if (!cert) {
    std::cout << "no fooling pair: the protocol is transcript-faithful on all " << "instances\n";
    return kExitOk;
  }
  std::cout << "fooling pair found:\n" << mpj::canonical_json(json(*cert));
  return kExitFalsified;
}

struct BenchRow {
  std::string spec;
  int n, k;
  int expect_total;
  bool expect_correct;
};

int cmd_bench(const std::string& suite) {
  if (suite != "theorems") throw std::invalid_argument("unknown bench suite '" + suite + "'");

  const std::vector<BenchRow> rows = {
      {"trivial", 2, 2, 2, true},
      {"trivial", 3, 3, 3, true},
      {"trivial", 4, 3, 4, true},
      {"reordered:2:1", 4, 3, 3, true},
      {"reordered:3:2", 4, 3, 3, true},
      {"tpj:2", 4, 3, 2, true},
      {"tpj:3", 9, 3, 3, true},
      {"silent", 3, 3, 0, false},
      {"truncated-trivial:1", 4, 3, 1, false},
      {"first-player:1", 4, 3, 1, false},
      {"uniform-truncated:0", 4, 3, 0, false},
  };

  std::cout << "protocol              view          n  k  C_total  C_max  correct\n";
  bool all_as_expected = true;
  for (const BenchRow& row : rows) {
    mpj::ProtocolDef proto = mpj::protocol_by_name(row.spec, row.n, row.k);
    mpj::ExhaustiveReport report;
    if (proto.name == "tpj") {
      mpj::TpjShape shape(std::stoi(proto.params.front()), row.k);
      report = mpj::exhaustive_report_over(proto, mpj::tree_instances(shape));
    } else {
      report = mpj::exhaustive_report(proto);
    }
    const int total = mpj::total_cost(proto);
    const bool ok = report.all_correct();
    all_as_expected &= (total == row.expect_total && ok == row.expect_correct);

    std::ostringstream line;
    line.setf(std::ios::left);
    line.width(22);
    line << row.spec;
    line.width(14);
    line << std::string(mpj::to_string(proto.view_model));
    line.unsetf(std::ios::left);
    line.width(2);
    line << row.n;
    line.width(3);
    line << row.k;
    line.width(9);
    line << total;
    line.width(7);
    line << mpj::max_cost(proto);
    std::cout << line.str() << "  " << (ok ? "yes" : "no") << "\n";
  }
  return all_as_expected ? kExitOk : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for multiparty pointer jumping in the number-on-the-forehead model"};
  app.require_subcommand(1);

  std::string proto_spec, instance_file, out_path, cert_path, trace_path, suite = "theorems";
  int n = 0, k = 0;
  std::uint64_t seed = 0, cap = mpj::kDefaultInstanceCap;
  bool exhaustive = false, uniform = false;

  CLI::App* c_run = app.add_subcommand("run", "run a protocol and compare against evaluation");
  c_run->add_option("--protocol", proto_spec, "protocol name[:params]")->required();
  c_run->add_option("--n", n, "layer width")->required();
  c_run->add_option("--k", k, "number of players")->required();
  auto* opt_inst = c_run->add_option("--instance", instance_file, "instance JSON file");
  auto* opt_rand = c_run->add_option("--random", seed, "run one seeded random instance");
  auto* opt_exh = c_run->add_flag("--exhaustive", exhaustive, "run every instance");
  c_run->add_option("--cap", cap, "instance cap for exhaustive runs");
  opt_inst->excludes(opt_rand)->excludes(opt_exh);
  opt_rand->excludes(opt_exh);

  CLI::App* c_attack = app.add_subcommand("attack", "construct a fooling certificate");
  c_attack->add_option("--protocol", proto_spec, "protocol name[:params]")->required();
  c_attack->add_option("--n", n, "layer width")->required();
  c_attack->add_option("--k", k, "number of players")->required();
  c_attack->add_flag("--uniform", uniform, "use the per-speaker threshold attack");
  c_attack->add_option("--out", out_path, "certificate output file (default stdout)");
  c_attack->add_option("--trace", trace_path, "also dump the per-stage fooling states");

  CLI::App* c_verify = app.add_subcommand("verify", "check a fooling certificate");
  c_verify->add_option("--protocol", proto_spec, "protocol name[:params]")->required();
  c_verify->add_option("certificate", cert_path, "certificate JSON file")->required();

  CLI::App* c_brute = app.add_subcommand("brute", "exhaustive fooling-pair search");
  c_brute->add_option("--protocol", proto_spec, "protocol name[:params]")->required();
  c_brute->add_option("--n", n, "layer width")->required();
  c_brute->add_option("--k", k, "number of players")->required();
  c_brute->add_option("--cap", cap, "instance cap");

  CLI::App* c_bench = app.add_subcommand("bench", "cost/correctness table of the built-ins");
  c_bench->add_option("--suite", suite, "suite name (theorems)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_run->parsed()) {
      if (!exhaustive && opt_rand->count() == 0 && instance_file.empty())
        throw std::invalid_argument("run: pick one of --instance, --random, --exhaustive");
      return cmd_run(proto_spec, n, k, instance_file, opt_rand->count() > 0, seed, exhaustive,
                     cap);
    }
    if (c_attack->parsed()) return cmd_attack(proto_spec, n, k, uniform, out_path, trace_path);
    if (c_verify->parsed()) return cmd_verify(proto_spec, cert_path);
    if (c_brute->parsed()) return cmd_brute(proto_spec, n, k, cap);
    if (c_bench->parsed()) return cmd_bench(suite);
  } catch (const mpj::PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mpj::CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
