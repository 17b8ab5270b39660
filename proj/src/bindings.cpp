#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "mpj/adversary.hpp"
#include "mpj/json_io.hpp"
#include "mpj/oracle.hpp"
#include "mpj/protocols.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

std::vector<mpj::PointerFn> to_pointer_fns(const std::vector<std::vector<int>>& tables) {
  std::vector<mpj::PointerFn> out;
  out.reserve(tables.size());
  for (const auto& t : tables) out.emplace_back(t);
  return out;
}

}  // namespace

PYBIND11_MODULE(_mpjlab, m) {
  m.doc() = "multiparty pointer jumping laboratory (C++ core)";

  py::register_exception<mpj::PreconditionViolated>(m, "PreconditionViolated");
  py::register_exception<mpj::NoCollision>(m, "NoCollision");
  py::register_exception<mpj::BudgetViolation>(m, "BudgetViolation");
  py::register_exception<mpj::CapExceeded>(m, "CapExceeded");
  py::register_exception<mpj::ConstructionFailed>(m, "ConstructionFailed");

  py::class_<mpj::BitString>(m, "BitString")
      .def(py::init([](const std::string& ascii) { return mpj::BitString(ascii); }))
      .def("__len__", &mpj::BitString::size)
      .def("bit", &mpj::BitString::bit, py::arg("pos"))
      .def("__str__", &mpj::BitString::str)
      .def("__repr__",
           [](const mpj::BitString& s) { return "BitString('" + s.str() + "')"; })
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__hash__", [](const mpj::BitString& s) { return py::hash(py::str(s.str())); });

  py::class_<mpj::PointerFn>(m, "PointerFn")
      .def(py::init<std::vector<int>>())
      .def_static("identity", &mpj::PointerFn::identity, py::arg("n"))
      .def("__len__", &mpj::PointerFn::size)
      .def("__call__", &mpj::PointerFn::operator(), py::arg("v"))
      .def_property_readonly("table", &mpj::PointerFn::table)
      .def(py::self == py::self)
      .def("__repr__", [](const mpj::PointerFn& f) {
        std::string r = "PointerFn([";
        for (std::size_t i = 0; i < f.table().size(); ++i)
          r += (i ? ", " : "") + std::to_string(f.table()[i]);
        return r + "])";
      });

  py::class_<mpj::Instance>(m, "Instance")
      .def(py::init<int, int, int, std::vector<mpj::PointerFn>, mpj::BitString>(),
           py::arg("n"), py::arg("k"), py::arg("start"), py::arg("middles"), py::arg("x"))
      .def(py::init([](int n, int k, int start, const std::vector<std::vector<int>>& middles,
                       const std::string& x) {
             return mpj::Instance(n, k, start, to_pointer_fns(middles), mpj::BitString(x));
           }),
           py::arg("n"), py::arg("k"), py::arg("start"), py::arg("middles"), py::arg("x"))
      .def_readonly("n", &mpj::Instance::n)
      .def_readonly("k", &mpj::Instance::k)
      .def_readonly("start", &mpj::Instance::start)
      .def_readonly("middles", &mpj::Instance::middles)
      .def_readonly("x", &mpj::Instance::x)
      .def(py::self == py::self)
      .def("to_json", [](const mpj::Instance& inst) { return mpj::canonical_json(json(inst)); })
      .def_static("from_json",
                  [](const std::string& text) { return json::parse(text).get<mpj::Instance>(); });

  py::class_<mpj::IndexPartition>(m, "IndexPartition")
      .def_readonly("i00", &mpj::IndexPartition::i00)
      .def_readonly("i01", &mpj::IndexPartition::i01)
      .def_readonly("i10", &mpj::IndexPartition::i10)
      .def_readonly("i11", &mpj::IndexPartition::i11);

  m.def("evaluate", &mpj::evaluate, py::arg("instance"));
  m.def("compose_suffix", &mpj::compose_suffix, py::arg("instance"), py::arg("layer"));
  m.def("dominance_less", &mpj::dominance_less, py::arg("x"), py::arg("y"));
  m.def(
      "dominance_less",
      [](const std::string& x, const std::string& y) {
        return mpj::dominance_less(mpj::BitString(x), mpj::BitString(y));
      },
      py::arg("x"), py::arg("y"));
  m.def("index_partition", &mpj::index_partition, py::arg("x"), py::arg("y"));
  m.def("is_crossing", &mpj::is_crossing, py::arg("x"), py::arg("y"));
  m.def("chain_string", &mpj::chain_string, py::arg("n"), py::arg("i"));

  py::enum_<mpj::ViewModel>(m, "ViewModel")
      .value("GeneralNOF", mpj::ViewModel::GeneralNOF)
      .value("Collapsing", mpj::ViewModel::Collapsing)
      .value("Conservative", mpj::ViewModel::Conservative)
      .value("Myopic", mpj::ViewModel::Myopic);

  py::class_<mpj::PlayerView>(m, "PlayerView")
      .def_readonly("player", &mpj::PlayerView::player)
      .def_readonly("n", &mpj::PlayerView::n)
      .def_readonly("k", &mpj::PlayerView::k)
      .def_readonly("model", &mpj::PlayerView::model)
      .def_readonly("messages", &mpj::PlayerView::messages)
      .def_readonly("start", &mpj::PlayerView::start)
      .def_readonly("middles", &mpj::PlayerView::middles)
      .def_readonly("x", &mpj::PlayerView::x)
      .def_readonly("suffix_composition", &mpj::PlayerView::suffix_composition)
      .def_readonly("behind_vertex", &mpj::PlayerView::behind_vertex)
      .def(py::self == py::self);

  py::class_<mpj::ProtocolDef>(m, "ProtocolDef")
      .def_readonly("name", &mpj::ProtocolDef::name)
      .def_readonly("params", &mpj::ProtocolDef::params)
      .def_readonly("n", &mpj::ProtocolDef::n)
      .def_readonly("k", &mpj::ProtocolDef::k)
      .def_readonly("view_model", &mpj::ProtocolDef::view_model)
      .def_readonly("speaking_order", &mpj::ProtocolDef::speaking_order)
      .def_readonly("budgets", &mpj::ProtocolDef::budgets);

  py::class_<mpj::Transcript>(m, "Transcript")
      .def_readonly("messages", &mpj::Transcript::messages)
      .def_readonly("output", &mpj::Transcript::output)
      .def_readonly("total_cost", &mpj::Transcript::total_cost)
      .def_readonly("max_cost", &mpj::Transcript::max_cost)
      .def(py::self == py::self)
      .def("to_json", [](const mpj::Transcript& t) { return mpj::canonical_json(json(t)); });

  m.def("build_view", &mpj::build_view, py::arg("instance"), py::arg("protocol"),
        py::arg("speaker_pos"), py::arg("prior_messages"));
  m.def("run", &mpj::run, py::arg("protocol"), py::arg("instance"));
  m.def("total_cost", &mpj::total_cost, py::arg("protocol"));
  m.def("max_cost", &mpj::max_cost, py::arg("protocol"));

  py::class_<mpj::TpjShape>(m, "TpjShape")
      .def(py::init<int, int>(), py::arg("branching"), py::arg("depth"))
      .def_readonly("branching", &mpj::TpjShape::branching)
      .def_readonly("depth", &mpj::TpjShape::depth)
      .def_property_readonly("n", &mpj::TpjShape::n);

  m.def("trivial_protocol", &mpj::trivial_protocol, py::arg("n"), py::arg("k"));
  m.def("reordered_protocol", &mpj::reordered_protocol, py::arg("n"), py::arg("k"), py::arg("j"),
        py::arg("i"));
  m.def("tpj_protocol", &mpj::tpj_protocol, py::arg("shape"));
  m.def("cheating_protocol", &mpj::cheating_protocol, py::arg("base"), py::arg("n"), py::arg("k"),
        py::arg("budget_total"));
  m.def("uniform_cheating_protocol", &mpj::uniform_cheating_protocol, py::arg("n"), py::arg("k"),
        py::arg("per_speaker_budget"));
  m.def("truncating_protocol", &mpj::truncating_protocol, py::arg("n"), py::arg("k"),
        py::arg("budgets"), py::arg("name") = "truncating",
        py::arg("params") = std::vector<std::string>{});
  m.def("protocol_by_name", &mpj::protocol_by_name, py::arg("spec"), py::arg("n"), py::arg("k"));
  m.def("tree_instances", &mpj::tree_instances, py::arg("shape"));
  m.def("is_tree_instance", &mpj::is_tree_instance, py::arg("shape"), py::arg("instance"));

  py::class_<mpj::MessageOracle>(m, "MessageOracle")
      .def(py::init([](int n, int budget,
                       std::function<mpj::BitString(const mpj::BitString&)> fn) {
             return mpj::MessageOracle{n, budget, std::move(fn)};
           }),
           py::arg("n"), py::arg("budget"), py::arg("fn"))
      .def_readonly("n", &mpj::MessageOracle::n)
      .def_readonly("budget", &mpj::MessageOracle::budget)
      .def("__call__", &mpj::MessageOracle::operator(), py::arg("input"));

  py::class_<mpj::FoolingState>(m, "FoolingState")
      .def_readonly("n", &mpj::FoolingState::n)
      .def_readonly("k", &mpj::FoolingState::k)
      .def_readonly("stage", &mpj::FoolingState::stage)
      .def_readonly("start", &mpj::FoolingState::start)
      .def_readonly("middles", &mpj::FoolingState::middles)
      .def_readonly("messages", &mpj::FoolingState::messages)
      .def_readonly("x", &mpj::FoolingState::x)
      .def_readonly("y", &mpj::FoolingState::y)
      .def_readonly("vertex", &mpj::FoolingState::vertex)
      .def_readonly("has_dominance", &mpj::FoolingState::has_dominance)
      .def_readonly("has_crossing", &mpj::FoolingState::has_crossing)
      .def("to_json", [](const mpj::FoolingState& s) { return mpj::canonical_json(json(s)); });

  py::class_<mpj::PinnedCollision>(m, "PinnedCollision")
      .def_readonly("x1", &mpj::PinnedCollision::x1)
      .def_readonly("y1", &mpj::PinnedCollision::y1)
      .def_readonly("d", &mpj::PinnedCollision::d);

  m.def("find_chain_collision", &mpj::find_chain_collision, py::arg("oracle"), py::arg("n"));
  m.def("find_pinned_collision", &mpj::find_pinned_collision, py::arg("oracle"), py::arg("n"));
  m.def("find_crossing_collision", &mpj::find_crossing_collision, py::arg("oracle"),
        py::arg("n"));
  m.def("push", &mpj::push, py::arg("state"), py::arg("next_oracle"));
  m.def("crosspush", &mpj::crosspush, py::arg("state"), py::arg("next_oracle"));
  m.def("chainpush", &mpj::chainpush, py::arg("state"), py::arg("next_oracle"));

  py::class_<mpj::FoolingCertificate>(m, "FoolingCertificate")
      .def_readonly("n", &mpj::FoolingCertificate::n)
      .def_readonly("k", &mpj::FoolingCertificate::k)
      .def_readonly("protocol_name", &mpj::FoolingCertificate::protocol_name)
      .def_readonly("protocol_params", &mpj::FoolingCertificate::protocol_params)
      .def_readonly("budgets", &mpj::FoolingCertificate::budgets)
      .def_readonly("start", &mpj::FoolingCertificate::start)
      .def_readonly("middles", &mpj::FoolingCertificate::middles)
      .def_readonly("x", &mpj::FoolingCertificate::x)
      .def_readonly("x_prime", &mpj::FoolingCertificate::x_prime)
      .def_readonly("transcript", &mpj::FoolingCertificate::transcript)
      .def_readonly("output_a", &mpj::FoolingCertificate::output_a)
      .def_readonly("output_b", &mpj::FoolingCertificate::output_b)
      .def("instance_a", &mpj::FoolingCertificate::instance_a)
      .def("instance_b", &mpj::FoolingCertificate::instance_b)
      .def(py::self == py::self)
      .def("to_json",
           [](const mpj::FoolingCertificate& c) { return mpj::canonical_json(json(c)); })
      .def_static("from_json", [](const std::string& text) {
        return json::parse(text).get<mpj::FoolingCertificate>();
      });

  py::class_<mpj::VerifyReport>(m, "VerifyReport")
      .def_readonly("valid", &mpj::VerifyReport::valid)
      .def_readonly("reason", &mpj::VerifyReport::reason)
      .def("__bool__", [](const mpj::VerifyReport& r) { return r.valid; })
      .def("__repr__", [](const mpj::VerifyReport& r) {
        return r.valid ? std::string("VerifyReport(valid)")
                       : "VerifyReport(invalid: " + r.reason + ")";
      });

  m.def(
      "attack", [](const mpj::ProtocolDef& p) { return mpj::attack(p); }, py::arg("protocol"));
  m.def(
      "attack_traced",
      [](const mpj::ProtocolDef& p) {
        mpj::AttackTrace trace;
        mpj::FoolingCertificate cert = mpj::attack(p, &trace);
        return py::make_tuple(cert, trace.stages);
      },
      py::arg("protocol"));
  m.def(
      "attack_uniform", [](const mpj::ProtocolDef& p) { return mpj::attack_uniform(p); },
      py::arg("protocol"));
  m.def("verify_certificate", &mpj::verify_certificate, py::arg("protocol"),
        py::arg("certificate"));
  m.def(
      "state_consistent_with",
      [](const mpj::ProtocolDef& p, const mpj::FoolingState& s) {
        std::string why;
        const bool ok = mpj::state_consistent_with(p, s, &why);
        return py::make_tuple(ok, why);
      },
      py::arg("protocol"), py::arg("state"));

  py::class_<mpj::ExhaustiveReport>(m, "ExhaustiveReport")
      .def_readonly("total", &mpj::ExhaustiveReport::total)
      .def_readonly("correct", &mpj::ExhaustiveReport::correct)
      .def_readonly("first_error", &mpj::ExhaustiveReport::first_error)
      .def("all_correct", &mpj::ExhaustiveReport::all_correct);

  m.def("instance_count", &mpj::instance_count, py::arg("n"), py::arg("k"));
  m.def("exhaustive_report", &mpj::exhaustive_report, py::arg("protocol"),
        py::arg("cap") = mpj::kDefaultInstanceCap);
  m.def("exhaustive_correctness", &mpj::exhaustive_correctness, py::arg("protocol"),
        py::arg("cap") = mpj::kDefaultInstanceCap);
  m.def("exhaustive_report_over", &mpj::exhaustive_report_over, py::arg("protocol"),
        py::arg("instances"));
  m.def("brute_force_fooling_search", &mpj::brute_force_fooling_search, py::arg("protocol"),
        py::arg("cap") = mpj::kDefaultInstanceCap);
  m.def("popcount_monotone_check", &mpj::popcount_monotone_check, py::arg("n"),
        py::arg("samples") = std::uint64_t{1'000'000},
        py::arg("seed") = std::uint64_t{0x6d706a});
}
