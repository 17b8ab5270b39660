#include "mpj/json_io.hpp"

#include <nlohmann/json.hpp>

namespace mpj {

using nlohmann::json;

void to_json(json& j, const BitString& s) { j = s.str(); }

void from_json(const json& j, BitString& s) { s = BitString(j.get<std::string>()); }

void to_json(json& j, const PointerFn& f) { j = f.table(); }

void from_json(const json& j, PointerFn& f) { f = PointerFn(j.get<std::vector<int>>()); }

void to_json(json& j, const Instance& inst) {
  j = json{{"n", inst.n},
           {"k", inst.k},
           {"start", inst.start},
           {"middles", inst.middles},
           {"x", inst.x}};
}

void from_json(const json& j, Instance& inst) {
  inst = Instance(j.at("n").get<int>(), j.at("k").get<int>(), j.at("start").get<int>(),
                  j.at("middles").get<std::vector<PointerFn>>(), j.at("x").get<BitString>());
}

void to_json(json& j, const Transcript& t) {
  j = json{{"messages", t.messages},
           {"output", t.output},
           {"total_cost", t.total_cost},
           {"max_cost", t.max_cost}};
}

void to_json(json& j, const FoolingCertificate& cert) {
  j = json{{"n", cert.n},
           {"k", cert.k},
           {"protocol",
            json{{"name", cert.protocol_name},
                 {"params", cert.protocol_params},
                 {"budgets", cert.budgets}}},
           {"start", cert.start},
           {"middles", cert.middles},
           {"x", cert.x},
           {"x_prime", cert.x_prime},
           {"transcript", cert.transcript},
           {"outputs", json::array({cert.output_a, cert.output_b})}};
}

void from_json(const json& j, FoolingCertificate& cert) {
  cert.n = j.at("n").get<int>();
  cert.k = j.at("k").get<int>();
  const json& proto = j.at("protocol");
  cert.protocol_name = proto.at("name").get<std::string>();
  cert.protocol_params = proto.at("params").get<std::vector<std::string>>();
  cert.budgets = proto.at("budgets").get<std::vector<int>>();
  cert.start = j.at("start").get<int>();
  cert.middles = j.at("middles").get<std::vector<PointerFn>>();
  cert.x = j.at("x").get<BitString>();
  cert.x_prime = j.at("x_prime").get<BitString>();
  cert.transcript = j.at("transcript").get<std::vector<BitString>>();
  const json& outputs = j.at("outputs");
  if (!outputs.is_array() || outputs.size() != 2)
    throw std::invalid_argument("certificate: outputs must be a pair");
  cert.output_a = outputs[0].get<int>();
  cert.output_b = outputs[1].get<int>();
}

void to_json(json& j, const FoolingState& state) {
  json prefix = json::array();
  prefix.push_back(state.start);
  for (const PointerFn& f : state.middles) prefix.push_back(f.table());
  j = json{{"j", state.stage},
           {"f_prefix", prefix},
           {"alphas", state.messages},
           {"x", state.x},
           {"y", state.y},
           {"v", state.vertex},
           {"flags", json{{"dominance", state.has_dominance}, {"crossing", state.has_crossing}}}};
}

std::string canonical_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mpj
