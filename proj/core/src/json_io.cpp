#include "k3kit/json_io.hpp"

#include "k3kit/error.hpp"

namespace k3kit {

namespace {
constexpr std::int64_t kJsonIntCap = 9007199254740992LL;  // 2^53
}

json rat_to_json(const Rat& x) {
  if (is_integer(x)) {
    Int n = rat_num(x);
    auto v = to_int64(n);
    if (v && *v < kJsonIntCap && *v > -kJsonIntCap) return json(*v);
  }
  return json(rat_to_string(x));
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  raise("MalformedRational", "expected integer or 'p/q' string");
}

json coords_to_json(const std::vector<Rat>& coords) {
  json arr = json::array();
  for (const auto& c : coords) arr.push_back(rat_to_json(c));
  return arr;
}

std::vector<Rat> coords_from_json(const json& j) {
  if (!j.is_array()) raise("MalformedVector", "coords must be an array");
  std::vector<Rat> out;
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

json vector_to_json(const LatticeVector& v) {
  json j;
  j["lattice"] = v.lattice()->label();
  j["coords"] = coords_to_json(v.coords());
  return j;
}

LatticeVector vector_from_json(const json& j) {
  auto lat = Lattice::make(j.at("lattice").get<std::string>());
  return LatticeVector(lat, coords_from_json(j.at("coords")));
}

namespace {

json ints_to_json(const std::vector<Int>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(rat_to_json(Rat(x)));
  return arr;
}

std::vector<Int> ints_from_json(const json& j) {
  std::vector<Int> out;
  for (const auto& e : j) {
    Rat r = rat_from_json(e);
    if (!is_integer(r)) raise("MalformedVector", "expected integer entry");
    out.push_back(rat_num(r));
  }
  return out;
}

}  // namespace

json word_to_json(const IsometryWord& word) {
  json arr = json::array();
  for (const auto& g : word.generators()) {
    json item;
    if (std::holds_alternative<Reflection>(g)) {
      item["kind"] = "reflection";
      item["root"] = ints_to_json(std::get<Reflection>(g).root);
    } else if (std::holds_alternative<Transvection>(g)) {
      const auto& t = std::get<Transvection>(g);
      item["kind"] = "transvection";
      item["block"] = t.u_block;
      item["gen"] = t.gen;
      item["lambda"] = ints_to_json(t.lambda);
    } else if (std::holds_alternative<SignFlip>(g)) {
      item["kind"] = "sign_flip";
    } else {
      item["kind"] = "block_automorphism";
      item["name"] = std::get<BlockAutomorphism>(g).name;
    }
    arr.push_back(std::move(item));
  }
  return arr;
}

IsometryWord word_from_json(const LatticePtr& ambient, const json& j) {
  IsometryWord w(ambient);
  for (const auto& item : j) {
    std::string kind = item.at("kind").get<std::string>();
    if (kind == "reflection") {
      Reflection r;
      r.root = ints_from_json(item.at("root"));
      w.push(r);
    } else if (kind == "transvection") {
      Transvection t;
      t.u_block = item.at("block").get<int>();
      t.gen = item.at("gen").get<int>();
      t.lambda = ints_from_json(item.at("lambda"));
      w.push(t);
    } else if (kind == "sign_flip") {
      w.push(SignFlip{});
    } else if (kind == "block_automorphism") {
      w.push(BlockAutomorphism{item.at("name").get<std::string>()});
    } else {
      raise("MalformedGenerator", "unknown kind '" + kind + "'");
    }
  }
  return w;
}

json certificate_to_json(const ReductionCertificate& cert) {
  json j;
  j["lattice"] = cert.input.lattice()->label();
  j["input"] = coords_to_json(cert.input.coords());
  j["word"] = word_to_json(cert.word);
  j["output"] = coords_to_json(cert.output.coords());
  j["steps"] = cert.steps;
  return j;
}

ReductionCertificate certificate_from_json(const json& j) {
  auto lat = Lattice::make(j.at("lattice").get<std::string>());
  ReductionCertificate cert;
  cert.input = LatticeVector(lat, coords_from_json(j.at("input")));
  cert.word = word_from_json(lat, j.at("word"));
  cert.output = LatticeVector(lat, coords_from_json(j.at("output")));
  cert.steps = j.value("steps", 0);
  return cert;
}

json msurface_to_json(const MarkedMSurfaceData& d) {
  json j;
  j["ambient"] = d.ambient->label();
  j["picard"] = d.picard;
  j["transcendental"] = d.transcendental;
  j["u_choice"] = d.u_choice;
  return j;
}

MarkedMSurfaceData msurface_from_json(const json& j) {
  MarkedMSurfaceData d;
  d.ambient = Lattice::make(j.at("ambient").get<std::string>());
  d.picard = j.at("picard").get<std::vector<int>>();
  d.transcendental = j.at("transcendental").get<std::vector<int>>();
  d.u_choice = j.at("u_choice").get<int>();
  validate_msurface(d);
  return d;
}

json profile_to_json(const CountProfile& p) {
  json j;
  j["lattice"] = p.lattice->label();
  j["l"] = coords_to_json(p.l.coords());
  j["a"] = ints_to_json(p.a);
  json walls = json::array();
  for (const auto& w : p.walls) walls.push_back(coords_to_json(w.coords()));
  j["walls"] = walls;
  return j;
}

}  // namespace k3kit
