#include "orrlab/checkpoint.hpp"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <vector>

#include "orrlab/errors.hpp"

namespace orrlab {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'O', 'R', 'R', 'L', 'A', 'B', 'C', 'K'};
constexpr int kFormatVersion = 1;

std::uint64_t fnv1a(const unsigned char* data, std::size_t n) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void save_checkpoint(const SimState& state, const MultiplierSpec& spec,
                     std::uint64_t config_hash, const std::string& path) {
  const Grid& g = state.h.grid();
  const std::size_t n_coeff = state.h.size();
  const std::size_t payload_doubles =
      2 * n_coeff + state.i_ux.size() + state.i_omega.size();

  std::vector<double> payload;
  payload.reserve(payload_doubles);
  for (const Complex& c : state.h.data()) {
    payload.push_back(c.real());
    payload.push_back(c.imag());
  }
  payload.insert(payload.end(), state.i_ux.begin(), state.i_ux.end());
  payload.insert(payload.end(), state.i_omega.begin(), state.i_omega.end());

  const std::uint64_t checksum =
      fnv1a(reinterpret_cast<const unsigned char*>(payload.data()),
            payload.size() * sizeof(double));

  json header;
  header["version"] = kFormatVersion;
  header["n_z"] = g.n_z();
  header["n_y"] = g.n_y();
  header["L_y"] = g.l_y();
  header["t"] = state.t;
  header["step_count"] = state.step_count;
  header["multiplier"] = {{"s", spec.s},
                          {"lambda", spec.lam},
                          {"lambda_prime", spec.lam_prime},
                          {"sigma", spec.sigma},
                          {"c_kappa", spec.c_kappa},
                          {"q_tilde", spec.q_tilde}};
  header["config_hash"] = config_hash;
  header["payload_doubles"] = payload_doubles;
  header["payload_fnv1a"] = checksum;
  const std::string htext = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open checkpoint for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t hlen = static_cast<std::uint32_t>(htext.size());
  out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  out.write(htext.data(), htext.size());
  out.write(reinterpret_cast<const char*>(payload.data()),
            payload.size() * sizeof(double));
  if (!out) throw ConfigError("checkpoint write failed: " + path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint: " + path);

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ConfigError("checkpoint magic mismatch: " + path);

  std::uint32_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  if (!in || hlen == 0 || hlen > (1u << 20))
    throw ConfigError("checkpoint header length invalid: " + path);
  std::string htext(hlen, '\0');
  in.read(htext.data(), hlen);
  if (!in) throw ConfigError("checkpoint truncated in header: " + path);

  json header;
  try {
    header = json::parse(htext);
  } catch (const json::parse_error&) {
    throw ConfigError("checkpoint header is not valid JSON: " + path);
  }
  if (header.value("version", -1) != kFormatVersion)
    throw ConfigError("checkpoint format version mismatch: " + path);

  const Grid grid(header.at("n_z").get<int>(), header.at("n_y").get<int>(),
                  header.at("L_y").get<double>());
  LoadedCheckpoint out(grid);
  out.state.t = header.at("t").get<double>();
  out.state.step_count = header.at("step_count").get<std::int64_t>();
  out.config_hash = header.at("config_hash").get<std::uint64_t>();
  const json& m = header.at("multiplier");
  out.spec.s = m.at("s").get<double>();
  out.spec.lam = m.at("lambda").get<double>();
  out.spec.lam_prime = m.at("lambda_prime").get<double>();
  out.spec.sigma = m.at("sigma").get<double>();
  out.spec.c_kappa = m.at("c_kappa").get<double>();
  out.spec.q_tilde = m.at("q_tilde").get<double>();

  const std::size_t expected =
      2 * out.state.h.size() + 2 * static_cast<std::size_t>(grid.n_y());
  const std::size_t declared = header.at("payload_doubles").get<std::size_t>();
  if (declared != expected)
    throw ConfigError("checkpoint payload size does not match grid: " + path);

  std::vector<double> payload(declared);
  in.read(reinterpret_cast<char*>(payload.data()),
          declared * sizeof(double));
  if (!in || static_cast<std::size_t>(in.gcount()) != declared * sizeof(double))
    throw ConfigError("checkpoint truncated in payload: " + path);

  const std::uint64_t checksum =
      fnv1a(reinterpret_cast<const unsigned char*>(payload.data()),
            payload.size() * sizeof(double));
  if (checksum != header.at("payload_fnv1a").get<std::uint64_t>())
    throw ConfigError("checkpoint payload checksum mismatch: " + path);

  std::size_t p = 0;
  for (Complex& c : out.state.h.data()) {
    c = Complex{payload[p], payload[p + 1]};
    p += 2;
  }
  out.state.i_ux.assign(payload.begin() + p, payload.begin() + p + grid.n_y());
  p += grid.n_y();
  out.state.i_omega.assign(payload.begin() + p,
                           payload.begin() + p + grid.n_y());
  out.state.h.set_frame_time(out.state.t);
  return out;
}

}  // namespace orrlab
