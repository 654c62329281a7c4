#include "sqham/generators.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sqham {

double sprinkle_probability(std::size_t n, double K) {
  const double nd = static_cast<double>(n);
  return K * std::cbrt(std::log(nd)) / std::pow(nd, 2.0 / 3.0);
}

SprinkleParams SprinkleParams::make(std::size_t n, double K) {
  if (n < 2) throw std::invalid_argument("sprinkle: n must be at least 2");
  if (!(K > 0.0)) throw std::invalid_argument("sprinkle: K must be positive");
  const double p = sprinkle_probability(n, K);
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "sprinkle: p = " << p << " outside (0,1) for n=" << n << ", K=" << K;
    throw std::invalid_argument(msg.str());
  }
  return SprinkleParams{n, K};
}

Graph gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p outside [0,1]");
  if (p == 0.0 || n < 2) return Graph(n);
  if (p == 1.0) return complete_graph(n);

  // Geometric skipping over the pairs (u, v), u < v, in row-major order.
  GraphBuilder b(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  Vertex u = 0;
  std::size_t v = 0;  // candidate partner is u + 1 + v
  for (;;) {
    const double r = unit(rng);
    v += static_cast<std::size_t>(std::floor(std::log1p(-r) / log_q));
    while (u < n && u + 1 + v >= n) {
      v -= n - u - 1;
      ++u;
    }
    if (u + 1 >= n) break;
    b.add_edge(u, static_cast<Vertex>(u + 1 + v));
    ++v;
  }
  return std::move(b).build();
}

std::vector<Graph> sample_sprinkles(const SprinkleParams& params, int count, Rng& rng) {
  const bool odd = params.n % 2 == 1;
  if (count != (odd ? 4 : 3)) {
    throw std::invalid_argument("sample_sprinkles: count must be 4 for odd n and 3 for even n");
  }
  const double p = SprinkleParams::make(params.n, params.K).p();
  std::vector<Graph> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(gnp(params.n, p, rng));
  return out;
}

double host_density_margin(std::size_t n, double alpha) {
  const double nd = static_cast<double>(n);
  return std::sqrt(2.0 * alpha * (1.0 - alpha) * std::log(nd) / nd);
}

HostGraph min_degree_host(std::size_t n, double alpha, Rng& rng, int max_attempts) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("min_degree_host: alpha must lie in (1/2, 1)");
  }
  if (n < 2) throw std::invalid_argument("min_degree_host: n must be at least 2");
  const auto target = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n)));
  const double q = std::min(1.0, alpha + host_density_margin(n, alpha));
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    Graph g = gnp(n, q, rng);
    const std::size_t d = min_degree(g);
    if (d >= target) return HostGraph{std::move(g), d, attempt};
  }
  std::ostringstream msg;
  msg << "min_degree_host: no G(" << n << ", " << q << ") sample reached minimum degree "
      << target << " in " << max_attempts << " attempts";
  throw GeneratorError(msg.str());
}

Graph complete_bipartite(std::size_t s, std::size_t t) {
  if (s < 1 || t < 1) throw std::invalid_argument("complete_bipartite: s, t must be >= 1");
  GraphBuilder b(s + t);
  for (Vertex a = 0; a < s; ++a) {
    for (std::size_t j = 0; j < t; ++j) b.add_edge(a, static_cast<Vertex>(s + j));
  }
  return std::move(b).build();
}

namespace {

std::size_t parse_size(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("host spec: bad integer for " + std::string(key) + ": '" +
                                std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  std::string s(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument("host spec: bad number for " + std::string(key) + ": '" + s + "'");
  }
  return out;
}

}  // namespace

std::size_t HostSpec::order(std::optional<std::size_t> override_n) const {
  switch (kind) {
    case Kind::complete_bipartite:
      return s + t;
    case Kind::file: {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("host spec: cannot open " + path);
      std::size_t file_n = 0;
      in >> file_n;
      return file_n;
    }
    default:
      if (override_n) return *override_n;
      if (n) return *n;
      throw std::invalid_argument("host spec: no n given for " + to_string());
  }
}

std::string HostSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::gnp_conditioned:
      out << "gnp:";
      if (n) out << "n=" << *n << ",";
      {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, alpha);
        out << "alpha=" << std::string_view(buf, static_cast<std::size_t>(end - buf));
      }
      break;
    case Kind::complete:
      out << "complete";
      if (n) out << ":n=" << *n;
      break;
    case Kind::complete_bipartite:
      out << "kst:s=" << s << ",t=" << t;
      break;
    case Kind::file:
      out << "file:" << path;
      break;
  }
  return out.str();
}

HostSpec parse_host_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{}
                                                                 : text.substr(colon + 1);
  HostSpec spec;
  if (kind == "file") {
    if (rest.empty()) throw std::invalid_argument("host spec: file: needs a path");
    spec.kind = HostSpec::Kind::file;
    spec.path = std::string(rest);
    return spec;
  }
  if (kind == "gnp") {
    spec.kind = HostSpec::Kind::gnp_conditioned;
  } else if (kind == "complete") {
    spec.kind = HostSpec::Kind::complete;
  } else if (kind == "kst") {
    spec.kind = HostSpec::Kind::complete_bipartite;
  } else {
    throw std::invalid_argument("host spec: unknown kind '" + std::string(kind) + "'");
  }

  bool have_alpha = false, have_s = false, have_t = false;
  std::string_view params = rest;
  while (!params.empty()) {
    const auto comma = params.find(',');
    const std::string_view item = params.substr(0, comma);
    params = comma == std::string_view::npos ? std::string_view{} : params.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("host spec: expected key=value, got '" + std::string(item) + "'");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "n" && spec.kind != HostSpec::Kind::complete_bipartite) {
      spec.n = parse_size(key, value);
    } else if (key == "alpha" && spec.kind == HostSpec::Kind::gnp_conditioned) {
      spec.alpha = parse_double(key, value);
      have_alpha = true;
    } else if (key == "s" && spec.kind == HostSpec::Kind::complete_bipartite) {
      spec.s = parse_size(key, value);
      have_s = true;
    } else if (key == "t" && spec.kind == HostSpec::Kind::complete_bipartite) {
      spec.t = parse_size(key, value);
      have_t = true;
    } else {
      throw std::invalid_argument("host spec: unexpected key '" + std::string(key) + "' for " +
                                  std::string(kind));
    }
  }
  if (spec.kind == HostSpec::Kind::gnp_conditioned) {
    if (!have_alpha) throw std::invalid_argument("host spec: gnp needs alpha");
    if (!(spec.alpha > 0.5 && spec.alpha < 1.0)) {
      throw std::invalid_argument("host spec: gnp alpha must lie in (1/2, 1)");
    }
  }
  if (spec.kind == HostSpec::Kind::complete_bipartite && !(have_s && have_t && spec.s >= 1 &&
                                                           spec.t >= 1)) {
    throw std::invalid_argument("host spec: kst needs s>=1 and t>=1");
  }
  return spec;
}

Host make_host(const HostSpec& spec, std::optional<std::size_t> n, Rng& rng) {
  switch (spec.kind) {
    case HostSpec::Kind::gnp_conditioned: {
      HostGraph h = min_degree_host(spec.order(n), spec.alpha, rng);
      return Host{std::move(h.graph), spec.alpha};
    }
    case HostSpec::Kind::complete:
      return Host{complete_graph(spec.order(n)), 1.0};
    case HostSpec::Kind::complete_bipartite: {
      if (n && *n != spec.s + spec.t) {
        throw std::invalid_argument("host spec: kst order s+t does not match requested n");
      }
      const double total = static_cast<double>(spec.s + spec.t);
      return Host{complete_bipartite(spec.s, spec.t),
                  static_cast<double>(std::min(spec.s, spec.t)) / total};
    }
    case HostSpec::Kind::file: {
      std::ifstream in(spec.path);
      if (!in) throw std::runtime_error("host spec: cannot open " + spec.path);
      Graph g = read_edge_list(in);
      if (n && *n != g.order()) {
        throw std::invalid_argument("host spec: file graph order does not match requested n");
      }
      const double alpha = g.order() == 0 ? 0.0
                                          : static_cast<double>(min_degree(g)) /
                                                static_cast<double>(g.order());
      return Host{std::move(g), alpha};
    }
  }
  throw std::logic_error("make_host: unhandled kind");
}

}  // namespace sqham
