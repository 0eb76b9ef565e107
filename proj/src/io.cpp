#include "gsqg/io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/format.hpp"

namespace gsqg::io {
namespace {

void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 1);
      }
      os << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Flat numeric arrays on one line keep coefficient lists readable.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        os << '[';
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent + 1);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write(os, j[i], indent + 1);
      }
      os << '\n' << pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

Json to_json(const spectral::FourierCosSeries& f) {
  Json a = Json::array();
  for (double v : f.coefficients()) a.push_back(v);
  return a;
}

Json to_json(const spectral::FourierSinSeries& g) {
  Json a = Json::array();
  for (double v : g.coefficients()) a.push_back(v);
  return a;
}

spectral::FourierCosSeries cos_series_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("cosine series must be a non-empty array [a_2, ...]");
  std::vector<double> a;
  for (const auto& e : j) {
    if (!e.is_number()) throw DomainError("cosine series entries must be numbers");
    a.push_back(e.get<double>());
  }
  const int J = static_cast<int>(a.size()) + 1;
  return spectral::FourierCosSeries(J, std::move(a));
}

spectral::FourierSinSeries sin_series_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("sine series must be a non-empty array [b_1, ...]");
  std::vector<double> b;
  for (const auto& e : j) {
    if (!e.is_number()) throw DomainError("sine series entries must be numbers");
    b.push_back(e.get<double>());
  }
  const int J = static_cast<int>(b.size());
  return spectral::FourierSinSeries(J, std::move(b));
}

Json to_json(const solver::BranchRecord& r) {
  Json j;
  j["eps"] = r.eps;
  j["speed"] = r.speed;
  j["residual"] = r.residual;
  j["iters"] = r.iterations;
  j["coeffs"] = to_json(r.f);
  j["residual_history"] = r.residual_history;
  j["first_sine"] = r.first_sine;
  j["parity_leakage"] = r.parity_leakage;
  return j;
}

solver::BranchRecord record_from_json(const Json& j) {
  try {
    solver::BranchRecord r;
    r.eps = j.at("eps").get<double>();
    r.speed = j.at("speed").get<double>();
    r.residual = j.at("residual").get<double>();
    r.iterations = j.at("iters").get<int>();
    r.f = cos_series_from_json(j.at("coeffs"));
    if (j.contains("residual_history")) r.residual_history = j["residual_history"].get<std::vector<double>>();
    if (j.contains("first_sine")) r.first_sine = j["first_sine"].get<double>();
    if (j.contains("parity_leakage")) r.parity_leakage = j["parity_leakage"].get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed branch record: ") + e.what());
  }
}

void write_boundary_csv(std::ostream& os, const diagnostics::PatchFamily& patches) {
  os << "patch_id,theta,x,y\n";
  for (size_t c = 0; c < patches.curves.size(); ++c) {
    const auto& curve = patches.curves[c];
    for (size_t k = 0; k < curve.nodes.size(); ++k) {
      const auto p = curve.point(k);
      os << c << ',' << format_double(patches.angles[k]) << ',' << format_double(p[0]) << ','
         << format_double(p[1]) << '\n';
    }
  }
}

}  // namespace gsqg::io
