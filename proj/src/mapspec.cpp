#include "awlift/mapspec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "awlift/quadrature.hpp"

namespace awlift {

MapSpec::MapSpec(ExprPtr h, ExprPtr g, ExprPtr q, std::string label)
    : h_(std::move(h)), g_(std::move(g)), q_(std::move(q)), label_(std::move(label)) {
  if (!h_) throw UsageError("MapSpec requires h");
  if (g_ && q_) check_consistency();
}

MapSpec MapSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid map JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("map JSON must be an object");
  if (!j.contains("h") || !j["h"].is_string()) throw UsageError("map JSON requires string field \"h\"");

  auto parse_field = [&](const char* name) -> ExprPtr {
    if (!j.contains(name)) return nullptr;
    if (!j[name].is_string()) throw UsageError(std::string("field \"") + name + "\" must be a string");
    try {
      return parse(j[name].get<std::string>());
    } catch (const ParseError& e) {
      throw UsageError(std::string("field \"") + name + "\": " + e.what());
    }
  };

  ExprPtr h = parse_field("h");
  ExprPtr g = parse_field("g");
  ExprPtr q = parse_field("q");
  std::string label = j.value("label", std::string{});
  return MapSpec(std::move(h), std::move(g), std::move(q), std::move(label));
}

MapSpec MapSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open map file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

MapSpec MapSpec::load(const std::string& path_or_inline) {
  std::size_t first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{')
    return from_json_text(path_or_inline);
  return from_file(path_or_inline);
}

void MapSpec::check_consistency() const {
  // |q^2 h' - g'| <= 1e-8 (|h'| + |g'| + 1) on a 32x32 polar grid of radius 0.9.
  const int n_r = 32, n_a = 32;
  double worst = -1.0;
  Cplx worst_z;
  double worst_scale = 1.0;
  for (int i = 1; i <= n_r; ++i) {
    const double r = 0.9 * i / n_r;
    for (int k = 0; k < n_a; ++k) {
      const double th = 2.0 * M_PI * k / n_a;
      const Cplx z(r * std::cos(th), r * std::sin(th));
      const HoloJet hj = eval_jet(h_, z);
      const HoloJet gj = eval_jet(g_, z);
      const HoloJet qj = eval_jet(q_, z);
      const Cplx hp = hj.derivative(1), gp = gj.derivative(1), qv = qj.value();
      const double resid = std::abs(qv * qv * hp - gp);
      const double scale = std::abs(hp) + std::abs(gp) + 1.0;
      if (resid / scale > worst) {
        worst = resid / scale;
        worst_z = z;
        worst_scale = scale;
      }
    }
  }
  if (worst > 1e-8) {
    std::ostringstream os;
    os << "inconsistent Weierstrass data: |q^2 h' - g'| = " << worst * worst_scale
       << " at z = " << format_complex(worst_z) << " (relative " << worst << ")";
    throw UsageError(os.str());
  }
}

HoloJet MapSpec::g_jet_at(Cplx z, const HoloJet& hj, const HoloJet& qj) const {
  if (g_) return eval_jet(g_, z);
  if (!q_) return HoloJet::constant(z, 0.0);
  // g' = q^2 h'; the value comes from integrating that out of the origin
  // (normalization g(0) = 0).
  const HoloJet deriv = jet_mul(jet_mul(qj, qj), jet_derivative(hj));
  const Cplx value = integrate_segment(
      [this](Cplx zeta) {
        const HoloJet hz = eval_jet(h_, zeta);
        const HoloJet qz = eval_jet(q_, zeta);
        return qz.value() * qz.value() * hz.derivative(1);
      },
      Cplx(0.0), z);
  HoloJet gj(z, HoloJet::kMaxOrder);
  gj.set_coeff(0, value);
  for (int k = 1; k <= HoloJet::kMaxOrder; ++k)
    gj.set_coeff(k, deriv.coeff(k - 1) / static_cast<double>(k));
  return gj;
}

WeierstrassJets MapSpec::jets(Cplx z) const {
  HoloJet hj = eval_jet(h_, z);
  HoloJet qj = HoloJet::constant(z, 0.0);
  if (q_) {
    qj = eval_jet(q_, z);
  } else if (g_) {
    // Principal square root of g'/h'; single-valuedness on the disk is the
    // caller's responsibility when only g is supplied.
    qj = jet_sqrt(jet_div(jet_derivative(eval_jet(g_, z)), jet_derivative(hj)));
  }
  HoloJet gj = g_ ? eval_jet(g_, z) : g_jet_at(z, hj, qj);
  return WeierstrassJets{std::move(hj), std::move(gj), std::move(qj)};
}

}  // namespace awlift
