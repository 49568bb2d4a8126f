#include "dirprior/app/plot_data.hpp"

#include <stdexcept>

#include "dirprior/special_functions.hpp"

namespace dirprior::app {

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::MarginalDensity: return "marginal-density";
    case PlotKind::PsiHistogram: return "psi-histogram";
    case PlotKind::ScatterPairs: return "scatter-pairs";
  }
  return "marginal-density";
}

PlotKind plot_kind_from_string(const std::string& name) {
  if (name == "marginal-density") return PlotKind::MarginalDensity;
  if (name == "psi-histogram") return PlotKind::PsiHistogram;
  if (name == "scatter-pairs") return PlotKind::ScatterPairs;
  throw Error(ErrorCode::InvalidInput, "unknown plot kind '" + name + "'");
}

bool PlotData::consistent() const {
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) return false;
  }
  return true;
}

json PlotData::to_json() const {
  json arr = json::array();
  for (const auto& s : series) arr.push_back({{"label", s.label}, {"x", s.x}, {"y", s.y}});
  json out = {{"kind", to_string(kind)}, {"series", arr}};
  if (kind == PlotKind::PsiHistogram) out["delta"] = delta;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text,
                                                             std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (text.empty()) {
    for (std::size_t i = 0; i + 1 < k && pairs.size() < 3; ++i) pairs.emplace_back(i, i + 1);
    return pairs;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t dash = item.find('-');
    try {
      if (dash == std::string::npos) throw std::invalid_argument("pair");
      const std::size_t a = std::stoul(item.substr(0, dash));
      const std::size_t b = std::stoul(item.substr(dash + 1));
      if (a == 0 || b == 0) throw std::invalid_argument("pair");
      pairs.emplace_back(a - 1, b - 1);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "pairs must look like 1-2,2-3");
    }
    pos = comma + 1;
  }
  return pairs;
}

PlotData marginal_density_data(const DirichletParams& prior, std::size_t index,
                               std::size_t grid_points) {
  if (index >= prior.k()) throw Error(ErrorCode::InvalidInput, "marginal index out of range");
  if (grid_points < 2) throw Error(ErrorCode::InvalidInput, "grid_points must be >= 2");
  const double a = prior.alpha()[index];
  const double b = prior.total() - a;
  Series s;
  s.label = "p" + std::to_string(index + 1);
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double x = static_cast<double>(g) / static_cast<double>(grid_points - 1);
    s.x.push_back(x);
    s.y.push_back(beta_density(a, b, x));
  }
  PlotData out;
  out.kind = PlotKind::MarginalDensity;
  out.series.push_back(std::move(s));
  return out;
}

PlotData marginal_density_data(const DirichletParams& prior, std::size_t grid_points) {
  PlotData out;
  out.kind = PlotKind::MarginalDensity;
  for (std::size_t i = 0; i < prior.k(); ++i) {
    out.series.push_back(std::move(marginal_density_data(prior, i, grid_points).series.front()));
  }
  return out;
}

PlotData scatter_pairs_data(const DirichletParams& prior,
                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                            std::size_t n_points, Rng& rng) {
  for (const auto& [i, j] : pairs) {
    if (i >= prior.k() || j >= prior.k()) {
      throw Error(ErrorCode::InvalidInput, "scatter pair index out of range");
    }
  }
  PlotData out;
  out.kind = PlotKind::ScatterPairs;
  for (const auto& [i, j] : pairs) {
    out.series.push_back({"p" + std::to_string(i + 1) + ",p" + std::to_string(j + 1), {}, {}});
  }
  std::vector<double> p(prior.k());
  for (std::size_t s = 0; s < n_points; ++s) {
    sample_into(prior, rng, p);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      out.series[q].x.push_back(p[pairs[q].first]);
      out.series[q].y.push_back(p[pairs[q].second]);
    }
  }
  return out;
}

PlotData psi_histogram_data(const std::vector<double>& contents, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidInput, "delta must be positive");
  Series s;
  s.label = "psi";
  for (std::size_t i = 0; i < contents.size(); ++i) {
    s.x.push_back(delta * static_cast<double>(i));
    s.y.push_back(contents[i] / delta);
  }
  PlotData out;
  out.kind = PlotKind::PsiHistogram;
  out.delta = delta;
  out.series.push_back(std::move(s));
  return out;
}

}  // namespace dirprior::app
