// Copyright 2026 The HDR-FUNQUE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "funque/fusion.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "funque/errors.h"
#include "funque/features.h"
#include "json.hpp"

namespace funque {

using nlohmann::json;

std::string_view ConditionName(AmbientCondition c) {
  return c == AmbientCondition::kDark ? "dark" : "bright";
}

void ModelSpec::Validate() const {
  std::set<std::string> seen;
  for (const std::string& f : features) {
    if (!seen.insert(f).second) {
      throw RegistryError("model " + name + " lists feature " + f + " twice");
    }
    ParseFeature(f);
  }
  if (features.empty()) throw RegistryError("model " + name + " has no features");
}

namespace {

ModelSpec YFunquePlus() {
  return {"Y-FUNQUE+", {"Y-MS-ESSIM", "Y-MAD-Ref", "Y-DLM-S"}, {}, {}};
}

ModelSpec ThreeChannelFunquePlus() {
  return {"3C-FUNQUE+",
          {"Y-MS-ESSIM", "Y-MAD-Dis", "Y-DLM-S", "Y-SRRED-HV", "Y-TRRED-HV",
           "Cb-Edge", "Cr-MAD"},
          {},
          {}};
}

std::string Normalize(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c != ' ') s.push_back(c);
  }
  for (size_t pos; (pos = s.find("HDRMAX-")) != std::string::npos;) {
    s.erase(pos + 6, 1);
  }
  return s;
}

}  // namespace

ModelSpec Augment(ModelSpec base, HdrmaxAugment augment) {
  if (std::find(base.hdrmax.begin(), base.hdrmax.end(), augment) !=
      base.hdrmax.end()) {
    return base;
  }
  base.hdrmax.push_back(augment);
  const std::string joiner = base.name.ends_with('+') ? "" : "+";
  if (augment == HdrmaxAugment::kH1) {
    for (auto& f : HdrmaxSideChannelFeatures(PlaneKind::kHdrmax1)) {
      base.features.push_back(f);
    }
    base.name += joiner + "HDRMAX1";
  } else {
    for (PlaneKind k : {PlaneKind::kHdrmax2Pos, PlaneKind::kHdrmax2Neg}) {
      for (auto& f : HdrmaxSideChannelFeatures(k)) base.features.push_back(f);
    }
    base.name += joiner + "HDRMAX2";
  }
  return base;
}

ModelSpec BuiltinModelSpec(std::string_view raw) {
  const std::string name = Normalize(raw);
  if (name == "PU21-PSNR" || name == "PU21-SSIM") {
    return {name, {name}, {}, {}};
  }
  for (ModelSpec base : {YFunquePlus(), ThreeChannelFunquePlus()}) {
    if (name.rfind(base.name, 0) != 0) continue;
    std::string rest = name.substr(base.name.size());
    ModelSpec spec = base;
    while (!rest.empty()) {
      if (rest.rfind("+HDRMAX1", 0) == 0 || rest.rfind("HDRMAX1", 0) == 0) {
        spec = Augment(spec, HdrmaxAugment::kH1);
      } else if (rest.rfind("+HDRMAX2", 0) == 0 ||
                 rest.rfind("HDRMAX2", 0) == 0) {
        spec = Augment(spec, HdrmaxAugment::kH2);
      } else {
        spec.name.clear();
        break;
      }
      rest.erase(0, rest[0] == '+' ? 8 : 7);
    }
    if (!spec.name.empty()) return spec;
  }
  throw RegistryError("unknown model '" + std::string(raw) + "'");
}

std::vector<std::string> BuiltinModelNames() {
  return {"Y-FUNQUE+",         "Y-FUNQUE+HDRMAX1",  "Y-FUNQUE+HDRMAX2",
          "3C-FUNQUE+",        "3C-FUNQUE+HDRMAX1", "3C-FUNQUE+HDRMAX2",
          "PU21-PSNR",         "PU21-SSIM"};
}

bool IsBuiltinModel(std::string_view name) {
  try {
    BuiltinModelSpec(name);
    return true;
  } catch (const RegistryError&) {
    return false;
  }
}

int FeatureTable::ColumnIndex(std::string_view name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::vector<double>> FeatureTable::Select(
    const std::vector<std::string>& names) const {
  std::vector<int> idx;
  for (const std::string& n : names) {
    const int i = ColumnIndex(n);
    if (i < 0) throw RegistryError("feature table lacks column " + n);
    idx.push_back(i);
  }
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> sel;
    sel.reserve(idx.size());
    for (int i : idx) sel.push_back(r[i]);
    out.push_back(std::move(sel));
  }
  return out;
}

bool TrainedModel::dropped_any() const {
  return std::find(retained.begin(), retained.end(), false) != retained.end();
}

namespace {

std::string HashTrainingSet(const std::vector<std::vector<double>>& rows,
                            std::span<const double> y) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& r : rows) {
    for (double v : r) mix(v);
  }
  for (double v : y) mix(v);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

TrainedModel TrainRidge(const ModelSpec& spec,
                        const std::vector<std::vector<double>>& rows,
                        std::span<const double> targets, double lambda,
                        uint64_t seed) {
  const size_t n = rows.size();
  const size_t p = spec.features.size();
  if (n != targets.size()) {
    throw DimensionMismatchError("feature rows and targets differ in length");
  }
  if (n < 2) throw DomainError("ridge training needs at least two rows");
  if (!(lambda >= 0.0)) throw DomainError("ridge lambda must be >= 0");
  for (const auto& r : rows) {
    if (r.size() != p) {
      throw DimensionMismatchError("feature row width differs from spec");
    }
    for (double v : r) {
      if (!std::isfinite(v)) throw DomainError("non-finite training feature");
    }
  }
  for (double v : targets) {
    if (!std::isfinite(v)) throw DomainError("non-finite training target");
  }

  TrainedModel m;
  m.spec = spec;
  m.lambda = lambda;
  m.seed = seed;
  m.training_hash = HashTrainingSet(rows, targets);
  m.means.assign(p, 0.0);
  m.stds.assign(p, 1.0);
  m.weights.assign(p, 0.0);
  m.retained.assign(p, true);

  double ybar = 0.0;
  for (double v : targets) ybar += v;
  ybar /= static_cast<double>(n);
  m.intercept = ybar;

  std::vector<int> keep;
  for (size_t j = 0; j < p; ++j) {
    double mu = 0.0;
    for (const auto& r : rows) mu += r[j];
    mu /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[j] - mu) * (r[j] - mu);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    m.means[j] = mu;
    if (sd <= 1e-12 * (1.0 + std::abs(mu))) {
      m.retained[j] = false;
    } else {
      m.stds[j] = sd;
      keep.push_back(static_cast<int>(j));
    }
  }
  if (keep.empty()) return m;

  const Eigen::Index k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd z(static_cast<Eigen::Index>(n), k);
  Eigen::VectorXd yc(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < k; ++c) {
      const int j = keep[c];
      z(static_cast<Eigen::Index>(i), c) = (rows[i][j] - m.means[j]) / m.stds[j];
    }
    yc(static_cast<Eigen::Index>(i)) = targets[i] - ybar;
  }
  if (lambda == 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z);
    if (qr.rank() < k) {
      throw SingularSystemError(
          "feature matrix is rank deficient; use a ridge lambda > 0");
    }
  }
  Eigen::MatrixXd a = z.transpose() * z;
  a.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw SingularSystemError("normal equations are singular; use lambda > 0");
  }
  const Eigen::VectorXd w = llt.solve(z.transpose() * yc);
  for (Eigen::Index c = 0; c < k; ++c) m.weights[keep[c]] = w(c);
  return m;
}

double Predict(const TrainedModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw DimensionMismatchError("feature vector width differs from model");
  }
  double y = model.intercept;
  for (size_t j = 0; j < x.size(); ++j) {
    if (!model.retained[j]) continue;
    y += model.weights[j] * (x[j] - model.means[j]) / model.stds[j];
  }
  return y;
}

double Predict(const TrainedModel& model,
               const std::map<std::string, double>& named) {
  std::vector<double> x;
  x.reserve(model.spec.features.size());
  for (const std::string& f : model.spec.features) {
    auto it = named.find(f);
    if (it == named.end()) {
      throw RegistryError("missing feature '" + f + "' for model " +
                          model.spec.name);
    }
    x.push_back(it->second);
  }
  return Predict(model, x);
}

std::string SaveModel(const TrainedModel& m) {
  json hdrmax = json::array();
  for (HdrmaxAugment a : m.spec.hdrmax) {
    hdrmax.push_back(a == HdrmaxAugment::kH1 ? "H1" : "H2");
  }
  json dropped = json::array();
  for (size_t j = 0; j < m.retained.size(); ++j) {
    if (!m.retained[j]) dropped.push_back(m.spec.features[j]);
  }
  json j = {
      {"version", TrainedModel::kVersion},
      {"spec",
       {{"name", m.spec.name},
        {"features", m.spec.features},
        {"hdrmax", hdrmax},
        {"target_condition", std::string(ConditionName(m.spec.target))}}},
      {"standardization", {{"means", m.means}, {"stds", m.stds}}},
      {"weights", m.weights},
      {"intercept", m.intercept},
      {"lambda", m.lambda},
      {"metadata",
       {{"training_hash", m.training_hash},
        {"seed", m.seed},
        {"dropped_features", dropped}}},
  };
  return j.dump(2) + "\n";
}

TrainedModel LoadModel(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model file: ") + e.what(), e.byte);
  }
  try {
    const int version = j.at("version").get<int>();
    if (version != TrainedModel::kVersion) {
      throw VersionMismatchError(version, TrainedModel::kVersion);
    }
    TrainedModel m;
    const json& spec = j.at("spec");
    m.spec.name = spec.at("name").get<std::string>();
    m.spec.features = spec.at("features").get<std::vector<std::string>>();
    for (const auto& h : spec.value("hdrmax", json::array())) {
      m.spec.hdrmax.push_back(h.get<std::string>() == "H1" ? HdrmaxAugment::kH1
                                                           : HdrmaxAugment::kH2);
    }
    m.spec.target = spec.value("target_condition", "dark") == "bright"
                        ? AmbientCondition::kBright
                        : AmbientCondition::kDark;
    m.spec.Validate();
    m.means = j.at("standardization").at("means").get<std::vector<double>>();
    m.stds = j.at("standardization").at("stds").get<std::vector<double>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.intercept = j.at("intercept").get<double>();
    m.lambda = j.at("lambda").get<double>();
    const json& meta = j.at("metadata");
    m.training_hash = meta.value("training_hash", "");
    m.seed = meta.value("seed", uint64_t{0});
    const size_t p = m.spec.features.size();
    if (m.means.size() != p || m.stds.size() != p || m.weights.size() != p) {
      throw ParseError("model arrays do not match the feature count", 0);
    }
    m.retained.assign(p, true);
    for (const auto& d : meta.value("dropped_features", json::array())) {
      const std::string name = d.get<std::string>();
      auto it = std::find(m.spec.features.begin(), m.spec.features.end(), name);
      if (it == m.spec.features.end()) {
        throw ParseError("dropped feature " + name + " not in spec", 0);
      }
      m.retained[it - m.spec.features.begin()] = false;
    }
    for (size_t i = 0; i < p; ++i) {
      if (m.retained[i] && !(m.stds[i] > 0.0)) {
        throw ParseError("retained feature has non-positive std", 0);
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid model file: ") + e.what(), 0);
  }
}

}  // namespace funque
