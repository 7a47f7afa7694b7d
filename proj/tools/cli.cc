// Copyright 2026 The maskdp Authors
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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "maskdp/audit.h"
#include "maskdp/calibration.h"
#include "maskdp/ingest.h"
#include "maskdp/mechanisms.h"
#include "maskdp/seeding.h"
#include "maskdp/serialization.h"

namespace maskdp::cli {
namespace {

using nlohmann::json;

// Every run is reproducible from this record plus its input files.
struct RunConfig {
  std::string input;
  std::string out;
  std::string out_dir;
  std::string scaling_out;
  std::string invert_with;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<int64_t> n;
  std::optional<int64_t> p;
  std::string setting = "B";
  std::optional<double> sigma;
  bool auto_sigma = false;
  bool report_gram = false;
  uint64_t seed = 0;
  std::optional<int64_t> samples;
  int64_t inner_samples = kDefaultInnerSamples;
  std::string check;
  std::optional<int> q;
  double t1 = 1.0;
  double t2 = 3.0;
  std::vector<double> v;
  std::vector<std::string> grid;
  std::string diff;
  double tol_sigma = 0.05;
  double tol_ratio = 0.005;
};

constexpr double kAuditEpsilon = 0.5;
constexpr double kAuditDelta = 0.05;
constexpr int64_t kAuditRows = 4;
constexpr int64_t kMaskedAuditSamples = 200;
constexpr double kRatioBoundSigma = 4.0;

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return kExitPrecondition;
    default:
      return kExitIo;
  }
}

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

// Input-format problems are reported as I/O failures, not preconditions.
absl::Status AsInputError(const std::string& path, const absl::Status& s) {
  return absl::DataLossError(absl::StrCat(path, ": ", s.message()));
}

absl::StatusOr<uint64_t> DefaultSeed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return 0;
  uint64_t seed = 0;
  if (!absl::SimpleAtoi(env, &seed)) {
    return absl::InvalidArgumentError(
        absl::StrCat(kSeedEnvVar, " is not an unsigned integer: ", env));
  }
  return seed;
}

absl::StatusOr<PrivacyBudget> RequireBudget(const RunConfig& cfg,
                                            const char* context) {
  if (!cfg.epsilon.has_value() || !cfg.delta.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat(context, " needs --epsilon and --delta"));
  }
  return PrivacyBudget::Create(*cfg.epsilon, *cfg.delta);
}

PrivacyBudget AuditBudget(const RunConfig& cfg) {
  return {cfg.epsilon.value_or(kAuditEpsilon), cfg.delta.value_or(kAuditDelta)};
}

// ---------------------------------------------------------------- calibrate

int RunCalibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::StatusOr<PrivacyBudget> budget = RequireBudget(cfg, "calibrate");
  if (!budget.ok()) return Fail(err, budget.status());
  absl::StatusOr<ProblemShape> shape = ProblemShape::Create(*cfg.n, *cfg.p);
  if (!shape.ok()) return Fail(err, shape.status());
  absl::StatusOr<CalibrationReport> report = Calibrate(*budget, *shape);
  if (!report.ok()) return Fail(err, report.status());

  const std::string text = CalibrationReportToJson(*report).dump(2) + "\n";
  out << text;
  if (!cfg.out.empty()) {
    if (absl::Status s = WriteFile(cfg.out, text); !s.ok()) return Fail(err, s);
  }
  if (!report->ok()) {
    for (const auto& [field, message] : report->errors) {
      err << "error: " << field << ": " << message << "\n";
    }
    return kExitPrecondition;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ release

absl::StatusOr<double> ResolveSigma(const RunConfig& cfg, Setting setting,
                                    int64_t n, int64_t p) {
  if (cfg.sigma.has_value()) return *cfg.sigma;
  if (!cfg.auto_sigma) {
    return absl::InvalidArgumentError("pass --sigma or --auto-sigma");
  }
  absl::StatusOr<PrivacyBudget> budget = RequireBudget(cfg, "--auto-sigma");
  if (!budget.ok()) return budget.status();
  if (setting == Setting::kA) return SigmaSufficientA(*budget);
  absl::StatusOr<ProblemShape> shape = ProblemShape::Create(n, p);
  if (!shape.ok()) return shape.status();
  absl::StatusOr<JointSigma> joint = SigmaMaskedJoint(*budget, *shape);
  if (!joint.ok()) return joint.status();
  return joint->sigma;
}

json OptionalJson(const std::optional<double>& value) {
  return value.has_value() ? json(*value) : json(nullptr);
}

absl::StatusOr<json> GramReport(const Matrix& x,
                                const ReleaseArtifact& artifact) {
  const int64_t n = x.rows();
  const int64_t p = x.cols();
  absl::StatusOr<ReleaseComponents> components = ReplayComponents(
      n, p, artifact.setting, artifact.sigma, artifact.seed);
  if (!components.ok()) return components.status();
  const Matrix released_gram = Gram(artifact.pseudo_data);
  const Matrix raw_gram = Gram(x);
  const double vs_noised =
      (released_gram - Gram(x + components->noise)).cwiseAbs().maxCoeff();
  const double vs_raw = (released_gram - raw_gram).cwiseAbs().maxCoeff();
  const double tolerance = 1e-9 * static_cast<double>(n);
  json report = {{"max_abs_residual_vs_noised_gram", vs_noised},
                 {"max_abs_residual_vs_raw_gram", vs_raw},
                 {"tolerance", tolerance},
                 {"noised_gram_identity_holds", vs_noised <= tolerance}};
  if (p >= 2) {
    absl::StatusOr<Vector> released_ols = OlsFromGram(released_gram, p - 1);
    absl::StatusOr<Vector> raw_ols = OlsFromGram(raw_gram, p - 1);
    if (released_ols.ok() && raw_ols.ok()) {
      report["ols_target_column"] = p - 1;
      report["ols_released"] = std::vector<double>(
          released_ols->data(), released_ols->data() + released_ols->size());
      report["ols_raw"] = std::vector<double>(raw_ols->data(),
                                              raw_ols->data() + raw_ols->size());
      report["ols_max_abs_difference"] =
          (*released_ols - *raw_ols).cwiseAbs().maxCoeff();
    }
  }
  return report;
}

int RunRelease(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(cfg.input);
  if (!text.ok()) return Fail(err, text.status());
  absl::StatusOr<IngestResult> ingested = Ingest(*text);
  if (!ingested.ok()) {
    return Fail(err, AsInputError(cfg.input, ingested.status()));
  }
  const Setting setting = *ParseSetting(cfg.setting);
  const DataMatrix& data = ingested->data;
  absl::StatusOr<double> sigma =
      ResolveSigma(cfg, setting, data.rows(), data.cols());
  if (!sigma.ok()) return Fail(err, sigma.status());
  absl::StatusOr<ReleaseArtifact> artifact =
      Release(data, setting, *sigma, cfg.seed);
  if (!artifact.ok()) return Fail(err, artifact.status());

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    return Fail(err, absl::UnavailableError(absl::StrCat(
                         "cannot create ", cfg.out_dir, ": ", ec.message())));
  }
  const std::filesystem::path dir(cfg.out_dir);
  json sidecar = ReleaseSidecarToJson(*artifact);
  const json run_config = {{"subcommand", "release"},
                           {"input", cfg.input},
                           {"setting", SettingName(setting)},
                           {"sigma", *sigma},
                           {"auto_sigma", !cfg.sigma.has_value()},
                           {"epsilon", OptionalJson(cfg.epsilon)},
                           {"delta", OptionalJson(cfg.delta)},
                           {"seed", cfg.seed},
                           {"report_gram", cfg.report_gram}};
  std::vector<std::pair<std::string, std::string>> files = {
      {"pseudo_data.csv", FormatCsv(artifact->pseudo_data, ingested->header)},
      {"release.json", sidecar.dump(2) + "\n"},
      {"scaling.json", ScalingRecordToJson(ingested->scaling).dump(2) + "\n"},
      {"run_config.json", run_config.dump(2) + "\n"}};
  json summary = sidecar;
  if (cfg.report_gram) {
    absl::StatusOr<json> gram = GramReport(data.values(), *artifact);
    if (!gram.ok()) return Fail(err, gram.status());
    files.emplace_back("gram_report.json", gram->dump(2) + "\n");
    summary["gram"] = *gram;
  }
  for (const auto& [name, contents] : files) {
    if (absl::Status s = WriteFile((dir / name).string(), contents); !s.ok()) {
      return Fail(err, s);
    }
  }
  out << summary.dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- table1

template <typename T>
absl::StatusOr<std::vector<T>> ParseList(const std::string& key,
                                         const std::string& values) {
  std::vector<T> parsed;
  for (absl::string_view token : absl::StrSplit(values, ',')) {
    T value;
    bool ok;
    if constexpr (std::is_same_v<T, double>) {
      ok = absl::SimpleAtod(token, &value);
    } else {
      ok = absl::SimpleAtoi(token, &value);
    }
    if (!ok) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "--grid %s: cannot parse \"%s\"", key, std::string(token)));
    }
    parsed.push_back(value);
  }
  return parsed;
}

absl::StatusOr<ComparisonGrid> ParseGrid(
    const std::vector<std::string>& specs) {
  ComparisonGrid grid;
  for (const std::string& entry : specs) {
    const std::vector<std::string> kv =
        absl::StrSplit(entry, absl::MaxSplits('=', 1));
    if (kv.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("--grid entries look like key=v1,v2; got ", entry));
    }
    const std::string& key = kv[0];
    absl::Status status;
    auto assign = [&](auto& target, auto parsed) {
      if (parsed.ok()) {
        target = *std::move(parsed);
      } else {
        status = parsed.status();
      }
    };
    if (key == "epsilon") {
      assign(grid.epsilons, ParseList<double>(key, kv[1]));
    } else if (key == "delta") {
      assign(grid.deltas, ParseList<double>(key, kv[1]));
    } else if (key == "p") {
      assign(grid.ps, ParseList<int64_t>(key, kv[1]));
    } else if (key == "n") {
      assign(grid.ns, ParseList<int64_t>(key, kv[1]));
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown --grid key \"", key, "\" (use epsilon, delta, p or n)"));
    }
    if (!status.ok()) return status;
  }
  return grid;
}

std::string Cell(const std::optional<double>& value) {
  return value.has_value() ? absl::StrFormat("%.6g", *value) : "";
}

constexpr char kTableHeader[] =
    "epsilon,delta,p,n,sigma_nec_A,sigma_suf_A,sigma_BC,ratio";

std::string FormatTable(const std::vector<CalibrationReport>& rows) {
  std::string csv = absl::StrCat(kTableHeader, "\n");
  for (const CalibrationReport& r : rows) {
    absl::StrAppend(&csv,
                    absl::StrFormat("%g,%g,%d,%d,", r.budget.epsilon,
                                    r.budget.delta, r.shape.p, r.shape.n),
                    Cell(r.sigma_necessary_a), ",", Cell(r.sigma_sufficient_a),
                    ",", Cell(r.sigma_bc_joint), ",", Cell(r.ratio_bc_over_a),
                    "\n");
  }
  return csv;
}

bool SameValue(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b));
}

int DecimalPlaces(const std::string& cell) {
  const size_t dot = cell.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(cell.size() - dot - 1);
}

// Counts reference cells that the computed table misses after rounding to
// the reference's printed precision.
absl::StatusOr<int> DiffTable(const std::vector<CalibrationReport>& rows,
                              const std::string& reference, double tol_sigma,
                              double tol_ratio, std::ostream& err) {
  absl::StatusOr<std::vector<std::vector<std::string>>> records =
      ParseCsvRecords(reference);
  if (!records.ok()) return records.status();
  if (records->empty()) return absl::InvalidArgumentError("reference is empty");
  const std::vector<std::string> columns =
      absl::StrSplit(kTableHeader, ',');
  std::vector<size_t> index;
  for (const std::string& column : columns) {
    const auto& header = records->front();
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("reference lacks column ", column));
    }
    index.push_back(it - header.begin());
  }

  std::vector<bool> matched(rows.size(), false);
  int deviations = 0;
  int compared = 0;
  for (size_t r = 1; r < records->size(); ++r) {
    const std::vector<std::string>& record = (*records)[r];
    if (record.size() != records->front().size()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("reference row %d has the wrong field count", r + 1));
    }
    double key[4];
    double ref[4];
    for (int c = 0; c < 8; ++c) {
      double& target = c < 4 ? key[c] : ref[c - 4];
      if (!absl::SimpleAtod(record[index[c]], &target)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "reference row %d, column %s is not a number", r + 1, columns[c]));
      }
    }
    size_t k = 0;
    for (; k < rows.size(); ++k) {
      const CalibrationReport& row = rows[k];
      if (SameValue(row.budget.epsilon, key[0]) &&
          SameValue(row.budget.delta, key[1]) && row.shape.p == key[2] &&
          row.shape.n == key[3]) {
        break;
      }
    }
    if (k == rows.size()) continue;  // outside the requested grid
    matched[k] = true;
    ++compared;
    const CalibrationReport& row = rows[k];
    const std::optional<double> computed[4] = {
        row.sigma_necessary_a, row.sigma_sufficient_a, row.sigma_bc_joint,
        row.ratio_bc_over_a};
    for (int c = 0; c < 4; ++c) {
      const std::string& cell = record[index[c + 4]];
      const double tol = c == 3 ? tol_ratio : tol_sigma;
      const double scale = std::pow(10.0, DecimalPlaces(cell));
      const double rounded =
          computed[c].has_value() ? std::round(*computed[c] * scale) / scale
                                  : std::nan("");
      if (!(std::fabs(rounded - ref[c]) <= tol + 1e-9)) {
        ++deviations;
        err << absl::StrFormat(
            "mismatch (epsilon=%g, delta=%g, p=%d, n=%d) %s: computed %s, "
            "reference %s\n",
            key[0], key[1], static_cast<int64_t>(key[2]),
            static_cast<int64_t>(key[3]), columns[c + 4], Cell(computed[c]),
            cell);
      }
    }
  }
  for (size_t k = 0; k < rows.size(); ++k) {
    if (!matched[k]) {
      ++deviations;
      err << absl::StrFormat(
          "row (epsilon=%g, delta=%g, p=%d, n=%d) missing from reference\n",
          rows[k].budget.epsilon, rows[k].budget.delta, rows[k].shape.p,
          rows[k].shape.n);
    }
  }
  err << absl::StrFormat("diff: %d rows compared, %d deviations\n", compared,
                         deviations);
  return deviations;
}

int RunTable1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::StatusOr<ComparisonGrid> grid = ParseGrid(cfg.grid);
  if (!grid.ok()) return Fail(err, grid.status());
  absl::StatusOr<std::vector<CalibrationReport>> rows =
      SigmaComparisonTable(*grid);
  if (!rows.ok()) return Fail(err, rows.status());
  const std::string csv = FormatTable(*rows);
  out << csv;
  if (!cfg.out.empty()) {
    if (absl::Status s = WriteFile(cfg.out, csv); !s.ok()) return Fail(err, s);
  }
  if (cfg.diff.empty()) return kExitOk;
  absl::StatusOr<std::string> reference = ReadFile(cfg.diff);
  if (!reference.ok()) return Fail(err, reference.status());
  absl::StatusOr<int> deviations =
      DiffTable(*rows, *reference, cfg.tol_sigma, cfg.tol_ratio, err);
  if (!deviations.ok()) {
    return Fail(err, AsInputError(cfg.diff, deviations.status()));
  }
  return *deviations == 0 ? kExitOk : kExitViolation;
}

// -------------------------------------------------------------------- audit

absl::StatusOr<AuditReport> RunCheck(const RunConfig& cfg) {
  const std::string& check = cfg.check;
  const PrivacyBudget budget = AuditBudget(cfg);
  const int64_t n = cfg.n.value_or(kAuditRows);
  const int64_t p = cfg.p.value_or(1);

  if (check == "violation-A") {
    absl::StatusOr<NeighborPair> pair = AuditNeighborPair(n, p, cfg.seed);
    if (!pair.ok()) return pair.status();
    absl::StatusOr<double> sigma = cfg.sigma.has_value()
                                       ? absl::StatusOr<double>(*cfg.sigma)
                                       : SigmaSufficientA(budget);
    if (!sigma.ok()) return sigma.status();
    MonteCarloOptions options;
    options.samples = cfg.samples.value_or(options.samples);
    options.seed = cfg.seed;
    options.delta = budget.delta;
    return ViolationProbabilityMonteCarlo(*pair, Setting::kA, *sigma,
                                          budget.epsilon, options);
  }
  if (check == "violation-BC") {
    const Setting setting = *ParseSetting(cfg.setting);
    if (setting == Setting::kA) {
      return absl::InvalidArgumentError(
          "violation-BC audits setting B or C; use violation-A for A");
    }
    absl::StatusOr<NeighborPair> pair = AuditNeighborPair(n, p, cfg.seed);
    if (!pair.ok()) return pair.status();
    double sigma;
    if (cfg.sigma.has_value()) {
      sigma = *cfg.sigma;
    } else {
      absl::StatusOr<ProblemShape> shape = ProblemShape::Create(n, p);
      if (!shape.ok()) return shape.status();
      absl::StatusOr<JointSigma> joint = SigmaMaskedJoint(budget, *shape);
      if (!joint.ok()) return joint.status();
      sigma = joint->sigma;
    }
    MonteCarloOptions options;
    options.samples = cfg.samples.value_or(kMaskedAuditSamples);
    options.seed = cfg.seed;
    options.inner_samples = cfg.inner_samples;
    options.delta = budget.delta;
    absl::StatusOr<AuditReport> report = ViolationProbabilityMonteCarlo(
        *pair, setting, sigma, budget.epsilon, options);
    if (report.ok()) report->details.emplace_back("sigma", sigma);
    return report;
  }
  if (check == "g-ratio") {
    return GRatioBoundCheck(cfg.q.value_or(5), cfg.t1, cfg.t2);
  }
  if (check == "sphere") {
    const int sphere_n = static_cast<int>(cfg.n.value_or(8));
    Vector v(sphere_n);
    if (cfg.v.empty()) {
      Rng rng = MakeRng(cfg.seed, Stream::kAuditData, 1);
      std::uniform_real_distribution<double> uniform(-1.0, 1.0);
      for (int i = 0; i < sphere_n; ++i) v[i] = uniform(rng);
    } else if (static_cast<int>(cfg.v.size()) == sphere_n) {
      for (int i = 0; i < sphere_n; ++i) v[i] = cfg.v[i];
    } else {
      return absl::InvalidArgumentError(absl::StrFormat(
          "--v has %d entries but --n is %d", cfg.v.size(), sphere_n));
    }
    return SphereIntegralCheck(sphere_n, cfg.q.value_or(4), v, cfg.seed,
                               cfg.samples.value_or(kDefaultSphereSamples));
  }
  if (check == "ratio-bound") {
    absl::StatusOr<NeighborPair> pair = AuditNeighborPair(n, p, cfg.seed);
    if (!pair.ok()) return pair.status();
    return DensityRatioBoundCheckBC(
        *pair, cfg.sigma.value_or(kRatioBoundSigma),
        cfg.samples.value_or(kMaskedAuditSamples), cfg.seed,
        cfg.inner_samples);
  }
  if (check == "quantile-brackets") return QuantileBracketSuite();
  if (check == "chisq-bound") return ChiSquareBoundSuite();
  if (check == "birge") return BirgeTailSuite();
  return absl::InvalidArgumentError(absl::StrCat("unknown check ", check));
}

int RunAudit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::StatusOr<AuditReport> report = RunCheck(cfg);
  if (!report.ok()) return Fail(err, report.status());
  json j = AuditReportToJson(*report);
  j["check"] = cfg.check;
  j["seed"] = cfg.seed;
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!cfg.out.empty()) {
    if (absl::Status s = WriteFile(cfg.out, text); !s.ok()) return Fail(err, s);
  }
  return report->consistent() ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------------- ingest

int RunIngest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(cfg.input);
  if (!text.ok()) return Fail(err, text.status());

  if (!cfg.invert_with.empty()) {
    absl::StatusOr<std::string> record_text = ReadFile(cfg.invert_with);
    if (!record_text.ok()) return Fail(err, record_text.status());
    const json parsed = json::parse(*record_text, nullptr, false);
    absl::StatusOr<ScalingRecord> record =
        parsed.is_discarded()
            ? absl::InvalidArgumentError("not valid JSON")
            : ScalingRecordFromJson(parsed);
    if (!record.ok()) {
      return Fail(err, AsInputError(cfg.invert_with, record.status()));
    }
    absl::StatusOr<NumericTable> table = ParseNumericCsv(*text);
    if (!table.ok()) return Fail(err, AsInputError(cfg.input, table.status()));
    if (static_cast<size_t>(table->values.cols()) != record->scale.size()) {
      return Fail(err, absl::InvalidArgumentError(
                           "column count does not match the scaling record"));
    }
    const std::string csv =
        FormatCsv(InvertScaling(table->values, *record), table->header);
    if (absl::Status s = WriteFile(cfg.out, csv); !s.ok()) return Fail(err, s);
    return kExitOk;
  }

  absl::StatusOr<IngestResult> ingested = Ingest(*text);
  if (!ingested.ok()) {
    return Fail(err, AsInputError(cfg.input, ingested.status()));
  }
  const std::string scaling_path =
      cfg.scaling_out.empty() ? cfg.out + ".scaling.json" : cfg.scaling_out;
  if (absl::Status s =
          WriteFile(cfg.out, FormatCsv(ingested->data.values(),
                                       ingested->header));
      !s.ok()) {
    return Fail(err, s);
  }
  if (absl::Status s = WriteFile(
          scaling_path, ScalingRecordToJson(ingested->scaling).dump(2) + "\n");
      !s.ok()) {
    return Fail(err, s);
  }
  out << json{{"rows", ingested->data.rows()},
              {"cols", ingested->data.cols()},
              {"header", ingested->header},
              {"scaled", cfg.out},
              {"scaling", scaling_path}}
             .dump(2)
      << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  RunConfig cfg;
  absl::StatusOr<uint64_t> default_seed = DefaultSeed();
  if (!default_seed.ok()) return Fail(err, default_seed.status());
  cfg.seed = *default_seed;

  CLI::App app{"Differentially private release of pseudo-data matrices"};
  app.name("maskdp");
  app.require_subcommand(1);

  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed,
                    absl::StrCat("RNG seed (default: $", kSeedEnvVar,
                                 " or 0)"));
  };
  const auto setting_check = CLI::IsMember({"A", "B", "C", "a", "b", "c"});

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Report every sigma bound as JSON");
  calibrate->add_option("--epsilon", cfg.epsilon, "Privacy loss")->required();
  calibrate->add_option("--delta", cfg.delta, "Failure probability")
      ->required();
  calibrate->add_option("--n", cfg.n, "Rows")->required();
  calibrate->add_option("--p", cfg.p, "Columns")->required();
  calibrate->add_option("--out", cfg.out, "Also write the JSON here");

  CLI::App* release =
      app.add_subcommand("release", "Scale a CSV and release pseudo-data");
  release->add_option("--input", cfg.input, "Raw numeric CSV")->required();
  release->add_option("--out-dir", cfg.out_dir, "Output directory")
      ->required();
  release->add_option("--setting", cfg.setting, "A, B or C")
      ->check(setting_check);
  CLI::Option* sigma_opt =
      release->add_option("--sigma", cfg.sigma, "Noise standard deviation");
  release->add_flag("--auto-sigma", cfg.auto_sigma,
                    "Calibrate sigma from --epsilon and --delta")
      ->excludes(sigma_opt);
  release->add_option("--epsilon", cfg.epsilon, "Privacy loss");
  release->add_option("--delta", cfg.delta, "Failure probability");
  release->add_flag("--report-gram", cfg.report_gram,
                    "Check Gram-matrix and OLS invariants of the release");
  add_seed(release);

  CLI::App* table1 = app.add_subcommand(
      "table1", "Emit the sigma comparison table as CSV");
  table1->add_option("--grid", cfg.grid,
                     "Restrict the grid, e.g. epsilon=0.1 delta=0.01,0.001");
  table1->add_option("--diff", cfg.diff, "Reference CSV to compare against");
  table1->add_option("--tol-sigma", cfg.tol_sigma, "Sigma tolerance");
  table1->add_option("--tol-ratio", cfg.tol_ratio, "Ratio tolerance");
  table1->add_option("--out", cfg.out, "Also write the CSV here");

  CLI::App* audit = app.add_subcommand("audit", "Run a numerical audit");
  audit
      ->add_option("--check", cfg.check, "Which audit to run")
      ->required()
      ->check(CLI::IsMember({"violation-A", "violation-BC", "g-ratio",
                             "sphere", "ratio-bound", "quantile-brackets",
                             "chisq-bound", "birge"}));
  audit->add_option("--epsilon", cfg.epsilon, "Privacy loss (default 0.5)");
  audit->add_option("--delta", cfg.delta, "Failure probability (default 0.05)");
  audit->add_option("--n", cfg.n, "Rows (default 4; sphere: ambient dim 8)");
  audit->add_option("--p", cfg.p, "Columns (default 1)");
  audit->add_option("--setting", cfg.setting, "B or C for violation-BC")
      ->check(setting_check);
  audit->add_option("--sigma", cfg.sigma, "Noise level (default: calibrated)");
  audit->add_option("--samples", cfg.samples, "Outer Monte Carlo samples");
  audit->add_option("--inner-samples", cfg.inner_samples,
                    "Haar pool size for masked settings");
  audit->add_option("--q", cfg.q, "G-function order or subspace dimension");
  audit->add_option("--t1", cfg.t1, "g-ratio first argument");
  audit->add_option("--t2", cfg.t2, "g-ratio second argument");
  audit->add_option("--v", cfg.v, "sphere: vector in R^n")->delimiter(',');
  audit->add_option("--out", cfg.out, "Also write the JSON here");
  add_seed(audit);

  CLI::App* ingest =
      app.add_subcommand("ingest", "Scale a numeric CSV into [-1, 1]");
  ingest->add_option("--input", cfg.input, "Numeric CSV")->required();
  ingest->add_option("--out", cfg.out, "Output CSV")->required();
  ingest->add_option("--scaling-out", cfg.scaling_out,
                     "Scaling record path (default: <out>.scaling.json)");
  ingest->add_option("--invert", cfg.invert_with,
                     "Undo scaling using this record instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  if (calibrate->parsed()) return RunCalibrate(cfg, out, err);
  if (release->parsed()) return RunRelease(cfg, out, err);
  if (table1->parsed()) return RunTable1(cfg, out, err);
  if (audit->parsed()) return RunAudit(cfg, out, err);
  return RunIngest(cfg, out, err);
}

}  // namespace maskdp::cli
