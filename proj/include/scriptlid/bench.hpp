// Copyright 2026 The scriptlid Authors
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

#ifndef SCRIPTLID_BENCH_HPP
#define SCRIPTLID_BENCH_HPP

#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/classifier.hpp"
#include "scriptlid/dataset.hpp"
#include "scriptlid/eval.hpp"

#ifdef __unix__
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>
#endif

namespace scriptlid {

/// A named label-only predictor. Internal models plug in directly; external
/// tools plug in through the line protocol below. An abstaining predictor
/// should emit "und", which never matches a gold label and therefore counts
/// as an error.
struct NamedPredictor {
  std::string name;
  std::function<std::string(std::string_view)> predict_label;
};

inline NamedPredictor make_model_predictor(std::string name,
                                           std::shared_ptr<const Classifier> model) {
  return NamedPredictor{std::move(name), [model = std::move(model)](std::string_view text) {
                          return model->predict(text).label;
                        }};
}

#ifdef __unix__
/// Adapter for external language identifiers: spawns the command once and
/// speaks a line protocol over its stdin/stdout — one sentence in, one
/// ISO 639-3 code (or "und") out.
class LinePredictorProcess {
 public:
  explicit LinePredictorProcess(const std::vector<std::string>& argv) {
    if (argv.empty()) throw std::invalid_argument("line predictor: empty command");
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
      throw std::runtime_error("line predictor: pipe failed");
    }
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("line predictor: fork failed");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      std::vector<char*> args;
      for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
      args.push_back(nullptr);
      execvp(args[0], args.data());
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_ = fdopen(from_child[0], "r");
    out_ = fdopen(to_child[1], "w");
    if (in_ == nullptr || out_ == nullptr) {
      throw std::runtime_error("line predictor: fdopen failed");
    }
  }

  ~LinePredictorProcess() {
    if (out_ != nullptr) fclose(out_);
    if (in_ != nullptr) fclose(in_);
    if (pid_ > 0) {
      int status = 0;
      waitpid(pid_, &status, 0);
    }
  }

  LinePredictorProcess(const LinePredictorProcess&) = delete;
  LinePredictorProcess& operator=(const LinePredictorProcess&) = delete;

  std::string predict(std::string_view sentence) {
    std::string line(sentence);
    for (char& c : line) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    line.push_back('\n');
    if (fwrite(line.data(), 1, line.size(), out_) != line.size() || fflush(out_) != 0) {
      throw std::runtime_error("line predictor: write failed (process gone?)");
    }
    std::string reply;
    int ch;
    while ((ch = fgetc(in_)) != EOF && ch != '\n') reply.push_back(static_cast<char>(ch));
    if (reply.empty() && ch == EOF) {
      throw std::runtime_error("line predictor: process closed its output");
    }
    while (!reply.empty() && (reply.back() == ' ' || reply.back() == '\r')) reply.pop_back();
    return reply.empty() ? std::string("und") : reply;
  }

 private:
  pid_t pid_ = -1;
  FILE* in_ = nullptr;
  FILE* out_ = nullptr;
};

inline NamedPredictor make_subprocess_predictor(std::string name,
                                                const std::vector<std::string>& argv) {
  auto proc = std::make_shared<LinePredictorProcess>(argv);
  return NamedPredictor{std::move(name), [proc](std::string_view text) {
                          return proc->predict(text);
                        }};
}
#endif  // __unix__

struct SignificanceRow {
  std::string dataset;
  SignificanceResult result;
};

/// One evaluation report per (predictor, dataset) plus significance rows for
/// the designated root/hierarchical pair.
struct BenchmarkResult {
  std::vector<std::string> model_names;
  std::vector<std::string> dataset_names;
  std::map<std::pair<std::string, std::string>, EvaluationReport> reports;  // (model, dataset)
  std::vector<SignificanceRow> significance;

  const EvaluationReport& report(const std::string& model, const std::string& dataset) const {
    auto it = reports.find({model, dataset});
    if (it == reports.end()) {
      throw std::out_of_range("no report for (" + model + ", " + dataset + ")");
    }
    return it->second;
  }
};

/// Runs every predictor over every dataset. When `root_name` and
/// `hier_name` are both given (and present), a significance row per dataset
/// compares their macro-F1 scores.
inline BenchmarkResult benchmark(const std::vector<NamedPredictor>& predictors,
                                 const std::vector<std::pair<std::string, Dataset>>& datasets,
                                 const std::string& root_name = "",
                                 const std::string& hier_name = "", double alpha = 0.01) {
  if (predictors.empty()) throw std::invalid_argument("benchmark: no predictors");
  if (datasets.empty()) throw std::invalid_argument("benchmark: no datasets");
  BenchmarkResult result;
  for (const auto& p : predictors) result.model_names.push_back(p.name);
  for (const auto& [dname, ds] : datasets) {
    result.dataset_names.push_back(dname);
    std::vector<std::string> gold;
    gold.reserve(ds.entries.size());
    for (const auto& e : ds.entries) gold.push_back(e.lang);
    for (const auto& p : predictors) {
      std::vector<std::string> preds;
      preds.reserve(ds.entries.size());
      for (const auto& e : ds.entries) preds.push_back(p.predict_label(e.text));
      auto report = score(preds, gold);
      report.dataset_name = dname;
      report.noise_level = ds.noise_level;
      result.reports.emplace(std::make_pair(p.name, dname), std::move(report));
    }
  }
  if (!root_name.empty() && !hier_name.empty()) {
    bool have_root = false, have_hier = false;
    for (const auto& p : predictors) {
      have_root = have_root || p.name == root_name;
      have_hier = have_hier || p.name == hier_name;
    }
    if (have_root && have_hier) {
      for (const auto& dname : result.dataset_names) {
        const auto& root_rep = result.report(root_name, dname);
        const auto& hier_rep = result.report(hier_name, dname);
        if (root_rep.n <= 30) continue;  // Z-test precondition
        SignificanceRow row;
        row.dataset = dname;
        row.result = significance_test(root_rep.macro_f1, hier_rep.macro_f1, root_rep.n, alpha);
        result.significance.push_back(std::move(row));
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Report writers

namespace detail {

inline std::string fmt_score(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << v;
  return ss.str();
}

}  // namespace detail

/// Summary table: one row per (dataset, metric), one column per model.
inline void write_summary(const BenchmarkResult& r, std::ostream& out, bool tsv = true) {
  const char sep = tsv ? '\t' : ' ';
  out << "dataset" << sep << "metric";
  for (const auto& m : r.model_names) out << sep << m;
  out << '\n';
  static const char* metric_names[3] = {"precision", "recall", "f1"};
  for (const auto& d : r.dataset_names) {
    for (int metric = 0; metric < 3; ++metric) {
      out << d << sep << metric_names[metric];
      for (const auto& m : r.model_names) {
        const auto& rep = r.report(m, d);
        const double v = metric == 0   ? rep.macro_precision
                         : metric == 1 ? rep.macro_recall
                                       : rep.macro_f1;
        out << sep << detail::fmt_score(v);
      }
      out << '\n';
    }
  }
}

/// Per-language F1 breakdown: one row per (dataset, language).
inline void write_per_language(const BenchmarkResult& r, std::ostream& out, bool tsv = true) {
  const char sep = tsv ? '\t' : ' ';
  out << "dataset" << sep << "language";
  for (const auto& m : r.model_names) out << sep << m;
  out << '\n';
  for (const auto& d : r.dataset_names) {
    std::vector<std::string> langs;
    {
      const auto& first = r.report(r.model_names.front(), d);
      for (const auto& [lang, s] : first.per_class) {
        (void)s;
        langs.push_back(lang);
      }
    }
    for (const auto& lang : langs) {
      out << d << sep << lang;
      for (const auto& m : r.model_names) {
        const auto& rep = r.report(m, d);
        auto it = rep.per_class.find(lang);
        out << sep << (it == rep.per_class.end() ? "-" : detail::fmt_score(it->second.f1));
      }
      out << '\n';
    }
  }
}

/// Significance rows: dataset, test sample count, delta, verdict.
inline void write_significance(const BenchmarkResult& r, std::ostream& out, bool tsv = true) {
  const char sep = tsv ? '\t' : ' ';
  out << "dataset" << sep << "test_samples" << sep << "delta" << sep << "upper_bound" << sep
      << "significant\n";
  for (const auto& row : r.significance) {
    out << row.dataset << sep << row.result.n << sep << detail::fmt_score(row.result.delta) << sep
        << std::setprecision(6) << std::fixed << row.result.upper_bound << sep
        << (row.result.significant ? "yes" : "no") << '\n';
  }
}

/// Per-class detail for one report.
inline void write_report(const EvaluationReport& rep, std::ostream& out, bool tsv = true) {
  const char sep = tsv ? '\t' : ' ';
  out << "class" << sep << "precision" << sep << "recall" << sep << "f1" << sep << "support\n";
  for (const auto& [label, s] : rep.per_class) {
    out << label << sep << detail::fmt_score(s.precision) << sep << detail::fmt_score(s.recall)
        << sep << detail::fmt_score(s.f1) << sep << s.support << '\n';
  }
  out << "macro" << sep << detail::fmt_score(rep.macro_precision) << sep
      << detail::fmt_score(rep.macro_recall) << sep << detail::fmt_score(rep.macro_f1) << sep
      << rep.n << '\n';
}

}  // namespace scriptlid

#endif  // SCRIPTLID_BENCH_HPP
