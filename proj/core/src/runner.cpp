#include "lab/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lab/constants.hpp"
#include "lab/decomp.hpp"
#include "lab/maximal.hpp"
#include "lab/rational.hpp"
#include "lab/verify.hpp"
#include "lab/weight.hpp"

namespace lab {

namespace fs = std::filesystem;

namespace {

struct ReportRow {
  std::string theorem;
  std::string model;
  std::string weight_id;
  std::string p;  // parameter column: p, q or lambda depending on the check
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  std::string witness;
  bool pass = true;
};

struct ConstantsRow {
  std::string weight_id;
  double p = 0;
  double ap = 0;
  double a1 = 0;
  double exp_const = 0;
  double fw = 0;
};

struct WeightTask {
  std::string id;
  Weight weight;
};

struct TaskOutput {
  std::vector<ReportRow> rows;
  std::vector<ConstantsRow> constants;
  std::vector<std::pair<std::string, std::string>> cz_files;  // name, content
  std::vector<std::string> rational_notes;
};

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

ReportRow row_from_report(const VerificationReport& rep, const std::string& model,
                          const std::string& weight_id, const std::string& param) {
  ReportRow row;
  row.theorem = theorem_name(rep.id);
  row.model = model;
  row.weight_id = weight_id;
  row.p = param;
  row.lhs = rep.lhs;
  row.rhs = rep.rhs;
  row.ratio = rep.ratio;
  row.witness = sanitize(rep.witness);
  row.pass = rep.pass;
  return row;
}

std::vector<WeightTask> expand_weights(const GroupModel& model, const ExperimentConfig& cfg) {
  std::vector<WeightTask> tasks;
  for (const WeightSpec& ws : cfg.weights) {
    if (const auto* pw = std::get_if<PowerWeightSpec>(&ws)) {
      std::ostringstream id;
      id << "power{a=" << pw->a << "}";
      tasks.push_back({id.str(), power_weight(model, pw->a)});
    } else if (const auto* rw = std::get_if<RandomWeightSpec>(&ws)) {
      for (int k = 0; k < rw->count; ++k) {
        const std::uint64_t seed = rw->seed + static_cast<std::uint64_t>(k);
        std::ostringstream id;
        id << "random{seed=" << seed << "}";
        tasks.push_back({id.str(), random_weight(model, {rw->log_min, rw->log_max}, seed)});
      }
    } else {
      const auto& fw = std::get<FileWeightSpec>(ws);
      std::vector<double> values;
      if (fw.path.size() >= 5 && fw.path.substr(fw.path.size() - 5) == ".json")
        values = read_values_json(fw.path);
      else
        values = read_values_csv(fw.path);
      check_weight_range(values);
      tasks.push_back({"file{" + fs::path(fw.path).filename().string() + "}",
                       Weight(model, std::move(values))});
    }
  }
  return tasks;
}

std::vector<double> lambda_grid(const GroupModel& model, const Weight& w, const BaseSet& u,
                                double rho) {
  const ElementSet h = hat(model, u);
  const double base = average(model, w.values(), h);
  std::vector<double> grid;
  double lam = base;
  for (int k = 1; k <= 8; ++k) {
    lam *= rho;
    grid.push_back(lam);
  }
  return grid;
}

TaskOutput run_weight(const GroupModel& model, const ExperimentConfig& cfg,
                      const WeightTask& task, int weight_index) {
  TaskOutput out;
  const std::string model_name = model.name();
  const Weight& w = task.weight;

  // constants.csv rows: the A_p constant per grid p plus the three
  // p-independent constants.
  const double a1 = ap_constant(model, w, 1.0).value;
  const double expc = ainfty_exp(model, w).value;
  const double fw = ainfty_fw(model, w).value;
  for (double p : cfg.p_grid)
    out.constants.push_back({task.id, p, ap_constant(model, w, p).value, a1, expc, fw});

  if (cfg.precision == PrecisionMode::Rational && model.counting_measure()) {
    // Exact cross-check: recompute the rational-computable constants from the
    // exact binary values of the weight and compare at 1e-12.
    rational::RationalValues rw(w.values().size());
    for (size_t i = 0; i < rw.size(); ++i) rw[i] = rational::Rational(w.values()[i]);
    const double fw_rel = rational::relative_error(fw, rational::ainfty_fw(model, rw));
    const double a1_rel = rational::relative_error(a1, rational::a1_constant(model, rw));
    std::ostringstream note;
    note << task.id << ": rational cross-check rel.err fw=" << format_double(fw_rel)
         << " a1=" << format_double(a1_rel) << (fw_rel <= 1e-12 && a1_rel <= 1e-12 ? "" : " MISMATCH");
    out.rational_notes.push_back(note.str());
  }

  for (CheckKind check : cfg.checks) {
    switch (check) {
      case CheckKind::RHI:
        out.rows.push_back(row_from_report(check_rhi(model, w), model_name, task.id, ""));
        break;
      case CheckKind::A1:
        out.rows.push_back(row_from_report(check_a1(model, w), model_name, task.id, ""));
        break;
      case CheckKind::OPEN:
        for (double p : cfg.p_grid)
          out.rows.push_back(
              row_from_report(check_open_property(model, w, p), model_name, task.id, format_double(p)));
        break;
      case CheckKind::DUALITY:
        for (double p : cfg.p_grid)
          out.rows.push_back(
              row_from_report(check_duality(model, w, p), model_name, task.id, format_double(p)));
        break;
      case CheckKind::BUCKLEY:
        for (double p : cfg.p_grid) {
          const BuckleyReport rep = check_buckley(model, w, p);
          out.rows.push_back(row_from_report(rep.report, model_name, task.id, format_double(p)));
        }
        break;
      case CheckKind::WEAK:
        for (double q : cfg.q_grid) {
          const GroupFunction spike = GroupFunction::indicator(model, {0});
          VerificationReport rep = check_weak_type(model, w, q, spike);
          rep.witness += ";f=spike{0}";
          out.rows.push_back(row_from_report(rep, model_name, task.id, format_double(q)));

          const GroupFunction rnd =
              random_function(model, 1000 + static_cast<std::uint64_t>(weight_index));
          VerificationReport rep2 = check_weak_type(model, w, q, rnd);
          rep2.witness += ";f=random";
          out.rows.push_back(row_from_report(rep2, model_name, task.id, format_double(q)));
        }
        break;
      case CheckKind::CZ: {
        const BaseSet u = model.base_set(0, model.index_max());
        int k = 0;
        for (double lam : lambda_grid(model, w, u, cfg.lambda_rho)) {
          ++k;
          const CZFamily fam = cz_decompose(model, u, w, lam);
          const CZCheckReport rep = verify_cz(model, fam, w);
          ReportRow row;
          row.theorem = "CZ";
          row.model = model_name;
          row.weight_id = task.id;
          row.p = format_double(lam);
          row.lhs = rep.omega_mass;
          const double d2 = model.doubling_constant() * model.doubling_constant();
          row.rhs = d2 * rep.items_mass;
          row.ratio = row.rhs > 0 ? row.lhs / row.rhs : 0.0;
          std::ostringstream witness;
          witness << "items=" << rep.item_count << ";min_avg_margin="
                  << format_double(rep.min_average_margin);
          if (!rep.pass) witness << ";failure=" << rep.failure;
          row.witness = sanitize(witness.str());
          row.pass = rep.pass;
          out.rows.push_back(row);

          std::ostringstream fname;
          fname << "w" << weight_index << "_lam" << k << ".json";
          out.cz_files.emplace_back(fname.str(), cz_family_to_json(fam));
        }
        break;
      }
      case CheckKind::LOCALIZATION: {
        const BaseSet u = model.base_set(0, model.index_max());
        for (double lam : lambda_grid(model, w, u, cfg.lambda_rho)) {
          const LocalizationReport rep = localization_check(model, u, w, lam);
          ReportRow row;
          row.theorem = "LOCALIZATION";
          row.model = model_name;
          row.weight_id = task.id;
          row.p = format_double(lam);
          row.lhs = rep.checked_points > 0 ? rep.min_slack : 0.0;
          row.rhs = 0.0;
          row.ratio = 0.0;
          std::ostringstream witness;
          witness << "checked=" << rep.checked_points << ";items=" << rep.item_count
                  << ";L=" << format_double(std::pow(model.doubling_constant(), 6.0));
          if (rep.checked_points == 0) witness << ";vacuous";
          row.witness = sanitize(witness.str());
          row.pass = rep.pass;
          out.rows.push_back(row);
        }
        break;
      }
    }
  }
  return out;
}

void write_reports(const ExperimentConfig& cfg, const std::vector<ReportRow>& rows,
                   const std::vector<ConstantsRow>& constants,
                   const std::vector<std::pair<std::string, std::string>>& cz_files,
                   const std::vector<std::string>& rational_notes, std::ostream& log) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  const bool want_csv = cfg.format != ReportFormat::Json;
  const bool want_json = cfg.format != ReportFormat::Csv;

  if (want_csv) {
    std::ofstream csv(dir / "report.csv");
    csv << "theorem_id,model,weight_id,p,lhs,rhs,ratio,witness,pass\n";
    for (const ReportRow& r : rows) {
      csv << r.theorem << ',' << r.model << ',' << r.weight_id << ',' << r.p << ','
          << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.ratio)
          << ',' << r.witness << ',' << (r.pass ? "true" : "false") << '\n';
    }
  }
  if (want_json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const ReportRow& r : rows) {
      nlohmann::ordered_json jr;
      jr["theorem_id"] = r.theorem;
      jr["model"] = r.model;
      jr["weight_id"] = r.weight_id;
      jr["p"] = r.p;
      jr["lhs"] = r.lhs;
      jr["rhs"] = r.rhs;
      jr["ratio"] = r.ratio;
      jr["witness"] = r.witness;
      jr["pass"] = r.pass;
      j.push_back(std::move(jr));
    }
    std::ofstream out(dir / "report.json");
    out << j.dump(2) << "\n";
  }

  {
    std::ofstream csv(dir / "constants.csv");
    csv << "weight_id,p,ap,a1,ainfty_exp,ainfty_fw\n";
    for (const ConstantsRow& r : constants) {
      csv << r.weight_id << ',' << format_double(r.p) << ',' << format_double(r.ap) << ','
          << format_double(r.a1) << ',' << format_double(r.exp_const) << ','
          << format_double(r.fw) << '\n';
    }
  }

  if (!cz_files.empty()) {
    fs::create_directories(dir / "cz_families");
    for (const auto& [name, content] : cz_files) {
      std::ofstream out(dir / "cz_families" / name);
      out << content << "\n";
    }
  }

  // summary.txt: worst ratio and pass counts per theorem, sorted by name.
  std::map<std::string, std::pair<double, std::pair<int, int>>> per_theorem;
  for (const ReportRow& r : rows) {
    auto& [worst, counts] = per_theorem[r.theorem];
    worst = std::max(worst, r.ratio);
    ++counts.second;
    if (r.pass) ++counts.first;
  }
  bool all_pass = true;
  for (const ReportRow& r : rows) all_pass = all_pass && r.pass;

  std::ofstream summary(dir / "summary.txt");
  summary << "rows: " << rows.size() << "\n";
  for (const auto& [name, data] : per_theorem) {
    summary << name << ": pass " << data.second.first << "/" << data.second.second
            << " worst_ratio " << format_double(data.first) << "\n";
  }
  for (const std::string& note : rational_notes) summary << "rational: " << note << "\n";
  summary << "status: " << (all_pass ? "PASS" : "FAIL") << "\n";

  log << "wrote " << rows.size() << " report rows to " << dir.string() << " ("
      << (all_pass ? "PASS" : "FAIL") << ")\n";
}

}  // namespace

int worker_thread_count() {
  if (const char* env = std::getenv("LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const GroupModel model = cfg.model.build();
  const std::vector<WeightTask> tasks = expand_weights(model, cfg);

  std::vector<TaskOutput> outputs(tasks.size());
  const int threads = std::min<int>(worker_thread_count(), static_cast<int>(tasks.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i)
      outputs[i] = run_weight(model, cfg, tasks[i], static_cast<int>(i));
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
        outputs[i] = run_weight(model, cfg, tasks[i], static_cast<int>(i));
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<ReportRow> rows;
  std::vector<ConstantsRow> constants;
  std::vector<std::pair<std::string, std::string>> cz_files;
  std::vector<std::string> rational_notes;
  for (TaskOutput& o : outputs) {
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    constants.insert(constants.end(), o.constants.begin(), o.constants.end());
    cz_files.insert(cz_files.end(), o.cz_files.begin(), o.cz_files.end());
    rational_notes.insert(rational_notes.end(), o.rational_notes.begin(), o.rational_notes.end());
  }
  write_reports(cfg, rows, constants, cz_files, rational_notes, log);

  for (const ReportRow& r : rows)
    if (!r.pass) return 1;
  return 0;
}

void describe_model(const ModelSpec& spec, std::ostream& out) {
  const GroupModel model = spec.build();
  out << "model: " << model.name() << "\n";
  out << "elements: " << model.size() << "\n";
  out << "index_range: [" << model.index_min() << ", " << model.index_max() << "]\n";
  out << "doubling_D: " << format_double(model.doubling_constant()) << " (verified exhaustively)\n";
  out << "distinct_base_sets: " << model.distinct_base_sets().size() << "\n";
  out << std::setw(4) << "i" << std::setw(10) << "|U_i|" << std::setw(10) << "theta(i)" << "\n";
  for (int i = model.index_min(); i <= model.index_max(); ++i) {
    out << std::setw(4) << i << std::setw(10) << model.unit_set(i).size() << std::setw(10)
        << model.theta(i) << "\n";
  }
}

}  // namespace lab
