// Copyright 2026 The Geodabs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: generate, build, query, motif, shard-stats, eval
// and bench. CSV goes to stdout, diagnostics to stderr. Exit codes: 0 ok,
// 1 usage error, 2 data or format error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodabs/baseline.h"
#include "geodabs/datagen.h"
#include "geodabs/eval.h"
#include "geodabs/index_io.h"
#include "geodabs/motif.h"
#include "geodabs/parallel.h"
#include "geodabs/shard.h"
#include "geodabs/trajectory_io.h"

namespace fs = std::filesystem;
using namespace geodabs;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw DataError("no such file: " + p.string());
}

std::vector<Trajectory> read_input(const fs::path& p) {
  require_file(p);
  return read_trajectories(p);
}

void add_fingerprint_options(CLI::App* cmd, FingerprintParams& p) {
  cmd->add_option("-k", p.k, "k-gram length")->envname("GDAB_K")->capture_default_str();
  cmd->add_option("-t", p.t, "guarantee threshold")->envname("GDAB_T")->capture_default_str();
  cmd->add_option("--depth", p.depth, "normalization depth in bits")
      ->envname("GDAB_DEPTH")
      ->check(CLI::Range(0, kMaxGeohashDepth))
      ->capture_default_str();
  cmd->add_option("--prefix-bits", p.prefix_bits, "geohash prefix bits in a geodab")
      ->envname("GDAB_PREFIX_BITS")
      ->capture_default_str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void print_pr(std::ostream& out, const std::string& label, const std::vector<CurvePoint>& pr) {
  for (const auto& p : pr) out << label << ',' << p.x << ',' << p.y << '\n';
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw DataError("cannot write " + p.string());
  out.precision(10);
  return out;
}

const Trajectory& find_trajectory(const std::vector<Trajectory>& v, TrajectoryId id) {
  for (const auto& s : v) {
    if (s.id == id) return s;
  }
  throw DataError("trajectory " + std::to_string(id) + " not found");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("GDAB_THREADS")) {
    try {
      set_thread_limit(std::stoi(threads));
    } catch (const std::exception&) {
      std::cerr << "error: GDAB_THREADS must be a positive integer\n";
      return kUsageError;
    }
  }
  std::cout.precision(10);

  CLI::App app{"Trajectory similarity search with geodab fingerprints."};
  app.require_subcommand(1);

  // generate
  GenConfig gen;
  fs::path gen_out;
  auto* generate_cmd = app.add_subcommand(
      "generate", "Write a synthetic dataset.\nOutput CSV: file,records");
  generate_cmd->add_option("--seed", gen.seed)->envname("GDAB_SEED")->capture_default_str();
  generate_cmd->add_option("--routes", gen.num_routes)->check(CLI::PositiveNumber)->capture_default_str();
  generate_cmd->add_option("--per-direction", gen.traj_per_direction, "trajectories per route direction")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate_cmd->add_option("--noise", gen.noise_sigma_m, "Gaussian noise sigma in meters")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  generate_cmd->add_option("--speed", gen.speed_mps, "meters per second")->check(CLI::PositiveNumber)->capture_default_str();
  generate_cmd->add_option("--hz", gen.sample_hz, "samples per second")->check(CLI::PositiveNumber)->capture_default_str();
  generate_cmd->add_option("--min-route", gen.min_route_m, "minimum route length in meters")->capture_default_str();
  generate_cmd->add_option("--regions", gen.regions, "road networks spread over Europe")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate_cmd->add_option("--out", gen_out, "output directory")->required();

  // build
  FingerprintParams build_params;
  fs::path build_in, build_index_path;
  auto* build_cmd = app.add_subcommand("build", "Index a trajectory file.\nOutput CSV: trajectories,terms");
  build_cmd->add_option("--in", build_in, "trajectory file")->required();
  build_cmd->add_option("--index", build_index_path, "index file to write")->required();
  add_fingerprint_options(build_cmd, build_params);

  // query
  fs::path query_index, query_file;
  double dmax = 1.0;
  std::size_t limit = kNoLimit;
  auto* query_cmd = app.add_subcommand(
      "query", "Rank indexed trajectories for each query.\nOutput CSV: query_id,rank,trajectory_id,distance");
  query_cmd->add_option("--index", query_index)->required();
  query_cmd->add_option("--query", query_file, "trajectory file of queries")->required();
  query_cmd->add_option("--dmax", dmax, "maximum Jaccard distance")
      ->envname("GDAB_DMAX")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  query_cmd->add_option("--limit", limit, "results per query")->check(CLI::PositiveNumber);

  // motif
  fs::path motif_in, motif_index;
  TrajectoryId motif_a = 0, motif_b = 0;
  double motif_length = 0.0;
  std::size_t motif_points = 0;
  std::optional<double> motif_density;
  std::string motif_method = "geodab";
  FingerprintParams motif_params;
  auto* motif_cmd = app.add_subcommand(
      "motif", "Closest sub-trajectory pair of two trajectories.\n"
               "Output CSV: i_start,i_end,j_start,j_end,distance,method\n"
               "Ranges are half-open raw point indices.");
  motif_cmd->add_option("--in", motif_in, "trajectory file")->required();
  motif_cmd->add_option("--first", motif_a, "id of the first trajectory")->required();
  motif_cmd->add_option("--second", motif_b, "id of the second trajectory")->required();
  motif_cmd->add_option("--method", motif_method)->check(CLI::IsMember({"geodab", "exact"}))->capture_default_str();
  motif_cmd->add_option("--length", motif_length, "motif length in meters (geodab)")->check(CLI::PositiveNumber);
  motif_cmd->add_option("--points", motif_points, "motif length in points (exact)")->check(CLI::PositiveNumber);
  motif_cmd->add_option("--density", motif_density, "fingerprints per meter")->check(CLI::PositiveNumber);
  motif_cmd->add_option("--index", motif_index, "estimate the density from this index");
  add_fingerprint_options(motif_cmd, motif_params);

  // shard-stats
  fs::path shard_index;
  ShardConfig shard_cfg;
  auto* shard_cmd = app.add_subcommand(
      "shard-stats", "Trajectory load per cell, shard and node.\n"
                     "Output CSV: level,key,count then summary,imbalance,<value>");
  shard_cmd->add_option("--index", shard_index)->required();
  shard_cmd->add_option("--shards", shard_cfg.num_shards)->capture_default_str();
  shard_cmd->add_option("--nodes", shard_cfg.num_nodes)->capture_default_str();
  shard_cmd->add_option("--shard-prefix-bits", shard_cfg.prefix_bits)->capture_default_str();

  // eval
  fs::path eval_data, eval_out;
  std::string eval_depths = "36";
  std::string eval_densities;
  FingerprintParams eval_params;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Effectiveness of a generated dataset directory.\n"
              "Writes pr.csv (depth,recall,precision), baseline_pr.csv (depth,recall,precision),\n"
              "roc.csv (fpr,tpr), auc.txt and, with --densities, bench.csv (index,density,mean_ms,p95_ms).\n"
              "Output CSV: metric,value");
  eval_cmd->add_option("--data", eval_data, "directory with trajectories.txt, queries.txt, truth.csv")->required();
  eval_cmd->add_option("--out", eval_out, "output directory")->required();
  eval_cmd->add_option("--depths", eval_depths, "comma-separated normalization depths")->capture_default_str();
  eval_cmd->add_option("--densities", eval_densities, "comma-separated index sizes for the query benchmark");
  add_fingerprint_options(eval_cmd, eval_params);

  // bench
  std::string bench_methods = "dtw,dfd,jaccard";
  std::string bench_lengths = "125,250,500,1000";
  std::string bench_candidates = "10";
  int bench_repeats = 3;
  auto* bench_cmd = app.add_subcommand("bench", "Time scoring one query against c candidates.\nOutput CSV: method,t,c,millis");
  bench_cmd->add_option("--methods", bench_methods)->capture_default_str();
  bench_cmd->add_option("--lengths", bench_lengths)->capture_default_str();
  bench_cmd->add_option("--candidates", bench_candidates)->capture_default_str();
  bench_cmd->add_option("--repeats", bench_repeats)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  auto usage = [](const std::string& what) {
    std::cerr << "error: " << what << '\n';
    return kUsageError;
  };

  try {
    for (auto* params : {&build_params, &motif_params, &eval_params}) {
      try {
        params->validate();
      } catch (const std::invalid_argument& e) {
        return usage(e.what());
      }
    }

    if (*generate_cmd) {
      try {
        gen.validate();
      } catch (const std::invalid_argument& e) {
        return usage(e.what());
      }
      const Dataset data = generate(gen);
      write_dataset(gen_out, data);
      std::cout << "file,records\n"
                << "trajectories.txt," << data.trajectories.size() << '\n'
                << "queries.txt," << data.queries.size() << '\n'
                << "truth.csv," << data.truth.size() << '\n';
    } else if (*build_cmd) {
      const auto trajectories = read_input(build_in);
      if (trajectories.empty()) std::cerr << "warning: " << build_in.string() << " has no trajectories\n";
      const InvertedIndex index = build_index(trajectories, build_params);
      std::size_t silent = 0;
      for (const auto& [id, m] : index.meta()) silent += m.fingerprint_count == 0;
      if (silent > 0) std::cerr << "warning: " << silent << " trajectories are below the noise threshold\n";
      save(index, build_index_path);
      std::cout << "trajectories,terms\n" << index.size() << ',' << index.term_count() << '\n';
    } else if (*query_cmd) {
      require_file(query_index);
      const InvertedIndex index = load(query_index);
      const auto queries = read_input(query_file);
      std::cout << "query_id,rank,trajectory_id,distance\n";
      for (const auto& q : queries) {
        const QueryResult r = index.query(q, dmax, limit);
        if (r.below_noise_threshold) {
          std::cerr << "warning: query " << q.id << " is below the noise threshold\n";
        }
        for (std::size_t i = 0; i < r.results.size(); ++i) {
          std::cout << q.id << ',' << i + 1 << ',' << r.results[i].id << ',' << r.results[i].distance << '\n';
        }
      }
    } else if (*motif_cmd) {
      const auto trajectories = read_input(motif_in);
      const Trajectory& a = find_trajectory(trajectories, motif_a);
      const Trajectory& b = find_trajectory(trajectories, motif_b);
      MotifResult r;
      if (motif_method == "exact") {
        if (motif_points == 0) return usage("--points is required with --method exact");
        if (motif_points > std::min(a.points.size(), b.points.size())) {
          return usage("--points exceeds the shorter trajectory");
        }
        r = motif_exact(a.points, b.points, motif_points);
      } else {
        if (!(motif_length > 0.0)) return usage("--length is required with --method geodab");
        FingerprintDensity density;
        if (motif_density) {
          density.per_meter = *motif_density;
        } else if (!motif_index.empty()) {
          require_file(motif_index);
          density = estimate_density(load(motif_index));
        } else {
          density = estimate_density(build_index(trajectories, motif_params));
        }
        const auto na = normalize(a, motif_params.depth), nb = normalize(b, motif_params.depth);
        r = motif_geodab(winnow(na, motif_params), winnow(nb, motif_params), motif_length, density,
                         motif_params.k, Execution::kParallel);
        r.first = raw_range(na, r.first, a.points.size());
        r.second = raw_range(nb, r.second, b.points.size());
      }
      std::cout << "i_start,i_end,j_start,j_end,distance,method\n"
                << r.first.start << ',' << r.first.end << ',' << r.second.start << ',' << r.second.end
                << ',' << r.distance << ',' << motif_method << '\n';
    } else if (*shard_cmd) {
      try {
        shard_cfg.validate();
      } catch (const std::invalid_argument& e) {
        return usage(e.what());
      }
      require_file(shard_index);
      const InvertedIndex index = load(shard_index);
      if (shard_cfg.prefix_bits > index.params().prefix_bits) {
        return usage("--shard-prefix-bits exceeds the index's prefix bits");
      }
      const LoadReport report = distribution_report(index, shard_cfg);
      std::cout << "level,key,count\n";
      for (const auto& [cell, n] : report.per_cell) std::cout << "cell," << cell << ',' << n << '\n';
      for (const auto& [shard, n] : report.per_shard) std::cout << "shard," << shard << ',' << n << '\n';
      for (std::size_t i = 0; i < report.per_node.size(); ++i) {
        std::cout << "node," << i << ',' << report.per_node[i] << '\n';
      }
      std::cout << "summary,imbalance," << report.imbalance << '\n';
    } else if (*eval_cmd) {
      std::vector<int> depths;
      std::vector<std::size_t> densities;
      try {
        for (const auto& d : split(eval_depths, ',')) depths.push_back(std::stoi(d));
        if (!eval_densities.empty()) {
          for (const auto& d : split(eval_densities, ',')) densities.push_back(std::stoul(d));
        }
      } catch (const std::exception&) {
        return usage("--depths and --densities take comma-separated integers");
      }
      for (int d : depths) {
        if (d < 0 || d > kMaxGeohashDepth) return usage("depth " + std::to_string(d) + " out of range");
      }
      const auto trajectories = read_input(eval_data / "trajectories.txt");
      const auto queries = read_input(eval_data / "queries.txt");
      require_file(eval_data / "truth.csv");
      const GroundTruth truth = read_truth(eval_data / "truth.csv");
      fs::create_directories(eval_out);

      const auto sweep = normalization_sweep(trajectories, queries, truth, depths, eval_params);
      auto pr_out = open_out(eval_out / "pr.csv");
      pr_out << "depth,recall,precision\n";
      for (const auto& c : sweep) print_pr(pr_out, std::to_string(c.depth), c.pr);

      const InvertedIndex index = build_index(trajectories, eval_params);
      const QueryResults results = query_all(index, queries);
      const GeohashIndex geohash = build_geohash_index(trajectories, eval_params.depth);
      const QueryResults baseline = run_queries(geohash, eval_params.depth, queries);
      auto base_out = open_out(eval_out / "baseline_pr.csv");
      base_out << "depth,recall,precision\n";
      const auto base_pr = pr_curve(baseline, truth);
      print_pr(base_out, std::to_string(eval_params.depth), base_pr);

      const RocCurve roc = roc_auc(results, truth, trajectories.size());
      auto roc_out = open_out(eval_out / "roc.csv");
      roc_out << "fpr,tpr\n";
      for (const auto& p : roc.points) roc_out << p.x << ',' << p.y << '\n';
      open_out(eval_out / "auc.txt") << roc.auc << '\n';

      if (!densities.empty()) {
        auto bench_out = open_out(eval_out / "bench.csv");
        bench_out << "index,density,mean_ms,p95_ms\n";
        for (const auto& row : query_bench(trajectories, queries, densities, eval_params)) {
          bench_out << row.index << ',' << row.density << ',' << row.mean_ms << ',' << row.p95_ms << '\n';
        }
      }

      const auto pr = pr_curve(results, truth);
      std::cout << "metric,value\n"
                << "averaging,micro\n"
                << "auc," << roc.auc << '\n'
                << "pr_area," << pr_area(pr) << '\n'
                << "baseline_pr_area," << pr_area(base_pr) << '\n'
                << "precision_at_10," << mean_precision_at(results, truth, 10) << '\n'
                << "baseline_precision_at_10," << mean_precision_at(baseline, truth, 10) << '\n';
      for (const auto& c : sweep) std::cout << "pr_area_depth_" << c.depth << ',' << c.area << '\n';
    } else if (*bench_cmd) {
      std::vector<DistanceMethod> methods;
      std::vector<std::size_t> lengths, candidates;
      try {
        for (const auto& m : split(bench_methods, ',')) methods.push_back(parse_method(m));
        for (const auto& t : split(bench_lengths, ',')) lengths.push_back(std::stoul(t));
        for (const auto& c : split(bench_candidates, ',')) candidates.push_back(std::stoul(c));
      } catch (const std::exception& e) {
        return usage(std::string("bad bench list: ") + e.what());
      }
      std::cout << "method,t,c,millis\n";
      for (auto m : methods) {
        for (auto t : lengths) {
          for (auto c : candidates) {
            const TimingRecord r = bench_distance(m, t, c, bench_repeats);
            std::cout << method_name(r.method) << ',' << r.length << ',' << r.candidates << ','
                      << r.millis << '\n';
          }
        }
      }
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const IndexFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
