#include "cli.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "clientnet/baselines.hpp"
#include "clientnet/error.hpp"
#include "clientnet/evaluation.hpp"
#include "clientnet/graph_io.hpp"
#include "clientnet/http_api.hpp"
#include "clientnet/nora.hpp"
#include "clientnet/scores_io.hpp"
#include "clientnet/service.hpp"
#include "clientnet/synthgen.hpp"

namespace clientnet::cli {

namespace {

namespace fs = std::filesystem;

struct GraphSource {
  std::string snapshot;
  std::string nodes;
  std::string edges;
  std::string root;
  bool directed = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--snapshot", snapshot, "Snapshot written by `ingest`")->envname("CLIENTNET_SNAPSHOT");
    cmd.add_option("--nodes", nodes, "Node file")->envname("CLIENTNET_NODES");
    cmd.add_option("--edges", edges, "Edge file")->envname("CLIENTNET_EDGES");
    cmd.add_option("--root", root, "Root company id")->envname("CLIENTNET_ROOT");
    cmd.add_flag("--directed", directed, "Treat edges as directed source -> target");
  }

  EcosystemGraph load() const {
    if (!snapshot.empty()) return load_snapshot(snapshot);
    if (nodes.empty() || edges.empty() || root.empty()) {
      throw Error(ErrorCode::InvalidConfig, "give --snapshot, or --nodes, --edges and --root");
    }
    return load_graph(nodes, edges, root, LoadOptions{directed});
  }
};

struct ScoreSettings {
  std::string algorithm = "nora";
  std::string variant = "d";
  std::string split = "count";
  AlgorithmSettings settings;

  void attach(CLI::App& cmd, bool with_algorithm) {
    if (with_algorithm) {
      cmd.add_option("--algorithm", algorithm, "nora, rpr or propflow")
          ->check(CLI::IsMember({"nora", "rpr", "propflow"}))
          ->capture_default_str();
    }
    cmd.add_option("--variant", variant, "NORA variant, d or t")
        ->check(CLI::IsMember({"d", "t"}))
        ->envname("CLIENTNET_VARIANT")
        ->capture_default_str();
    cmd.add_option("--gamma", settings.nora.gamma, "NORA decay, in (0, 1)")
        ->envname("CLIENTNET_GAMMA")
        ->capture_default_str();
    cmd.add_option("--split", split, "NORA flow split across prime edges: count or weight")
        ->check(CLI::IsMember({"count", "weight"}))
        ->capture_default_str();
    cmd.add_option("--alpha", settings.rooted_pagerank.alpha, "Rooted PageRank restart probability")
        ->capture_default_str();
    cmd.add_option("--tolerance", settings.rooted_pagerank.tolerance, "Rooted PageRank L1 tolerance")
        ->capture_default_str();
    cmd.add_option("--max-iterations", settings.rooted_pagerank.max_iterations, "Rooted PageRank iteration cap")
        ->capture_default_str();
    cmd.add_option("--depth", settings.propflow.depth, "PropFlow depth")->capture_default_str();
  }

  AlgorithmSettings resolved() const {
    AlgorithmSettings s = settings;
    s.nora.split = split == "weight" ? FlowSplit::EdgeWeight : FlowSplit::EdgeCount;
    return s;
  }

  std::string algorithm_name() const { return algorithm == "nora" ? "nora-" + variant : algorithm; }

  double parameter() const {
    if (algorithm == "rpr") return settings.rooted_pagerank.alpha;
    if (algorithm == "propflow") return settings.propflow.depth;
    return settings.nora.gamma;
  }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  return out;
}

void cmd_generate(const GenConfig& config, const std::string& out_dir, std::ostream& out) {
  const EcosystemGraph g = generate(config);
  fs::create_directories(out_dir);
  const fs::path nodes = fs::path(out_dir) / "nodes.tsv";
  const fs::path edges = fs::path(out_dir) / "edges.tsv";
  save_graph(nodes, edges, g);
  out << "wrote " << g.node_count() << " nodes to " << nodes.string() << "\n"
      << "wrote " << g.edge_count() << " edges to " << edges.string() << "\n"
      << "root " << g.id(g.root()) << "\n";
}

void cmd_ingest(const GraphSource& source, const std::string& out_path, std::ostream& out) {
  const EcosystemGraph g = source.load();
  save_snapshot(out_path, g);
  const ClientPartition p = g.client_partition();
  out << "nodes " << g.node_count() << "\n"
      << "edges " << g.edge_count() << "\n"
      << "clients " << p.clients.size() << " (root-only " << p.root_only_clients.size() << ")\n"
      << "non-clients " << p.non_clients.size() << "\n";
}

void cmd_score(const GraphSource& source, const ScoreSettings& scoring, const std::string& out_path,
               std::ostream& out) {
  const EcosystemGraph g = source.load();
  const ScoringAlgorithm algo = make_algorithm(scoring.algorithm_name(), scoring.resolved());
  const std::vector<double> scores = algo.score(g, g.root());
  if (out_path.empty() || out_path == "-") {
    write_scores(out, g, scores, algo.name, scoring.parameter());
  } else {
    save_scores(out_path, g, scores, algo.name, scoring.parameter());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

struct EvaluateArgs {
  std::string algorithms = "rpr,propflow,nora-d,nora-t";
  std::string scope = "fold";
  std::string out_path;
  std::string folds_out;
  EvaluationOptions options;
};

void cmd_evaluate(const GraphSource& source, const ScoreSettings& scoring, const EvaluateArgs& args,
                  std::ostream& out) {
  EcosystemGraph g = source.load();
  std::vector<ScoringAlgorithm> algorithms;
  for (const std::string& name : split_list(args.algorithms)) {
    algorithms.push_back(make_algorithm(name, scoring.resolved()));
  }
  if (algorithms.empty()) throw Error(ErrorCode::InvalidConfig, "no algorithms selected");
  EvaluationOptions options = args.options;
  options.scope = args.scope == "fold" ? CandidateScope::Fold : CandidateScope::FoldAndNonClients;
  const EvaluationReport report = run_evaluation(g, algorithms, options);
  if (args.out_path.empty() || args.out_path == "-") {
    write_summary_csv(out, report);
  } else {
    std::ofstream file = open_output(args.out_path);
    write_summary_csv(file, report);
  }
  if (!args.folds_out.empty()) {
    std::ofstream file = open_output(args.folds_out);
    write_fold_csv(file, report);
  }
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string scores;
  std::string static_dir;
  ExplorerOptions explorer;
};

std::shared_ptr<const ExplorerService> build_service(const GraphSource& source, const ScoreSettings& scoring,
                                                     const ServeArgs& args) {
  EcosystemGraph g = source.load();
  std::vector<double> scores;
  if (!args.scores.empty()) {
    scores = load_scores(args.scores, g).scores;
  } else {
    FlowOptions flow = scoring.resolved().nora;
    scores = nora_score(g, g.root(), scoring.variant == "t" ? NoraVariant::T : NoraVariant::D, flow).scores;
  }
  return std::make_shared<const ExplorerService>(std::move(g), std::move(scores), args.explorer);
}

// SIGINT/SIGTERM stop the server; SIGHUP reloads the graph and scores and
// swaps the snapshot in.
int cmd_serve(const GraphSource& source, const ScoreSettings& scoring, const ServeArgs& args, std::ostream& out,
              std::ostream& err) {
  HttpOptions http;
  http.static_dir = args.static_dir;
  HttpServer server(build_service(source, scoring, args), http);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGHUP);
  sigaddset(&signals, SIGUSR1);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  std::thread watcher([&] {
    for (;;) {
      int sig = 0;
      if (sigwait(&signals, &sig) != 0) continue;
      if (sig == SIGHUP) {
        try {
          server.replace_service(build_service(source, scoring, args));
          err << "reloaded snapshot\n";
        } catch (const std::exception& e) {
          err << "reload failed, keeping the current snapshot: " << e.what() << "\n";
        }
        continue;
      }
      server.stop();
      return;
    }
  });

  out << "serving on http://" << args.host << ":" << args.port << "\n" << std::flush;
  const bool ok = server.listen(args.host, args.port);
  pthread_kill(watcher.native_handle(), SIGUSR1);
  watcher.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  if (!ok) {
    err << "error: cannot listen on " << args.host << ":" << args.port << "\n";
    return kRuntimeError;
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Client network ranking engine", "clientnet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "clientnet 0.1.0");

  GenConfig gen;
  std::string gen_out = ".";
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic node and edge file pair");
  generate_cmd->add_option("--out-dir", gen_out, "Output directory")->capture_default_str();
  generate_cmd->add_option("--companies", gen.company_count, "Companies besides the root")->capture_default_str();
  generate_cmd->add_option("--persons", gen.person_count, "Persons")->capture_default_str();
  generate_cmd->add_option("--client-ratio", gen.client_ratio, "Share of companies that are clients")
      ->capture_default_str();
  generate_cmd->add_option("--root-only", gen.root_only_client_fraction,
                           "Share of clients linked only by their client edge")
      ->capture_default_str();
  generate_cmd->add_option("--roles", gen.roles_per_person, "Mean job roles per person")->capture_default_str();
  generate_cmd->add_option("--former", gen.former_role_fraction, "Share of former job roles")
      ->capture_default_str();
  generate_cmd->add_option("--board", gen.board_role_fraction, "Share of board roles")->capture_default_str();
  generate_cmd->add_option("--b2b", gen.b2b_per_company, "Mean B2B edges per company")->capture_default_str();
  generate_cmd->add_option("--exponent", gen.attachment_exponent, "Preferential attachment exponent")
      ->capture_default_str();
  generate_cmd->add_option("--signal", gen.signal, "Probability a client is placed near earlier clients")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();

  GraphSource ingest_source;
  std::string ingest_out;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate node and edge files into a snapshot");
  ingest_source.attach(*ingest_cmd);
  ingest_cmd->add_option("--out", ingest_out, "Snapshot path")->required();

  GraphSource score_source;
  ScoreSettings score_settings;
  std::string score_out;
  auto* score_cmd = app.add_subcommand("score", "Score every node from the root");
  score_source.attach(*score_cmd);
  score_settings.attach(*score_cmd, true);
  score_cmd->add_option("--out", score_out, "Scores file, - for stdout");

  GraphSource eval_source;
  ScoreSettings eval_settings;
  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Stratified client-edge holdout evaluation");
  eval_source.attach(*eval_cmd);
  eval_settings.attach(*eval_cmd, false);
  eval_cmd->add_option("--folds", eval_args.options.fold_count, "Number of folds")->capture_default_str();
  eval_cmd->add_option("--seed", eval_args.options.seed, "Fold sampling seed")->capture_default_str();
  eval_cmd->add_option("--threads", eval_args.options.threads, "Worker threads")->capture_default_str();
  eval_cmd->add_option("--algorithms", eval_args.algorithms, "Comma-separated: rpr, propflow, nora-d, nora-t")
      ->capture_default_str();
  eval_cmd->add_option("--scope", eval_args.scope, "Ranked candidates: fold or fold+nonclients")
      ->check(CLI::IsMember({"fold", "fold+nonclients"}))
      ->capture_default_str();
  eval_cmd->add_option("--out", eval_args.out_path, "Summary CSV, - for stdout");
  eval_cmd->add_option("--folds-out", eval_args.folds_out, "Per-fold CSV");

  GraphSource serve_source;
  ScoreSettings serve_settings;
  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the scored graph over HTTP");
  serve_source.attach(*serve_cmd);
  serve_settings.attach(*serve_cmd, false);
  serve_cmd->add_option("--scores", serve_args.scores, "Scores file; NORA is computed when absent")
      ->envname("CLIENTNET_SCORES");
  serve_cmd->add_option("--host", serve_args.host, "Bind address")->envname("CLIENTNET_HOST")->capture_default_str();
  serve_cmd->add_option("--port", serve_args.port, "Port")->envname("CLIENTNET_PORT")->capture_default_str();
  serve_cmd->add_option("--static-dir", serve_args.static_dir, "Directory served at /")
      ->envname("CLIENTNET_STATIC_DIR");
  serve_cmd->add_option("--hops", serve_args.explorer.whitespace_hops, "Whitespace hop horizon")
      ->capture_default_str();
  serve_cmd->add_option("--max-paths", serve_args.explorer.default_max_paths, "Default subgraph path count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*generate_cmd) {
      cmd_generate(gen, gen_out, out);
    } else if (*ingest_cmd) {
      cmd_ingest(ingest_source, ingest_out, out);
    } else if (*score_cmd) {
      cmd_score(score_source, score_settings, score_out, out);
    } else if (*eval_cmd) {
      cmd_evaluate(eval_source, eval_settings, eval_args, out);
    } else if (*serve_cmd) {
      return cmd_serve(serve_source, serve_settings, serve_args, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (is_data_error(e.code())) return kDataError;
    // Bad parameter values arrive here after the flags themselves parsed.
    if (e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::GammaOutOfRange) return kUsage;
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kSuccess;
}

}  // namespace clientnet::cli
