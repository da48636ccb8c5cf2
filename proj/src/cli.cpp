#include "gsp/cli.hpp"

#include "gsp/filter_bank.hpp"
#include "gsp/filters.hpp"
#include "gsp/fixtures.hpp"
#include "gsp/io.hpp"
#include "gsp/random_signals.hpp"
#include "gsp/sampling.hpp"
#include "gsp/transforms.hpp"
#include "gsp/vertex_frequency.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>

namespace gsp {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

const std::set<std::string> kVerbs = {"graph", "spectrum", "filter", "denoise", "taubin", "fbank",
                                      "cs",    "gwss",     "lgft",   "sgwt",    "vfd",    "smoothness"};

struct Globals {
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::string format = "csv";
};

// Everything a verb handler reports back.
struct Context {
  Globals globals;
  Json metrics = Json::object();
  std::vector<std::string> outputs;

  std::string path_for(const std::string& name) const {
    const fs::path p(name);
    return p.is_absolute() ? name : (fs::path(globals.out_dir) / p).string();
  }

  // Data tables follow --format; an explicit extension in `name` is replaced.
  void emit_table(const std::string& name, const Mat& values, const std::vector<std::string>& header = {}) {
    fs::path p(path_for(name));
    p.replace_extension(globals.format == "json" ? ".json" : ".csv");
    write_text_atomic(p.string(), globals.format == "json" ? json_table_text(values, header)
                                                           : csv_text(values, header));
    outputs.push_back(p.string());
  }

  void emit_text(const std::string& name, const std::string& text) {
    const std::string p = path_for(name);
    write_text_atomic(p, text);
    outputs.push_back(p);
  }
};

// Options shared by graph-based verbs.
struct GraphInput {
  std::string graph;
  std::string op = "laplacian";
};

void add_graph_options(CLI::App& app, GraphInput& in, bool required = true) {
  auto* opt = app.add_option("--graph", in.graph, "graph manifest (.json) or dense weight CSV");
  if (required) opt->required();
  app.add_option("--operator", in.op, "shift operator kind")->capture_default_str();
}

SpectralBasis load_basis(const GraphInput& in, Mat* op_out = nullptr) {
  Graph g = read_graph(in.graph);
  OperatorMatrix op = operator_matrix(g, operator_kind_from_string(in.op));
  if (op_out) *op_out = op.values;
  return spectral_basis(op);
}

Vec load_signal(const std::string& path, int n) {
  Vec x = read_vector(path);
  require(x.size() == n, "signal has " + std::to_string(x.size()) + " values but the graph has " +
                             std::to_string(n) + " vertices");
  return x;
}

Mat column(const Vec& v) { return v; }

// Labels carry a letter prefix so the reader never mistakes the header for data.
std::vector<std::string> index_header(Eigen::Index count, const std::string& prefix) {
  std::vector<std::string> h;
  for (Eigen::Index k = 0; k < count; ++k) h.push_back(prefix + std::to_string(k));
  return h;
}

std::vector<std::string> lambda_header(const Vec& lambdas) {
  std::vector<std::string> h;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) h.push_back("lambda=" + format_double(lambdas(k)));
  return h;
}

double relative_error(const Vec& approx, const Vec& exact) {
  const double scale = exact.norm();
  return scale > 0.0 ? (approx - exact).norm() / scale : (approx - exact).norm();
}

// "name:key=value,flag,key=value" style specs.
struct Spec {
  std::string kind;
  std::vector<std::string> flags;
  std::map<std::string, std::string> values;

  double number(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(it->second, &used);
      require(used == it->second.size(), "");
      return v;
    } catch (...) {
      throw ValidationError("option " + key + "=" + it->second + " is not a number");
    }
  }
  bool has(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
  }
};

Spec parse_spec(const std::string& text, bool has_kind) {
  Spec s;
  std::string rest = text;
  if (has_kind) {
    const auto colon = text.find(':');
    require(colon != std::string::npos, "expected kind:parameters, got '" + text + "'");
    s.kind = text.substr(0, colon);
    rest = text.substr(colon + 1);
  }
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      s.flags.push_back(item);
    } else {
      s.values[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return s;
}

BandFilterSet bands_from_spec(const Spec& s, const SpectralBasis& b) {
  const double k_value = s.number("K", 25);
  require(k_value >= 1 && k_value == std::floor(k_value), "band count K must be a positive integer");
  const int k = static_cast<int>(k_value);
  BandNormalization norm = BandNormalization::SumOne;
  if (auto it = s.values.find("norm"); it != s.values.end()) {
    require(it->second == "sum" || it->second == "sumsq", "norm must be sum or sumsq");
    norm = it->second == "sum" ? BandNormalization::SumOne : BandNormalization::SumSquaresOne;
  }
  const double lmax = b.lambda_max();
  require(lmax > 0.0, "band filters need a positive largest eigenvalue");
  if (s.has("binomial")) return binomial_bands(k, b.eigenvalues, lmax, norm);
  const BandShape shape = s.has("meyer") ? BandShape::Meyer : BandShape::RaisedCosine;
  require(s.has("hann") || s.has("meyer"), "band shape must be hann, meyer or binomial");
  return edge_bands(shape, uniform_edges(k, lmax), b.eigenvalues, norm);
}

// ---- verbs -------------------------------------------------------------------

void verb_graph(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string fixture;
    bool swiss = false;
    int points = 100;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in, false);
  app.add_option("--fixture", o->fixture, "bundled fixture name");
  app.add_flag("--swiss-roll", o->swiss, "generate the Swiss-roll graph and its three-component signal");
  app.add_option("--points", o->points, "Swiss-roll vertex count")->capture_default_str();
  action = [&ctx, o] {
    const int sources = !o->in.graph.empty() + !o->fixture.empty() + o->swiss;
    require(sources == 1, "give exactly one of --graph, --fixture, --swiss-roll");
    Graph g;
    if (!o->fixture.empty()) {
      Mat values = load_fixture(o->fixture);
      ctx.emit_table(o->fixture, values);
      ctx.metrics["fixture"] = o->fixture;
      ctx.metrics["rows"] = values.rows();
      ctx.metrics["cols"] = values.cols();
      if (values.rows() != values.cols() || values.diagonal().cwiseAbs().maxCoeff() != 0.0) return;
      g = from_dense(values, false);
      write_graph(ctx.path_for("graph.json"), g);
      ctx.outputs.push_back(ctx.path_for("graph.json"));
    } else if (o->swiss) {
      SwissRoll roll = swiss_roll(o->points, ctx.globals.seed);
      g = roll.graph;
      write_graph(ctx.path_for("graph.json"), g);
      ctx.outputs.push_back(ctx.path_for("graph.json"));
      ctx.emit_table("points", roll.points, {"x", "y", "z"});
      if (o->points == 100) {
        SpectralBasis b = spectral_basis(operator_matrix(g, OperatorKind::Laplacian));
        ctx.emit_table("signal", column(piecewise_eigen_signal(b).x));
      }
    } else {
      g = read_graph(o->in.graph);
    }
    OperatorMatrix op = operator_matrix(g, operator_kind_from_string(o->in.op));
    ctx.emit_table("operator", op.values);
    ctx.metrics["n"] = g.size();
    ctx.metrics["edges"] = g.edges().size();
    ctx.metrics["directed"] = g.directed();
    ctx.metrics["connected"] = g.connected();
    ctx.metrics["operator"] = to_string(op.kind);
  };
}

void verb_spectrum(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "signal CSV, one value per line");
  action = [&ctx, o] {
    SpectralBasis b = load_basis(o->in);
    const int n = b.size();
    Mat table(n, o->signal.empty() ? 2 : 3);
    for (int k = 0; k < n; ++k) {
      table(k, 0) = k;
      table(k, 1) = b.eigenvalues(k);
    }
    std::vector<std::string> header = {"k", "lambda"};
    if (!o->signal.empty()) {
      Vec x = load_signal(o->signal, n);
      Vec spectrum = gdft(x, b);
      table.col(2) = spectrum;
      header.push_back("X");
      ctx.metrics["parseval_error"] = std::abs(x.squaredNorm() - spectrum.squaredNorm());
    }
    ctx.emit_table("spectrum", table, header);
    ctx.metrics["n"] = n;
    ctx.metrics["lambda_min"] = b.eigenvalues(0);
    ctx.metrics["lambda_max"] = b.lambda_max();
    ctx.metrics["degenerate"] = b.degenerate();
  };
}

void verb_filter(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput design_in;
    GraphInput apply_in;
    std::string response;
    std::string lambdas;
    std::string mode = "ls";
    std::string taps;
    std::string signal;
    int order = 0;
  };
  auto o = std::make_shared<Options>();
  app.require_subcommand(1);
  auto* design = app.add_subcommand("design", "fit polynomial taps to a response");
  design->add_option("--response", o->response, "desired response, one value per eigenvalue")->required();
  design->add_option("--lambdas", o->lambdas, "eigenvalues (instead of --graph)");
  add_graph_options(*design, o->design_in, false);
  design->add_option("--order", o->order, "number of taps")->required();
  design->add_option("--mode", o->mode, "ls or exact")->check(CLI::IsMember({"ls", "exact"}))->capture_default_str();
  auto* apply = app.add_subcommand("apply", "apply taps in the vertex domain");
  add_graph_options(*apply, o->apply_in);
  apply->add_option("--taps", o->taps, "taps CSV")->required();
  apply->add_option("--signal", o->signal, "signal CSV")->required();
  action = [&ctx, o, design, apply] {
    if (design->parsed()) {
      require(o->lambdas.empty() != o->design_in.graph.empty(), "give exactly one of --lambdas, --graph");
      Vec lam = o->lambdas.empty() ? load_basis(o->design_in).eigenvalues : read_vector(o->lambdas);
      Vec g = read_vector(o->response);
      Vec h = design_response(g, lam, o->order, o->mode == "exact" ? DesignMode::Exact : DesignMode::LeastSquares);
      ctx.emit_table("taps", column(h));
      ctx.metrics["order"] = o->order;
      ctx.metrics["mode"] = o->mode;
      ctx.metrics["max_fit_error"] = (tap_response(h, lam) - g).cwiseAbs().maxCoeff();
    } else if (apply->parsed()) {
      Graph g = read_graph(o->apply_in.graph);
      Mat op = operator_matrix(g, operator_kind_from_string(o->apply_in.op)).values;
      Vec x = load_signal(o->signal, g.size());
      Vec y = apply_taps(read_vector(o->taps), op, x);
      ctx.emit_table("filtered", column(y));
      ctx.metrics["energy_in"] = x.squaredNorm();
      ctx.metrics["energy_out"] = y.squaredNorm();
    }
  };
}

void verb_denoise(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
    DenoiseParams p;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "noisy signal CSV")->required();
  app.add_option("--alpha", o->p.alpha, "smoothness weight")->required();
  auto* beta = app.add_option("--beta", o->p.beta, "second-order weight");
  app.add_flag("--quadratic", o->p.quadratic, "use 1/(1 + 2 alpha lambda^2)")->excludes(beta);
  action = [&ctx, o] {
    SpectralBasis b = load_basis(o->in);
    Vec x = load_signal(o->signal, b.size());
    Vec y = denoise(x, b, o->p);
    ctx.emit_table("denoised", column(y));
    ctx.metrics["energy_in"] = x.squaredNorm();
    ctx.metrics["energy_out"] = y.squaredNorm();
  };
}

void verb_taubin(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
    double alpha = 0.0;
    double beta = 0.0;
    int iters = 1;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "signal CSV")->required();
  app.add_option("--alpha", o->alpha, "shrink step")->required();
  app.add_option("--beta", o->beta, "inflate step")->required();
  app.add_option("--iters", o->iters, "iterations")->required();
  action = [&ctx, o] {
    Graph g = read_graph(o->in.graph);
    Mat l = operator_matrix(g, operator_kind_from_string(o->in.op)).values;
    Vec x = load_signal(o->signal, g.size());
    Vec y = taubin(x, l, o->alpha, o->beta, o->iters);
    ctx.emit_table("smoothed", column(y));
    ctx.metrics["energy_in"] = x.squaredNorm();
    ctx.metrics["energy_out"] = y.squaredNorm();
  };
}

void verb_fbank(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    std::string graph;
    std::string signal;
    std::string kind = "sqrt";
  };
  auto o = std::make_shared<Options>();
  app.require_subcommand(1);
  auto* roundtrip = app.add_subcommand("roundtrip", "analyse and resynthesise a signal");
  roundtrip->add_option("--graph", o->graph, "bipartite graph")->required();
  roundtrip->add_option("--signal", o->signal, "signal CSV")->required();
  roundtrip->add_option("--kind", o->kind, "sqrt or cos")->capture_default_str();
  action = [&ctx, o] {
    Graph g = read_graph(o->graph);
    Bipartition part = check_bipartite(g);
    SpectralBasis b = spectral_basis(operator_matrix(g, OperatorKind::NormalizedLaplacian));
    Vec x = load_signal(o->signal, g.size());
    QmfBank bank = qmf_from_lowpass(lowpass_kind_from_string(o->kind), b.eigenvalues);
    FilterBankChannels ch = fb_analyze(x, bank, part, b);
    Vec y = fb_synthesize(ch);
    ctx.emit_table("low", column(ch.low));
    ctx.emit_table("high", column(ch.high));
    ctx.emit_table("reconstructed", column(y));
    ctx.metrics["energy_low"] = ch.low.squaredNorm();
    ctx.metrics["energy_high"] = ch.high.squaredNorm();
    ctx.metrics["reconstruction_error"] = (y - x).norm();
    ctx.metrics["alias_residual"] = alias_residual(bank);
  };
}

void verb_cs(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string samples;
    PursuitOptions opts;
  };
  auto o = std::make_shared<Options>();
  app.require_subcommand(1);
  auto* recover = app.add_subcommand("recover", "recover a spectrally sparse signal from samples");
  add_graph_options(*recover, o->in);
  recover->add_option("--samples", o->samples, "CSV vertex,value")->required();
  recover->add_option("--sparsity", o->opts.sparsity, "number of spectral components")->required();
  recover->add_option("--epsilon", o->opts.epsilon, "residual bound");
  recover->add_flag("--raw-correlation", o->opts.raw_correlation, "pick atoms without column normalization");
  action = [&ctx, o] {
    SpectralBasis b = load_basis(o->in);
    MeasurementSet m = read_samples(o->samples);
    PursuitResult r = mp_recover(m, b, o->opts);
    Mat table_out(b.size(), 2);
    for (int k = 0; k < b.size(); ++k) {
      table_out(k, 0) = k;
      table_out(k, 1) = r.spectrum(k);
    }
    ctx.emit_table("spectrum", table_out, {"k", "X"});
    ctx.emit_table("signal", column(r.signal));
    ctx.metrics["support"] = r.support;
    ctx.metrics["residual"] = r.residual_norms.empty() ? 0.0 : r.residual_norms.back();
    ctx.metrics["stagnated"] = r.stagnated;
    const Coherence c = coherence_bound(b, m.vertices);
    ctx.metrics["coherence"] = c.mu;
    if (std::isfinite(c.k_max)) ctx.metrics["unique_sparsity_bound"] = c.k_max;
  };
}

void verb_gwss(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput gen_in;
    GraphInput psd_in;
    std::string taps;
    std::string realizations;
    std::string psd_taps;
    int count = 100;
  };
  auto o = std::make_shared<Options>();
  app.require_subcommand(1);
  auto* generate = app.add_subcommand("generate", "filter white noise into stationary realizations");
  add_graph_options(*generate, o->gen_in);
  generate->add_option("--taps", o->taps, "taps CSV")->required();
  generate->add_option("--count", o->count, "number of realizations")->capture_default_str();
  auto* psd = app.add_subcommand("psd", "periodogram of realizations");
  add_graph_options(*psd, o->psd_in);
  psd->add_option("--realizations", o->realizations, "N x R CSV")->required();
  psd->add_option("--taps", o->psd_taps, "taps to compare |H|^2 against");
  action = [&ctx, o, generate, psd] {
    if (generate->parsed()) {
      require(o->count >= 1, "--count must be positive");
      Graph g = read_graph(o->gen_in.graph);
      Mat op = operator_matrix(g, operator_kind_from_string(o->gen_in.op)).values;
      Mat r = generate_gwss(read_vector(o->taps), op, o->count, ctx.globals.seed);
      ctx.emit_table("realizations", r);
      ctx.metrics["n"] = g.size();
      ctx.metrics["count"] = o->count;
      ctx.metrics["seed"] = ctx.globals.seed;
    } else if (psd->parsed()) {
      SpectralBasis b = load_basis(o->psd_in);
      Mat r = read_matrix(o->realizations);
      require(r.rows() == b.size(), "realizations must have one row per vertex");
      Vec p = periodogram(r, b);
      Mat table(b.size(), o->psd_taps.empty() ? 3 : 4);
      table.col(0) = Vec::LinSpaced(b.size(), 0, b.size() - 1);
      table.col(1) = b.eigenvalues;
      table.col(2) = p;
      std::vector<std::string> header = {"k", "lambda", "P"};
      if (!o->psd_taps.empty()) {
        Vec h2 = tap_response(read_vector(o->psd_taps), b.eigenvalues).array().square();
        table.col(3) = h2;
        header.push_back("H2");
        ctx.metrics["sup_error"] = (p - h2).cwiseAbs().maxCoeff();
      }
      ctx.emit_table("psd", table, header);
      ctx.metrics["realizations"] = r.cols();
      ctx.metrics["stationarity"] = stationarity_check(sample_covariance(r), b);
    }
  };
}

void emit_map(Context& ctx, const std::string& out, const std::string& svg, const Mat& s,
              const std::vector<std::string>& header) {
  ctx.emit_table(out, s, header);
  if (!svg.empty()) ctx.emit_text(svg, heatmap_svg(s));
  ctx.metrics["rows"] = s.rows();
  ctx.metrics["cols"] = s.cols();
}

void verb_lgft(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
    std::string windows;
    std::string bands;
    std::string out = "lgft.csv";
    std::string svg;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "signal CSV")->required();
  auto* w = app.add_option("--windows", o->windows, "spectral:tau=T | vertex:hann,D=W | bands:hann,K=25[,cheb=M]");
  app.add_option("--bands", o->bands, "shorthand for --windows bands:<shape,K=..>")->excludes(w);
  app.add_option("--out", o->out, "map CSV")->capture_default_str();
  app.add_option("--svg", o->svg, "heatmap SVG");
  action = [&ctx, o] {
    Spec spec = parse_spec(o->bands.empty() ? (o->windows.empty() ? "bands:hann,K=25" : o->windows) : "bands:" + o->bands, true);
    Mat op;
    SpectralBasis b = load_basis(o->in, &op);
    Vec x = load_signal(o->signal, b.size());
    if (spec.kind == "spectral" || spec.kind == "vertex") {
      WindowBank bank;
      if (spec.kind == "spectral") {
        bank = spectral_window_bank(b, spec.number("tau", 3.0), spec.number("amp", 1.0));
      } else {
        require(spec.has("hann"), "vertex windows support the hann shape");
        const double width = spec.number("D", 5);
        require(width >= 1 && width == std::floor(width), "window width D must be a positive integer");
        bank = vertex_window_bank(read_graph(o->in.graph), hann_window(static_cast<int>(width)));
        ctx.metrics["exceeds_diameter"] = bank.exceeds_diameter;
      }
      bank = normalize_windows(bank, WindowNormalization::UnitSum);
      Mat s = lgft_windowed(x, bank, b);
      emit_map(ctx, o->out, o->svg, s, lambda_header(b.eigenvalues));
      ctx.metrics["reconstruction_error"] = relative_error(invert_windowed_sum(s, bank, b), x);
      ctx.metrics["concentration"] = concentration(s);
      return;
    }
    require(spec.kind == "bands", "unknown window kind '" + spec.kind + "'");
    BandFilterSet set = bands_from_spec(spec, b);
    Mat s;
    if (spec.values.count("cheb")) {
      const double terms = spec.number("cheb", 20);
      require(terms >= 1 && terms == std::floor(terms), "cheb must be a positive integer");
      s = lgft_bands_chebyshev(x, chebyshev_bands(set, static_cast<int>(terms)), op);
      ctx.metrics["chebyshev_error"] =
          (s - lgft_bands(x, set, b)).norm() / std::max(lgft_bands(x, set, b).norm(), 1e-300);
    } else {
      s = lgft_bands(x, set, b);
    }
    emit_map(ctx, o->out, o->svg, s, index_header(s.cols(), "band"));
    const FrameBounds fb = frame_bounds(set);
    ctx.metrics["frame_lower"] = fb.lower;
    ctx.metrics["frame_upper"] = fb.upper;
    ctx.metrics["shape"] = to_string(set.shape);
  };
}

void verb_sgwt(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
    std::string out = "sgwt.csv";
    std::string svg;
    SgwtSpec spec;
    int cheb = 0;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "signal CSV")->required();
  app.add_option("--progression", o->spec.progression, "scale progression M")->capture_default_str();
  app.add_option("--scales", o->spec.scales, "number of wavelet scales")->capture_default_str();
  app.add_option("--cheb", o->cheb, "Chebyshev terms (0 for exact spectral evaluation)");
  app.add_option("--out", o->out, "map CSV")->capture_default_str();
  app.add_option("--svg", o->svg, "heatmap SVG");
  action = [&ctx, o] {
    Mat op;
    SpectralBasis b = load_basis(o->in, &op);
    Vec x = load_signal(o->signal, b.size());
    Mat s = o->cheb > 0 ? sgwt_chebyshev(x, o->spec, op, b.lambda_max(), o->cheb) : sgwt(x, o->spec, b);
    emit_map(ctx, o->out, o->svg, s, index_header(s.cols(), "scale"));
    ctx.metrics["energy_in"] = x.squaredNorm();
    ctx.metrics["energy_out"] = s.squaredNorm();
    ctx.metrics["parseval_error"] = std::abs(s.squaredNorm() - x.squaredNorm());
  };
}

void verb_vfd(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
    std::string kind = "energy";
    std::string out = "vfd.csv";
    std::string svg;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "signal CSV")->required();
  app.add_option("--kind", o->kind, "energy or rid")->check(CLI::IsMember({"energy", "rid"}))->capture_default_str();
  app.add_option("--out", o->out, "map CSV")->capture_default_str();
  app.add_option("--svg", o->svg, "heatmap SVG");
  action = [&ctx, o] {
    SpectralBasis b = load_basis(o->in);
    Vec x = load_signal(o->signal, b.size());
    Mat e = o->kind == "rid" ? rid(x, b) : energy_distribution(x, b);
    emit_map(ctx, o->out, o->svg, e, lambda_header(b.eigenvalues));
    Vec spectrum = gdft(x, b);
    ctx.metrics["vertex_marginal_error"] =
        (e.rowwise().sum() - x.cwiseAbs2()).cwiseAbs().maxCoeff();
    ctx.metrics["spectral_marginal_error"] =
        (e.colwise().sum().transpose() - spectrum.cwiseAbs2()).cwiseAbs().maxCoeff();
  };
}

void verb_smoothness(CLI::App& app, Context& ctx, std::function<void()>& action) {
  struct Options {
    GraphInput in;
    std::string signal;
  };
  auto o = std::make_shared<Options>();
  add_graph_options(app, o->in);
  app.add_option("--signal", o->signal, "signal CSV")->required();
  action = [&ctx, o] {
    Mat op;
    SpectralBasis b = load_basis(o->in, &op);
    Vec x = load_signal(o->signal, b.size());
    LocalSmoothness ls = local_smoothness(x, op);
    Mat table(b.size(), 2);
    table.col(0) = Vec::LinSpaced(b.size(), 0, b.size() - 1);
    table.col(1) = ls.values;
    ctx.emit_table("smoothness", table, {"vertex", "lambda"});
    ctx.metrics["defined"] = std::count(ls.defined.begin(), ls.defined.end(), true);
    const double energy = x.squaredNorm();
    if (energy > 0.0) ctx.metrics["global"] = x.dot(op * x) / energy;
  };
}

using VerbSetup = void (*)(CLI::App&, Context&, std::function<void()>&);

const std::map<std::string, VerbSetup> kSetups = {
    {"graph", verb_graph},   {"spectrum", verb_spectrum}, {"filter", verb_filter},
    {"denoise", verb_denoise}, {"taubin", verb_taubin},   {"fbank", verb_fbank},
    {"cs", verb_cs},         {"gwss", verb_gwss},         {"lgft", verb_lgft},
    {"sgwt", verb_sgwt},     {"vfd", verb_vfd},           {"smoothness", verb_smoothness}};

// Pulls global flags out of `args` (any position, `--flag v` or `--flag=v`).
std::vector<std::string> take_globals(const std::vector<std::string>& args, Globals& g) {
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string name = args[i], value;
    bool matched = false;
    for (const char* flag : {"--out-dir", "--seed", "--format"}) {
      const std::string f(flag);
      if (name == f) {
        require(i + 1 < args.size(), f + " needs a value");
        value = args[++i];
        matched = true;
      } else if (name.rfind(f + "=", 0) == 0) {
        value = name.substr(f.size() + 1);
        matched = true;
      }
      if (!matched) continue;
      if (f == "--out-dir") {
        g.out_dir = value;
      } else if (f == "--format") {
        require(value == "csv" || value == "json", "--format must be csv or json");
        g.format = value;
      } else {
        try {
          std::size_t used = 0;
          require(!value.empty() && value[0] != '-', "");
          g.seed = std::stoull(value, &used);
          require(used == value.size(), "");
        } catch (...) {
          throw ValidationError("--seed must be a nonnegative integer");
        }
      }
      break;
    }
    if (!matched) rest.push_back(args[i]);
  }
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  std::vector<std::string> rest;
  try {
    rest = take_globals(args, ctx.globals);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (rest.empty() || !kVerbs.count(rest.front())) {
    err << "error: " << (rest.empty() ? "missing verb" : "unknown verb '" + rest.front() + "'")
        << "; expected one of:";
    for (const auto& v : kVerbs) err << " " << v;
    err << "\n";
    return kExitUsage;
  }
  const std::string verb = rest.front();
  CLI::App app("gsp " + verb, "gsp " + verb);
  std::function<void()> action;
  kSetups.at(verb)(app, ctx, action);
  std::vector<std::string> verb_args(rest.begin() + 1, rest.end());
  std::reverse(verb_args.begin(), verb_args.end());  // CLI11 consumes from the back
  try {
    app.parse(verb_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    action();
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitFormat;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitFormat;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  Json summary = {{"ok", true}, {"verb", verb}, {"metrics", ctx.metrics}, {"outputs", ctx.outputs}};
  out << summary.dump() << "\n";
  return 0;
}

}  // namespace gsp
