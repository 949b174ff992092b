// scribbleseg: command-line front end of the toolkit.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scribble/detsim/auto_scribble.hpp"
#include "scribble/eval/harness.hpp"
#include "scribble/eval/synthetic.hpp"
#include "scribble/io/external.hpp"
#include "scribble/io/image_io.hpp"
#include "scribble/io/manifest.hpp"
#include "scribble/io/report.hpp"
#include "scribble/io/server.hpp"
#include "scribble/io/train_config.hpp"
#include "scribble/io/wire.hpp"
#include "scribble/train/train_sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scribble;

namespace {

constexpr int kExitConverged = 3;

std::vector<double> parse_targets(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

unsigned resolve_workers(unsigned w) {
    return w == 0 ? std::max(1u, std::thread::hardware_concurrency()) : w;
}

// --- simulate-train --------------------------------------------------------

struct SimulateTrainArgs {
    std::string manifest;
    std::string out;
    std::uint64_t seed = 0;
    std::string config;
    std::string segmenter;
    unsigned workers = 1;
};

int run_simulate_train(const SimulateTrainArgs& a) {
    TrainSimConfig cfg;
    if (!a.config.empty()) cfg = load_train_config(a.config);
    cfg.rng_seed = a.seed;
    cfg.validate();

    const auto manifest = read_manifest(a.manifest);
    fs::create_directories(a.out);
    std::shared_ptr<const Segmenter> seg;
    if (!a.segmenter.empty()) seg = make_segmenter(a.segmenter);

    const json cfg_echo = train_config_to_json(cfg);
    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};
    auto work = [&] {
        for (std::size_t i = next++; i < manifest.entries.size(); i = next++) {
            const auto& e = manifest.entries[i];
            try {
                auto sample = load_sample(manifest, e);
                Rng rng(derive_seed(cfg.rng_seed, i));
                auto image = std::make_shared<const RgbImage>(std::move(sample.image));
                const auto ts = compose_training_sample(image, sample.gt, cfg, rng, seg.get());

                const fs::path dir(a.out);
                save_mask(ts.scribbles.positive(), dir / (e.id + "_pos.png"));
                save_mask(ts.scribbles.negative(), dir / (e.id + "_neg.png"));
                save_mask(ts.previous_mask, dir / (e.id + "_prev.png"));
                json strokes = json::array();
                for (std::size_t k = 0; k < ts.strokes.size(); ++k) {
                    json s = stroke_to_json(ts.strokes[k]);
                    s["generator"] = std::string(to_string(ts.generators[k]));
                    strokes.push_back(std::move(s));
                }
                const json doc{{"id", e.id},
                               {"sample_index", i},
                               {"seed", derive_seed(cfg.rng_seed, i)},
                               {"previous_mask_source", std::string(to_string(ts.previous_source))},
                               {"strokes", std::move(strokes)},
                               {"config", cfg_echo}};
                std::ofstream(dir / (e.id + ".json")) << doc.dump(2) << '\n';
            } catch (const std::exception& ex) {
                ++failures;
                std::cerr << "sample " << e.id << ": " << ex.what() << '\n';
            }
        }
    };
    const unsigned n = resolve_workers(a.workers);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::cout << "wrote " << manifest.entries.size() - failures << " samples to " << a.out << '\n';
    return failures == 0 ? 0 : 1;
}

// --- auto-scribble ---------------------------------------------------------

struct AutoScribbleArgs {
    std::string gt;
    std::string pred;
    std::string out;
    std::string json_out;
    int thickness = 3;
    double radius = 1.5;
    bool whole = false;
};

int run_auto_scribble(const AutoScribbleArgs& a) {
    const BinaryMask gt = load_mask(a.gt);
    const BinaryMask pred = a.pred.empty() ? BinaryMask(gt.width(), gt.height()) : load_mask(a.pred);
    AutoScribbleConfig cfg;
    cfg.thickness = a.thickness;
    cfg.graph_radius = a.radius;
    cfg.whole_error_mask = a.whole;
    const auto s = simulate_interaction(gt, pred, cfg);
    if (!s) {
        if (!a.json_out.empty()) std::ofstream(a.json_out) << json{{"converged", true}}.dump(2) << '\n';
        std::cout << "converged\n";
        return kExitConverged;
    }
    if (!a.out.empty()) save_mask(s->raster, a.out);
    const json doc{{"converged", false},
                   {"polarity", std::string(to_string(s->polarity))},
                   {"stroke", stroke_to_json(s->stroke)},
                   {"raster_pixels", s->raster.count()},
                   {"region_pixels", s->source_region.count()}};
    if (!a.json_out.empty()) std::ofstream(a.json_out) << doc.dump(2) << '\n';
    std::cout << to_string(s->polarity) << " scribble, " << s->raster.count() << " px\n";
    return 0;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
    std::vector<std::string> manifests;
    std::size_t synthetic = 0;
    std::uint64_t synthetic_seed = 1;
    int synthetic_size = 64;
    std::string segmenter = "geodesic";
    std::string targets = "0.85,0.90";
    int max = 20;
    int thickness = 3;
    bool zoom = false;
    double zoom_ratio = 1.4;
    int input_size = 384;
    bool native = false;
    unsigned workers = 1;
    std::uint64_t oracle_seed = 0;
    std::string report;
    std::string csv;
    bool whole = false;
};

int run_eval(const EvalArgs& a) {
    EvalConfig cfg;
    cfg.target_ious = parse_targets(a.targets);
    cfg.max_interactions = a.max;
    cfg.eval_thickness = a.thickness;
    cfg.zoom_enabled = a.zoom;
    cfg.zoom_ratio = a.zoom_ratio;
    cfg.model_input_size = a.input_size;
    cfg.workers = a.workers;
    cfg.whole_error_mask = a.whole;
    cfg.validate();

    std::vector<DatasetSource> datasets;
    for (const auto& m : a.manifests) datasets.push_back(to_dataset_source(read_manifest(m)));
    if (a.synthetic > 0) {
        SyntheticOptions opt;
        opt.width = opt.height = a.synthetic_size;
        datasets.push_back(synthetic_dataset("synthetic", a.synthetic, a.synthetic_seed, opt));
    }
    if (datasets.empty()) throw CLI::ValidationError("eval", "give --manifest or --synthetic");

    SegmenterOptions so;
    so.model_input_size = a.native ? std::nullopt : std::optional<int>(a.input_size);
    so.oracle_seed = a.oracle_seed;
    const auto factory = make_segmenter_factory(a.segmenter, so);
    const auto report = run_evaluation(datasets, factory, a.segmenter, cfg);

    if (!a.report.empty()) write_report_json(report, a.report);
    if (!a.csv.empty()) write_report_csv(report, a.csv);
    for (const auto& d : report.datasets) {
        std::printf("%s: %zu samples", d.name.c_str(), d.sample_count);
        for (const auto& [t, v] : d.noi) std::printf("  NoI@%s=%.2f", target_key(t).c_str(), v);
        for (const auto& [t, v] : d.nof) std::printf("  NoF@%s=%d", target_key(t).c_str(), v);
        if (!d.unreadable.empty()) std::printf("  unreadable=%zu", d.unreadable.size());
        std::printf("\n");
    }
    return 0;
}

// --- make-benchmark --------------------------------------------------------

int run_make_benchmark(const std::string& in, const std::string& out, int per_category,
                       std::uint64_t seed) {
    const auto manifest = read_manifest(in);
    auto bench = make_benchmark(manifest, per_category, seed);
    // Keep entry paths valid relative to the new manifest location.
    const fs::path out_dir = fs::absolute(fs::path(out)).parent_path();
    fs::create_directories(out_dir);
    for (auto& e : bench.entries) {
        e.image = fs::relative(fs::absolute(manifest.resolve(e.image)), out_dir).string();
        e.gt = fs::relative(fs::absolute(manifest.resolve(e.gt)), out_dir).string();
    }
    write_manifest(bench, out);
    std::cout << "selected " << bench.entries.size() << " of " << manifest.entries.size() << " entries\n";
    return 0;
}

// --- synth-dataset ---------------------------------------------------------

int run_synth_dataset(const std::string& out, std::size_t count, std::uint64_t seed, int size,
                      int categories) {
    const fs::path dir(out);
    fs::create_directories(dir / "images");
    fs::create_directories(dir / "masks");
    SyntheticOptions opt;
    opt.width = opt.height = size;
    const auto ds = synthetic_dataset("synthetic", count, seed, opt);
    DatasetManifest m;
    m.name = "synthetic";
    for (std::size_t i = 0; i < count; ++i) {
        const auto s = ds.load(i);
        const std::string img = "images/" + ds.ids[i] + ".png";
        const std::string gt = "masks/" + ds.ids[i] + ".png";
        save_rgb(s.image, dir / img);
        save_mask(s.gt, dir / gt);
        m.entries.push_back({ds.ids[i], img, gt, "cat_" + std::to_string(i % std::max(1, categories))});
    }
    write_manifest(m, dir / "manifest.jsonl");
    std::cout << "wrote " << count << " samples to " << (dir / "manifest.jsonl").string() << '\n';
    return 0;
}

// --- serve -----------------------------------------------------------------

ScribbleServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

int run_serve(const std::string& host, int port, const std::string& static_dir,
              const std::string& predict_segmenter, int idle_minutes) {
    SessionStoreOptions so;
    so.idle_timeout = std::chrono::minutes(idle_minutes);
    SessionStore store(so);
    ServerOptions opt;
    if (!static_dir.empty()) opt.static_dir = static_dir;
    opt.predict_segmenter = predict_segmenter;
    ScribbleServer server(store, opt);
    int bound = port;
    if (port == 0) {
        bound = server.bind_to_any_port(host);
        if (bound < 0) throw std::runtime_error("cannot bind " + host);
    } else if (!server.bind(host, port)) {
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen_after_bind();
    g_server = nullptr;
    return 0;
}

// --- segment-worker --------------------------------------------------------

// Subprocess-protocol worker: one descriptor path per stdin line, answers with
// the path of the written mask.
int run_segment_worker(const std::string& spec) {
    const auto seg = make_segmenter(spec);
    for (std::string line; std::getline(std::cin, line);) {
        if (line.empty()) continue;
        std::ifstream in(line);
        const json desc = json::parse(in);
        const auto request = read_request_files(line);
        const fs::path out = desc.at("output").get<std::string>();
        save_mask(seg->predict(request), out);
        std::cout << out.string() << std::endl;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scribble-based interactive segmentation toolkit"};
    app.require_subcommand(1);

    SimulateTrainArgs st;
    auto* sim = app.add_subcommand("simulate-train", "Generate simulated training scribbles and previous masks");
    sim->add_option("--manifest", st.manifest, "Dataset manifest (JSONL)")->required();
    sim->add_option("--out", st.out, "Output directory")->required();
    sim->add_option("--seed", st.seed, "Base seed");
    sim->add_option("--config", st.config, "key = value config file");
    sim->add_option("--segmenter", st.segmenter, "Segmenter for the iterative previous-mask branch");
    sim->add_option("--workers", st.workers, "Worker threads (0 = all cores)");

    AutoScribbleArgs as;
    auto* aut = app.add_subcommand("auto-scribble", "Next deterministic evaluation scribble (exit 3 when converged)");
    aut->add_option("--gt", as.gt, "Ground-truth mask PNG")->required();
    aut->add_option("--pred", as.pred, "Predicted mask PNG (default: empty)");
    aut->add_option("--out", as.out, "Scribble raster PNG");
    aut->add_option("--json", as.json_out, "Stroke JSON");
    aut->add_option("--thickness", as.thickness, "Stroke thickness");
    aut->add_option("--radius", as.radius, "Skeleton graph radius");
    aut->add_flag("--whole-error-mask", as.whole, "Skeletonize all same-polarity error regions");

    EvalArgs ev;
    auto* eva = app.add_subcommand("eval", "Run the iterative evaluation protocol");
    eva->add_option("--manifest", ev.manifests, "Dataset manifest(s)");
    eva->add_option("--synthetic", ev.synthetic, "Add N generated samples");
    eva->add_option("--synthetic-seed", ev.synthetic_seed, "Seed of generated samples");
    eva->add_option("--synthetic-size", ev.synthetic_size, "Side of generated samples");
    eva->add_option("--segmenter", ev.segmenter, "oracle[:NOISE] | geodesic | empty | http:URL | subprocess:CMD");
    eva->add_option("--targets", ev.targets, "Comma-separated target IoUs");
    eva->add_option("--max", ev.max, "Interaction cap");
    eva->add_option("--thickness", ev.thickness, "Evaluation stroke thickness");
    eva->add_flag("--zoom", ev.zoom, "Zoom-in inference from the second round");
    eva->add_option("--zoom-ratio", ev.zoom_ratio, "Crop expansion ratio");
    eva->add_option("--input-size", ev.input_size, "Model input side for external segmenters");
    eva->add_flag("--native", ev.native, "Send external segmenters crops at native resolution");
    eva->add_option("--workers", ev.workers, "Worker threads (0 = all cores)");
    eva->add_option("--oracle-seed", ev.oracle_seed, "Seed of the noisy oracle");
    eva->add_option("--report", ev.report, "Report JSON path");
    eva->add_option("--csv", ev.csv, "Per-sample CSV path");
    eva->add_flag("--whole-error-mask", ev.whole, "Skeletonize all same-polarity error regions");

    std::string mb_in, mb_out;
    int per_category = 5;
    std::uint64_t mb_seed = 0;
    auto* mkb = app.add_subcommand("make-benchmark", "Sample up to K entries per category");
    mkb->add_option("--manifest", mb_in, "Input manifest")->required();
    mkb->add_option("--out", mb_out, "Output manifest")->required();
    mkb->add_option("--per-category", per_category, "Entries per category");
    mkb->add_option("--seed", mb_seed, "Shuffle seed");

    std::string sd_out;
    std::size_t sd_count = 20;
    std::uint64_t sd_seed = 1;
    int sd_size = 64, sd_categories = 4;
    auto* syn = app.add_subcommand("synth-dataset", "Write a synthetic two-region dataset and manifest");
    syn->add_option("--out", sd_out, "Output directory")->required();
    syn->add_option("--count", sd_count, "Number of samples");
    syn->add_option("--seed", sd_seed, "Seed");
    syn->add_option("--size", sd_size, "Image side");
    syn->add_option("--categories", sd_categories, "Number of category labels");

    std::string host = "127.0.0.1", static_dir, predict_seg = "geodesic";
    int port = 8080, idle = 30;
    auto* srv = app.add_subcommand("serve", "HTTP session service");
    srv->add_option("--host", host, "Bind address");
    srv->add_option("--port", port, "Port (0 = any free port)");
    srv->add_option("--static", static_dir, "Directory served at /");
    srv->add_option("--predict-segmenter", predict_seg, "Segmenter behind POST /predict");
    srv->add_option("--idle-timeout", idle, "Session idle timeout in minutes");

    std::string worker_seg = "geodesic";
    auto* wrk = app.add_subcommand("segment-worker", "Subprocess segmenter protocol worker");
    wrk->add_option("--segmenter", worker_seg, "Segmenter to run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return run_simulate_train(st);
        if (*aut) return run_auto_scribble(as);
        if (*eva) return run_eval(ev);
        if (*mkb) return run_make_benchmark(mb_in, mb_out, per_category, mb_seed);
        if (*syn) return run_synth_dataset(sd_out, sd_count, sd_seed, sd_size, sd_categories);
        if (*srv) return run_serve(host, port, static_dir, predict_seg, idle);
        if (*wrk) return run_segment_worker(worker_seg);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
