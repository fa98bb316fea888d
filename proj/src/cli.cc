// Copyright 2026 The rqcdesign Authors
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

#include "rqcdesign/cli.h"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rqcdesign/error.h"
#include "rqcdesign/manifest.h"
#include "rqcdesign/service.h"

namespace rqcdesign {

namespace {

int default_threads() {
    const char *env = std::getenv("RQCDESIGN_THREADS");
    if (env == nullptr) return 1;
    char *end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 256) return 1;
    return static_cast<int>(n);
}

struct LatticeOpts {
    std::string mode = "grid";
    int width = 5;
    int height = 5;
    int xsize = 12;
    int ysize = 12;
    std::string defects;
    std::string sites;

    void add(CLI::App *app) {
        app->add_option("--mode", mode, "grid, window or mask")->capture_default_str();
        app->add_option("--width", width, "grid width")->capture_default_str();
        app->add_option("--height", height, "grid height")->capture_default_str();
        app->add_option("--xsize", xsize, "window width in drawing columns")->capture_default_str();
        app->add_option("--ysize", ysize, "window height in drawing rows")->capture_default_str();
        app->add_option("--defects", defects, "defective sites, e.g. \"(2,2),(3,1)\"");
        app->add_option("--sites", sites, "mask sites, e.g. \"(0,0),(1,0)\"");
    }

    LatticeSpec spec() const {
        Json j{{"mode", mode}, {"defects", defects}};
        j["width"] = width;
        j["height"] = height;
        j["xsize"] = xsize;
        j["ysize"] = ysize;
        j["sites"] = sites;
        return lattice_spec_from_json(j);
    }
};

struct ThresholdOpts {
    PathSearchConfig cfg;

    void add(CLI::App *app) {
        app->add_option("--estar", cfg.e_star, "cut-path edge threshold (0 = default)")->capture_default_str();
        app->add_option("--estar-slack", cfg.e_star_slack, "added to the default threshold")->capture_default_str();
        app->add_option("--nstar", cfg.n_star, "max |n1 - n2|")->capture_default_str();
        app->add_option("--maxside", cfg.max_side, "max side size")->capture_default_str();
    }
};

struct PatternOpts {
    std::string a;
    std::string c;
    int swap = 0;
    std::string text;

    void add(CLI::App *app) {
        app->add_option("--a", a, "A-layer row bits (0 = even, 1 = odd)");
        app->add_option("--c", c, "C-layer row bits");
        app->add_option("--swap", swap, "order swap bit")->capture_default_str();
        app->add_option("--pattern", text, "pattern text \"A=... C=... swap=0\"");
    }

    std::optional<PatternCode> code() const {
        if (!text.empty()) return parse_code(text);
        if (a.empty() && c.empty()) return std::nullopt;
        if (swap != 0 && swap != 1) throw ValidationError("--swap must be 0 or 1");
        return PatternCode{parse_bits(a), parse_bits(c), swap == 1};
    }
};

struct Common {
    std::string format = "json";
    std::string output;
    std::string request;

    void add(CLI::App *app, bool with_request) {
        app->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
        app->add_option("--output,-o", output, "write the document to a file");
        if (with_request) app->add_option("--request", request, "read the request document from a JSON file");
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_request(const std::string &path, RunManifest &m) {
    std::string text = read_file(path);
    m.input_digests[path] = sha256_hex(text);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError("request file is not valid JSON: " + std::string(e.what()));
    }
}

void emit(const Common &c, std::ostream &out, const std::string &text) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + c.output + "'");
    f << text;
}

std::string num(double x, int precision = 6) {
    std::ostringstream s;
    s << std::setprecision(precision) << x;
    return s.str();
}

std::string lattice_table(const Json &d) {
    std::ostringstream s;
    s << "mode          " << d["spec"]["mode"].get<std::string>() << "\n";
    s << "qubits        " << d["num_qubits"] << "\n";
    s << "bonds         " << d["num_bonds"] << "\n";
    s << "m             " << d["m"] << "\n";
    s << "n             " << d["n"] << "\n";
    s << "code bits     " << d["code_bits"] << "\n";
    s << "defects       " << d["defects"].size() << "\n";
    s << "dual sites    " << d["dual"]["sites"] << " (" << d["dual"]["boundary_sites"] << " boundary)\n";
    return s.str();
}

std::string evaluate_table(const Json &d) {
    std::ostringstream s;
    s << "pattern       " << d["pattern"]["text"].get<std::string>() << "\n";
    s << "sequence      " << d["sequence"].get<std::string>() << "\n";
    if (d["tail_words"].get<int>() > 0) {
        s << "tail          " << d["tail"].get<std::string>() << " (best of " << d["tail_words"] << ")\n";
    }
    s << "qubits        " << d["lattice"]["num_qubits"] << "\n";
    s << "E*            " << d["thresholds"]["e_star"] << " (" << d["num_paths"] << " paths)\n";
    s << "log2_cost     " << num(d["log2_cost"].get<double>(), 10) << "\n";
    for (const char *k : {"n_c", "n_wedge", "n_DCD", "n_st", "n_end", "n1", "n2"}) {
        s << std::left << std::setw(14) << k << d[k] << "\n";
    }
    s << "cut E/E_eff   " << d["cut"]["E"] << "/" << d["cut"]["E_eff"] << "\n";
    s << "cut path      " << d["cut"]["plaquettes"].dump() << "\n";
    if (d.contains("F")) {
        s << "F             " << num(d["F"].get<double>(), 8) << "\n";
        s << "Ns            " << num(d["Ns"].get<double>(), 15) << "\n";
    }
    return s.str();
}

std::string search_table(const Json &d) {
    std::ostringstream s;
    s << "qubits " << d["num_qubits"] << "  m " << d["m"] << "  n " << d["n"] << "  depth " << d["depth"]
      << "  E* " << d["thresholds"]["e_star"] << "  paths " << d["num_paths"] << "\n";
    s << "candidates: " << d["candidates"].get<uint64_t>() << "\n";
    s << "optimum ties: " << d["optimum"]["ties"] << "\n";
    s << "rank      log2_cost    sym  tail  pattern\n";
    auto row = [&](const std::string &rank, const Json &c) {
        s << std::left << std::setw(10) << rank << std::setw(13) << num(c["log2_cost"].get<double>(), 10)
          << std::setw(5) << c["symmetry"].get<int>() << std::setw(6)
          << (c["tail"].get<std::string>().empty() ? "-" : c["tail"].get<std::string>())
          << c["pattern"]["text"].get<std::string>() << "\n";
    };
    for (const Json &c : d["top"]) row(std::to_string(c["rank"].get<uint64_t>()), c);
    if (!d["baseline"].is_null()) row("base:" + std::to_string(d["baseline"]["rank"].get<uint64_t>()), d["baseline"]);
    return s.str();
}

struct EntropyOpts {
    uint64_t seed = 1;
    int seeds = 1;
    std::string cut = "auto";
    int cap = kDefaultStateCap;
    std::string compare;
    std::string gates = "haar";
    double theta = 1.5707963267948966;
    double phi = 0.5235987755982988;
};

Json entropy_for(const Lattice &lat, const DualGraph &dual, const PatternCode &code, const CycleSequence &seq,
                 const PathSearchConfig &thresholds, const EntropyOpts &o, const GateModel &model) {
    check_code(lat, code);
    CircuitLayout circuit = assemble_circuit(lat, code, seq);
    Json j{{"pattern", Json{{"a", format_bits(code.a_bits)},
                            {"c", format_bits(code.c_bits)},
                            {"swap", code.order_swap ? 1 : 0},
                            {"text", format_code(code)}}},
           {"sequence", seq.str()}};
    Cut cut;
    if (o.cut == "auto") {
        PathSet paths = enumerate_cut_paths(lat, dual, thresholds);
        SfaResult r = sfa_cost(circuit, paths);
        cut = paths.cuts[r.cut_index];
        j["log2_cost"] = r.breakdown.log2_cost;
    } else {
        std::vector<int> sites;
        for (Coord p : parse_coords(o.cut)) {
            int s = dual.site_at(p);
            if (s < 0) throw ValidationError("cut names an unknown plaquette");
            sites.push_back(s);
        }
        cut.path = make_cut_path(dual, std::move(sites));
        cut.bip = bipartition_from_path(lat, dual, cut.path);
        j["log2_cost"] = evaluate_path(circuit, cut.bip).log2_cost;
    }
    j["cut"] = cut_json(dual, cut.path);
    j["n1"] = cut.bip.n1;
    j["n2"] = cut.bip.n2;

    std::vector<EntropyProfile> profiles;
    for (int k = 0; k < o.seeds; k++) profiles.push_back(entropy_profile(circuit, cut.bip, o.seed + k, model));
    Json rows = Json::array();
    for (int t = 0; t <= circuit.depth(); t++) {
        double sum = 0.0, lo = 1e300, hi = -1e300;
        for (const auto &p : profiles) {
            sum += p.entropy[t];
            lo = std::min(lo, p.entropy[t]);
            hi = std::max(hi, p.entropy[t]);
        }
        rows.push_back({{"cycle", t},
                        {"S", sum / o.seeds},
                        {"S_min", lo},
                        {"S_max", hi},
                        {"cross_gates", profiles.front().cumulative_cross[t]}});
    }
    j["seeds"] = {{"first", o.seed}, {"count", o.seeds}};
    j["rows"] = std::move(rows);
    return j;
}

std::string entropy_table(const Json &d) {
    std::ostringstream s;
    const Json &cs = d["circuits"];
    s << "cycle";
    for (size_t i = 0; i < cs.size(); i++) s << "  S" << (cs.size() > 1 ? std::string(1, static_cast<char>('a' + i)) : "");
    s << "\n";
    const size_t rows = cs[0]["rows"].size();
    for (size_t t = 0; t < rows; t++) {
        s << std::left << std::setw(5) << t;
        for (const Json &c : cs) s << "  " << std::fixed << std::setprecision(6) << c["rows"][t]["S"].get<double>();
        s << "\n";
    }
    return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Random-circuit pattern design: SFA cost estimation, exhaustive search, fidelity and entropy checks",
                 "rqcdesign"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common common;
    LatticeOpts lat_opts;
    ThresholdOpts thr;
    PatternOpts pat;
    int depth = 20;
    std::string sequence;
    bool forbid_junction = true;
    std::optional<double> e1, e2, er;
    bool with_circuit = false;

    CLI::App *lattice_cmd = app.add_subcommand("lattice", "describe a lattice and its dual");
    lat_opts.add(lattice_cmd);
    common.add(lattice_cmd, false);

    CLI::App *eval_cmd = app.add_subcommand("evaluate", "SFA cost, best cut and fidelity of one pattern");
    lat_opts.add(eval_cmd);
    thr.add(eval_cmd);
    pat.add(eval_cmd);
    common.add(eval_cmd, true);
    eval_cmd->add_option("--depth,-d", depth, "number of cycles")->capture_default_str();
    eval_cmd->add_option("--sequence", sequence, "explicit letter sequence, e.g. ABCDCDAB");
    eval_cmd->add_flag("!--allow-junction-repeat", forbid_junction, "let the tail start with the prefix's last letter");
    eval_cmd->add_option("--e1", e1, "single-qubit gate error rate");
    eval_cmd->add_option("--e2", e2, "two-qubit gate error rate");
    eval_cmd->add_option("--er", er, "readout error rate");
    eval_cmd->add_flag("--circuit", with_circuit, "include the circuit layout");

    CLI::App *search_cmd = app.add_subcommand("search", "exhaustive pattern search");
    SearchConfig scfg;
    scfg.threads = default_threads();
    bool baseline = true;
    bool progress = false;
    lat_opts.add(search_cmd);
    thr.add(search_cmd);
    common.add(search_cmd, true);
    search_cmd->add_option("--depth,-d", scfg.depth, "number of cycles")->capture_default_str();
    search_cmd->add_option("--topk", scfg.top_k, "ranked candidates to report")->capture_default_str();
    search_cmd->add_option("--threads,-j", scfg.threads, "worker threads (default $RQCDESIGN_THREADS or 1)")
        ->capture_default_str();
    search_cmd->add_option("--cap", scfg.enumeration_cap, "max code bits")->capture_default_str();
    search_cmd->add_flag("--baseline,!--no-baseline", baseline, "rank the all-1/all-0 baseline")->capture_default_str();
    search_cmd->add_flag("!--allow-junction-repeat", scfg.forbid_junction_repeat,
                         "let the tail start with the prefix's last letter");
    search_cmd->add_flag("--progress", progress, "print progress to stderr");

    CLI::App *entropy_cmd = app.add_subcommand("entropy", "entanglement entropy across a cut, per cycle");
    EntropyOpts eo;
    LatticeOpts ent_lat;
    ent_lat.width = 4;
    ent_lat.height = 4;
    ent_lat.add(entropy_cmd);
    thr.add(entropy_cmd);
    pat.add(entropy_cmd);
    common.add(entropy_cmd, false);
    entropy_cmd->add_option("--depth,-d", depth, "number of cycles")->capture_default_str();
    entropy_cmd->add_option("--sequence", sequence, "explicit letter sequence");
    entropy_cmd->add_option("--seed", eo.seed, "first random seed")->capture_default_str();
    entropy_cmd->add_option("--seeds", eo.seeds, "number of seeds averaged")->capture_default_str()->check(
        CLI::Range(1, 100000));
    entropy_cmd->add_option("--cut", eo.cut, "auto (minimum-cost cut) or plaquettes \"(a,b),...\"")
        ->capture_default_str();
    entropy_cmd->add_option("--cap", eo.cap, "max qubits")->capture_default_str();
    entropy_cmd->add_option("--compare", eo.compare, "second pattern text to profile alongside");
    entropy_cmd->add_option("--gates", eo.gates, "haar or xyw")->check(CLI::IsMember({"haar", "xyw"}))->capture_default_str();
    entropy_cmd->add_option("--theta", eo.theta, "fsim theta")->capture_default_str();
    entropy_cmd->add_option("--phi", eo.phi, "fsim phi")->capture_default_str();

    CLI::App *serve_cmd = app.add_subcommand("serve", "run the HTTP service");
    ServiceConfig svc;
    serve_cmd->add_option("--host", svc.host, "bind address")->capture_default_str();
    serve_cmd->add_option("--port", svc.port, "port (0 = any)")->capture_default_str();
    serve_cmd->add_option("--workers", svc.job_workers, "concurrent search jobs")->capture_default_str();
    serve_cmd->add_option("--max-threads", svc.max_threads, "max threads per job")->capture_default_str();

    std::vector<std::string> argv_store{"rqcdesign"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        RunManifest m;
        std::string text;
        if (lattice_cmd->parsed()) {
            const Lattice lat = build_lattice(lat_opts.spec());
            m.command = "lattice";
            m.config = lattice_spec_json(lat.spec());
            Json doc = attach_manifest(lattice_json(lat, build_dual(lat)), m);
            text = common.format == "table" ? lattice_table(doc) : doc.dump(2) + "\n";
        } else if (eval_cmd->parsed()) {
            EvaluateRequest req;
            m.command = "evaluate";
            if (!common.request.empty()) {
                req = evaluate_request_from_json(read_request(common.request, m));
            } else {
                req.lattice = lat_opts.spec();
                req.pattern = pat.code();
                req.depth = depth;
                if (!sequence.empty()) req.sequence = sequence;
                req.forbid_junction_repeat = forbid_junction;
                req.thresholds = thr.cfg;
                if (e1 || e2 || er) {
                    NoiseModel n;
                    n.e1 = e1.value_or(0.0);
                    n.e2 = e2.value_or(0.0);
                    n.er = er.value_or(0.0);
                    check_noise(n);
                    req.noise = n;
                }
            }
            m.config = evaluate_request_json(req);
            Json doc = evaluate_document(req);
            if (with_circuit) {
                const Lattice lat = build_lattice(req.lattice);
                PatternCode code = pattern_from_json(doc["pattern"]);
                doc["circuit"] = circuit_json(assemble_circuit(lat, code, parse_sequence(doc["sequence"].get<std::string>())));
            }
            doc = attach_manifest(std::move(doc), m);
            text = common.format == "table" ? evaluate_table(doc) : doc.dump(2) + "\n";
        } else if (search_cmd->parsed()) {
            SearchRequest req;
            m.command = "search";
            if (!common.request.empty()) {
                req = search_request_from_json(read_request(common.request, m));
                if (search_cmd->count("--threads")) req.config.threads = scfg.threads;
            } else {
                req.lattice = lat_opts.spec();
                req.config = scfg;
                req.config.include_baseline = baseline;
                req.config.paths = thr.cfg;
            }
            if (req.config.threads < 1 || req.config.threads > 256) throw ValidationError("threads must lie in 1..256");
            m.config = search_request_json(req);
            const Lattice lat = build_lattice(req.lattice);
            ProgressFn fn;
            if (progress) fn = [&err](double f) { err << "progress " << num(f, 4) << "\n"; };
            SearchReport report = search(lat, req.config, fn);
            Json doc = attach_manifest(search_report_json(lat, report), m);
            text = common.format == "table" ? search_table(doc) : doc.dump(2) + "\n";
        } else if (entropy_cmd->parsed()) {
            const Lattice lat = build_lattice(ent_lat.spec());
            const DualGraph dual = build_dual(lat);
            GateModel model;
            model.single = eo.gates == "haar" ? SingleQubitSet::haar : SingleQubitSet::sqrt_xyw;
            model.theta = eo.theta;
            model.phi = eo.phi;
            model.cap = eo.cap;
            if (eo.cap < 1 || eo.cap > kHardStateCap) {
                throw CapExceeded("--cap must lie in 1.." + std::to_string(kHardStateCap));
            }
            if (lat.num_qubits() > eo.cap) {
                throw CapExceeded("lattice has " + std::to_string(lat.num_qubits()) + " qubits, above the cap of " +
                                  std::to_string(eo.cap));
            }
            CycleSequence seq = sequence.empty() ? truncated_sequence(depth) : parse_sequence(sequence);
            if (depth < 1 && sequence.empty()) throw ValidationError("depth must be positive");
            std::vector<PatternCode> codes{pat.code().value_or(baseline_code(lat))};
            if (!eo.compare.empty()) codes.push_back(parse_code(eo.compare));
            m.command = "entropy";
            m.seed = eo.seed;
            m.config = Json{{"lattice", lattice_spec_json(lat.spec())},
                            {"sequence", seq.str()},
                            {"seeds", eo.seeds},
                            {"cut", eo.cut},
                            {"cap", eo.cap},
                            {"gates", eo.gates},
                            {"theta", eo.theta},
                            {"phi", eo.phi}};
            Json circuits = Json::array();
            for (const auto &code : codes) circuits.push_back(entropy_for(lat, dual, code, seq, thr.cfg, eo, model));
            Json doc = attach_manifest(Json{{"num_qubits", lat.num_qubits()}, {"circuits", std::move(circuits)}}, m);
            text = common.format == "table" ? entropy_table(doc) : doc.dump(2) + "\n";
        } else if (serve_cmd->parsed()) {
            Service service(svc);
            err << "serving on " << svc.host << ":" << svc.port << "\n";
            service.run();
            return kExitOk;
        }
        emit(common, out, text);
        return kExitOk;
    } catch (const CapExceeded &e) {
        err << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NoFeasibleCut &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DegenerateBipartition &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace rqcdesign
