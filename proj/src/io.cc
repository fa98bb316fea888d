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

#include "rqcdesign/io.h"

#include <cctype>
#include <charconv>

#include "rqcdesign/error.h"

namespace rqcdesign {

namespace {

class Scanner {
   public:
    explicit Scanner(const std::string &text) : s_(text) {}

    void skip_space() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) i_++;
    }
    bool done() {
        skip_space();
        return i_ >= s_.size();
    }
    bool accept(char c) {
        skip_space();
        if (i_ < s_.size() && s_[i_] == c) {
            i_++;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail();
    }
    int integer() {
        skip_space();
        int v = 0;
        const char *begin = s_.data() + i_;
        const char *end = s_.data() + s_.size();
        if (begin < end && *begin == '+') begin++;
        auto [p, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || p == begin) fail();
        i_ = static_cast<size_t>(p - s_.data());
        return v;
    }
    [[noreturn]] void fail() const { throw ValidationError("malformed coordinate list '" + s_ + "'"); }

   private:
    const std::string &s_;
    size_t i_ = 0;
};

int get_int(const Json &j, const char *key, int fallback) {
    if (!j.contains(key) || j[key].is_null()) return fallback;
    const Json &v = j[key];
    if (v.is_boolean()) return v.get<bool>() ? 1 : 0;
    if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
    int64_t x = v.get<int64_t>();
    if (x < -(int64_t{1} << 30) || x > (int64_t{1} << 30)) throw ValidationError(std::string("field '") + key + "' out of range");
    return static_cast<int>(x);
}

bool get_bool(const Json &j, const char *key, bool fallback) {
    if (!j.contains(key) || j[key].is_null()) return fallback;
    const Json &v = j[key];
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) return v.get<int64_t>() != 0;
    throw ValidationError(std::string("field '") + key + "' must be a boolean");
}

double get_rate(const Json &j, const char *key) {
    if (!j.contains(key) || j[key].is_null()) return 0.0;
    if (!j[key].is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<Coord> coords_from_json(const Json &v, const char *what) {
    if (v.is_null()) return {};
    if (v.is_string()) return parse_coords(v.get<std::string>());
    if (!v.is_array()) throw ValidationError(std::string(what) + " must be a coordinate list");
    std::vector<Coord> out;
    for (const Json &p : v) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
            throw ValidationError(std::string(what) + " entries must be [u, v] integer pairs");
        }
        out.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    return out;
}

Json coords_json(const std::vector<Coord> &cs) {
    Json a = Json::array();
    for (Coord c : cs) a.push_back({c.u, c.v});
    return a;
}

std::map<int, double> rate_map(const Json &j, const char *key) {
    std::map<int, double> m;
    if (!j.contains(key) || j[key].is_null()) return m;
    if (!j[key].is_object()) throw ValidationError(std::string("field '") + key + "' must map ids to rates");
    for (const auto &[k, v] : j[key].items()) {
        int id = 0;
        auto [p, ec] = std::from_chars(k.data(), k.data() + k.size(), id);
        if (ec != std::errc() || p != k.data() + k.size() || !v.is_number()) {
            throw ValidationError(std::string("bad entry in '") + key + "'");
        }
        m[id] = v.get<double>();
    }
    return m;
}

Json pattern_json(const PatternCode &code) {
    return Json{{"a", format_bits(code.a_bits)},
                {"c", format_bits(code.c_bits)},
                {"swap", code.order_swap ? 1 : 0},
                {"text", format_code(code)}};
}

Json thresholds_json(const PathSearchConfig &t) {
    return Json{{"e_star", t.e_star}, {"e_star_slack", t.e_star_slack}, {"n_star", t.n_star}, {"max_side", t.max_side}};
}

// Converts library exceptions from malformed documents into validation errors.
template <typename F>
auto guarded(F &&f) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed request: ") + e.what());
    }
}

}  // namespace

std::vector<Coord> parse_coords(const std::string &text) {
    Scanner sc(text);
    std::vector<Coord> out;
    if (sc.done()) return out;
    const bool parens = text.find('(') != std::string::npos;
    for (;;) {
        if (parens) sc.expect('(');
        Coord c;
        c.u = sc.integer();
        sc.expect(',');
        c.v = sc.integer();
        if (parens) sc.expect(')');
        out.push_back(c);
        if (sc.done()) break;
        if (!sc.accept(';') && !(parens && sc.accept(','))) {
            if (!parens) sc.fail();
        }
        if (sc.done()) sc.fail();
    }
    return out;
}

std::string format_coords(const std::vector<Coord> &coords) {
    std::string s;
    for (size_t i = 0; i < coords.size(); i++) {
        if (i) s += ",";
        s += "(" + std::to_string(coords[i].u) + "," + std::to_string(coords[i].v) + ")";
    }
    return s;
}

LatticeSpec lattice_spec_from_json(const Json &j) {
    return guarded([&] {
        if (!j.is_object()) throw ValidationError("lattice spec must be an object");
        LatticeMode mode = parse_mode(j.value("mode", std::string("grid")));
        std::vector<Coord> defects = j.contains("defects") ? coords_from_json(j["defects"], "defects") : std::vector<Coord>{};
        switch (mode) {
            case LatticeMode::grid:
                return LatticeSpec::grid(get_int(j, "width", 0), get_int(j, "height", 0), std::move(defects));
            case LatticeMode::window:
                return LatticeSpec::window(get_int(j, "xsize", 0), get_int(j, "ysize", 0), std::move(defects));
            case LatticeMode::mask:
                return LatticeSpec::mask(coords_from_json(j.value("sites", Json()), "sites"), std::move(defects));
        }
        throw ValidationError("unknown lattice mode");
    });
}

Json lattice_spec_json(const LatticeSpec &spec) {
    Json j{{"mode", mode_name(spec.mode)}};
    switch (spec.mode) {
        case LatticeMode::grid:
            j["width"] = spec.width;
            j["height"] = spec.height;
            break;
        case LatticeMode::window:
            j["xsize"] = spec.xsize;
            j["ysize"] = spec.ysize;
            break;
        case LatticeMode::mask:
            j["sites"] = coords_json(spec.sites);
            break;
    }
    j["defects"] = coords_json(spec.defects);
    return j;
}

PatternCode pattern_from_json(const Json &j) {
    return guarded([&] {
        if (j.is_string()) return parse_code(j.get<std::string>());
        if (!j.is_object()) throw ValidationError("pattern must be an object or text");
        if (j.contains("text")) return parse_code(j["text"].get<std::string>());
        PatternCode code;
        code.a_bits = parse_bits(j.value("a", std::string()));
        code.c_bits = parse_bits(j.value("c", std::string()));
        code.order_swap = get_bool(j, "swap", false);
        return code;
    });
}

PathSearchConfig thresholds_from_json(const Json &j) {
    return guarded([&] {
        PathSearchConfig t;
        if (j.is_null()) return t;
        if (!j.is_object()) throw ValidationError("thresholds must be an object");
        t.e_star = get_int(j, "e_star", t.e_star);
        t.e_star_slack = get_int(j, "e_star_slack", t.e_star_slack);
        t.n_star = get_int(j, "n_star", t.n_star);
        t.max_side = get_int(j, "max_side", t.max_side);
        if (t.e_star < 0 || t.e_star_slack < 0 || t.n_star < 0 || t.max_side < 1) {
            throw ValidationError("thresholds must be non-negative (max_side positive)");
        }
        return t;
    });
}

NoiseModel noise_from_json(const Json &j) {
    return guarded([&] {
        if (!j.is_object()) throw ValidationError("noise must be an object");
        NoiseModel n;
        n.e1 = get_rate(j, "e1");
        n.e2 = get_rate(j, "e2");
        n.er = get_rate(j, "er");
        n.e1_by_qubit = rate_map(j, "e1_by_qubit");
        n.e2_by_bond = rate_map(j, "e2_by_bond");
        n.er_by_qubit = rate_map(j, "er_by_qubit");
        check_noise(n);
        return n;
    });
}

EvaluateRequest evaluate_request_from_json(const Json &j) {
    return guarded([&] {
        if (!j.is_object()) throw ValidationError("request must be an object");
        EvaluateRequest r;
        r.lattice = lattice_spec_from_json(j.value("lattice", Json::object()));
        if (j.contains("pattern") && !j["pattern"].is_null()) r.pattern = pattern_from_json(j["pattern"]);
        r.depth = get_int(j, "depth", r.depth);
        if (j.contains("sequence") && !j["sequence"].is_null()) r.sequence = j["sequence"].get<std::string>();
        r.forbid_junction_repeat = get_bool(j, "forbid_junction_repeat", true);
        if (j.contains("thresholds")) r.thresholds = thresholds_from_json(j["thresholds"]);
        if (j.contains("noise") && !j["noise"].is_null()) r.noise = noise_from_json(j["noise"]);
        return r;
    });
}

Json evaluate_request_json(const EvaluateRequest &r) {
    Json j{{"lattice", lattice_spec_json(r.lattice)}};
    j["pattern"] = r.pattern ? pattern_json(*r.pattern) : Json();
    j["depth"] = r.depth;
    j["sequence"] = r.sequence ? Json(*r.sequence) : Json();
    j["forbid_junction_repeat"] = r.forbid_junction_repeat;
    j["thresholds"] = thresholds_json(r.thresholds);
    if (r.noise) {
        j["noise"] = Json{{"e1", r.noise->e1}, {"e2", r.noise->e2}, {"er", r.noise->er}};
        auto put = [&](const char *key, const std::map<int, double> &m) {
            if (m.empty()) return;
            Json o = Json::object();
            for (const auto &[k, v] : m) o[std::to_string(k)] = v;
            j["noise"][key] = o;
        };
        put("e1_by_qubit", r.noise->e1_by_qubit);
        put("e2_by_bond", r.noise->e2_by_bond);
        put("er_by_qubit", r.noise->er_by_qubit);
    } else {
        j["noise"] = Json();
    }
    return j;
}

SearchRequest search_request_from_json(const Json &j) {
    return guarded([&] {
        if (!j.is_object()) throw ValidationError("request must be an object");
        SearchRequest r;
        r.lattice = lattice_spec_from_json(j.value("lattice", Json::object()));
        SearchConfig &c = r.config;
        c.depth = get_int(j, "depth", c.depth);
        c.top_k = get_int(j, "top_k", c.top_k);
        c.threads = get_int(j, "threads", c.threads);
        c.include_baseline = get_bool(j, "baseline", c.include_baseline);
        c.enumeration_cap = get_int(j, "enumeration_cap", c.enumeration_cap);
        c.forbid_junction_repeat = get_bool(j, "forbid_junction_repeat", c.forbid_junction_repeat);
        if (j.contains("thresholds")) c.paths = thresholds_from_json(j["thresholds"]);
        if (c.threads < 1 || c.threads > 256) throw ValidationError("threads must lie in 1..256");
        return r;
    });
}

Json search_request_json(const SearchRequest &r) {
    const SearchConfig &c = r.config;
    return Json{{"lattice", lattice_spec_json(r.lattice)},
                {"depth", c.depth},
                {"top_k", c.top_k},
                {"threads", c.threads},
                {"baseline", c.include_baseline},
                {"enumeration_cap", c.enumeration_cap},
                {"forbid_junction_repeat", c.forbid_junction_repeat},
                {"thresholds", thresholds_json(c.paths)}};
}

Json lattice_json(const Lattice &lattice, const DualGraph &dual) {
    Json j{{"spec", lattice_spec_json(lattice.spec())},
           {"num_qubits", lattice.num_qubits()},
           {"num_bonds", lattice.num_bonds()},
           {"m", lattice.num_rows(Family::F1)},
           {"n", lattice.num_rows(Family::F2)},
           {"code_bits", lattice.num_rows(Family::F1) + lattice.num_rows(Family::F2) + 1}};
    Json qs = Json::array();
    for (const Qubit &q : lattice.qubits()) {
        qs.push_back({{"id", q.id}, {"u", q.pos.u}, {"v", q.pos.v}, {"x", q.drawing.u}, {"y", q.drawing.v}});
    }
    j["qubits"] = std::move(qs);
    Json bs = Json::array();
    for (const Bond &b : lattice.bonds()) {
        bs.push_back({{"id", b.id},
                      {"q0", b.q0},
                      {"q1", b.q1},
                      {"family", b.family == Family::F1 ? "F1" : "F2"},
                      {"row", b.row},
                      {"parity", b.parity}});
    }
    j["bonds"] = std::move(bs);
    std::vector<Coord> defects(lattice.defects().begin(), lattice.defects().end());
    j["defects"] = coords_json(defects);
    int boundary = 0;
    int edges = 0;
    for (const DualSite &s : dual.sites()) {
        boundary += s.boundary;
        edges += static_cast<int>(dual.neighbours(s.id).size());
    }
    j["dual"] = {{"sites", dual.num_sites()},
                 {"boundary_sites", boundary},
                 {"interior_sites", dual.num_sites() - boundary},
                 {"edges", edges / 2}};
    return j;
}

Json breakdown_json(const SfaBreakdown &b) {
    return Json{{"n_c", b.n_c},   {"n_wedge", b.n_wedge}, {"n_DCD", b.n_dcd},
                {"n_st", b.n_st}, {"n_end", b.n_end},     {"n1", b.n1},
                {"n2", b.n2},     {"branch_exponent", b.branch_exponent()}, {"log2_cost", b.log2_cost}};
}

Json cut_json(const DualGraph &dual, const CutPath &path) {
    Json sites = Json::array();
    for (int s : path.sites) sites.push_back({dual.site(s).plaquette.u, dual.site(s).plaquette.v});
    return Json{{"E", path.edges()},
                {"E_eff", path.effective_edges},
                {"sites", path.sites},
                {"plaquettes", std::move(sites)},
                {"crossed_bonds", path.crossed_bonds}};
}

Json fidelity_json(const FidelityEstimate &f) {
    return Json{{"F", f.fidelity},
                {"log_F", f.log_fidelity},
                {"Ns", f.samples},
                {"underflow", f.underflow},
                {"g1", f.counts.g1},
                {"g2", f.counts.g2},
                {"q", f.counts.q}};
}

Json circuit_json(const CircuitLayout &circuit) {
    const Lattice &lat = *circuit.lattice;
    Json qs = Json::array();
    for (const Qubit &q : lat.qubits()) qs.push_back({{"id", q.id}, {"u", q.pos.u}, {"v", q.pos.v}});
    Json cycles = Json::array();
    for (int t = 0; t < circuit.depth(); t++) {
        Json gates = Json::array();
        for (int b : circuit.cycles[t]) {
            Coord p0 = lat.qubit(lat.bond(b).q0).pos;
            Coord p1 = lat.qubit(lat.bond(b).q1).pos;
            gates.push_back({{p0.u, p0.v}, {p1.u, p1.v}});
        }
        cycles.push_back({{"cycle", t},
                          {"letter", std::string(1, letter_char(played_letter(circuit.sequence, circuit.code.order_swap, t)))},
                          {"gates", std::move(gates)}});
    }
    return Json{{"lattice", lattice_spec_json(lat.spec())},
                {"pattern", pattern_json(circuit.code)},
                {"sequence", circuit.sequence.str()},
                {"depth", circuit.depth()},
                {"qubits", std::move(qs)},
                {"cycles", std::move(cycles)}};
}

Json candidate_json(const DualGraph &dual, const RankedCandidate &c) {
    Json j{{"index", c.index},
           {"pattern", pattern_json(c.code)},
           {"sequence", c.sequence.str()},
           {"tail", c.sequence.tail()},
           {"symmetry", c.symmetry},
           {"log2_cost", c.breakdown.log2_cost},
           {"breakdown", breakdown_json(c.breakdown)},
           {"cut_index", c.cut_index}};
    if (!c.cut.sites.empty()) j["cut"] = cut_json(dual, c.cut);
    return j;
}

Json search_report_json(const Lattice &lattice, const SearchReport &r) {
    const DualGraph dual = build_dual(lattice);
    const SearchConfig &c = r.config;
    Json j{{"lattice", lattice_spec_json(r.lattice)},
           {"num_qubits", r.num_qubits},
           {"num_bonds", r.num_bonds},
           {"m", r.m},
           {"n", r.n},
           {"depth", c.depth},
           {"top_k", c.top_k},
           {"forbid_junction_repeat", c.forbid_junction_repeat},
           {"thresholds", {{"e_star", r.e_star}, {"n_star", c.paths.n_star}, {"max_side", c.paths.max_side}}},
           {"num_paths", r.num_paths},
           {"codes", uint64_t{1} << (r.m + r.n + 1)},
           {"candidates", r.candidates}};
    Json top = Json::array();
    for (size_t i = 0; i < r.top.size(); i++) {
        Json e = candidate_json(dual, r.top[i]);
        e["rank"] = i + 1;
        top.push_back(std::move(e));
    }
    j["optimum"] = {{"log2_cost", r.top.empty() ? 0.0 : r.top.front().breakdown.log2_cost}, {"ties", r.optimum_ties}};
    j["top"] = std::move(top);
    if (r.baseline) {
        j["baseline"] = candidate_json(dual, *r.baseline);
        j["baseline"]["rank"] = r.baseline_rank;
    } else {
        j["baseline"] = Json();
    }
    j["prefix_optimum"] = r.prefix_optimum ? candidate_json(dual, *r.prefix_optimum) : Json();
    return j;
}

Json entropy_json(const EntropyProfile &p) {
    Json rows = Json::array();
    for (size_t k = 0; k < p.entropy.size(); k++) {
        rows.push_back({{"cycle", k}, {"S", p.entropy[k]}, {"cross_gates", p.cumulative_cross[k]}});
    }
    return Json{{"seed", p.seed}, {"n1", p.n1}, {"n2", p.n2}, {"rows", std::move(rows)}};
}

Json evaluate_document(const EvaluateRequest &req) {
    const Lattice lat = build_lattice(req.lattice);
    const DualGraph dual = build_dual(lat);
    const PatternCode code = req.pattern ? *req.pattern : baseline_code(lat);
    check_code(lat, code);

    std::vector<CycleSequence> seqs;
    if (req.sequence) {
        CycleSequence s = parse_sequence(*req.sequence);
        if (s.depth() != req.depth) throw ValidationError("sequence length does not match depth");
        seqs.push_back(std::move(s));
    } else if (req.depth >= 4 && req.depth % 4 == 0) {
        seqs.push_back(cycle_sequence(req.depth));
    } else {
        seqs = tail_sequences(req.depth, req.forbid_junction_repeat);
    }

    const PathSet paths = enumerate_cut_paths(lat, dual, req.thresholds);
    int best = -1;
    SfaResult best_result;
    CircuitLayout best_circuit;
    for (int i = 0; i < static_cast<int>(seqs.size()); i++) {
        CircuitLayout circuit = assemble_circuit(lat, code, seqs[i]);
        SfaResult r = sfa_cost(circuit, paths);
        if (best < 0 || r.breakdown.log2_cost > best_result.breakdown.log2_cost) {
            best = i;
            best_result = r;
            best_circuit = std::move(circuit);
        }
    }
    const Cut &cut = paths.cuts[best_result.cut_index];

    Json j{{"lattice",
            {{"spec", lattice_spec_json(lat.spec())},
             {"num_qubits", lat.num_qubits()},
             {"num_bonds", lat.num_bonds()},
             {"m", lat.num_rows(Family::F1)},
             {"n", lat.num_rows(Family::F2)}}},
           {"pattern", pattern_json(code)},
           {"depth", req.depth},
           {"sequence", seqs[best].str()},
           {"tail", seqs[best].tail()},
           {"tail_words", seqs.size() > 1 ? static_cast<int>(seqs.size()) : 0},
           {"thresholds", {{"e_star", paths.e_star}, {"n_star", req.thresholds.n_star}, {"max_side", req.thresholds.max_side}}},
           {"num_paths", paths.cuts.size()}};
    Json b = breakdown_json(best_result.breakdown);
    for (auto &[k, v] : b.items()) j[k] = v;
    j["cut"] = cut_json(dual, cut.path);
    j["cut"]["n1"] = cut.bip.n1;
    j["cut"]["n2"] = cut.bip.n2;
    j["cut"]["side"] = cut.bip.side;
    if (req.noise) {
        Json f = fidelity_json(predict_fidelity(best_circuit, *req.noise));
        for (auto &[k, v] : f.items()) j[k] = v;
    }
    return j;
}

}  // namespace rqcdesign
