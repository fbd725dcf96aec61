// trigrad: triply graded homology of braid closures and the HOMFLYPT oracle.
//
// Exit codes: 0 success, 1 mismatch, 2 braid parse error, 3 configuration
// error, 4 comparison window too small to decide.

#include "trigrad/trigrad.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace trigrad;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kParse = 2, kConfig = 3, kInconclusive = 4 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string braid;
    int strands = 0;
    int qmax = 12;
    bool reduced = false;
    std::string basepoint = "x1";
    int marks = 1;
    bool json = false;
    std::string out;
    int workers = 0;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool braid_arg = true) {
    if (braid_arg) cmd->add_option("braid", cfg.braid, "braid word, e.g. \"1 -2 1 -2\" or \"n=3 1 2\"")->required();
    cmd->add_option("--strands", cfg.strands, "number of strands");
    cmd->add_option("--qmax", cfg.qmax, "largest q-degree computed")->capture_default_str();
    cmd->add_flag("--reduced", cfg.reduced, "reduced theory (basepoint set to zero)");
    cmd->add_option("--basepoint", cfg.basepoint, "basepoint variable for --reduced")->capture_default_str();
    cmd->add_option("--marks", cfg.marks, "marks per segment")->capture_default_str();
    cmd->add_flag("--json", cfg.json, "JSON output");
    cmd->add_option("--out", cfg.out, "write output to a file");
    cmd->add_option("--workers", cfg.workers, "worker threads (default TRIGRAD_WORKERS or 1)");
}

void check(const RunConfig& cfg) {
    if (cfg.qmax < 1) throw ConfigError("--qmax must be at least 1");
    if (cfg.marks < 1) throw ConfigError("--marks must be at least 1");
    if (cfg.workers < 0) throw ConfigError("--workers must be at least 1");
    if (cfg.strands < 0) throw ConfigError("--strands must be at least 1");
}

BraidWord braid_of(const RunConfig& cfg) {
    std::optional<int> n;
    if (cfg.strands > 0) n = cfg.strands;
    return parse_braid(cfg.braid, n);
}

CubeOptions cube_options(const RunConfig& cfg) {
    CubeOptions o;
    o.reduced = cfg.reduced;
    o.basepoint = cfg.basepoint;
    o.marks = cfg.marks;
    o.workers = cfg.workers > 0 ? cfg.workers : default_workers();
    return o;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << text;
}

std::string series_text(const QSeries& s) {
    std::ostringstream os;
    for (const auto& [l, poly] : s.coefficients()) os << "  q^" << l << ": " << tpoly_str(poly) << '\n';
    return os.str();
}

json series_json(const QSeries& s) {
    json out = json::array();
    for (const auto& [l, poly] : s.coefficients()) {
        json terms = json::array();
        for (const auto& [te, c] : poly) terms.push_back({te, rational_json(c)});
        out.push_back({l, terms});
    }
    return out;
}

std::string homology_text(const std::string& title, const HomologyReport& r) {
    std::ostringstream os;
    os << title << "  qmax " << r.dims.qmax << (r.reduced ? "  reduced" : "") << '\n'
       << dims_table(r.dims) << "P = " << poincare_polynomial(r.dims) << '\n';
    return os.str();
}

int cmd_homology(const RunConfig& cfg) {
    BraidWord b = braid_of(cfg);
    HomologyReport r{render_braid(b), cfg.reduced, link_homology(b, cfg.qmax, cube_options(cfg))};
    emit(cfg, cfg.json ? to_json(r).dump() + "\n" : homology_text("braid " + r.braid, r));
    return kOk;
}

int cmd_homfly(const RunConfig& cfg) {
    BraidWord b = braid_of(cfg);
    RationalQT f = homfly_F(b);
    HalfPowerQT ft = homfly_F_tilde(b);
    QSeries s = qt_expand(f, cfg.qmax);
    if (cfg.json) {
        json out{{"braid", render_braid(b)}, {"F", f.str()}, {"F_tilde", ft.str()}, {"qmax", cfg.qmax},
                 {"series", series_json(s)}};
        emit(cfg, out.dump() + "\n");
    } else {
        std::ostringstream os;
        os << "braid " << render_braid(b) << "\nF  = " << f.str() << "\nF~ = " << ft.str() << (ft.odd ? "  (A^2 = -t^-1*q^-1)" : "")
           << "\nF as a q-series:\n"
           << series_text(s);
        emit(cfg, os.str());
    }
    return kOk;
}

int cmd_euler_check(const RunConfig& cfg) {
    BraidWord b = braid_of(cfg);
    CubeOptions opt = cube_options(cfg);
    opt.reduced = false;
    QSeries chi = euler_characteristic(link_homology(b, cfg.qmax, opt));
    QSeries f = qt_expand(homfly_F(b), cfg.qmax);
    auto diff = chi.first_difference(f);
    std::ostringstream os;
    if (cfg.json) {
        json out{{"braid", render_braid(b)}, {"qmax", cfg.qmax}, {"pass", !diff}};
        if (diff)
            out["mismatch"] = {{"l", *diff},
                               {"euler", tpoly_str(chi.coefficient(*diff))},
                               {"homfly", tpoly_str(f.coefficient(*diff))}};
        os << out.dump() << '\n';
    } else if (diff) {
        os << "FAIL " << render_braid(b) << " at q^" << *diff << ": euler " << tpoly_str(chi.coefficient(*diff))
           << ", homfly " << tpoly_str(f.coefficient(*diff)) << '\n';
    } else {
        os << "PASS " << render_braid(b) << " agrees up to q^" << cfg.qmax << '\n';
    }
    emit(cfg, os.str());
    return diff ? kMismatch : kOk;
}

/// conjugate:K, far-commute:P, braid-relation:P, insert-pair:P:L,
/// cancel-pair:P, stabilize+, stabilize-, destabilize.
MarkovMove parse_move(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.empty()) throw ConfigError("empty move");
    auto num = [&](size_t i) {
        if (i >= parts.size()) throw ConfigError("move " + spec + " needs more parameters");
        try {
            return std::stoi(parts[i]);
        } catch (const std::exception&) {
            throw ConfigError("bad number in move " + spec);
        }
    };
    const std::string& k = parts[0];
    if (k == "conjugate") return {MarkovKind::Conjugate, num(1), 0};
    if (k == "far-commute") return {MarkovKind::FarCommute, num(1), 0};
    if (k == "braid-relation") return {MarkovKind::BraidRelation, num(1), 0};
    if (k == "insert-pair") return {MarkovKind::CancelPair, num(1), num(2)};
    if (k == "cancel-pair") return {MarkovKind::CancelPair, num(1), 0};
    if (k == "stabilize+") return {MarkovKind::StabilizePositive, 0, 0};
    if (k == "stabilize-") return {MarkovKind::StabilizeNegative, 0, 0};
    if (k == "destabilize") return {MarkovKind::Destabilize, 0, 0};
    throw ConfigError("unknown move " + spec);
}

int cmd_invariance(const RunConfig& cfg, const std::vector<std::string>& moves) {
    if (moves.empty()) throw ConfigError("invariance needs at least one --move");
    BraidWord b = braid_of(cfg);
    BraidWord t = b;
    for (const auto& m : moves) t = apply_markov(t, parse_move(m));
    CubeOptions opt = cube_options(cfg);
    ShiftComparison c = compare_up_to_shift(link_homology(b, cfg.qmax, opt), link_homology(t, cfg.qmax, opt));
    auto [dj, dk, dl] = c.shift;
    const char* status = c.status == ShiftComparison::Status::Match     ? "MATCH"
                         : c.status == ShiftComparison::Status::NoShift ? "FAIL"
                                                                        : "INCONCLUSIVE";
    std::ostringstream os;
    if (cfg.json) {
        json out{{"braid", render_braid(b)}, {"moved", render_braid(t)}, {"status", status},
                 {"shift", {dj, dk, dl}}, {"window", {c.window_lo, c.window_hi}}, {"reason", c.reason}};
        os << out.dump() << '\n';
    } else {
        os << status << ' ' << render_braid(b) << " -> " << render_braid(t) << "  shift (j,k,l) = (" << dj << ','
           << dk << ',' << dl << ")  window l in [" << c.window_lo << ',' << c.window_hi << ']';
        if (!c.reason.empty()) os << "  " << c.reason;
        os << '\n';
    }
    emit(cfg, os.str());
    switch (c.status) {
        case ShiftComparison::Status::Match: return kOk;
        case ShiftComparison::Status::NoShift: return kMismatch;
        default: return kInconclusive;
    }
}

int cmd_hom_dim(const RunConfig& cfg, const std::string& src, const std::string& tgt, int k, int l) {
    auto m = named_open_matrix(src);
    auto n = named_open_matrix(tgt);
    if (!m) throw ConfigError("unknown graph " + src);
    if (!n) throw ConfigError("unknown graph " + tgt);
    long d = hom_space_dim(*m, *n, {k, l});
    std::ostringstream os;
    if (cfg.json)
        os << json{{"source", src}, {"target", tgt}, {"degree", {k, l}}, {"dim", d}}.dump() << '\n';
    else
        os << "dim Hom(" << src << ", " << tgt << "){" << k << ',' << l << "} = " << d << '\n';
    emit(cfg, os.str());
    return kOk;
}

int cmd_graph_homology(const RunConfig& cfg, const std::string& name) {
    auto m = named_closed_matrix(name);
    if (!m) throw ConfigError("unknown closed graph " + name);
    HomologyReport r{name, false, koszul_homology(*m, cfg.qmax)};
    emit(cfg, cfg.json ? to_json(r).dump() + "\n" : homology_text("graph " + name, r));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triply graded homology of braid closures"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* homology = app.add_subcommand("homology", "homology of a braid closure");
    add_common(homology, cfg);
    auto* homfly = app.add_subcommand("homfly", "HOMFLYPT polynomial F and F~");
    add_common(homfly, cfg);
    auto* euler = app.add_subcommand("euler-check", "compare the Euler characteristic with F");
    add_common(euler, cfg);
    auto* invariance = app.add_subcommand("invariance", "compare homology before and after Markov moves");
    add_common(invariance, cfg);
    std::vector<std::string> moves;
    invariance->add_option("--move", moves,
                           "conjugate:K far-commute:P braid-relation:P insert-pair:P:L cancel-pair:P "
                           "stabilize+ stabilize- destabilize");
    auto* homdim = app.add_subcommand("hom-dim", "dimension of a Hom space between named open graphs");
    add_common(homdim, cfg, false);
    std::string src, tgt;
    int hk = 0, hl = 0;
    homdim->add_option("source", src, "gamma000..gamma111, gamma1..gamma4, upsilon, S")->required();
    homdim->add_option("target", tgt)->required();
    homdim->add_option("--k", hk, "a-degree")->capture_default_str();
    homdim->add_option("--l", hl, "q-degree")->capture_default_str();
    auto* graph = app.add_subcommand("graph-homology", "homology of a named closed graph");
    add_common(graph, cfg, false);
    std::string gname;
    graph->add_option("name", gname, "circle, theta, upsilon-closure, gamma1-closure..gamma4-closure")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        check(cfg);
        if (homology->parsed()) return cmd_homology(cfg);
        if (homfly->parsed()) return cmd_homfly(cfg);
        if (euler->parsed()) return cmd_euler_check(cfg);
        if (invariance->parsed()) return cmd_invariance(cfg, moves);
        if (homdim->parsed()) return cmd_hom_dim(cfg, src, tgt, hk, hl);
        if (graph->parsed()) return cmd_graph_homology(cfg, gname);
    } catch (const BraidParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}
