// Command-line front end: germ and stratified-resolution computations with
// exact arithmetic. Exit codes: 0 success, 1 domain error, 2 parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include "stringyzeta/abstract.hpp"
#include "stringyzeta/errors.hpp"
#include "stringyzeta/io.hpp"
#include "stringyzeta/mmp.hpp"
#include "stringyzeta/resolution_graph.hpp"
#include "stringyzeta/stringy.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace sz = stringyzeta;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sz::ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

sz::Rational parse_d(const std::string& text) {
    sz::Rational d;
    try {
        d = sz::Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw sz::ParseError("--d expects a rational like 1/2");
    }
    if (d < sz::Rational(0) || d > sz::Rational(1))
        throw sz::ParseError("--d must lie in [0, 1]");
    return d;
}

sz::Level parse_level(const std::string& text) {
    if (text == "motivic") return sz::Level::motivic;
    if (text == "hodge") return sz::Level::hodge;
    if (text == "euler") return sz::Level::euler;
    throw sz::ParseError("--level must be motivic, hodge or euler");
}

sz::ModelChoice parse_model(const std::string& text) {
    if (text == "minimal") return sz::ModelChoice::minimal;
    if (text == "canonical") return sz::ModelChoice::canonical;
    throw sz::ParseError("--model must be minimal or canonical");
}

std::vector<sz::Rational> parse_rational_list(const std::string& text) {
    std::vector<sz::Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(sz::Rational::parse(item));
        } catch (const std::invalid_argument&) {
            throw sz::ParseError("expected a comma-separated list of rationals");
        }
    }
    return out;
}

json table_json(const std::vector<sz::NuRow>& rows) {
    json t = json::array();
    for (const auto& r : rows)
        t.push_back({{"id", r.id},
                     {"nu", r.nu.str()},
                     {"N", r.N.str()},
                     {"a", r.a.str()},
                     {"contracted", r.contracted},
                     {"branch", r.branch}});
    return t;
}

int cmd_discrepancies(const std::string& input, sz::Format format) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    sz::DiscrepancyVector d = sz::log_discrepancies(g);
    if (format == sz::Format::json) {
        json j;
        j["vertices"] = json::object();
        for (std::size_t i = 0; i < g.vertices().size(); ++i)
            j["vertices"][g.vertices()[i].id] = d.vertex_a[i].str();
        j["branches"] = json::object();
        for (std::size_t k = 0; k < g.branches().size(); ++k)
            j["branches"][g.branches()[k].id] = d.branch_a[k].str();
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < g.vertices().size(); ++i)
            std::cout << g.vertices()[i].id << ": " << d.vertex_a[i] << "\n";
        for (std::size_t k = 0; k < g.branches().size(); ++k)
            std::cout << g.branches()[k].id << ": " << d.branch_a[k] << "\n";
    }
    return 0;
}

int cmd_classify(const std::string& input) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    std::cout << sz::to_string(sz::classify(g)) << "\n";
    return 0;
}

int cmd_model(const std::string& input, const std::string& d_text, const std::string& model_text,
              sz::Format format) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    sz::Rational d = parse_d(d_text);
    sz::PartialModel model = parse_model(model_text) == sz::ModelChoice::minimal
                                 ? sz::run_mmp(g, d)
                                 : sz::canonical_model(g, d);
    auto rows = sz::nu_N(model);
    if (format == sz::Format::json) {
        json j;
        json contracted = json::array();
        for (int i : model.contracted()) contracted.push_back(g.vertices()[i].id);
        j["d"] = d.str();
        j["contracted"] = contracted;
        j["table"] = table_json(rows);
        json inter = json::object();
        for (std::size_t i = 0; i < g.vertices().size(); ++i)
            if (!model.is_contracted(static_cast<int>(i)))
                inter[g.vertices()[i].id] =
                    model.log_divisor_intersection(static_cast<int>(i)).str();
        j["intersections"] = inter;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "contracted:";
        for (int i : model.contracted()) std::cout << " " << g.vertices()[i].id;
        std::cout << "\n";
        for (const auto& r : rows)
            std::cout << r.id << ": nu=" << r.nu << " N=" << r.N << " a=" << r.a
                      << (r.contracted ? " (contracted)" : "") << (r.branch ? " (branch)" : "")
                      << "\n";
        for (std::size_t i = 0; i < g.vertices().size(); ++i)
            if (!model.is_contracted(static_cast<int>(i)))
                std::cout << "intersection " << g.vertices()[i].id << ": "
                          << model.log_divisor_intersection(static_cast<int>(i)) << "\n";
    }
    return 0;
}

std::string zeta_value_str(const sz::StringyZeta& z, sz::Format format) {
    if (z.level == sz::Level::euler) return sz::render(z.fn(), format);
    return sz::render(z.expr(), format);
}

int cmd_zeta(const std::string& input, const std::string& d_text, const std::string& level_text,
             const std::string& model_text, bool eval_s1, sz::Format format) {
    std::string text = read_file(input);
    sz::Level level = parse_level(level_text);
    sz::StringyZeta z;
    if (sz::detect_input(text) == sz::InputKind::germ) {
        sz::ResolutionGraph g = sz::parse_germ_json(text);
        z = sz::zeta(g, parse_d(d_text), level, parse_model(model_text));
    } else {
        z = sz::zeta_abstract(sz::parse_stratified_json(text), level);
    }

    if (eval_s1) {
        sz::EvalResult r = sz::eval_or_limit_at_1(z);
        if (std::holds_alternative<sz::PoleReport>(r)) {
            std::cout << "pole of order " << std::get<sz::PoleReport>(r).order << "\n";
        } else if (std::holds_alternative<sz::Rational>(r)) {
            std::cout << sz::render(std::get<sz::Rational>(r), format) << "\n";
        } else {
            std::cout << sz::render(std::get<sz::RationalExpr>(r), format) << "\n";
        }
        return 0;
    }

    if (format == sz::Format::json) {
        json j;
        j["level"] = sz::to_string(z.level);
        j["d"] = z.d.str();
        j["germ"] = z.germ;
        json contracted = json::array();
        for (const auto& id : z.contracted) contracted.push_back(id);
        j["contracted"] = contracted;
        j["table"] = table_json(z.table);
        j["value"] = json::parse(zeta_value_str(z, sz::Format::json));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << zeta_value_str(z, format) << "\n";
    }
    return 0;
}

int cmd_veys(const std::string& input, sz::Format format) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    sz::VeysInvariants v = sz::veys_invariants(g);
    if (format == sz::Format::json) {
        json j;
        j["E"] = json::parse(sz::render(v.E, sz::Format::json));
        j["e"] = v.e.str();
        j["input_was_minimal"] = v.input_was_minimal;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "E = " << sz::render(v.E, format) << "\n";
        std::cout << "e = " << v.e << "\n";
        if (!v.input_was_minimal) std::cout << "note: input was minimized first\n";
    }
    return 0;
}

int cmd_batyrev(const std::string& input, sz::Format format) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    std::cout << sz::render(sz::batyrev_expression(g), format) << "\n";
    return 0;
}

int cmd_check_duality(const std::string& input) {
    sz::StratifiedResolution data = sz::parse_stratified_json(read_file(input));
    sz::DualityReport r = sz::duality_check(data);
    std::cout << "functional equation: " << (r.functional_equation ? "pass" : "fail") << "\n";
    std::cout << "closed-strata form:  " << (r.closed_open_agree ? "pass" : "fail") << "\n";
    if (!r.functional_equation)
        std::cout << "residual = " << sz::render(r.residual, sz::Format::text) << "\n";
    return 0;
}

int cmd_check_blowup(const std::string& input, int trials, unsigned long seed) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    if (g.empty()) throw sz::ParseError("check-blowup needs a nonempty germ");
    std::mt19937_64 rng(seed);
    const sz::Rational dpool[] = {sz::Rational(0), sz::Rational(1, 3), sz::Rational(1, 2),
                                  sz::Rational(9, 10), sz::Rational(1)};
    bool all_ok = true;
    for (int t = 0; t < trials; ++t) {
        // random site
        int n = static_cast<int>(g.vertices().size());
        int nedges = static_cast<int>(g.edges().size());
        bool interior = nedges == 0 || (rng() % 2 == 0);
        sz::BlowupSite site = sz::BlowupSite::interior(0);
        std::string site_desc;
        if (interior) {
            int v = static_cast<int>(rng() % n);
            site = sz::BlowupSite::interior(v);
            site_desc = "interior(" + g.vertices()[v].id + ")";
        } else {
            int e = static_cast<int>(rng() % nedges);
            const auto& ed = g.edges()[e];
            int index = 0;
            for (int k = 0; k < e; ++k)
                if (g.edges()[k].a == ed.a && g.edges()[k].b == ed.b) ++index;
            site = sz::BlowupSite::edge(ed.a, ed.b, index);
            site_desc = "edge(" + g.vertices()[ed.a].id + "," + g.vertices()[ed.b].id + ")";
        }
        sz::Rational d = dpool[rng() % 5];
        if (d == sz::Rational(1) && sz::classify(g) == sz::GermClass::strictly_lc)
            d = sz::Rational(9, 10);
        sz::ResolutionGraph h = sz::blow_up(g, site);
        bool ok = true;
        ok = ok && sz::ratfn_equal(sz::zeta(g, d, sz::Level::motivic).expr(),
                                   sz::zeta(h, d, sz::Level::motivic).expr());
        ok = ok && sz::ratfn_equal(sz::zeta(g, d, sz::Level::hodge).expr(),
                                   sz::zeta(h, d, sz::Level::hodge).expr());
        ok = ok && (sz::zeta(g, d, sz::Level::euler).fn() == sz::zeta(h, d, sz::Level::euler).fn());
        std::cout << "trial " << t + 1 << ": " << site_desc << " d=" << d << " "
                  << (ok ? "ok" : "MISMATCH") << "\n";
        all_ok = all_ok && ok;
    }
    std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
    return 0;
}

// Reports whether the d -> 1 limit of the d-minimal model data reproduces the
// d = 1 stringy zeta function. The (nu, N) vectors are affine in d once the
// contracted set stabilizes; the affine law is read off two exact samples,
// validated at a third, and extrapolated to d = 1. No agreement is asserted:
// the outcome is printed either way.
int cmd_compare_limit(const std::string& input) {
    sz::ResolutionGraph g = sz::parse_germ_json(read_file(input));
    if (sz::classify(g) == sz::GermClass::strictly_lc) {
        std::cout << "d = 1 zeta undefined on a strictly lc germ; nothing to compare\n";
        return 0;
    }
    const sz::Rational d1(3, 4), d2(7, 8), d3(15, 16);
    auto t1 = sz::nu_N(sz::run_mmp(g, d1));
    auto t2 = sz::nu_N(sz::run_mmp(g, d2));
    auto t3 = sz::nu_N(sz::run_mmp(g, d3));
    std::vector<sz::NuRow> limit;
    for (std::size_t i = 0; i < t1.size(); ++i) {
        auto at = [&](const sz::Rational& y1, const sz::Rational& y2, const sz::Rational& x) {
            return y1 + (y2 - y1) / (d2 - d1) * (x - d1);
        };
        if (at(t1[i].nu, t2[i].nu, d3) != t3[i].nu || at(t1[i].N, t2[i].N, d3) != t3[i].N) {
            std::cout << "model data is not affine near d = 1; no conclusion\n";
            return 0;
        }
        sz::NuRow row = t1[i];
        row.nu = at(t1[i].nu, t2[i].nu, sz::Rational(1));
        row.N = at(t1[i].N, t2[i].N, sz::Rational(1));
        limit.push_back(std::move(row));
    }
    auto z1e = sz::zeta(g, sz::Rational(1), sz::Level::euler);
    auto zle = sz::zeta_from_table(g, limit, sz::Level::euler);
    bool euler_agree = z1e.fn() == zle.fn();
    auto z1m = sz::zeta(g, sz::Rational(1), sz::Level::motivic);
    auto zlm = sz::zeta_from_table(g, limit, sz::Level::motivic);
    bool motivic_agree = sz::ratfn_equal(z1m.expr(), zlm.expr());
    std::cout << "euler level:   " << (euler_agree ? "agree" : "disagree") << "\n";
    std::cout << "motivic level: " << (motivic_agree ? "agree" : "disagree") << "\n";
    return 0;
}

int cmd_oracle(int r, int m, const std::string& k_text, const std::string& d_text, int trials,
               unsigned long seed, sz::Format format) {
    std::mt19937_64 rng(seed);
    auto random_rational = [&rng](bool positive) {
        long long num = static_cast<long long>(rng() % 9) - (positive ? 0 : 4);
        long long den = 1 + static_cast<long long>(rng() % 6);
        if (positive && num == 0) num = 1;
        return sz::Rational(num, den);
    };
    std::vector<std::vector<sz::Rational>> ks, ds;
    if (!k_text.empty() || !d_text.empty()) {
        std::vector<sz::Rational> k = parse_rational_list(k_text);
        std::vector<sz::Rational> dw = parse_rational_list(d_text);
        if (static_cast<int>(k.size()) != m || static_cast<int>(dw.size()) != m)
            throw sz::ParseError("--k and --dwt must list exactly m rationals");
        ks.push_back(std::move(k));
        ds.push_back(std::move(dw));
    } else {
        for (int t = 0; t < trials; ++t) {
            std::vector<sz::Rational> k, dw;
            for (int i = 0; i < m; ++i) {
                k.push_back(random_rational(true));
                dw.push_back(random_rational(false));
            }
            ks.push_back(std::move(k));
            ds.push_back(std::move(dw));
        }
    }
    bool all_equal = true;
    for (std::size_t t = 0; t < ks.size(); ++t) {
        sz::OracleResult res = sz::hyperplane_oracle(r, m, ks[t], ds[t]);
        std::cout << "k = [";
        for (std::size_t i = 0; i < ks[t].size(); ++i)
            std::cout << (i ? "," : "") << ks[t][i];
        std::cout << "]  d = [";
        for (std::size_t i = 0; i < ds[t].size(); ++i)
            std::cout << (i ? "," : "") << ds[t][i];
        std::cout << "]\n";
        std::cout << "  brute force: " << sz::render(res.bruteforce, format) << "\n";
        std::cout << "  closed form: " << sz::render(res.closedform, format) << "\n";
        std::cout << "  equal: " << (res.equal ? "yes" : "no") << "\n";
        all_equal = all_equal && res.equal;
    }
    std::cout << (all_equal ? "PASS" : "FAIL") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stringy zeta functions of singularity germs, exactly"};
    app.require_subcommand(1);

    std::string input, d_text = "1", level_text = "euler", model_text = "minimal";
    std::string format_text = "text", k_text, dwt_text;
    bool eval_s1 = false;
    int trials = 20, oracle_r = 2, oracle_m = 0;
    unsigned long seed = 7001;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_text, "text | latex | json");
    };

    auto* c_disc = app.add_subcommand("discrepancies", "log discrepancy table of a germ");
    c_disc->add_option("input", input)->required();
    add_format(c_disc);

    auto* c_classify = app.add_subcommand("classify", "klt | strictly-lc | not-lc");
    c_classify->add_option("input", input)->required();

    auto* c_model = app.add_subcommand("model", "relative d-minimal or d-canonical model");
    c_model->add_option("input", input)->required();
    c_model->add_option("--d", d_text, "boundary multiplier, rational in [0,1]");
    c_model->add_option("--model", model_text, "minimal | canonical");
    add_format(c_model);

    auto* c_zeta = app.add_subcommand("zeta", "stringy zeta function");
    c_zeta->add_option("input", input)->required();
    c_zeta->add_option("--d", d_text, "boundary multiplier, rational in [0,1]");
    c_zeta->add_option("--level", level_text, "motivic | hodge | euler");
    c_zeta->add_option("--model", model_text, "minimal | canonical");
    c_zeta->add_flag("--eval-s1", eval_s1, "print the exact limit at s = 1 instead");
    add_format(c_zeta);

    auto* c_veys = app.add_subcommand("veys", "stringy invariants of a non-lc germ");
    c_veys->add_option("input", input)->required();
    add_format(c_veys);

    auto* c_batyrev = app.add_subcommand("batyrev", "discrepancy-based stringy sum");
    c_batyrev->add_option("input", input)->required();
    add_format(c_batyrev);

    auto* c_dual = app.add_subcommand("check-duality", "functional equation on complete data");
    c_dual->add_option("input", input)->required();

    auto* c_blow = app.add_subcommand("check-blowup", "zeta invariance under blow-ups");
    c_blow->add_option("input", input)->required();
    c_blow->add_option("--trials", trials);
    c_blow->add_option("--seed", seed);

    auto* c_limit = app.add_subcommand("compare-limit",
                                       "does the d -> 1 limit reproduce the d = 1 zeta?");
    c_limit->add_option("input", input)->required();

    auto* c_oracle = app.add_subcommand("oracle-am", "hyperplane-arrangement identity");
    c_oracle->add_option("--r", oracle_r, "codimension, >= 2")->required();
    c_oracle->add_option("--m", oracle_m, "number of hyperplanes, in [0, r]")->required();
    c_oracle->add_option("--k", k_text, "comma-separated k weights");
    c_oracle->add_option("--dwt", dwt_text, "comma-separated d weights");
    c_oracle->add_option("--trials", trials);
    c_oracle->add_option("--seed", seed);
    add_format(c_oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        sz::Format format = sz::parse_format(format_text);
        if (c_disc->parsed()) return cmd_discrepancies(input, format);
        if (c_classify->parsed()) return cmd_classify(input);
        if (c_model->parsed()) return cmd_model(input, d_text, model_text, format);
        if (c_zeta->parsed()) return cmd_zeta(input, d_text, level_text, model_text, eval_s1, format);
        if (c_veys->parsed()) return cmd_veys(input, format);
        if (c_batyrev->parsed()) return cmd_batyrev(input, format);
        if (c_dual->parsed()) return cmd_check_duality(input);
        if (c_blow->parsed()) return cmd_check_blowup(input, trials, seed);
        if (c_limit->parsed()) return cmd_compare_limit(input);
        if (c_oracle->parsed())
            return cmd_oracle(oracle_r, oracle_m, k_text, dwt_text, trials, seed, format);
    } catch (const sz::DomainError& e) {
        std::cerr << e.what() << "\n"; // what() carries "Name: message"
        return 1;
    } catch (const sz::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
