#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kr/json_io.hpp"
#include "kr/krmodules.hpp"

namespace kr::cli {

namespace {

using njson = nlohmann::ordered_json;

enum class Format { text, json, tsv };

struct Common {
    std::string algebra;
    int node = 0;
    Format format = Format::text;
    std::string cache_dir;
    std::int64_t budget = kDefaultTermBudget;
};

void add_format(CLI::App *cmd, Common &c) {
    cmd->add_option("--format", c.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{
                {"text", Format::text}, {"json", Format::json}, {"tsv", Format::tsv}},
            CLI::ignore_case));
    cmd->add_option("--cache-dir", c.cache_dir, "q-character cache directory (else KR_CACHE_DIR)");
    cmd->add_option("--budget", c.budget, "Term budget for q-character expansions")
        ->check(CLI::PositiveNumber);
}

void apply_cache(const Common &c) {
    if (!c.cache_dir.empty()) set_qchar_cache_dir(c.cache_dir);
}

void print_weight_map(const Common &c, std::ostream &out, const CartanData &cd,
                      const std::map<Weight, std::int64_t> &m) {
    switch (c.format) {
        case Format::json:
            out << decomposition_json(cd, m);
            break;
        case Format::tsv:
            for (const auto &[w, k] : m) out << to_string(w) << '\t' << k << '\n';
            break;
        case Format::text:
            for (const auto &[w, k] : m) out << to_string(w) << "  " << k << '\n';
            break;
    }
}

int exit_code_for(const Error &e) {
    switch (e.code()) {
        case errc::violation:
            return 1;
        case errc::unsupported_algebra:
        case errc::precondition:
        case errc::mismatch:
        case errc::incomparable:
            return 2;
        default:
            return 3;
    }
}

std::vector<int> nodes_to_run(const CartanData &cd, int node) {
    if (node == 0) {
        std::vector<int> all(static_cast<std::size_t>(cd.rank));
        for (int i = 0; i < cd.rank; ++i) all[i] = i + 1;
        return all;
    }
    return {node};
}

}  // namespace

int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact characters of Kirillov-Reshetikhin modules: tensor decompositions,\n"
                 "q-characters, and verification of the T-system, Q-system and the\n"
                 "multiplicity inequalities along the reverse dominance order."};
    app.name("kr");
    app.require_subcommand(1);

    int exit_code = 0;

    // ---- char ----
    Common ch;
    int ch_level = 0;
    bool ch_decompose = false;
    CLI::App *cmd_char = app.add_subcommand("char", "Classical character of KR(m w_i)");
    cmd_char->add_option("--algebra", ch.algebra, "Algebra, e.g. A2")->required();
    cmd_char->add_option("--node", ch.node, "Dynkin node (1-based)")->required();
    cmd_char->add_option("--m", ch_level, "Level")->required()->check(CLI::NonNegativeNumber);
    cmd_char->add_flag("--decompose", ch_decompose, "Print the irreducible decomposition instead");
    add_format(cmd_char, ch);
    cmd_char->callback([&] {
        apply_cache(ch);
        const CartanData cd = cartan_data(ch.algebra);
        const ClassicalCharacter c = kr_character(cd, ch.node, ch_level, ch.budget);
        if (ch_decompose) {
            print_weight_map(ch, out, cd, decompose(c));
        } else if (ch.format == Format::json) {
            out << character_json(c);
        } else {
            print_weight_map(ch, out, cd, c.terms);
        }
    });

    // ---- qchar ----
    Common qc;
    int qc_level = 0, qc_base = 0;
    CLI::App *cmd_qchar = app.add_subcommand("qchar", "q-character of W^(i)_{m, q^c}");
    cmd_qchar->add_option("--algebra", qc.algebra)->required();
    cmd_qchar->add_option("--node", qc.node)->required();
    cmd_qchar->add_option("--m", qc_level, "Level")->required()->check(CLI::NonNegativeNumber);
    cmd_qchar->add_option("--base", qc_base, "Spectral base exponent c");
    add_format(cmd_qchar, qc);
    cmd_qchar->callback([&] {
        apply_cache(qc);
        const CartanData cd = cartan_data(qc.algebra);
        const QCharacter q = kr_qcharacter(cd, qc.node, qc_level, qc_base, qc.budget);
        if (qc.format == Format::json) {
            out << qchar_json(q, qc.node, qc_level);
        } else {
            std::map<YMonomial, std::int64_t> sorted(q.terms.begin(), q.terms.end());
            const char sep = qc.format == Format::tsv ? '\t' : ' ';
            for (const auto &[m, k] : sorted) out << to_string(m) << sep << k << '\n';
        }
    });

    // ---- tensor ----
    Common tn;
    std::string tn_partition;
    CLI::App *cmd_tensor = app.add_subcommand("tensor", "Multiplicities of KR(lambda, i)");
    cmd_tensor->add_option("--algebra", tn.algebra)->required();
    cmd_tensor->add_option("--node", tn.node)->required();
    cmd_tensor->add_option("--partition", tn_partition, "Levels, e.g. 3,2")->required();
    add_format(cmd_tensor, tn);
    cmd_tensor->callback([&] {
        apply_cache(tn);
        const CartanData cd = cartan_data(tn.algebra);
        const Partition p = parse_partition(tn_partition);
        const MultiplicityVector mult =
            kr_tensor_multiplicities(KRTensor{cd, tn.node, p}, tn.budget);
        if (tn.format == Format::json)
            out << tensor_json(cd, tn.node, p, mult);
        else
            print_weight_map(tn, out, cd, mult);
    });

    // ---- poset ----
    Common ps;
    int ps_m = 0;
    bool ps_covers = false, ps_dot = false;
    CLI::App *cmd_poset = app.add_subcommand("poset", "P(m) under reverse dominance");
    cmd_poset->add_option("--m", ps_m)->required()->check(CLI::PositiveNumber);
    cmd_poset->add_flag("--covers", ps_covers, "List cover edges");
    cmd_poset->add_flag("--dot", ps_dot, "Emit DOT");
    add_format(cmd_poset, ps);
    cmd_poset->callback([&] {
        if (ps_dot) {
            out << poset_dot(ps_m);
            return;
        }
        if (ps.format == Format::json) {
            out << poset_json(ps_m);
            return;
        }
        const char sep = ps.format == Format::tsv ? '\t' : ' ';
        if (ps_covers) {
            for (const auto &[lower, upper] : cover_edges(ps_m))
                out << to_string(lower) << sep << "->" << sep << to_string(upper) << '\n';
        } else {
            for (const Partition &p : partitions_of(ps_m)) out << to_string(p) << '\n';
        }
    });

    // ---- verify ----
    CLI::App *cmd_verify = app.add_subcommand("verify", "Verification suites");
    cmd_verify->require_subcommand(1);

    Common vq;
    int vq_m = 0;
    CLI::App *cmd_vq = cmd_verify->add_subcommand("qsystem", "Q-system nonnegativity, levels 1..m");
    cmd_vq->add_option("--algebra", vq.algebra)->required();
    cmd_vq->add_option("--node", vq.node, "Dynkin node; all nodes when omitted");
    cmd_vq->add_option("--m", vq_m, "Max level")->required()->check(CLI::PositiveNumber);
    add_format(cmd_vq, vq);
    cmd_vq->callback([&] {
        apply_cache(vq);
        const CartanData cd = cartan_data(vq.algebra);
        njson cells = njson::array();
        int failures = 0;
        for (int node : nodes_to_run(cd, vq.node))
            for (int level = 1; level <= vq_m; ++level) {
                err << "qsystem " << cd.name() << " node " << node << " level " << level << "..."
                    << std::flush;
                njson cell;
                cell["node"] = node;
                cell["level"] = level;
                try {
                    ClassicalCharacter s = qsystem_difference(cd, node, level, vq.budget);
                    cell["ok"] = true;
                    cell["dim"] = character_dimension(s);
                } catch (const Error &e) {
                    if (e.code() != errc::violation) throw;
                    cell["ok"] = false;
                    ++failures;
                }
                err << (cell["ok"].get<bool>() ? " ok" : " VIOLATION") << "\n";
                cells.push_back(std::move(cell));
            }
        if (vq.format == Format::json) {
            njson doc;
            doc["algebra"] = cd.name();
            doc["max_level"] = vq_m;
            doc["cells"] = std::move(cells);
            doc["violations"] = failures;
            out << doc.dump(2) << "\n";
        } else {
            for (const auto &cell : cells)
                out << cd.name() << (vq.format == Format::tsv ? '\t' : ' ') << cell["node"]
                    << (vq.format == Format::tsv ? '\t' : ' ') << cell["level"]
                    << (vq.format == Format::tsv ? '\t' : ' ')
                    << (cell["ok"].get<bool>() ? "ok" : "violation") << '\n';
        }
        if (failures > 0) exit_code = 1;
    });

    Common vt;
    int vt_m = 0, vt_base = 0;
    CLI::App *cmd_vt = cmd_verify->add_subcommand("tsystem", "T-system identity, levels 1..m");
    cmd_vt->add_option("--algebra", vt.algebra)->required();
    cmd_vt->add_option("--node", vt.node, "Dynkin node; all nodes when omitted");
    cmd_vt->add_option("--m", vt_m, "Max level")->required()->check(CLI::PositiveNumber);
    cmd_vt->add_option("--base", vt_base, "Spectral base exponent");
    add_format(cmd_vt, vt);
    cmd_vt->callback([&] {
        apply_cache(vt);
        const CartanData cd = cartan_data(vt.algebra);
        njson cells = njson::array();
        int failures = 0;
        for (int node : nodes_to_run(cd, vt.node))
            for (int level = 1; level <= vt_m; ++level) {
                err << "tsystem " << cd.name() << " node " << node << " level " << level << "..."
                    << std::flush;
                TSystemReport rep = tsystem_verify(cd, node, level, vt_base, vt.budget);
                njson cell;
                cell["node"] = node;
                cell["level"] = level;
                cell["ok"] = rep.holds;
                njson factors = njson::array();
                for (const KRFactor &f : rep.s_factors)
                    factors.push_back(njson::array({f.node, f.level, f.base}));
                cell["s_factors"] = std::move(factors);
                if (!rep.holds) ++failures;
                err << (rep.holds ? " ok" : " VIOLATION") << "\n";
                cells.push_back(std::move(cell));
            }
        if (vt.format == Format::json) {
            njson doc;
            doc["algebra"] = cd.name();
            doc["max_level"] = vt_m;
            doc["cells"] = std::move(cells);
            doc["violations"] = failures;
            out << doc.dump(2) << "\n";
        } else {
            for (const auto &cell : cells)
                out << cd.name() << (vt.format == Format::tsv ? '\t' : ' ') << cell["node"]
                    << (vt.format == Format::tsv ? '\t' : ' ') << cell["level"]
                    << (vt.format == Format::tsv ? '\t' : ' ')
                    << (cell["ok"].get<bool>() ? "ok" : "violation") << '\n';
        }
        if (failures > 0) exit_code = 1;
    });

    Common vp;
    int vp_m = 0;
    bool vp_all_pairs = false;
    CLI::App *cmd_vp = cmd_verify->add_subcommand(
        "positivity", "Multiplicity inequalities along reverse dominance on P(m)");
    cmd_vp->add_option("--algebra", vp.algebra)->required();
    cmd_vp->add_option("--node", vp.node)->required();
    cmd_vp->add_option("--m", vp_m)->required()->check(CLI::PositiveNumber);
    cmd_vp->add_flag("--all-pairs", vp_all_pairs, "Check every comparable pair, not only covers");
    add_format(cmd_vp, vp);
    cmd_vp->callback([&] {
        apply_cache(vp);
        const CartanData cd = cartan_data(vp.algebra);
        err << "positivity " << cd.name() << " node " << vp.node << " m " << vp_m << "...\n";
        PositivityReport rep = verify_positivity(cd, vp.node, vp_m, vp_all_pairs, vp.budget);
        if (vp.format == Format::json) {
            out << positivity_report_json(rep);
        } else {
            const char sep = vp.format == Format::tsv ? '\t' : ' ';
            out << cd.name() << sep << rep.node << sep << rep.m << sep << rep.pairs_checked << sep
                << rep.violations.size() << '\n';
            for (const MultViolation &v : rep.violations)
                out << to_string(v.lower) << sep << to_string(v.upper) << sep << to_string(v.tau)
                    << sep << v.lower_mult << sep << v.upper_mult << '\n';
        }
        if (!rep.violations.empty()) exit_code = 1;
    });

    // ---- kernel ----
    Common kn;
    std::string kn_mu, kn_lambda;
    CLI::App *cmd_kernel =
        app.add_subcommand("kernel", "char KR(mu, i) - char KR(lambda, i) for lambda <= mu");
    cmd_kernel->add_option("--algebra", kn.algebra)->required();
    cmd_kernel->add_option("--node", kn.node)->required();
    cmd_kernel->add_option("--mu", kn_mu, "Upper partition")->required();
    cmd_kernel->add_option("--lambda", kn_lambda, "Lower partition")->required();
    add_format(cmd_kernel, kn);
    cmd_kernel->callback([&] {
        apply_cache(kn);
        const CartanData cd = cartan_data(kn.algebra);
        ClassicalCharacter k = kernel_character(cd, kn.node, parse_partition(kn_mu),
                                                parse_partition(kn_lambda), kn.budget);
        auto dec = decompose(k);
        print_weight_map(kn, out, cd, dec);
        for (const auto &[w, c] : dec)
            if (c < 0) exit_code = 1;
    });

    // ---- factorize ----
    Common fz;
    std::string fz_char_file, fz_mu, fz_lambda;
    CLI::App *cmd_fact = app.add_subcommand(
        "factorize", "Search for a KR tensor product with the given character");
    cmd_fact->add_option("--algebra", fz.algebra)->required();
    cmd_fact->add_option("--char", fz_char_file, "Character JSON file");
    cmd_fact->add_option("--node", fz.node, "Node for --mu/--lambda kernel input");
    cmd_fact->add_option("--mu", fz_mu, "Upper partition of a kernel to factorize");
    cmd_fact->add_option("--lambda", fz_lambda, "Lower partition of a kernel to factorize");
    add_format(cmd_fact, fz);
    cmd_fact->callback([&] {
        apply_cache(fz);
        const CartanData cd = cartan_data(fz.algebra);
        ClassicalCharacter target;
        if (!fz_char_file.empty()) {
            std::ifstream in(fz_char_file);
            if (!in.good()) raise(errc::precondition, "cannot read " + fz_char_file);
            std::ostringstream buf;
            buf << in.rdbuf();
            target = parse_character_json(buf.str());
            if (!(target.algebra == cd))
                raise(errc::mismatch, "character file is for " + target.algebra.name());
        } else if (!fz_mu.empty() && !fz_lambda.empty() && fz.node > 0) {
            target = kernel_character(cd, fz.node, parse_partition(fz_mu),
                                      parse_partition(fz_lambda), fz.budget);
        } else {
            raise(errc::precondition, "factorize needs --char FILE or --node/--mu/--lambda");
        }
        auto factors = is_kr_tensor_factorizable(cd, target, {}, fz.budget);
        if (fz.format == Format::json) {
            njson doc;
            doc["algebra"] = cd.name();
            doc["factorizable"] = factors.has_value();
            njson arr = njson::array();
            if (factors)
                for (const auto &[node, level] : *factors)
                    arr.push_back(njson::array({node, level}));
            doc["factors"] = std::move(arr);
            out << doc.dump(2) << "\n";
        } else if (factors) {
            if (factors->empty()) out << "trivial\n";
            for (const auto &[node, level] : *factors)
                out << "KR(" << level << " w_" << node << ")\n";
        } else {
            out << "none\n";
        }
    });

    // ---- schur-diff ----
    Common sd;
    std::string sd_mu1, sd_mu2, sd_lambda1, sd_lambda2;
    CLI::App *cmd_sd = app.add_subcommand(
        "schur-diff", "decompose(char V(mu1) char V(mu2) - char V(lambda1) char V(lambda2))");
    cmd_sd->add_option("--algebra", sd.algebra)->required();
    cmd_sd->add_option("--mu1", sd_mu1)->required();
    cmd_sd->add_option("--mu2", sd_mu2)->required();
    cmd_sd->add_option("--lambda1", sd_lambda1)->required();
    cmd_sd->add_option("--lambda2", sd_lambda2)->required();
    add_format(cmd_sd, sd);
    cmd_sd->callback([&] {
        const CartanData cd = cartan_data(sd.algebra);
        auto diff = schur_difference(cd,
                                     {parse_weight(sd_mu1, cd.rank), parse_weight(sd_mu2, cd.rank)},
                                     {parse_weight(sd_lambda1, cd.rank),
                                      parse_weight(sd_lambda2, cd.rank)});
        print_weight_map(sd, out, cd, diff);
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

}  // namespace kr::cli
