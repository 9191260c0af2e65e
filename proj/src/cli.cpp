#include "ordmat/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "ordmat/decompose.hpp"
#include "ordmat/error.hpp"
#include "ordmat/gen.hpp"
#include "ordmat/involution.hpp"
#include "ordmat/json_io.hpp"

namespace ordmat {

namespace {

json read_input(const std::string& path, std::istream& in) {
    std::string text;
    if (path == "-") {
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    } else {
        std::ifstream f(path);
        if (!f) throw error(errc::input, "cannot open input file: " + path);
        std::ostringstream os;
        os << f.rdbuf();
        text = os.str();
    }
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(errc::input, std::string("JSON parse error: ") + e.what());
    }
}

void emit(std::ostream& out, const json& j) {
    out << j.dump(2) << "\n";
}

int fail_exit(const error& e, std::ostream& out, std::ostream& err) {
    json obj{{"error",
              json{{"kind", errc_name(e.kind())}, {"message", e.what()}}}};
    if (!e.witness().empty()) obj["error"]["witness"] = e.witness();
    emit(out, obj);
    err << "error (" << errc_name(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == errc::input ? 2 : 1;
}

struct CommonOpts {
    std::string input = "-";
    uint64_t seed = 0;
};

int cmd_check_axioms(const json& in, long samples, uint64_t seed, std::ostream& out,
                     std::ostream& err) {
    RingDescriptor ring = ring_from_json(in);
    AxiomReport rep = check_order_axioms(ring, samples, seed);
    json j{{"pass", rep.pass}, {"samples", rep.samples}, {"checks", rep.checks}};
    j["first_counterexample"] =
        rep.first_counterexample.empty() ? json(nullptr) : json(rep.first_counterexample);
    emit(out, j);
    err << (rep.pass ? "order axioms hold on all samples\n" : "order axioms FAILED\n");
    return rep.pass ? 0 : 1;
}

int cmd_eval(const json& in, std::ostream& out, std::ostream& err) {
    RingDescriptor ring = ring_from_json(in);
    int n = in.contains("n") ? in.at("n").get<int>() : 0;
    if (n < 1) throw error(errc::input, "missing dimension n");
    if (!in.contains("word") && !in.contains("letters"))
        throw error(errc::input, "missing key: word");
    GenWord w = word_from_json(in.contains("word") ? in.at("word") : in.at("letters"), ring, n);
    Mat m = eval_word(w);
    emit(out, json{{"matrix", to_json(m)}});
    err << "evaluated word of " << w.letters.size() << " letters\n";
    return 0;
}

int cmd_membership(const json& in, const std::string& cls, std::ostream& out, std::ostream& err) {
    RingDescriptor ring = ring_from_json(in);
    Mat m = mat_from_json(in.contains("matrix") ? in.at("matrix") : in, ring);
    MemberClass mc;
    if (cls == "gn")
        mc = MemberClass::gn;
    else if (cls == "gamma_n")
        mc = MemberClass::gamma_n;
    else if (cls == "dn")
        mc = MemberClass::dn;
    else if (cls == "block_scalar_involution")
        mc = MemberClass::block_scalar_involution;
    else
        throw error(errc::input, "unknown class: " + cls);
    bool member = is_member(m, mc);
    emit(out, json{{"member", member}});
    err << "membership in " << cls << ": " << (member ? "true" : "false") << "\n";
    return 0;
}

int cmd_block_diagonalize(const json& in, std::ostream& out, std::ostream& err) {
    RingDescriptor ring = ring_from_json(in);
    Mat m = mat_from_json(in.contains("matrix") ? in.at("matrix") : in, ring);
    BlockDiagForm form = block_diagonalize(m);
    emit(out, json{{"conjugator", to_json(form.conjugator)},
                   {"result", to_json(form.result)},
                   {"block_sizes", form.block_sizes}});
    err << "block-diagonalized with " << form.block_sizes.size() << " blocks\n";
    return 0;
}

int cmd_decompose(json in, const std::string& ring_flag, int n_flag, uint64_t seed,
                  std::ostream& out, std::ostream& err) {
    if (!ring_flag.empty() && !in.contains("ring")) in["ring"] = json(ring_flag);
    if (n_flag > 0 && !in.contains("n")) in["n"] = n_flag;
    AutomorphismSpec spec = automorphism_spec_from_json(in);
    if (!ring_flag.empty() && ring_from_json(json(ring_flag)) != spec.ring)
        throw error(errc::input, "--ring disagrees with the input file");
    if (n_flag > 0 && n_flag != spec.n) throw error(errc::input, "--n disagrees with the input file");
    Automorphism phi = make_automorphism(std::move(spec));
    ProbeSuite probes = default_probes(phi.ring(), phi.n(), seed);
    Decomposition d = decompose(Oracle(phi), probes);
    emit(out, to_json(d));
    err << "decomposed: " << d.transcript.back() << "\n";
    return 0;
}

int cmd_verify(const json& in, std::ostream& out, std::ostream& err) {
    std::string kind = in.contains("kind") ? in.at("kind").get<std::string>()
                                           : (in.contains("links") ? "equiv_chain" : "decomposition");
    if (kind == "equiv_chain") {
        EquivChainCert cert = chain_from_json(in);
        bool ok = verify_equiv_chain(cert);
        emit(out, json{{"pass", ok}});
        err << (ok ? "chain verifies\n" : "chain FAILS\n");
        return ok ? 0 : 1;
    }
    if (kind != "decomposition") throw error(errc::input, "unknown verify kind: " + kind);
    RingDescriptor ring = ring_from_json(in);
    int n = in.contains("n") ? in.at("n").get<int>() : 0;
    if (n < 1) throw error(errc::input, "missing dimension n");
    if (!in.contains("phi") || !in.contains("decomposition"))
        throw error(errc::input, "verify needs phi and decomposition");
    json phi_json = in.at("phi");
    if (!phi_json.contains("ring")) phi_json["ring"] = to_json(ring);
    if (!phi_json.contains("n")) phi_json["n"] = n;
    Automorphism phi = make_automorphism(automorphism_spec_from_json(phi_json));
    Decomposition d = decomposition_from_json(in.at("decomposition"), ring, n);
    std::vector<GenWord> words;
    if (in.contains("words"))
        for (const json& w : in.at("words")) words.push_back(word_from_json(w, ring, n));
    VerifyReport rep = verify_decomposition(Oracle(phi), d, words);
    emit(out, json{{"pass", rep.pass},
                   {"vacuous", rep.vacuous},
                   {"words", rep.words},
                   {"failures", rep.failures}});
    err << (rep.pass ? "decomposition verifies\n" : "decomposition FAILS\n");
    return rep.pass ? 0 : 1;
}

int cmd_gen(const std::string& kind, const std::string& ring_str, int n, uint64_t seed,
            std::ostream& out, std::ostream& err) {
    if (n < 1) throw error(errc::input, "--n must be >= 1");
    RingDescriptor ring = ring_from_json(json(ring_str));
    Rng rng(seed);
    json j;
    if (kind == "gamma_element") {
        Mat m = gen_gamma_element(ring, n, rng);
        j = json{{"ring", to_json(ring)}, {"n", n}, {"matrix", to_json(m)}};
    } else if (kind == "involution") {
        GeneratedInvolution gi = gen_involution(ring, n, rng);
        j = json{{"ring", to_json(ring)},
                 {"n", n},
                 {"matrix", to_json(gi.mat)},
                 {"tau", to_json(gi.tau)}};
    } else if (kind == "automorphism") {
        j = to_json(gen_automorphism_spec(ring, n, rng));
    } else {
        throw error(errc::input, "unknown kind: " + kind);
    }
    emit(out, j);
    err << "generated " << kind << " (seed " << seed << ")\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Exact nonnegative-matrix semigroup toolkit"};
    app.require_subcommand(1);

    std::string input = "-";
    long samples = 1000;
    uint64_t seed = 0;
    std::string cls = "gn";
    std::string ring_flag;
    int n_flag = 0;
    std::string kind = "gamma_element";
    std::string probes = "default";

    auto* ax = app.add_subcommand("check-axioms", "Sample-check the partial-order axioms");
    ax->add_option("input", input);
    ax->add_option("--samples", samples);
    ax->add_option("--seed", seed);

    auto* ev = app.add_subcommand("eval", "Evaluate a generator word");
    ev->add_option("input", input);

    auto* mb = app.add_subcommand("membership", "Class membership of a matrix");
    mb->add_option("input", input);
    mb->add_option("--class", cls);

    auto* bd = app.add_subcommand("block-diagonalize", "Conjugate an involution to 2x2/1x1 blocks");
    bd->add_option("input", input);

    auto* dc = app.add_subcommand("decompose", "Recover the standard form of an automorphism");
    dc->add_option("input", input);
    dc->add_option("--ring", ring_flag);
    dc->add_option("--n", n_flag);
    dc->add_option("--seed", seed);
    dc->add_option("--probes", probes)->check(CLI::IsMember({"default"}));

    auto* vf = app.add_subcommand("verify", "Verify a decomposition or an equivalence chain");
    vf->add_option("input", input);

    auto* gn = app.add_subcommand("gen", "Generate seeded artifacts");
    gn->add_option("--kind", kind);
    gn->add_option("--ring", ring_flag)->required();
    gn->add_option("--n", n_flag)->required();
    gn->add_option("--seed", seed);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (ax->parsed()) return cmd_check_axioms(read_input(input, in), samples, seed, out, err);
        if (ev->parsed()) return cmd_eval(read_input(input, in), out, err);
        if (mb->parsed()) return cmd_membership(read_input(input, in), cls, out, err);
        if (bd->parsed()) return cmd_block_diagonalize(read_input(input, in), out, err);
        if (dc->parsed())
            return cmd_decompose(read_input(input, in), ring_flag, n_flag, seed, out, err);
        if (vf->parsed()) return cmd_verify(read_input(input, in), out, err);
        if (gn->parsed()) return cmd_gen(kind, ring_flag, n_flag, seed, out, err);
    } catch (const error& e) {
        return fail_exit(e, out, err);
    } catch (const nlohmann::json::exception& e) {
        return fail_exit(error(errc::input, std::string("malformed input: ") + e.what()), out,
                         err);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace ordmat
