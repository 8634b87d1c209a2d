// Batch front end.  One verb per invocation; JSON on stdout, diagnostics on
// stderr.  Exit codes: 0 pass, 1 law or property failure, 2 precondition
// failure, 3 usage or parse error, 4 cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mobi/mobi.hpp>

namespace {

mobi::ParsedDoc load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mobi::parse_error("cannot open '" + path + "'");
    mobi::json j;
    try {
        j = mobi::json::parse(in);
    } catch (const std::exception& e) {
        throw mobi::parse_error("bad JSON in '" + path + "': " + e.what());
    }
    return mobi::parse_structure(j);
}

void emit(const mobi::json& j, const std::string& out_path = "") {
    std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw mobi::parse_error("cannot write '" + out_path + "'");
        f << text << "\n";
    }
}

mobi::SampleSpec resolve_sampling(const std::optional<mobi::SampleSpec>& from_file,
                                  const CLI::Option* seed_opt, std::uint64_t seed,
                                  const CLI::Option* count_opt, int count) {
    mobi::SampleSpec spec = from_file.value_or(mobi::SampleSpec{});
    if (seed_opt && seed_opt->count() > 0) spec.seed = seed;
    if (count_opt && count_opt->count() > 0) spec.count = count;
    return spec;
}

std::uint64_t node_cap_from_env(std::uint64_t fallback) {
    const char* raw = std::getenv("MOBI_NODE_CAP");
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw mobi::parse_error("MOBI_NODE_CAP must be an unsigned integer");
    return v;
}

std::string derived_profile_for(const std::string& profile) {
    if (profile == "mobi-full" || profile == "mobi-dagger" || profile == "full-medial")
        return "derived-mobi-props";
    if (profile == "imm") return "derived-imm-props";
    if (profile == "imm-star") return "derived-immstar-props";
    return "";
}

int cmd_verify(const mobi::ParsedDoc& doc, const std::string& path,
               std::string profile, const mobi::SampleSpec& spec, bool derived) {
    if (profile.empty()) profile = mobi::default_profile(doc.structure.kind);
    mobi::Report rep = mobi::run_profile(doc.structure, profile, spec, path);
    if (derived) {
        std::string dp = derived_profile_for(profile);
        if (!dp.empty()) {
            mobi::Report extra = mobi::run_profile(doc.structure, dp, spec, path);
            for (auto& r : extra.results) rep.results.push_back(std::move(r));
        }
    }
    emit(rep.to_json());
    return rep.passed() ? 0 : 1;
}

int cmd_convert(const std::string& path, const std::string& to,
                const std::string& via, const std::string& out_path) {
    if (!via.empty() && via != "inverse")
        throw mobi::parse_error("--via supports only 'inverse'");
    if (!via.empty() && to != "mobi")
        throw mobi::parse_error("--via applies only with --to mobi");
    mobi::ParsedDoc doc = load_doc(path);
    const mobi::Structure& s = doc.structure;
    mobi::Structure result;
    if (to == "imm") {
        if (s.kind != mobi::Kind::Mobi)
            throw mobi::parse_error("--to imm expects a mobi input");
        result = mobi::derive_imm_from_mobi(s);
    } else if (to == "ring") {
        if (s.kind == mobi::Kind::Mobi) {
            result = mobi::mobi_to_ring(s);
        } else if (s.kind == mobi::Kind::Imm || s.kind == mobi::Kind::ImmStar) {
            result = mobi::imm_to_ring(s);
        } else {
            throw mobi::parse_error("input is already a ring");
        }
    } else if (to == "mobi") {
        if (s.kind == mobi::Kind::Ring) {
            result = mobi::ring_to_mobi(s);
        } else if (s.kind == mobi::Kind::Imm || s.kind == mobi::Kind::ImmStar) {
            result = via == "inverse" ? mobi::imm_to_mobi_via_half_inverse(s)
                                      : mobi::imm_star_to_mobi(s);
        } else {
            throw mobi::parse_error("input is already a mobi");
        }
    } else {
        throw mobi::parse_error("--to must be imm, ring, or mobi");
    }
    emit(mobi::serialize_structure(result), out_path);
    return 0;
}

int cmd_enumerate(std::size_t order, const std::string& signature, bool up_to_iso) {
    if (signature == "mobi") {
        mobi::EnumerationTask task;
        task.order = order;
        task.up_to_iso = up_to_iso;
        task.node_cap = node_cap_from_env(task.node_cap);
        mobi::EnumerationResult res = mobi::enumerate_mobi(task);
        for (const mobi::Structure& m : res.models)
            std::cout << mobi::serialize_structure(m).dump() << "\n";
        mobi::json summary = {{"signature", "mobi"},
                              {"order", order},
                              {"count", res.models.size()},
                              {"raw_count", res.raw_count},
                              {"nodes", res.nodes},
                              {"up_to_iso", up_to_iso}};
        std::cout << summary.dump() << "\n";
        return 0;
    }
    if (signature == "ring-with-half") {
        std::vector<mobi::Structure> models = mobi::enumerate_rings_with_half(order);
        for (const mobi::Structure& m : models)
            std::cout << mobi::serialize_structure(m).dump() << "\n";
        mobi::json summary = {{"signature", "ring-with-half"},
                              {"order", order},
                              {"count", models.size()},
                              {"up_to_iso", true}};
        std::cout << summary.dump() << "\n";
        return 0;
    }
    throw mobi::parse_error("--signature must be mobi or ring-with-half");
}

int cmd_iso(const std::string& path1, const std::string& path2,
            const std::string& map_path, const mobi::SampleSpec& spec) {
    mobi::ParsedDoc d1 = load_doc(path1), d2 = load_doc(path2);
    const mobi::Structure &s1 = d1.structure, &s2 = d2.structure;

    if (!map_path.empty()) {
        std::ifstream in(map_path);
        if (!in) throw mobi::parse_error("cannot open '" + map_path + "'");
        mobi::json mj;
        try {
            mj = mobi::json::parse(in);
        } catch (const std::exception& e) {
            throw mobi::parse_error("bad JSON in '" + map_path + "': " + e.what());
        }
        if (mj.contains("homography")) {
            const mobi::json& h = mj["homography"];
            mobi::Homography hom{mobi::Rat::parse(h.at("a").get<std::string>()),
                                 mobi::Rat::parse(h.at("b").get<std::string>()),
                                 mobi::Rat::parse(h.at("c").get<std::string>()),
                                 mobi::Rat::parse(h.at("d").get<std::string>())};
            mobi::Report rep = mobi::certify_isomorphism(s1, s2, hom, spec);
            mobi::json out = {{"isomorphic", rep.passed()}, {"report", rep.to_json()}};
            emit(out);
            return rep.passed() ? 0 : 1;
        }
        if (mj.contains("perm")) {
            if (!s1.carrier.is_finite() || !s2.carrier.is_finite())
                throw mobi::precondition_error("perm maps need finite carriers");
            std::vector<std::uint32_t> perm;
            for (const auto& cell : mj["perm"]) {
                auto idx = s2.carrier.index_of(cell.get<std::string>());
                if (!idx)
                    throw mobi::parse_error("perm entry '" + cell.get<std::string>() +
                                            "' is not a label of the second carrier");
                perm.push_back(*idx);
            }
            bool ok = mobi::perm_is_isomorphism(s1, s2, perm);
            emit(mobi::json{{"isomorphic", ok}, {"map", mj["perm"]}});
            return ok ? 0 : 1;
        }
        throw mobi::parse_error("map file needs a 'homography' or 'perm' entry");
    }

    if (!s1.carrier.is_finite() || !s2.carrier.is_finite())
        throw mobi::precondition_error(
            "isomorphism search needs finite carriers; pass --map for rational ones");
    auto perm = mobi::find_isomorphism(s1, s2);
    if (!perm) {
        emit(mobi::json{{"isomorphic", false}});
        return 1;
    }
    mobi::json map = mobi::json::array();
    for (std::uint32_t v : *perm) map.push_back(s2.carrier.labels()[v]);
    emit(mobi::json{{"isomorphic", true}, {"map", map}});
    return 0;
}

int cmd_example(const std::string& id, const std::vector<std::string>& raw_params,
                const std::string& out_path) {
    if (auto stub = mobi::example_stub(id)) {
        emit(mobi::json{{"example", id}, {"note", *stub}});
        return 0;
    }
    mobi::ExampleParams params;
    for (const std::string& kv : raw_params) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw mobi::parse_error("--param expects name=value, got '" + kv + "'");
        std::string val = kv.substr(eq + 1);
        if (val.find('/') == std::string::npos) val += "/1";
        params[kv.substr(0, eq)] = mobi::Rat::parse(val);
    }
    mobi::Structure s = mobi::make_example(id, params);
    emit(mobi::serialize_structure(s), out_path);
    return 0;
}

int cmd_roundtrip(const std::string& path) {
    mobi::ParsedDoc doc = load_doc(path);
    mobi::Report rep = mobi::roundtrip_check(doc.structure, path);
    emit(rep.to_json());
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mobi algebra workbench"};
    app.require_subcommand(1);

    std::string in_path, in_path2, profile, to, via, out_path, map_path, signature = "mobi";
    std::string example_id;
    std::vector<std::string> raw_params;
    std::uint64_t seed = mobi::kDefaultSeed;
    int samples = 1000;
    std::size_t order = 3;
    bool derived = false, up_to_iso = false;

    CLI::App* verify = app.add_subcommand("verify", "check a structure against its laws");
    verify->add_option("input", in_path, "structure document")->required();
    verify->add_option("--profile", profile,
                       "law profile: mobi-full, mobi-dagger, imm, imm-star, ring, "
                       "full-medial, derived-*-props (default: by kind)");
    CLI::Option* v_samples = verify->add_option("--samples", samples,
                                                "sample count on rational carriers");
    CLI::Option* v_seed = verify->add_option("--seed", seed, "sampling seed");
    verify->add_flag("--derived", derived, "append the derived-identity suite");

    CLI::App* convert = app.add_subcommand("convert", "apply a structure correspondence");
    convert->add_option("input", in_path, "structure document")->required();
    convert->add_option("--to", to, "target kind: imm, ring, or mobi")->required();
    convert->add_option("--via", via, "mobi construction: 'inverse' for the half-inverse path");
    convert->add_option("-o,--out", out_path, "also write the document here");

    CLI::App* enumerate = app.add_subcommand("enumerate", "stream all models of an order");
    enumerate->add_option("--order", order, "carrier size")->required();
    enumerate->add_option("--signature", signature, "mobi (default) or ring-with-half");
    enumerate->add_flag("--up-to-iso", up_to_iso, "emit canonical representatives only");

    CLI::App* iso = app.add_subcommand("iso", "find or certify an isomorphism");
    iso->add_option("input1", in_path, "first structure")->required();
    iso->add_option("input2", in_path2, "second structure")->required();
    iso->add_option("--map", map_path,
                    "candidate map file: {\"perm\": [labels...]} or "
                    "{\"homography\": {\"a\",\"b\",\"c\",\"d\"}}");
    CLI::Option* i_samples = iso->add_option("--samples", samples,
                                             "sample count for homography certification");
    CLI::Option* i_seed = iso->add_option("--seed", seed, "sampling seed");

    CLI::App* example = app.add_subcommand("example", "emit a catalogue fixture");
    example->add_option("--id", example_id, "fixture name")->required();
    example->add_option("--param", raw_params, "fixture parameter as name=value");
    example->add_option("-o,--out", out_path, "also write the document here");

    CLI::App* roundtrip = app.add_subcommand("roundtrip", "certify the conversion roundtrips");
    roundtrip->add_option("input", in_path, "structure document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (verify->parsed()) {
            mobi::ParsedDoc doc = load_doc(in_path);
            mobi::SampleSpec spec =
                resolve_sampling(doc.sampling, v_seed, seed, v_samples, samples);
            return cmd_verify(doc, in_path, profile, spec, derived);
        }
        if (convert->parsed()) return cmd_convert(in_path, to, via, out_path);
        if (enumerate->parsed()) return cmd_enumerate(order, signature, up_to_iso);
        if (iso->parsed()) {
            mobi::SampleSpec spec;
            spec.count = 500;
            spec = resolve_sampling(spec, i_seed, seed, i_samples, samples);
            return cmd_iso(in_path, in_path2, map_path, spec);
        }
        if (example->parsed()) return cmd_example(example_id, raw_params, out_path);
        if (roundtrip->parsed()) return cmd_roundtrip(in_path);
        throw mobi::parse_error("no verb given");
    } catch (const mobi::cap_exceeded_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const mobi::precondition_error& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const mobi::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
