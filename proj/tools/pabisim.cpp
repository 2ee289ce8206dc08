/*
 * Copyright 2026 The pabisim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pabisim/bisim.hpp"
#include "pabisim/algebra.hpp"
#include "pabisim/errors.hpp"
#include "pabisim/model.hpp"
#include "pabisim/transformer.hpp"
#include "pabisim/upto.hpp"

namespace {

using namespace pabisim;

constexpr int kExitYes = 0;      // equivalent / accepted / proven
constexpr int kExitNo = 1;       // inequivalent / rejected / refuted
constexpr int kExitUnknown = 2;  // inconclusive
constexpr int kExitUsage = 3;    // usage or input error

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PA load_pa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    return parse_pa(in);
}

Dist parse_dist_arg(const std::string& text) {
    auto d = Dist::parse_literal(text);
    if (!d) throw Error("bad distribution literal '" + text + "'");
    return *d;
}

nlohmann::json blocks_json(const Partition& p) {
    auto blocks = nlohmann::json::array();
    for (const auto& [id, members] : p.blocks()) blocks.push_back(members);
    return blocks;
}

std::string side_name(Side s) { return s == Side::left ? "left" : "right"; }

nlohmann::json obligation_json(const Certificate& cert, const Obligation& o) {
    return {{"pair", o.pair_index},
            {"left", cert.pairs[o.pair_index].first.literal()},
            {"right", cert.pairs[o.pair_index].second.literal()},
            {"label", o.label},
            {"side", side_name(o.spoiler_side)},
            {"successor", o.spoiler_generator.literal()},
            {"reason", o.reason}};
}

void print_obligations(const Certificate& cert, const Verdict& v) {
    for (const Obligation& o : v.failures) {
        std::cout << "  pair #" << o.pair_index << " ("
                  << cert.pairs[o.pair_index].first.literal() << " ~ "
                  << cert.pairs[o.pair_index].second.literal() << "), label '" << o.label
                  << "', " << side_name(o.spoiler_side) << " successor "
                  << o.spoiler_generator.literal() << ": " << o.reason << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact checkers for probabilistic automata equivalences"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may trail the subcommand arguments
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    // check
    auto* check = app.add_subcommand("check", "decide state bisimilarity");
    std::string mode = "strong";
    std::string file, left, right;
    check->add_option("--mode", mode, "strong|convex")->check(CLI::IsMember({"strong", "convex"}));
    check->add_option("file", file)->required();
    check->add_option("left", left)->required();
    check->add_option("right", right)->required();

    // partition
    auto* partition = app.add_subcommand("partition", "print the bisimilarity quotient");
    std::string pmode = "strong";
    std::string pfile;
    partition->add_option("--mode", pmode, "strong|convex")
        ->check(CLI::IsMember({"strong", "convex"}));
    partition->add_option("file", pfile)->required();

    // certify
    auto* certify = app.add_subcommand("certify", "check a bisimulation-up-to certificate");
    std::string cfile, certfile;
    certify->add_option("file", cfile)->required();
    certify->add_option("certfile", certfile)->required();

    // search
    auto* search = app.add_subcommand("search", "search for a certificate or a refutation");
    std::string sfile, sleft, sright, emit_path;
    size_t max_pairs = 32;
    int max_depth = 5;
    std::string technique = "cvx_e";
    bool identity_slack = true;
    search->add_option("file", sfile)->required();
    search->add_option("left", sleft)->required();
    search->add_option("right", sright)->required();
    search->add_option("--max-pairs", max_pairs, "certificate size budget");
    search->add_option("--max-depth", max_depth, "saturation and refutation depth budget");
    search->add_option("--technique", technique, "plain|cvx|cvx_e")
        ->check(CLI::IsMember({"plain", "cvx", "cvx_e"}));
    search->add_flag("--identity-slack,!--no-identity-slack", identity_slack,
                     "allow a shared diagonal summand in membership queries");
    search->add_option("--emit", emit_path, "write the found certificate to this file");

    // successors
    auto* succ = app.add_subcommand("successors", "enumerate belief-state successor generators");
    std::string ufile, udist, ulabel;
    succ->add_option("file", ufile)->required();
    succ->add_option("dist", udist)->required();
    succ->add_option("label", ulabel)->required();

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the randomized algebraic-law suite");
    int samples = 1000;
    unsigned long long seed = 42;
    selftest->add_option("--samples", samples, "instances per law and carrier");
    selftest->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*check) {
        PA pa = load_pa(file);
        if (!pa.has_state(left) || !pa.has_state(right))
            throw Error("unknown state '" + (pa.has_state(left) ? right : left) + "'");
        Partition p = mode == "strong" ? strong_bisimilarity(pa) : convex_bisimilarity(pa);
        bool same = p.same_block(left, right);
        if (json) {
            std::cout << nlohmann::json{{"mode", mode},
                                        {"verdict", same ? "equivalent" : "distinct"},
                                        {"blocks", blocks_json(p)}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << (same ? "equivalent" : "distinct") << "\n";
        }
        return same ? kExitYes : kExitNo;
    }

    if (*partition) {
        PA pa = load_pa(pfile);
        Partition p = pmode == "strong" ? strong_bisimilarity(pa) : convex_bisimilarity(pa);
        if (json) {
            std::cout << nlohmann::json{{"mode", pmode}, {"blocks", blocks_json(p)}}.dump(2)
                      << "\n";
        } else {
            for (const auto& [id, members] : p.blocks()) {
                std::cout << "{";
                for (size_t i = 0; i < members.size(); ++i)
                    std::cout << (i ? " " : "") << members[i];
                std::cout << "}\n";
            }
        }
        return kExitYes;
    }

    if (*certify) {
        PA pa = load_pa(cfile);
        Certificate cert = certificate_from_json(read_file(certfile));
        Verdict v = check_certificate(pa, cert);
        if (json) {
            auto failures = nlohmann::json::array();
            for (const Obligation& o : v.failures) failures.push_back(obligation_json(cert, o));
            std::cout << nlohmann::json{{"verdict", v.accepted ? "Accepted" : "Rejected"},
                                        {"failures", failures}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << (v.accepted ? "Accepted" : "Rejected") << "\n";
            print_obligations(cert, v);
        }
        return v.accepted ? kExitYes : kExitNo;
    }

    if (*search) {
        PA pa = load_pa(sfile);
        Dist l = parse_dist_arg(sleft);
        Dist r = parse_dist_arg(sright);
        TechniqueConfig config;
        config.base = *technique_base_from_string(technique);
        config.identity_slack = identity_slack;
        SearchOutcome outcome = search_witness(pa, l, r, max_pairs, max_depth, config);

        if (outcome.kind == SearchOutcome::Kind::proven) {
            std::string cert_json = certificate_to_json(*outcome.certificate);
            if (!emit_path.empty()) {
                std::ofstream out(emit_path);
                if (!out) throw Error("cannot write '" + emit_path + "'");
                out << cert_json;
            }
            if (json) {
                std::cout << nlohmann::json{{"verdict", "Proven"},
                                            {"certificate",
                                             nlohmann::json::parse(cert_json)}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "Proven\n" << cert_json;
            }
            return kExitYes;
        }
        if (outcome.kind == SearchOutcome::Kind::refuted) {
            if (json) {
                std::cout << nlohmann::json{{"verdict", "Refuted"},
                                            {"trace", outcome.trace->steps}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "Refuted\n";
                for (const auto& step : outcome.trace->steps) std::cout << "  " << step << "\n";
            }
            return kExitNo;
        }
        if (json) {
            std::cout << nlohmann::json{{"verdict", "Unknown"}}.dump(2) << "\n";
        } else {
            std::cout << "Unknown\n";
        }
        return kExitUnknown;
    }

    if (*succ) {
        PA pa = load_pa(ufile);
        BeliefStep result = belief_step(pa, parse_dist_arg(udist), ulabel);
        if (json) {
            auto gens = nlohmann::json::array();
            if (!result.successors.is_bottom())
                for (const Dist& g : result.successors.poly().generators())
                    gens.push_back(g.literal());
            std::cout << nlohmann::json{{"source", result.source.literal()},
                                        {"label", result.label},
                                        {"bottom", result.successors.is_bottom()},
                                        {"generators", gens}}
                             .dump(2)
                      << "\n";
        } else if (result.successors.is_bottom()) {
            std::cout << "bottom\n";
        } else {
            for (const Dist& g : result.successors.poly().generators())
                std::cout << g.literal() << "\n";
        }
        return kExitYes;
    }

    if (*selftest) {
        AxiomsReport report = axioms_report(samples, seed);
        if (json) {
            auto results = nlohmann::json::array();
            for (const LawResult& r : report.results)
                results.push_back({{"law", r.law},
                                   {"carrier", r.carrier},
                                   {"passes", r.passes},
                                   {"failures", r.failures},
                                   {"counterexample", r.first_counterexample}});
            std::cout << nlohmann::json{{"total_failures", report.total_failures},
                                        {"results", results}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << report.render();
            std::cout << "total failures: " << report.total_failures << "\n";
        }
        return report.total_failures == 0 ? kExitYes : kExitNo;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pabisim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
