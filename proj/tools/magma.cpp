// magma: command-line front end for the free-magma library.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magma/classify.hpp"
#include "magma/error.hpp"
#include "magma/io.hpp"
#include "magma/mean.hpp"
#include "magma/obstruction.hpp"
#include "magma/refutation.hpp"
#include "magma/sequence.hpp"
#include "magma/set_expr.hpp"
#include "magma/substitution.hpp"
#include "magma/term.hpp"

namespace {

using nlohmann::json;
using namespace magma;

constexpr std::size_t kDefaultPrefix = 512;
constexpr std::size_t kDefaultWindow = 32;

struct Globals {
  Limits limits;
  std::size_t generators = 1;
};

std::vector<Index> parse_indices(const std::string& text) {
  std::vector<Index> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw SyntaxError("bad index '" + item + "' in index list");
    }
  }
  if (out.empty()) throw SyntaxError("empty index list");
  return out;
}

void emit(const json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(path, doc);
  }
}

MeanSequence open_sequence(TermStore& store, Classifier& classifier, const std::string& source,
                           std::size_t prefix, bool permissive, const Limits& limits) {
  if (source == "uniform-levels") return uniform_levels(store, prefix, limits);
  if (source == "right-chains") return right_chains(store, classifier, prefix);
  const json doc = read_json(source);
  if (!doc.is_array()) throw InvalidMean(source + ": a sequence file is a list of mean documents");
  std::vector<LevelMean> means;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      means.emplace_back(store, mean_from_json(store, doc[i]));
    } catch (const InvalidMean& e) {
      throw InvalidMean(source + ": element " + std::to_string(i) + ": " + e.what());
    }
  }
  return explicit_sequence(classifier, source, std::move(means), permissive);
}

Mean mean_source(TermStore& store, const std::string& file, std::uint64_t uniform,
                 const Limits& limits) {
  if (!file.empty()) return load_mean(store, file);
  if (uniform > 0) return uniform_level(store, uniform, limits).mean();
  throw std::invalid_argument("give --mean <file> or --uniform <p>");
}

json summary(const TermStore& store, const Mean& mean) {
  json out{{"support", mean.support_size()}};
  if (auto level = single_level(store, mean)) {
    out["level"] = *level;
  } else {
    out["level"] = nullptr;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact arithmetic on free binary systems: terms, Z/T_p classification, "
               "means, substitution, refutation certificates, obstruction reports."};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--max-support", g.limits.max_support, "support cap for materialized means")
      ->envname("MAGMA_MAX_SUPPORT");
  app.add_option("--max-level", g.limits.max_level, "enumeration level cap")
      ->envname("MAGMA_MAX_LEVEL");
  app.add_option("--generators", g.generators, "number of generators (1: x, else g0, g1, ...)")
      ->envname("MAGMA_GENERATORS")
      ->check(CLI::PositiveNumber);

  // term
  auto* term_cmd = app.add_subcommand("term", "parse, enumerate and count terms");
  std::string term_text;
  std::uint64_t enumerate_n = 0, count_n = 0, chain_l = 0;
  term_cmd->add_option("term", term_text, "term to parse and print canonically");
  term_cmd->add_option("--enumerate", enumerate_n, "list every term of this level");
  term_cmd->add_option("--count", count_n, "count terms of this level");
  term_cmd->add_option("--chain", chain_l, "right-associated product of this many generators");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "membership in Z, T_p and set expressions");
  std::string classify_text;
  std::vector<std::string> classify_sets;
  classify_cmd->add_option("term", classify_text, "term")->required();
  classify_cmd->add_option("--set", classify_sets, "set expression to test (repeatable)");

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "evaluate a mean on set expressions");
  std::string measure_file, measure_emit;
  std::uint64_t measure_uniform = 0;
  std::vector<std::string> measure_sets;
  measure_cmd->add_option("--mean", measure_file, "mean file");
  measure_cmd->add_option("--uniform", measure_uniform, "use the uniform mean on S_p");
  measure_cmd->add_option("--set", measure_sets, "set expression (repeatable)");
  measure_cmd->add_option("--emit", measure_emit, "write the mean document here");

  // convolve
  auto* convolve_cmd = app.add_subcommand("convolve", "convolution mu * nu of two means");
  std::string left_file, right_file, convolve_emit;
  convolve_cmd->add_option("--left", left_file, "mean file for mu")->required();
  convolve_cmd->add_option("--right", right_file, "mean file for nu")->required();
  convolve_cmd->add_option("--emit", convolve_emit, "write the result mean here");

  // substitute
  auto* subst_cmd = app.add_subcommand("substitute", "evaluate s<mu_{i_k}> for a skeleton term");
  std::string skeleton_text, indices_text, subst_seq, subst_emit;
  std::vector<std::string> subst_means;
  Index subst_offset = 0;
  std::size_t subst_prefix = 64;
  subst_cmd->add_option("--skeleton", skeleton_text, "skeleton term s")->required();
  subst_cmd->add_option("--indices", indices_text, "comma-separated index list")->required();
  subst_cmd->add_option("--means", subst_means, "mean files mu_0 mu_1 ...");
  subst_cmd->add_option("--seq", subst_seq, "built-in sequence or sequence file instead of --means");
  subst_cmd->add_option("--prefix", subst_prefix, "prefix bound for --seq");
  subst_cmd->add_option("--offset", subst_offset, "offset m for the admissibility check");
  subst_cmd->add_option("--emit", subst_emit, "write the result mean here");

  // refute
  auto* refute_cmd = app.add_subcommand("refute", "emit or check a refutation certificate");
  std::string eps_text, refute_seq, refute_emit, refute_check;
  std::size_t prefix = kDefaultPrefix, window = kDefaultWindow;
  bool permissive = false;
  refute_cmd->add_option("--epsilon", eps_text, "epsilon in (0, 1/2), e.g. 2/5");
  refute_cmd->add_option("--seq", refute_seq, "uniform-levels, right-chains, or a sequence file");
  refute_cmd->add_option("--prefix", prefix, "materialized prefix bound")->capture_default_str();
  refute_cmd->add_option("--window", window, "tail window inspected to pick r")->capture_default_str();
  refute_cmd->add_option("--emit", refute_emit, "write the certificate here");
  refute_cmd->add_option("--check", refute_check, "re-verify an emitted certificate");
  refute_cmd->add_flag("--permissive", permissive, "allow nondecreasing levels");

  // obstruct
  auto* obstruct_cmd = app.add_subcommand("obstruct", "idempotence obstruction report for a mean");
  std::string obstruct_file, obstruct_emit;
  std::uint64_t obstruct_uniform = 0, depth = 6;
  obstruct_cmd->add_option("--mean", obstruct_file, "mean file");
  obstruct_cmd->add_option("--uniform", obstruct_uniform, "use the uniform mean on S_p");
  obstruct_cmd->add_option("--depth", depth, "table depth n")->capture_default_str();
  obstruct_cmd->add_option("--emit", obstruct_emit, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  TermStore store(GeneratorSet::indexed(g.generators));
  Classifier classifier(store);

  if (*term_cmd) {
    if (enumerate_n > 0) {
      json out = json::array();
      for (Term t : enumerate_level(store, enumerate_n, g.limits)) out.push_back(format_term(store, t));
      std::cout << out.dump(2) << '\n';
    } else if (count_n > 0) {
      std::cout << json{{"level", count_n}, {"count", to_string(count_level(count_n, g.generators))}}.dump(2)
                << '\n';
    } else if (chain_l > 0) {
      std::cout << format_term(store, right_chain(store, chain_l)) << '\n';
    } else if (!term_text.empty()) {
      const Term t = parse_term(store, term_text);
      json out{{"term", format_term(store, t)}, {"size", store.size(t)}};
      if (auto parts = store.decompose(t)) {
        out["left"] = format_term(store, parts->first);
        out["right"] = format_term(store, parts->second);
      }
      std::cout << out.dump(2) << '\n';
    } else {
      throw std::invalid_argument("term: give a term, --enumerate, --count or --chain");
    }
    return 0;
  }

  if (*classify_cmd) {
    const Term t = parse_term(store, classify_text);
    const std::uint64_t size = store.size(t);
    json in_t = json::object();
    for (std::uint64_t p = 0; p < std::max<std::uint64_t>(size, 2); ++p) {
      in_t["T_" + std::to_string(p)] = classifier.in_T(t, p);
    }
    json out{{"term", format_term(store, t)},
             {"size", size},
             {"in_Z", classifier.in_Z(t)},
             {"t_depth", classifier.t_depth(t)},
             {"in_T", in_t}};
    for (const auto& text : classify_sets) {
      out["sets"][text] = member(classifier, t, parse_set_expr(store, text));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  if (*measure_cmd) {
    const Mean mu = mean_source(store, measure_file, measure_uniform, g.limits);
    if (!measure_emit.empty()) write_json(measure_emit, mean_to_json(store, mu));
    if (measure_sets.size() == 1) {
      std::cout << to_string(measure_of(classifier, mu, parse_set_expr(store, measure_sets[0])))
                << '\n';
    } else if (!measure_sets.empty()) {
      for (const auto& text : measure_sets) {
        std::cout << text << ": "
                  << to_string(measure_of(classifier, mu, parse_set_expr(store, text))) << '\n';
      }
    } else if (measure_emit.empty()) {
      std::cout << mean_to_json(store, mu).dump(2) << '\n';
    }
    return 0;
  }

  if (*convolve_cmd) {
    const Mean mu = load_mean(store, left_file);
    const Mean nu = load_mean(store, right_file);
    const Mean out = convolve(store, mu, nu, g.limits);
    if (convolve_emit.empty()) {
      std::cout << mean_to_json(store, out).dump(2) << '\n';
    } else {
      write_json(convolve_emit, mean_to_json(store, out));
      std::cout << summary(store, out).dump(2) << '\n';
    }
    return 0;
  }

  if (*subst_cmd) {
    const Term s = parse_term(store, skeleton_text);
    const auto indices = parse_indices(indices_text);
    if (indices.size() != store.size(s)) {
      throw std::invalid_argument("index list has " + std::to_string(indices.size()) +
                                  " entries but the skeleton has size " +
                                  std::to_string(store.size(s)));
    }
    std::vector<Mean> means;
    if (!subst_seq.empty()) {
      MeanSequence seq = open_sequence(store, classifier, subst_seq, subst_prefix, false, g.limits);
      for (Index i : indices) {
        if (i < 0) throw std::invalid_argument("negative index");
        const auto& e = seq.at(static_cast<std::size_t>(i));
        if (!e.mean) {
          throw CapExceeded("element " + std::to_string(i) + " of " + subst_seq +
                            " is too large to materialize");
        }
        means.push_back(*e.mean);
      }
    } else {
      std::vector<Mean> pool;
      for (const auto& f : subst_means) pool.push_back(load_mean(store, f));
      for (Index i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= pool.size()) {
          throw std::invalid_argument("index " + std::to_string(i) + " has no mean file (" +
                                      std::to_string(pool.size()) + " given)");
        }
        means.push_back(pool[static_cast<std::size_t>(i)]);
      }
    }
    const Mean result = substitute(store, s, means, g.limits);
    json out = summary(store, result);
    out["admissible"] = is_admissible(store, s, indices, subst_offset);
    out["offset"] = subst_offset;
    if (subst_emit.empty()) {
      out["mean"] = mean_to_json(store, result);
    } else {
      write_json(subst_emit, mean_to_json(store, result));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  if (*refute_cmd) {
    if (!refute_check.empty()) {
      const json cert = read_json(refute_check);
      const std::string name = refute_seq.empty() ? cert.value("sequence", std::string()) : refute_seq;
      const std::size_t bound = cert.value("prefix_bound", prefix);
      MeanSequence seq = open_sequence(store, classifier, name, bound, permissive, g.limits);
      const CertificateCheck check = check_certificate(store, seq, cert);
      std::cout << json{{"certificate", refute_check},
                        {"passed", check.passed},
                        {"failures", check.failures}}
                       .dump(2)
                << '\n';
      if (!check.passed) {
        std::cerr << "verification failed: " << check.failures.front() << '\n';
        return 6;
      }
      return 0;
    }
    if (eps_text.empty() || refute_seq.empty()) {
      throw std::invalid_argument("refute needs --epsilon and --seq (or --check)");
    }
    const Rational epsilon = parse_rational(eps_text);
    MeanSequence seq = open_sequence(store, classifier, refute_seq, prefix, permissive, g.limits);
    Refuter refuter(store, classifier, seq, g.limits);
    const RefutationCertificate cert = refuter.refute(epsilon, std::min(window, seq.prefix_bound()));
    const json doc = certificate_to_json(store, seq, cert);
    if (refute_emit.empty()) {
      std::cout << doc.dump(2) << '\n';
    } else {
      write_json(refute_emit, doc);
      std::cout << json{{"certificate", refute_emit},
                        {"epsilon", to_string(cert.epsilon)},
                        {"r", to_string(cert.r)},
                        {"low_z", to_string(cert.low.z_value)},
                        {"high_z", to_string(cert.high.z_value)},
                        {"verdict", cert.verdict}}
                       .dump(2)
                << '\n';
    }
    return 0;
  }

  if (*obstruct_cmd) {
    const Mean mu = mean_source(store, obstruct_file, obstruct_uniform, g.limits);
    emit(report_to_json(store, walkthrough(store, classifier, mu, depth)), obstruct_emit);
    if (!obstruct_emit.empty()) std::cout << json{{"report", obstruct_emit}}.dump(2) << '\n';
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const magma::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << '\n';
    return 2;
  } catch (const magma::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const magma::PrefixExhausted& e) {
    std::cerr << "prefix exhausted: " << e.what() << '\n';
    return 4;
  } catch (const magma::InvalidMean& e) {
    std::cerr << "invalid mean: " << e.what() << '\n';
    return 5;
  } catch (const magma::VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 6;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 7;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
