#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "morita/cw_json.hpp"
#include "morita/cw_model.hpp"
#include "morita/derived_hom.hpp"
#include "morita/hochschild.hpp"
#include "morita/resolution.hpp"
#include "morita/text.hpp"

namespace morita::cli {

enum class Command { build, homology, ext, hh, s1_hom, check, spaces };
enum class Format { tsv, json };

inline std::optional<Command> parse_command(const std::string& s) {
    if (s == "build") return Command::build;
    if (s == "homology") return Command::homology;
    if (s == "ext") return Command::ext;
    if (s == "hh") return Command::hh;
    if (s == "s1-hom") return Command::s1_hom;
    if (s == "check") return Command::check;
    if (s == "spaces") return Command::spaces;
    return std::nullopt;
}

inline const char* command_name(Command c) {
    switch (c) {
    case Command::build: return "build";
    case Command::homology: return "homology";
    case Command::ext: return "ext";
    case Command::hh: return "hh";
    case Command::s1_hom: return "s1-hom";
    case Command::check: return "check";
    case Command::spaces: return "spaces";
    }
    return "";
}

struct RunConfig {
    Command command = Command::homology;
    std::optional<std::string> space;
    std::optional<std::string> file;
    std::optional<std::string> field;
    std::optional<int> max_degree;
    std::optional<std::size_t> word_bound;
    bool oracle = false;
    bool cohomology = false;
    Format format = Format::tsv;
    std::optional<std::string> lambda;
};

namespace detail {

struct Input {
    CWComplex space;
    FreeDGA algebra;
};

inline Input resolve_input(const RunConfig& c) {
    if (c.space.has_value() == c.file.has_value())
        throw Error(ErrorKind::parse_error, "give exactly one of --space and --file");
    CWComplex x;
    if (c.space) {
        x = builtin_space(*c.space, Field::parse(c.field.value_or("q")));
    } else {
        std::ifstream in(*c.file);
        if (!in)
            throw Error(ErrorKind::parse_error, "cannot read " + *c.file);
        std::stringstream ss;
        ss << in.rdbuf();
        x = parse_cw_file(ss.str());
        if (c.field)
            x.field = Field::parse(*c.field);
    }
    return {x, cellular_model(x)};
}

inline std::string table_text(const RunConfig& c, const std::string& source, Field f, const HomologyTable& t) {
    const char* convention = t.convention == DegreeConvention::homological ? "homological" : "cohomological";
    if (c.format == Format::json) {
        nlohmann::ordered_json j;
        j["command"] = command_name(c.command);
        j["source"] = source;
        j["field"] = f.name();
        j["degree_convention"] = convention;
        j["stability_flag"] = to_string(t.stability);
        j["rows"] = nlohmann::ordered_json::array();
        for (int n = t.lo; n <= t.hi; ++n)
            j["rows"].push_back({{"degree", n}, {"dim", t.dim(n)}});
        return j.dump(2) + "\n";
    }
    std::string out;
    if (t.convention == DegreeConvention::cohomological)
        out += "# cohomological degrees\n";
    for (int n = t.lo; n <= t.hi; ++n)
        out += std::to_string(n) + "\t" + std::to_string(t.dim(n)) + "\t" + to_string(t.stability) + "\n";
    return out;
}

inline std::string build_text(const RunConfig& c, const Input& in) {
    const FreeDGA& a = in.algebra;
    if (c.format == Format::json) {
        nlohmann::ordered_json j;
        j["name"] = in.space.name;
        j["field"] = a.field().name();
        j["generators"] = nlohmann::ordered_json::array();
        for (std::uint32_t g = 0; g < a.size(); ++g)
            j["generators"].push_back(
                {{"name", a.generator(g).name}, {"degree", a.generator(g).degree}, {"d", render(a, a.diff(g))}});
        return j.dump(2) + "\n";
    }
    std::string out;
    for (std::uint32_t g = 0; g < a.size(); ++g)
        out += a.generator(g).name + "\t" + std::to_string(a.generator(g).degree) + "\t" + render(a, a.diff(g)) + "\n";
    return out;
}

inline std::string check_text(const RunConfig& c, const Input& in) {
    const FreeDGA& a = in.algebra;
    const int max = c.max_degree.value_or(4);
    std::vector<std::pair<std::string, bool>> rows;
    bool dd = true, aug = true;
    for (std::uint32_t g = 0; g < a.size(); ++g) {
        dd = dd && a.differential(a.diff(g)).is_zero();
        aug = aug && a.augmentation(a.diff(g)).is_zero();
    }
    rows.emplace_back("d^2=0", dd);
    rows.emplace_back("augmentation", aug);
    trivial_module(a);
    rows.emplace_back("trivial_module", true);
    if (!a.has_degree_zero_generators())
        rows.emplace_back("resolution_exact", resolution_is_exact(semifree_resolution(a), max));
    if (c.format == Format::json) {
        nlohmann::ordered_json j;
        j["source"] = in.space.name;
        j["field"] = a.field().name();
        for (const auto& [k, v] : rows)
            j["checks"][k] = v;
        return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& [k, v] : rows)
        out += k + "\t" + (v ? "ok" : "FAILED") + "\n";
    return out;
}

inline std::string spaces_text(const RunConfig& c) {
    const std::vector<std::pair<std::string, std::string>> rows = {
        {"sphere:<n>", "n >= 1"},   {"wedge_of_circles:<s>", "s >= 0"}, {"rp:<n>", "n = 2, 3"},
        {"cp:<n>", "n >= 1"},       {"torus", ""},
    };
    if (c.format == Format::json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& [name, note] : rows)
            j.push_back({{"space", name}, {"parameter", note}});
        return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& [name, note] : rows)
        out += name + "\t" + note + "\n";
    return out;
}

inline MonodromyPair scalar_pair(Field f, const Scalar& s) {
    return make_monodromy_pair(ChainComplex(f, {{0, 1}}, {}), SparseMatrix::from_triplets(f, 1, 1, {{0, 0, s}}));
}

} // namespace detail

/// Executes one command and returns its report; validation failures throw Error.
inline std::string run(const RunConfig& c) {
    switch (c.command) {
    case Command::spaces:
        return detail::spaces_text(c);
    case Command::s1_hom: {
        const Field f = Field::parse(c.field.value_or("q"));
        Rational lambda;
        try {
            lambda = parse_rational(c.lambda.value_or("1"));
        } catch (const Error&) {
            throw Error(ErrorKind::parse_error, "--lambda expects a rational such as 3 or -1/2");
        }
        if (lambda == 0)
            throw Error(ErrorKind::not_invertible, "monodromy lambda must be nonzero");
        const auto m = detail::scalar_pair(f, Scalar(f, lambda));
        const auto n = detail::scalar_pair(f, Scalar::one(f));
        return detail::table_text(c, "s1", f, monodromy_hom(m, n, c.max_degree.value_or(1)));
    }
    default:
        break;
    }
    if (c.lambda)
        throw Error(ErrorKind::parse_error, "--lambda applies to s1-hom only");
    const detail::Input in = detail::resolve_input(c);
    const FreeDGA& a = in.algebra;
    const int max = c.max_degree.value_or(4);
    if (max < 0)
        throw Error(ErrorKind::parse_error, "--max-degree must be non-negative");
    switch (c.command) {
    case Command::build:
        return detail::build_text(c, in);
    case Command::check:
        return detail::check_text(c, in);
    case Command::homology:
        if (c.oracle)
            throw Error(ErrorKind::unsupported, "--oracle applies to ext and hh");
        return detail::table_text(c, in.space.name, a.field(), algebra_homology(a, max, c.word_bound));
    case Command::ext: {
        if (c.oracle)
            return detail::table_text(c, in.space.name, a.field(), bar_ext_oracle(a, max));
        const Representation k = trivial_module(a);
        return detail::table_text(c, in.space.name, a.field(), derived_hom(k, k, max));
    }
    case Command::hh:
        if (c.cohomology)
            return detail::table_text(c, in.space.name, a.field(),
                                      c.oracle ? bar_cohomology_oracle(a, max, max + 4) : hh_cohomology_small(a, max, c.word_bound));
        return detail::table_text(c, in.space.name, a.field(), c.oracle ? bar_oracle(a, max) : hh_small(a, max, c.word_bound));
    default:
        break;
    }
    return {};
}

} // namespace morita::cli
