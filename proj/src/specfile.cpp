#include "summability/specfile.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace summability::specfile {

using bignum::Nat;
using bignum::Rational;

namespace {

struct Line {
    std::size_t number;
    std::string key;    // part before ':', trimmed
    std::string value;  // part after ':', trimmed
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Line> parse_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(number, "expected 'key: value', got '" + line + "'");
        out.push_back({number, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

Nat parse_nat(const std::string& text, std::size_t line) {
    if (text.empty()) throw ParseError(line, "empty integer field");
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(line, "expected a natural number, got '" + text + "'");
    return Nat(text);
}

}  // namespace

namespace {

// decimal digits -> Int without tripping the base-prefix parsing of cpp_int
bignum::Int parse_digits(const std::string& digits) {
    if (digits.empty()) throw std::invalid_argument("empty number");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("expected digits, got '" + digits + "'");
    auto nonzero = digits.find_first_not_of('0');
    if (nonzero == std::string::npos) return 0;
    return bignum::Int(digits.substr(nonzero));
}

bignum::Int parse_signed(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (text[0] == '-') return -parse_digits(text.substr(1));
    if (text[0] == '+') return parse_digits(text.substr(1));
    return parse_digits(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        bignum::Int num = parse_signed(text.substr(0, slash));
        bignum::Int den = parse_signed(text.substr(slash + 1));
        if (den.is_zero()) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        bool neg = text[0] == '-';
        std::string head = text.substr(neg || text[0] == '+' ? 1 : 0,
                                       dot - (neg || text[0] == '+' ? 1 : 0));
        std::string tail = text.substr(dot + 1);
        if (tail.empty()) throw std::invalid_argument("trailing decimal point");
        bignum::Int num = parse_digits(head.empty() ? "0" : head);
        bignum::Int den = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
        num = num * den + parse_digits(tail);
        return Rational(neg ? -num : num, den);
    }
    return Rational(parse_signed(text));
}

seqcore::BlockSequence sequence_from_preset(const std::string& token) {
    if (token == "example1") return seqcore::example1();
    if (token == "example2") return seqcore::example2();
    if (token == "negated-example2") return seqcore::negate(seqcore::example2());
    const std::string majorant = "example1-majorant";
    if (token.rfind(majorant, 0) == 0) {
        std::string rest = token.substr(majorant.size());
        if (rest.empty())
            throw std::invalid_argument("preset example1-majorant needs an index, e.g. "
                                        "example1-majorant:3");
        if (rest[0] != ':') throw std::invalid_argument("unknown preset '" + token + "'");
        return seqcore::example1_majorant(static_cast<unsigned>(std::stoul(rest.substr(1))));
    }
    throw std::invalid_argument("unknown preset '" + token + "'");
}

namespace {

seqcore::BlockSequence sequence_from_lines(const std::vector<Line>& lines) {
    std::string preset, generator, description;
    std::optional<int> initial;
    std::optional<unsigned> majorant_k;
    std::vector<Nat> boundaries;
    bool have_boundaries = false;
    for (const auto& ln : lines) {
        if (ln.key == "preset") {
            preset = ln.value;
        } else if (ln.key == "k") {
            majorant_k = static_cast<unsigned>(parse_nat(ln.value, ln.number)
                                                   .convert_to<unsigned long>());
        } else if (ln.key == "initial") {
            if (ln.value != "0" && ln.value != "1")
                throw ParseError(ln.number, "initial must be 0 or 1");
            initial = ln.value == "1" ? 1 : 0;
        } else if (ln.key == "boundaries") {
            have_boundaries = true;
            for (const auto& tok : split_ws(ln.value))
                boundaries.push_back(parse_nat(tok, ln.number));
        } else if (ln.key == "generator") {
            generator = ln.value;
        } else if (ln.key == "description") {
            description = ln.value;
        } else if (ln.key == "model" || ln.key == "states" || ln.key == "start") {
            // tolerated so a model spec can embed its sequence keys
        } else if (ln.key.rfind("actions", 0) == 0 || ln.key.rfind("transition", 0) == 0 ||
                   ln.key.rfind("cost", 0) == 0 || ln.key.rfind("policy", 0) == 0) {
            // model table keys, ignored here
        } else {
            throw ParseError(ln.number, "unknown sequence field '" + ln.key + "'");
        }
    }
    if (!preset.empty()) {
        if (preset == "example1-majorant") {
            if (!majorant_k) throw std::invalid_argument("example1-majorant needs k");
            return seqcore::example1_majorant(*majorant_k);
        }
        return sequence_from_preset(preset);
    }
    if (!initial)
        throw std::invalid_argument("sequence spec needs a preset or an initial value");
    if (have_boundaries && !generator.empty())
        throw std::invalid_argument("boundaries and generator are mutually exclusive");
    if (description.empty()) description = "spec sequence";
    if (!generator.empty()) {
        seqcore::CursorFactory stream;
        if (generator == "factorial")
            stream = seqcore::factorial_stream();
        else if (generator == "double-factorial-blocks")
            stream = seqcore::normalize_stream(seqcore::merge_streams(
                {seqcore::factorial_stream(), seqcore::double_factorial_stream()}));
        else if (generator == "dsum")
            stream = seqcore::dsum_stream();
        else
            throw std::invalid_argument("unknown generator '" + generator + "'");
        return seqcore::BlockSequence(*initial, std::move(stream), description);
    }
    return seqcore::from_boundaries(*initial, std::move(boundaries), description);
}

}  // namespace

seqcore::BlockSequence parse_sequence_spec(const std::string& text) {
    return sequence_from_lines(parse_lines(text));
}

seqcore::BlockSequence load_sequence_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence spec '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sequence_spec(buf.str());
}

namespace {

struct FiniteTable {
    std::size_t states = 0;
    mdp::State start = 0;
    // per state: action names in declaration order
    std::map<mdp::State, std::vector<std::string>> actions;
    std::map<std::pair<mdp::State, std::string>, std::vector<mdp::Transition>> transitions;
    std::map<std::pair<mdp::State, std::string>, Rational> costs;
    std::map<mdp::State, std::vector<std::pair<std::string, Rational>>> policy;
};

mdp::Construction build_finite(const FiniteTable& t) {
    if (t.states == 0) throw std::invalid_argument("finite model needs states >= 1");
    // resolve names to indices
    auto shared = std::make_shared<const FiniteTable>(t);
    auto action_index = [shared](mdp::State x, const std::string& name) {
        auto it = shared->actions.find(x);
        if (it == shared->actions.end())
            throw std::invalid_argument("state " + std::to_string(x) + " has no actions");
        const auto& names = it->second;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw std::invalid_argument("state " + std::to_string(x) + ": unknown action '" +
                                    name + "'");
    };
    // validate completeness up front
    Rational magnitude(0);
    Rational lower = std::numeric_limits<int>::max();
    for (mdp::State x = 0; x < t.states; ++x) {
        auto it = t.actions.find(x);
        if (it == t.actions.end() || it->second.empty())
            throw std::invalid_argument("state " + std::to_string(x) + " has no actions");
        for (const auto& name : it->second) {
            auto key = std::make_pair(x, name);
            if (!t.transitions.count(key))
                throw std::invalid_argument("missing transition for state " +
                                            std::to_string(x) + " action " + name);
            if (!t.costs.count(key))
                throw std::invalid_argument("missing cost for state " + std::to_string(x) +
                                            " action " + name);
            const Rational& c = t.costs.at(key);
            if (c < lower) lower = c;
            if (abs(c) > magnitude) magnitude = abs(c);
        }
        if (!t.policy.count(x))
            throw std::invalid_argument("missing policy for state " + std::to_string(x));
    }
    mdp::Model model(
        [shared](mdp::State x) { return shared->actions.at(x).size(); },
        [shared](mdp::State x, std::size_t a) {
            return shared->transitions.at({x, shared->actions.at(x)[a]});
        },
        [shared](mdp::State x, std::size_t a) {
            return shared->costs.at({x, shared->actions.at(x)[a]});
        },
        lower, t.states, magnitude);
    bool stationary = true;
    for (const auto& [x, dist] : t.policy)
        if (dist.size() != 1) stationary = false;
    mdp::Policy policy =
        stationary
            ? mdp::Policy::stationary([shared, action_index](mdp::State x) {
                  return action_index(x, shared->policy.at(x)[0].first);
              })
            : mdp::Policy::markov([shared, action_index](std::size_t, mdp::State x) {
                  mdp::Policy::Dist d;
                  for (const auto& [name, w] : shared->policy.at(x))
                      d.emplace_back(action_index(x, name), w);
                  return d;
              });
    return mdp::Construction{std::move(model), std::move(policy), t.start, std::nullopt};
}

}  // namespace

mdp::Construction parse_model_spec(const std::string& text) {
    auto lines = parse_lines(text);
    std::string kind;
    for (const auto& ln : lines)
        if (ln.key == "model") kind = ln.value;
    if (kind.empty()) throw std::invalid_argument("model spec needs a 'model:' line");
    if (kind == "single-state")
        return mdp::single_state_construction(sequence_from_lines(lines));
    if (kind == "chain") return mdp::chain_construction(sequence_from_lines(lines));
    if (kind != "finite") throw std::invalid_argument("unknown model kind '" + kind + "'");

    FiniteTable t;
    for (const auto& ln : lines) {
        auto fields = split_ws(ln.key);
        if (ln.key == "model") continue;
        if (ln.key == "states") {
            t.states = static_cast<std::size_t>(
                parse_nat(ln.value, ln.number).convert_to<unsigned long>());
        } else if (ln.key == "start") {
            t.start = parse_nat(ln.value, ln.number).convert_to<mdp::State>();
        } else if (fields.size() == 2 && fields[0] == "actions") {
            auto x = parse_nat(fields[1], ln.number).convert_to<mdp::State>();
            t.actions[x] = split_ws(ln.value);
            if (t.actions[x].empty()) throw ParseError(ln.number, "empty action list");
        } else if (fields.size() == 3 && fields[0] == "transition") {
            auto x = parse_nat(fields[1], ln.number).convert_to<mdp::State>();
            std::vector<mdp::Transition> trs;
            for (const auto& tok : split_ws(ln.value)) {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw ParseError(ln.number, "transition entries are to-state:prob");
                try {
                    trs.push_back(
                        {parse_nat(tok.substr(0, colon), ln.number).convert_to<mdp::State>(),
                         parse_rational(tok.substr(colon + 1))});
                } catch (const std::exception& e) {
                    throw ParseError(ln.number, e.what());
                }
            }
            t.transitions[{x, fields[2]}] = std::move(trs);
        } else if (fields.size() == 3 && fields[0] == "cost") {
            auto x = parse_nat(fields[1], ln.number).convert_to<mdp::State>();
            try {
                t.costs[{x, fields[2]}] = parse_rational(ln.value);
            } catch (const std::exception& e) {
                throw ParseError(ln.number, e.what());
            }
        } else if (fields.size() == 2 && fields[0] == "policy") {
            auto x = parse_nat(fields[1], ln.number).convert_to<mdp::State>();
            std::vector<std::pair<std::string, Rational>> dist;
            for (const auto& tok : split_ws(ln.value)) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) {
                    dist.emplace_back(tok, Rational(1));
                } else {
                    try {
                        dist.emplace_back(tok.substr(0, colon),
                                          parse_rational(tok.substr(colon + 1)));
                    } catch (const std::exception& e) {
                        throw ParseError(ln.number, e.what());
                    }
                }
            }
            t.policy[x] = std::move(dist);
        } else {
            throw ParseError(ln.number, "unknown model field '" + ln.key + "'");
        }
    }
    return build_finite(t);
}

mdp::Construction load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model spec '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_spec(buf.str());
}

}  // namespace summability::specfile
