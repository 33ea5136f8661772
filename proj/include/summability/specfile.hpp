#ifndef SUMMABILITY_SPECFILE_HPP
#define SUMMABILITY_SPECFILE_HPP

#include <stdexcept>
#include <string>

#include "summability/mdp.hpp"
#include "summability/seqcore.hpp"

// Plain structured text records driving the CLI: one `key: value` entry per
// line, `#` comments.
//
// Sequence spec: either
//     preset: example1 | example2 | negated-example2 | example1-majorant
//     k: 3                      (majorant index, required for the majorant)
// or an explicit description
//     initial: 0
//     boundaries: 1 3 9 33      (finite strictly increasing list)
//     generator: factorial | double-factorial-blocks | dsum
//     description: optional label
// `boundaries` and `generator` are mutually exclusive.
//
// Model spec: `model: finite | single-state | chain`.  The infinite presets
// embed a sequence spec with the keys above.  Finite tables:
//     states: 2
//     start: 0
//     actions 0: a b
//     transition 0 a: 1:1
//     transition 0 b: 0:1/2 1:1/2
//     cost 0 a: 1
//     policy 0: a               (or a distribution: a:1/2 b:1/2)
// Probabilities and costs are exact rationals ("2/3", "0.25", "-1").

namespace summability::specfile {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// "p/q", decimal ("0.25", "-3.5") or integer text to an exact rational
bignum::Rational parse_rational(const std::string& text);

seqcore::BlockSequence parse_sequence_spec(const std::string& text);
seqcore::BlockSequence load_sequence_spec(const std::string& path);

// preset token as accepted by --preset: the spec-file preset names, with
// "example1-majorant:K" carrying the index inline
seqcore::BlockSequence sequence_from_preset(const std::string& token);

mdp::Construction parse_model_spec(const std::string& text);
mdp::Construction load_model_spec(const std::string& path);

}  // namespace summability::specfile

#endif
