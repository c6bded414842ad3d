/*
   Copyright 2026 The entropyforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ENTROPYFORGE_SING_PATTERN_HPP
#define ENTROPYFORGE_SING_PATTERN_HPP

#include <optional>
#include <string>
#include <vector>

#include "entropyforge/core/rational.hpp"
#include "entropyforge/io/format.hpp"

namespace entropyforge::sing {

/// One step of a singularity pattern.  Zero and Pole carry the order of
/// vanishing/divergence; Finite marks an order-zero value inside the pattern;
/// Regular marks post-pattern values that remember the initial data.
struct Token {
    enum class Kind { Zero, Pole, Finite, Regular };
    Kind kind = Kind::Regular;
    long order = 0;

    static Token zero(long j) { return {Kind::Zero, j}; }
    static Token pole(long j) { return {Kind::Pole, j}; }
    static Token finite() { return {Kind::Finite, 0}; }
    static Token regular() { return {Kind::Regular, 0}; }

    bool singular() const { return kind == Kind::Zero || kind == Kind::Pole; }

    std::string str() const {
        switch (kind) {
            case Kind::Zero: return order == 1 ? "0" : "0^" + std::to_string(order);
            case Kind::Pole: return order == 1 ? "inf" : "inf^" + std::to_string(order);
            case Kind::Finite: return "f";
            case Kind::Regular: return "r";
        }
        return "?";
    }

    bool operator==(const Token& o) const { return kind == o.kind && order == o.order; }
};

struct Verdict {
    enum class Kind { Confined, Nonconfined, Collapsed };
    Kind kind = Kind::Nonconfined;
    int exit_step = -1;  // confined: position (relative to the entry) where the regular window starts
    int depth = 0;       // nonconfined: depth to which the trace was observed

    bool confined() const { return kind == Kind::Confined; }

    std::string str() const {
        switch (kind) {
            case Kind::Confined: return "confined(step " + std::to_string(exit_step) + ")";
            case Kind::Nonconfined: return "nonconfined(depth " + std::to_string(depth) + ")";
            case Kind::Collapsed: return "collapsed";
        }
        return "?";
    }
};

struct SingularityPattern {
    std::vector<Token> tokens;  // first singular step through last singular step
    Verdict verdict;
    int pattern_start = 0;  // position of tokens.front() relative to the entry slot

    std::string str() const {
        std::string out = "{";
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (i) out += ", ";
            out += tokens[i].str();
        }
        return out + "} " + verdict.str();
    }
};

/// Which initial slot is perturbed and how: slot value becomes
/// value + scale * eps.
struct PerturbationSpec {
    int entry_index = -1;      // -1: last initial slot
    std::optional<Rat> value;  // default: the map's singular entry value
    Rat scale = Rat(1);        // kappa, for multi-site entries
};

inline std::string pattern_to_json(const SingularityPattern& p) {
    std::string out = "{\n  \"schemaVersion\": 1,\n  \"tokens\": [";
    for (size_t i = 0; i < p.tokens.size(); ++i) {
        if (i) out += ", ";
        out += "{\"kind\": \"";
        switch (p.tokens[i].kind) {
            case Token::Kind::Zero: out += "zero"; break;
            case Token::Kind::Pole: out += "pole"; break;
            case Token::Kind::Finite: out += "finite"; break;
            case Token::Kind::Regular: out += "regular"; break;
        }
        out += "\", \"order\": " + std::to_string(p.tokens[i].order) + "}";
    }
    out += "],\n  \"patternStart\": " + std::to_string(p.pattern_start);
    out += ",\n  \"verdict\": \"";
    switch (p.verdict.kind) {
        case Verdict::Kind::Confined: out += "confined"; break;
        case Verdict::Kind::Nonconfined: out += "nonconfined"; break;
        case Verdict::Kind::Collapsed: out += "collapsed"; break;
    }
    out += "\"";
    if (p.verdict.kind == Verdict::Kind::Confined)
        out += ",\n  \"exitStep\": " + std::to_string(p.verdict.exit_step);
    if (p.verdict.kind == Verdict::Kind::Nonconfined)
        out += ",\n  \"observedDepth\": " + std::to_string(p.verdict.depth);
    out += "\n}\n";
    return out;
}

}  // namespace entropyforge::sing

#endif
