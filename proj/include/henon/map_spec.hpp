#pragma once

#include <string>

#include "henon/chain.hpp"

namespace henon {

struct ParsedMapSpec {
    HenonChain chain;
    std::string name;
};

// v1 JSON map-spec schema:
// {"name": "...",                                  (optional)
//  "factors": [{"b": [re, im], "c": [re, im], "delta": [re, im],
//               "p": [[re, im], ...]}, ...]}       (p ascending in degree)
// Rejections carry the offending factor index. Throws ParseError on
// malformed JSON and ValidationError on invariant breaches.
ParsedMapSpec parse_map_spec_full(const std::string& text);
HenonChain parse_map_spec(const std::string& text);

std::string serialize_map_spec(const HenonChain& chain, const std::string& name = {});

ParsedMapSpec load_map_spec(const std::string& path);

}  // namespace henon
