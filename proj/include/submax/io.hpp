#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "submax/operation.hpp"
#include "submax/relation.hpp"

namespace submax {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Relation text format:
//   # optional comment lines
//   k=<int>
//   arity=<int>
//   one tuple per line, space-separated decimal entries
// Output is canonical: header then tuples in ascending rank order.
// Duplicate tuples are accepted (sets); a note is appended to `warnings`.
Relation read_relation_text(std::istream& in, std::vector<std::string>* warnings = nullptr);
Relation read_relation_text(const std::string& text, std::vector<std::string>* warnings = nullptr);
std::string write_relation_text(const Relation& rel);

// JSON alternative: {"k":K,"arity":H,"tuples":[[...],...]}, tuples sorted by rank.
Relation read_relation_json(const std::string& text);
std::string write_relation_json(const Relation& rel);

// Auto-detects JSON (first non-space '{') vs text.
Relation read_relation(const std::string& text, std::vector<std::string>* warnings = nullptr);
Relation load_relation_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Operation line format: k=<K> arity=<N> table=<k^N space-separated values in rank order>
std::string write_operation(const Operation& op);
Operation read_operation(const std::string& line);

// FNV-1a 64-bit over the canonical text serialization; used as relation id.
std::uint64_t fnv1a64(const std::string& data);
std::string relation_id(const Relation& rel);

}  // namespace submax
