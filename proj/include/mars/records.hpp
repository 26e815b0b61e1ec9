#pragma once

// Line-delimited record I/O. One JSON object per line:
//
//   {"id": str, "question": str,
//    "answer": {"text": str, "tokens": [{"text": str, "logprob": float}]},
//    "samples": [<same shape as answer>], "correctness": bool|null}
//
// Unknown fields are ignored; "samples" and "correctness" may be omitted.

#include <iosfwd>
#include <string>
#include <vector>

#include "mars/types.hpp"

namespace mars {

/// Parses and validates every record in the stream, preserving order.
/// Blank lines are skipped. Throws ParseError (malformed JSON or schema
/// mismatch, with line number) or ValidationError (naming the record id).
std::vector<GenerationRecord> ingest_records(std::istream& in);

std::vector<GenerationRecord> ingest_records_file(const std::string& path);

/// One JSON line per record, fields in schema order.
std::string serialize_record(const GenerationRecord& record);
void write_records(std::ostream& out,
                   const std::vector<GenerationRecord>& records);

}  // namespace mars
