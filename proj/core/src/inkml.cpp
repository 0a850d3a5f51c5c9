// Copyright 2026 The hwforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <functional>
#include <sstream>

#include "hwforge/error.hpp"
#include "hwforge/ink.hpp"
#include "hwforge/text.hpp"

namespace hwforge::ink {

namespace pt = boost::property_tree;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t trace_index) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("trace " + std::to_string(trace_index) + ": non-numeric coordinate \"" +
                         std::string(token) + "\"",
                     trace_index);
  }
  return value;
}

Stroke parse_trace(std::string_view body, std::size_t trace_index) {
  Stroke stroke;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    const std::string_view point = trim(body.substr(start, comma - start));
    start = comma + 1;
    if (point.empty()) {
      if (comma == body.size()) break;
      throw ParseError("trace " + std::to_string(trace_index) + ": empty coordinate tuple",
                       trace_index);
    }

    double xy[2];
    int found = 0;
    std::size_t pos = 0;
    while (found < 2 && pos < point.size()) {
      const auto tok_start = point.find_first_not_of(" \t\r\n", pos);
      if (tok_start == std::string_view::npos) break;
      auto tok_end = point.find_first_of(" \t\r\n", tok_start);
      if (tok_end == std::string_view::npos) tok_end = point.size();
      xy[found++] = parse_number(point.substr(tok_start, tok_end - tok_start), trace_index);
      pos = tok_end;
    }
    if (found < 2) {
      throw ParseError("trace " + std::to_string(trace_index) +
                           ": coordinate tuple needs x and y",
                       trace_index);
    }
    stroke.points.push_back({xy[0], xy[1]});
  }
  if (stroke.points.empty()) {
    throw StructuralError("trace " + std::to_string(trace_index) + " has no points");
  }
  return stroke;
}

std::string attribute(const pt::ptree& node, const char* name) {
  if (const auto attrs = node.get_child_optional("<xmlattr>")) {
    if (const auto value = attrs->get_optional<std::string>(name)) return *value;
  }
  return {};
}

std::string local_name(const std::string& tag) {
  const auto colon = tag.find(':');
  return colon == std::string::npos ? tag : tag.substr(colon + 1);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

InkSample parse_inkml_subset(std::string_view bytes, std::string_view fallback_id) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed InkML (line " + std::to_string(e.line()) + "): " + e.message(),
                     0);
  }

  InkSample sample;
  std::optional<std::string> transcript;
  std::size_t trace_index = 0;

  std::function<void(const pt::ptree&)> visit = [&](const pt::ptree& node) {
    for (const auto& [tag, child] : node) {
      if (tag == "<xmlattr>" || tag == "<xmlcomment>") continue;
      const std::string name = local_name(tag);
      if (name == "ink") {
        std::string id = attribute(child, "xml:id");
        if (id.empty()) id = attribute(child, "id");
        if (!id.empty() && sample.id.empty()) sample.id = id;
      } else if (name == "trace") {
        sample.strokes.push_back(parse_trace(child.data(), trace_index++));
        continue;
      } else if (name == "annotation") {
        const std::string type = attribute(child, "type");
        const std::string value{trim(child.data())};
        if (type == "transcription" && !transcript) {
          transcript = value;
        } else if (type == "id" && sample.id.empty()) {
          sample.id = value;
        } else if (type == "level") {
          sample.level = level_from_string(value);
        } else if (type == "split") {
          sample.split = value;
        }
        continue;
      }
      visit(child);
    }
  };
  visit(tree);

  if (!transcript) throw StructuralError("InkML document has no transcription annotation");
  if (sample.strokes.empty()) throw StructuralError("InkML document has no traces");
  if (sample.id.empty()) sample.id = std::string(fallback_id);
  sample.transcript = text::nfc(*transcript);
  validate(sample);
  return sample;
}

std::string write_inkml_subset(const InkSample& sample) {
  std::string out = "<ink xmlns=\"http://www.w3.org/2003/InkML\">\n";
  out += "  <annotation type=\"id\">" + escape(sample.id) + "</annotation>\n";
  out += "  <annotation type=\"transcription\">" + escape(sample.transcript) + "</annotation>\n";
  out += "  <annotation type=\"level\">" + std::string(to_string(sample.level)) +
         "</annotation>\n";
  if (sample.split) {
    out += "  <annotation type=\"split\">" + escape(*sample.split) + "</annotation>\n";
  }
  out += "  <traceGroup>\n";
  for (const auto& stroke : sample.strokes) {
    out += "    <trace>";
    for (std::size_t i = 0; i < stroke.points.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_number(stroke.points[i].x) + " " + format_number(stroke.points[i].y);
    }
    out += "</trace>\n";
  }
  out += "  </traceGroup>\n</ink>\n";
  return out;
}

}  // namespace hwforge::ink
