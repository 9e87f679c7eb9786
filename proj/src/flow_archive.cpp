// Gridded Flow Archive reader/writer.
//
// Text variant: one JSON object
//   { "format": "gridded-flow-archive", "version": 1,
//     "axes": {"x": [...], "y": [...], "z": [...], "t": [...]},
//     "fill_sentinel": -9999, "encoding": "inline",
//     "u": [t][z][y][x] nested arrays, "v": same }
//
// Binary variant: the same header (without "u"/"v") on the first line,
// carrying "data_offset" (bytes from file start).  At that offset follow
// |t|*|z|*|y|*|x| little-endian float32 values of u, then the same of v.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "glider/flowfield.hpp"
#include "json.hpp"

namespace glider {

using nlohmann::json;

namespace {

constexpr const char* kFormatName = "gridded-flow-archive";

std::vector<double> read_axis(const json& axes, const char* name) {
  if (!axes.contains(name)) throw FlowError(std::string("axis ") + name + ": missing");
  const json& a = axes.at(name);
  if (!a.is_array()) throw FlowError(std::string("axis ") + name + ": not an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& e : a) {
    if (!e.is_number()) throw FlowError(std::string("axis ") + name + ": non-numeric entry");
    out.push_back(e.get<double>());
  }
  return out;
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s;
  for (auto d : shape) s += "[" + std::to_string(d) + "]";
  return s;
}

// Shape of a rectangular nested array of depth 4.
std::vector<std::size_t> nested_shape(const json& node, const char* field) {
  std::vector<std::size_t> shape;
  const json* cur = &node;
  for (int depth = 0; depth < 4; ++depth) {
    if (!cur->is_array()) {
      throw FlowError(std::string("field ") + field + ": expected 4-D nested array");
    }
    shape.push_back(cur->size());
    if (cur->empty()) break;
    cur = &(*cur)[0];
  }
  return shape;
}

void flatten(const json& node, const char* field, int depth,
             const std::vector<std::size_t>& shape, std::vector<double>& out) {
  if (!node.is_array() || node.size() != shape[static_cast<std::size_t>(depth)]) {
    throw FlowError(std::string("field ") + field + ": ragged nested array");
  }
  for (const auto& e : node) {
    if (depth == 3) {
      if (!e.is_number()) throw FlowError(std::string("field ") + field + ": non-numeric value");
      out.push_back(e.get<double>());
    } else {
      flatten(e, field, depth + 1, shape, out);
    }
  }
}

std::vector<double> read_inline_field(const json& doc, const char* field,
                                     const std::vector<std::size_t>& expected) {
  if (!doc.contains(field)) throw FlowError(std::string("field ") + field + ": missing");
  const auto shape = nested_shape(doc.at(field), field);
  if (shape != expected) {
    throw FlowError(std::string("field ") + field + ": shape " + shape_string(shape) +
                    " does not match axes " + shape_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected[0] * expected[1] * expected[2] * expected[3]);
  flatten(doc.at(field), field, 0, expected, out);
  return out;
}

float load_le_float(const char* p) {
  std::uint32_t bits;
  std::memcpy(&bits, p, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
  return std::bit_cast<float>(bits);
}

void store_le_float(std::string& out, float f) {
  auto bits = std::bit_cast<std::uint32_t>(f);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
  char buf[4];
  std::memcpy(buf, &bits, sizeof bits);
  out.append(buf, 4);
}

FlowGrid grid_from_header(const json& doc, std::vector<double> u, std::vector<double> v) {
  const json& axes = doc.at("axes");
  return FlowGrid(read_axis(axes, "x"), read_axis(axes, "y"), read_axis(axes, "z"),
                  read_axis(axes, "t"), std::move(u), std::move(v),
                  doc.value("fill_sentinel", FlowGrid::kDefaultFill));
}

void check_header(const json& doc) {
  if (!doc.is_object()) throw FlowError("flow archive: header is not an object");
  if (doc.value("version", 0) != 1) throw FlowError("flow archive: unsupported version");
  if (!doc.contains("axes") || !doc.at("axes").is_object()) {
    throw FlowError("flow archive: missing axes object");
  }
  if (doc.contains("fill_sentinel") && !doc.at("fill_sentinel").is_number()) {
    throw FlowError("flow archive: fill_sentinel must be numeric");
  }
}

json header_json(const FlowGrid& grid) {
  json doc;
  doc["format"] = kFormatName;
  doc["version"] = 1;
  doc["axes"] = {{"x", grid.x()}, {"y", grid.y()}, {"z", grid.z()}, {"t", grid.t()}};
  doc["fill_sentinel"] = grid.fill_sentinel();
  return doc;
}

FlowGrid parse_binary(const json& doc, std::string_view contents, std::size_t eol) {
  const json& axes = doc.at("axes");
  const std::size_t count = read_axis(axes, "t").size() * read_axis(axes, "z").size() *
                            read_axis(axes, "y").size() * read_axis(axes, "x").size();
  const auto offset = doc.value("data_offset", std::size_t{0});
  if (offset < eol + 1 || offset + 8 * count > contents.size()) {
    throw FlowError("flow archive: binary block truncated or data_offset invalid");
  }
  std::vector<double> u(count), v(count);
  const char* p = contents.data() + offset;
  for (std::size_t i = 0; i < count; ++i) u[i] = load_le_float(p + 4 * i);
  p += 4 * count;
  for (std::size_t i = 0; i < count; ++i) v[i] = load_le_float(p + 4 * i);
  return grid_from_header(doc, std::move(u), std::move(v));
}

FlowGrid parse_impl(std::string_view contents) {
  // Binary variant: a header object alone on the first line.
  const auto eol = contents.find('\n');
  if (eol != std::string_view::npos) {
    json head = json::parse(contents.substr(0, eol), nullptr, false);
    if (!head.is_discarded() && head.is_object() &&
        head.value("encoding", std::string()) == "binary") {
      check_header(head);
      return parse_binary(head, contents, eol);
    }
  }

  json doc = json::parse(contents.begin(), contents.end(), nullptr, false);
  if (doc.is_discarded()) throw FlowError("flow archive: malformed file");
  check_header(doc);
  if (doc.value("encoding", std::string("inline")) != "inline") {
    throw FlowError("flow archive: binary encoding requires the header on its own first line");
  }
  const json& axes = doc.at("axes");
  const std::vector<std::size_t> expected = {
      read_axis(axes, "t").size(), read_axis(axes, "z").size(),
      read_axis(axes, "y").size(), read_axis(axes, "x").size()};
  auto u = read_inline_field(doc, "u", expected);
  auto v = read_inline_field(doc, "v", expected);
  return grid_from_header(doc, std::move(u), std::move(v));
}

}  // namespace

FlowGrid parse_flow_grid(std::string_view contents) {
  try {
    return parse_impl(contents);
  } catch (const json::exception& e) {
    throw FlowError(std::string("flow archive: malformed header: ") + e.what());
  }
}

FlowGrid load_flow_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlowError("cannot open flow file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_flow_grid(ss.str());
  } catch (const FlowError& e) {
    throw FlowError(path + ": " + e.what());
  }
}

std::string serialize_flow_grid(const FlowGrid& grid, FlowEncoding encoding) {
  json doc = header_json(grid);
  if (encoding == FlowEncoding::inline_text) {
    doc["encoding"] = "inline";
    for (const char* name : {"u", "v"}) {
      const auto& data = std::string_view(name) == "u" ? grid.u() : grid.v();
      json field = json::array();
      for (std::size_t it = 0; it < grid.nt(); ++it) {
        json zs = json::array();
        for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
          json ys = json::array();
          for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
            json xs = json::array();
            for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
              xs.push_back(data[grid.index(it, iz, iy, ix)]);
            }
            ys.push_back(std::move(xs));
          }
          zs.push_back(std::move(ys));
        }
        field.push_back(std::move(zs));
      }
      doc[name] = std::move(field);
    }
    return doc.dump() + "\n";
  }

  doc["encoding"] = "binary";
  doc["byte_order"] = "little";
  doc["value_type"] = "float32";
  // data_offset depends on the header's own length; iterate to a fixed point.
  std::size_t offset = 0;
  std::string header;
  for (int i = 0; i < 4; ++i) {
    doc["data_offset"] = offset;
    header = doc.dump() + "\n";
    if (header.size() == offset) break;
    offset = header.size();
  }
  std::string out = header;
  out.reserve(out.size() + 8 * grid.u().size());
  for (double d : grid.u()) store_le_float(out, static_cast<float>(d));
  for (double d : grid.v()) store_le_float(out, static_cast<float>(d));
  return out;
}

void save_flow_grid(const FlowGrid& grid, const std::string& path, FlowEncoding encoding) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FlowError("cannot write flow file '" + path + "'");
  out << serialize_flow_grid(grid, encoding);
  if (!out) throw FlowError("write failed for flow file '" + path + "'");
}

}  // namespace glider
