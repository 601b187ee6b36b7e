#include "permint/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace permint {

namespace {

PermFamily parse_family_json(const std::string& text, const std::string& name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("members")) {
    throw ParseError(name + ": expected object with fields n and members");
  }
  const int n = doc["n"].get<int>();
  std::vector<Permutation> members;
  for (const auto& entry : doc["members"]) {
    std::vector<int> img = entry.get<std::vector<int>>();
    if (static_cast<int>(img.size()) != n) {
      throw ParseError(name + ": member length differs from n");
    }
    try {
      members.emplace_back(std::move(img));
    } catch (const Error& e) {
      throw ParseError(name + ": " + e.what());
    }
  }
  return PermFamily(n, std::move(members));
}

PermFamily parse_family_text(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Permutation> members;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    if (n < 0) {
      if (line.compare(start, 2, "n=") != 0) {
        throw ParseError(name + ":" + std::to_string(lineno) + ": expected n=<n> header");
      }
      try {
        n = std::stoi(line.substr(start + 2));
      } catch (const std::exception&) {
        throw ParseError(name + ":" + std::to_string(lineno) + ": malformed n=<n> header");
      }
      if (n < 1) throw ParseError(name + ":" + std::to_string(lineno) + ": n must be positive");
      continue;
    }
    std::istringstream row(line);
    std::vector<int> img;
    int v = 0;
    while (row >> v) img.push_back(v);
    if (!row.eof()) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": non-numeric image");
    }
    if (static_cast<int>(img.size()) != n) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected " + std::to_string(n) +
                       " images, got " + std::to_string(img.size()));
    }
    try {
      members.emplace_back(std::move(img));
    } catch (const Error& e) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (n < 0) throw ParseError(name + ": missing n=<n> header");
  return PermFamily(n, std::move(members));
}

}  // namespace

PermFamily parse_family_stream(std::istream& in, const std::string& name) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    return parse_family_json(text, name);
  }
  std::istringstream again(text);
  return parse_family_text(again, name);
}

PermFamily parse_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return parse_family_stream(in, path);
}

void emit_family_text(const PermFamily& F, std::ostream& out) {
  out << "n=" << F.n() << "\n";
  for (const auto& m : F.members()) {
    for (int i = 1; i <= F.n(); ++i) {
      if (i > 1) out << ' ';
      out << m(i);
    }
    out << "\n";
  }
}

void emit_family(const PermFamily& F, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  emit_family_text(F, out);
}

void emit_family_json(const PermFamily& F, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << family_to_json_string(F) << "\n";
}

std::string family_to_json_string(const PermFamily& F) {
  nlohmann::json doc;
  doc["n"] = F.n();
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : F.members()) members.push_back(m.images());
  doc["members"] = std::move(members);
  return doc.dump();
}

}  // namespace permint
