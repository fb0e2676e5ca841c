#ifndef LMU_CORPUS_HPP
#define LMU_CORPUS_HPP

// Corpus files: one term per line, `#` starts a comment, and key=value pairs
// inside the comment annotate the line.  The keys the tools understand:
//   hnf, nf, sn   expected classification, yes|no
//   fuel          per-term override of the reduction budget

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmu/syntax.hpp"

namespace lmu {

struct CorpusEntry {
  int line = 0;
  std::string src;
  TermPtr term;
  std::map<std::string, std::string> notes;
};

inline std::optional<bool> note_flag(const CorpusEntry& e, const std::string& key) {
  auto it = e.notes.find(key);
  if (it == e.notes.end()) return std::nullopt;
  if (it->second == "yes") return true;
  if (it->second == "no") return false;
  throw std::runtime_error("corpus line " + std::to_string(e.line) + ": " + key +
                           "=" + it->second + " (want yes or no)");
}

inline std::optional<int> note_int(const CorpusEntry& e, const std::string& key) {
  auto it = e.notes.find(key);
  if (it == e.notes.end()) return std::nullopt;
  return std::stoi(it->second);
}

inline std::vector<CorpusEntry> load_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    std::string note;
    if (auto h = line.find('#'); h != std::string::npos) {
      note = line.substr(h + 1);
      line.resize(h);
    }
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");

    CorpusEntry entry;
    entry.line = ln;
    entry.src = line.substr(b, e - b + 1);
    try {
      entry.term = parse_term(entry.src);
    } catch (const parse_error& err) {
      throw std::runtime_error("corpus line " + std::to_string(ln) + ": " + err.what());
    }
    std::istringstream ns(note);
    std::string kv;
    while (ns >> kv)
      if (auto eq = kv.find('='); eq != std::string::npos)
        entry.notes[kv.substr(0, eq)] = kv.substr(eq + 1);
    out.push_back(std::move(entry));
  }
  return out;
}

inline std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  return load_corpus(in);
}

}  // namespace lmu

#endif  // LMU_CORPUS_HPP
