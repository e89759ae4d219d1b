#pragma once

#include <algorithm>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "khplumb/diagram.hpp"
#include "khplumb/state.hpp"

#ifndef KHPLUMB_CORPUS_DIR
#define KHPLUMB_CORPUS_DIR "corpus"
#endif

namespace testing_support {

using khplumb::DiagramPtr;

inline DiagramPtr share(khplumb::LinkDiagram d) { return std::make_shared<const khplumb::LinkDiagram>(std::move(d)); }

inline std::string corpus_path(const std::string& name) { return std::string(KHPLUMB_CORPUS_DIR) + "/" + name; }

inline DiagramPtr corpus(const std::string& name) { return share(khplumb::load_pd(corpus_path(name))); }

// Every corpus diagram with at most max_crossings crossings, by file name.
inline std::vector<std::pair<std::string, DiagramPtr>> corpus_upto(int max_crossings) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(KHPLUMB_CORPUS_DIR))
    if (e.path().extension() == ".pd") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  std::vector<std::pair<std::string, DiagramPtr>> out;
  for (const auto& n : names) {
    DiagramPtr d = corpus(n);
    if (d->crossing_count() <= max_crossings) out.emplace_back(n, d);
  }
  return out;
}

inline DiagramPtr trefoil() { return share(khplumb::parse_pd("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n")); }
inline DiagramPtr hopf() { return share(khplumb::parse_pd("X 4 1 3 2\nX 2 3 1 4\n")); }

// Closure of a random braid word; retried until there are no free loops.
inline DiagramPtr random_braid(std::mt19937_64& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1), sign(0, 1);
  while (true) {
    std::vector<int> w;
    for (int k = 0; k < length; ++k) w.push_back(sign(rng) ? gen(rng) : -gen(rng));
    khplumb::LinkDiagram d = khplumb::braid_closure(strands, w);
    if (d.free_loops() == 0) return share(std::move(d));
  }
}

}  // namespace testing_support
