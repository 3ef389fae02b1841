#include "boa/retrieval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "boa/core.hpp"
#include "boa/parallel.hpp"

namespace boa {

RankedList rank(const std::string& query_id, const BoaVector& query,
                const std::vector<std::pair<std::string, BoaVector>>& candidates) {
  RankedList out;
  out.query_id = query_id;
  out.entries.reserve(candidates.size());
  for (const auto& [id, vec] : candidates) {
    if (!(vec.prov == query.prov))
      throw InvalidInputError("rank: provenance mismatch for candidate \"" + id + "\"");
    out.entries.push_back({id, l2_distance(query.values, vec.values)});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.video_id < b.video_id;
  });
  return out;
}

std::vector<RankedList> query_event(const EventSpec& event, const BoaStore& store,
                                    int workers) {
  std::vector<std::pair<std::string, BoaVector>> candidates;
  candidates.reserve(event.database.size());
  for (const auto& [id, rel] : event.database) candidates.emplace_back(id, store.get(id));

  std::vector<RankedList> lists(event.queries.size());
  parallel_for(event.queries.size(), workers, [&](std::size_t i) {
    lists[i] = rank(event.queries[i], store.get(event.queries[i]), candidates);
  });
  return lists;
}

void write_ranked_lists(const std::vector<RankedList>& lists, std::ostream& out) {
  char buf[64];
  for (const auto& list : lists) {
    int rank_no = 1;
    for (const auto& e : list.entries) {
      std::snprintf(buf, sizeof(buf), "%.17g", e.distance);
      out << list.query_id << '\t' << rank_no++ << '\t' << e.video_id << '\t' << buf
          << '\n';
    }
  }
}

std::vector<RankedList> read_ranked_lists(std::istream& in, const std::string& origin) {
  std::vector<RankedList> lists;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    std::size_t t3 = t2 == std::string::npos ? t2 : line.find('\t', t2 + 1);
    if (t3 == std::string::npos)
      throw FormatError(origin + ":" + std::to_string(lineno) +
                        ": expected 4 tab-separated fields");
    std::string query_id = line.substr(0, t1);
    std::string video_id = line.substr(t2 + 1, t3 - t2 - 1);
    double distance;
    auto [p, ec] =
        std::from_chars(line.data() + t3 + 1, line.data() + line.size(), distance);
    if (ec != std::errc())
      throw FormatError(origin + ":" + std::to_string(lineno) + ": unparsable distance");
    if (lists.empty() || lists.back().query_id != query_id) {
      lists.push_back(RankedList{query_id, {}});
    }
    lists.back().entries.push_back({video_id, distance});
  }
  return lists;
}

}  // namespace boa
